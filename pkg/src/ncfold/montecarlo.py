"""Monte Carlo experiments: unmatched-fraction estimation, concentration,
subadditivity, alphabet monotonicity, and greedy long runs.

Sampling is reproducible and scheduling-independent: the sample index range
is split into fixed-size chunks, chunk ``c`` draws its words from the
substream ``Rng(seed).spawn(c)``, and results are aggregated in chunk
order.  Worker count only changes how the compiled kernels parallelize, not
any output bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .greedy import greedy_steps
from .words import Rng

__all__ = [
    "EstimateReport",
    "ConcentrationReport",
    "SubadditivityReport",
    "MonotonicityReport",
    "estimate_rho",
    "concentration_experiment",
    "subadditivity_experiment",
    "monotonicity_experiment",
    "greedy_longrun",
]

_CHUNK = 64


def _apply_workers(workers: int | None) -> None:
    if workers is not None:
        if workers < 1:
            raise ValueError("workers must be >= 1")
        _kernels.set_num_threads(workers)


def _sample_matrix(rows: int, n: int, k: int, rng: Rng) -> np.ndarray:
    raw = rng.generator.integers(0, 2 * k, size=(rows, n))
    return np.where(raw % 2 == 0, raw // 2 + 1, -(raw // 2 + 1)).astype(np.int16)


def _ell_samples(n: int, k: int, samples: int, seed: int, stream: int = 0) -> np.ndarray:
    """Unmatched counts of ``samples`` random words, chunk-deterministic."""
    out = np.empty(samples, dtype=np.int64)
    done = 0
    chunk = 0
    base = Rng(seed, stream)
    while done < samples:
        rows = min(_CHUNK, samples - done)
        words = _sample_matrix(rows, n, k, base.spawn(chunk))
        out[done:done + rows] = _kernels.ell_values_batch(words)
        done += rows
        chunk += 1
    return out


def hoeffding_halfwidth(n: int, samples: int, alpha: float = 0.05) -> float:
    """Deviation bound for the mean unmatched fraction.

    Revealing one letter moves the optimal unmatched count by at most 2, so
    the mean over ``samples`` words of length ``n`` satisfies
    ``P(|mean - E| > eps) <= 2 exp(-eps^2 n samples / 8)``.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    return math.sqrt(8.0 * math.log(2.0 / alpha) / (n * samples))


@dataclass(frozen=True)
class EstimateReport:
    k: int
    n: int
    samples: int
    seed: int
    mean_fraction: float
    per_sample_sd: float
    hoeffding_halfwidth: float
    confidence: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "mean_fraction": self.mean_fraction,
            "per_sample_sd": self.per_sample_sd,
            "hoeffding_halfwidth": self.hoeffding_halfwidth,
            "confidence": self.confidence,
        }


def estimate_rho(n: int, k: int, samples: int, seed: int = 0,
                 workers: int | None = None, alpha: float = 0.05) -> EstimateReport:
    """Unbiased Monte Carlo estimate of the expected unmatched fraction."""
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    _apply_workers(workers)
    ells = _ell_samples(n, k, samples, seed)
    fractions = ells / n
    return EstimateReport(
        k=k,
        n=n,
        samples=samples,
        seed=seed,
        mean_fraction=float(fractions.mean()),
        per_sample_sd=float(fractions.std(ddof=1)) if samples > 1 else 0.0,
        hoeffding_halfwidth=hoeffding_halfwidth(n, samples, alpha),
        confidence=1.0 - alpha,
    )


@dataclass(frozen=True)
class ConcentrationReport:
    k: int
    n: int
    samples: int
    seed: int
    t_grid: tuple[float, ...]
    empirical_tail: tuple[float, ...]
    bound: tuple[float, ...]
    center: float
    centering: str
    per_sample_sd: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "t_grid": list(self.t_grid),
            "empirical_tail": list(self.empirical_tail),
            "bound": list(self.bound),
            "center": self.center,
            "centering": self.centering,
            "per_sample_sd": self.per_sample_sd,
        }


def concentration_experiment(n: int, k: int, samples: int, t_grid: Sequence[float],
                             seed: int = 0, workers: int | None = None) -> ConcentrationReport:
    """Empirical tails of ``|ell - center| / sqrt(n)`` against ``2 e^{-t^2/8}``.

    The exact expectation is unavailable at large ``n``, so deviations are
    centered at the empirical mean; the substitution is recorded in the
    report and inflates tails by at most the mean's standard error.
    """
    if samples < 2:
        raise ValueError("need samples >= 2 for tail estimation")
    t_grid = tuple(float(t) for t in t_grid)
    if any(t < 0 for t in t_grid):
        raise ValueError("tail thresholds must be >= 0")
    _apply_workers(workers)
    ells = _ell_samples(n, k, samples, seed)
    center = float(ells.mean())
    scaled = np.abs(ells - center) / math.sqrt(n)
    empirical = tuple(float((scaled > t).mean()) for t in t_grid)
    bound = tuple(2.0 * math.exp(-t * t / 8.0) for t in t_grid)
    return ConcentrationReport(
        k=k,
        n=n,
        samples=samples,
        seed=seed,
        t_grid=t_grid,
        empirical_tail=empirical,
        bound=bound,
        center=center,
        centering="empirical-mean",
        per_sample_sd=float(ells.std(ddof=1)),
    )


@dataclass(frozen=True)
class SubadditivityReport:
    k: int
    m: int
    n: int
    samples: int
    seed: int
    violations: int
    mean_concat: float
    mean_parts: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "violations": self.violations,
            "mean_concat": self.mean_concat,
            "mean_parts": self.mean_parts,
        }


def subadditivity_experiment(m: int, n: int, k: int, samples: int, seed: int = 0,
                             workers: int | None = None) -> SubadditivityReport:
    """Per-sample check of ``ell(uv) <= ell(u) + ell(v)`` on random pairs.

    ``violations`` must come out 0; the means compare the two sides at the
    expectation level.
    """
    if m < 0 or n < 0 or m + n < 1 or samples < 1:
        raise ValueError("need m, n >= 0 with m + n >= 1 and samples >= 1")
    _apply_workers(workers)
    out_concat = np.empty(samples, dtype=np.int64)
    out_parts = np.empty(samples, dtype=np.int64)
    done = 0
    chunk = 0
    base = Rng(seed)
    while done < samples:
        rows = min(_CHUNK, samples - done)
        words = _sample_matrix(rows, m + n, k, base.spawn(chunk))
        ell_uv = _kernels.ell_values_batch(words)
        ell_u = _kernels.ell_values_batch(np.ascontiguousarray(words[:, :m]))
        ell_v = _kernels.ell_values_batch(np.ascontiguousarray(words[:, m:]))
        out_concat[done:done + rows] = ell_uv
        out_parts[done:done + rows] = ell_u + ell_v
        done += rows
        chunk += 1
    violations = int((out_concat > out_parts).sum())
    return SubadditivityReport(
        k=k,
        m=m,
        n=n,
        samples=samples,
        seed=seed,
        violations=violations,
        mean_concat=float(out_concat.mean() / (m + n)),
        mean_parts=float(out_parts.mean() / (m + n)),
    )


@dataclass(frozen=True)
class MonotonicityReport:
    n: int
    samples: int
    seed: int
    k_small: int
    k_large: int
    rho_small: float
    rho_large: float
    halfwidth_small: float
    halfwidth_large: float

    @property
    def ordered_within_noise(self) -> bool:
        return self.rho_small <= self.rho_large + self.halfwidth_small + self.halfwidth_large

    @property
    def separated(self) -> bool:
        return self.rho_small + self.halfwidth_small < self.rho_large - self.halfwidth_large

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "k_small": self.k_small,
            "k_large": self.k_large,
            "rho_small": self.rho_small,
            "rho_large": self.rho_large,
            "halfwidth_small": self.halfwidth_small,
            "halfwidth_large": self.halfwidth_large,
            "ordered_within_noise": self.ordered_within_noise,
            "separated": self.separated,
        }


def monotonicity_experiment(n: int, k: int, samples: int, seed: int = 0,
                            workers: int | None = None) -> MonotonicityReport:
    """Estimates the unmatched fraction at alphabet sizes ``k`` and ``k+1``
    and reports the ordering with confidence halfwidths."""
    if k < 2:
        raise ValueError("monotonicity comparison needs k >= 2")
    small = estimate_rho(n, k, samples, seed=seed, workers=workers)
    large = estimate_rho(n, k + 1, samples, seed=seed, workers=workers)
    return MonotonicityReport(
        n=n,
        samples=samples,
        seed=seed,
        k_small=k,
        k_large=k + 1,
        rho_small=small.mean_fraction,
        rho_large=large.mean_fraction,
        halfwidth_small=small.hoeffding_halfwidth,
        halfwidth_large=large.hoeffding_halfwidth,
    )


def greedy_longrun(n: int, k: int, seed: int = 0) -> float:
    """Unmatched fraction of a single greedy trajectory of length ``n``."""
    if n < 1:
        raise ValueError("need n >= 1")
    letters = _sample_matrix(1, n, k, Rng(seed))[0]
    reductions = 0
    for _, reductions in greedy_steps(letters):
        pass
    return 1.0 - 2.0 * reductions / n

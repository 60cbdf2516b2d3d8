"""Command-line interface.

One subcommand per library operation, machine-readable output (JSON by
default, CSV where tabular), an explicit ``--seed`` everywhere randomness
is involved, and a ``reproduce`` driver that runs the full acceptance
bundle.  Repeated invocations with identical flags produce identical
bytes.
"""

from __future__ import annotations

import json
import math
import sys
from fractions import Fraction

import click

from . import bounds as bounds_mod
from . import chain as chain_mod
from . import matching as matching_mod
from . import montecarlo as mc
from .greedy import greedy_match, greedy_steps
from .words import Rng, Word, parse_word, sample_letters

_FLOAT_DIGITS = 12


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _word_json(word: Word) -> list[int]:
    return list(word.letters)


def _round_down(x: float, digits: int = 6) -> float:
    return math.floor(x * 10**digits) / 10**digits


def _round_up(x: float, digits: int = 6) -> float:
    return math.ceil(x * 10**digits) / 10**digits


def _fraction_fields(value: Fraction) -> dict:
    return {"fraction": f"{value.numerator}/{value.denominator}", "decimal": float(value)}


class _Fail(click.ClickException):
    exit_code = 1


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise _Fail(str(exc)) from exc


@click.group()
@click.version_option()
def main() -> None:
    """Exact and statistical analysis of non-crossing matchings of words."""


@main.command("exact")
@click.option("--word", "text", required=True, help="Word, compact letters or signed integers.")
@click.option("--k", type=int, required=True, help="Alphabet size.")
@click.option("--witness", is_flag=True, help="Include an optimal matching in the output.")
def exact_cmd(text: str, k: int, witness: bool) -> None:
    """Minimum unmatched letters over non-crossing matchings."""
    word = _run(parse_word, text, k)
    result = _run(matching_mod.optimal_length, word)
    payload = {
        "config": {"word": text, "k": k, "witness": witness},
        "n": len(word),
        "unmatched": result.unmatched,
    }
    if witness:
        payload["pairs"] = sorted(list(p) for p in result.witness.pairs)
    _emit_json(payload)


@main.command("census")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def census_cmd(n: int, k: int, fmt: str) -> None:
    """Exact distribution of the unmatched count over all (2k)^n words."""
    counts = _run(matching_mod.ell_census, n, k)
    if fmt == "csv":
        click.echo("ell_value,count")
        for ell in sorted(counts):
            click.echo(f"{ell},{counts[ell]}")
    else:
        _emit_json({"config": {"n": n, "k": k}, "counts": {str(e): c for e, c in sorted(counts.items())}})


@main.command("greedy")
@click.option("--word", "text", required=True)
@click.option("--k", type=int, required=True)
def greedy_cmd(text: str, k: int) -> None:
    """Run the one-sided greedy matcher on one word."""
    word = _run(parse_word, text, k)
    trace = greedy_match(word)
    _emit_json({
        "config": {"word": text, "k": k},
        "n": len(word),
        "matched_pairs": sorted(list(p) for p in trace.matched_pairs),
        "reductions": trace.reductions,
        "unmatched": trace.unmatched,
        "final_state": _word_json(trace.final_state),
    })


@main.command("greedy-sim")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
def greedy_sim_cmd(n: int, k: int, seed: int) -> None:
    """Greedy run on a random word; CSV of (t, accessible_length, reductions)."""
    if n < 1 or k < 1:
        raise _Fail("need n >= 1 and k >= 1")
    letters = sample_letters(n, k, Rng(seed))
    click.echo("t,accessible_length,reductions")
    for t, (length, reductions) in enumerate(greedy_steps(letters), 1):
        click.echo(f"{t},{length},{reductions}")


@main.group("chain")
def chain_group() -> None:
    """Accessible-word chain: balance verification and truncated solves."""


@chain_group.command("verify")
@click.option("--k", type=int, required=True)
@click.option("--max-len", type=int, required=True)
def chain_verify_cmd(k: int, max_len: int) -> None:
    """Exact balance-equation check for all states up to a length."""
    report = _run(chain_mod.verify_balance, k, max_len)
    _emit_json({
        "config": {"k": k, "max_len": max_len},
        "checked": report.checked,
        "violations": [
            {
                "word": _word_json(v.word),
                "predecessor_mass": str(v.predecessor_mass),
                "required_mass": str(v.required_mass),
                "note": v.note,
            }
            for v in report.violations
        ],
        "ok": report.ok,
    })


@chain_group.command("truncated")
@click.option("--k", type=int, required=True)
@click.option("--L", "max_len", type=int, required=True)
@click.option("--convention", type=click.Choice(list(chain_mod.TRUNCATION_CONVENTIONS)),
              default="blocked-selfloop", show_default=True)
def chain_truncated_cmd(k: int, max_len: int, convention: str) -> None:
    """Stationary distribution of the length-restricted chain."""
    result = _run(chain_mod.truncated_chain_pi, k, max_len, convention)
    params = chain_mod.chain_params(k)
    lo, hi = result.proportionality_spread()
    _emit_json({
        "config": {"k": k, "L": max_len, "convention": convention},
        "residual": result.residual,
        "max_abs_diff_to_stationary_below_L": result.max_abs_diff_to_stationary(),
        "proportionality_spread_below_L": [lo, hi],
        "states": {
            " ".join(str(x) for x in w.letters) or "(empty)": {
                "pi_L": p,
                "pi": float(chain_mod.stationary_pi(w, params)),
            }
            for w, p in zip(result.states, result.probabilities)
        },
    })


@main.command("lambda-tilde")
@click.option("--k", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def lambda_tilde_cmd(k: int, fmt: str) -> None:
    """Exact greedy asymptotic unmatched fraction."""
    value = _run(chain_mod.lambda_tilde, k)
    if fmt == "text":
        click.echo(f"{value.numerator}/{value.denominator} ≈ {float(value):.6f}")
    else:
        _emit_json({"config": {"k": k}, **_fraction_fields(value)})


@main.command("bounds")
@click.option("--k", type=int, required=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
def bounds_cmd(k: int, tol: float) -> None:
    """Bracket for the limiting unmatched fraction.

    Formatted lower bounds round down and upper bounds round up, so the
    printed bracket stays valid.
    """
    report = _run(bounds_mod.bound_report, k, tol)
    payload = {
        "config": {"k": k, "tol": tol},
        "lower_base": _round_down(report.lower_base),
        "upper_greedy": _fraction_fields(report.upper_greedy),
        "notes": list(report.notes),
    }
    if report.lower_refined is not None:
        payload["lower_refined"] = _round_down(report.lower_refined)
    if report.upper_elementary is not None:
        payload["upper_elementary"] = _round_up(report.upper_elementary)
    _emit_json(payload)


@main.command("trivial-count")
@click.option("--p", type=int, required=True)
@click.option("--k", type=int, required=True)
def trivial_count_cmd(p: int, k: int) -> None:
    """Number of length-p words reducing to the empty word."""
    click.echo(str(_run(bounds_mod.trivial_word_count, p, k)))


@main.command("estimate")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--samples", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=None)
def estimate_cmd(n: int, k: int, samples: int, seed: int, workers: int | None) -> None:
    """Monte Carlo estimate of the expected unmatched fraction."""
    report = _run(mc.estimate_rho, n, k, samples, seed, workers)
    _emit_json({"config": {"n": n, "k": k, "samples": samples, "seed": seed, "workers": workers},
                **report.to_dict()})


@main.command("concentrate")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--samples", type=int, required=True)
@click.option("--t", "t_grid", type=float, multiple=True, required=True,
              help="Tail threshold; repeat for a grid.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
def concentrate_cmd(n, k, samples, t_grid, seed, workers, fmt) -> None:
    """Empirical deviation tails against the sub-Gaussian bound."""
    report = _run(mc.concentration_experiment, n, k, samples, t_grid, seed, workers)
    if fmt == "csv":
        click.echo("t,empirical_tail,bound")
        for t, e, b in zip(report.t_grid, report.empirical_tail, report.bound):
            click.echo(f"{t},{e},{b}")
    else:
        _emit_json({"config": {"n": n, "k": k, "samples": samples, "seed": seed,
                               "t": list(t_grid), "workers": workers},
                    **report.to_dict()})


@main.command("subadd")
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--samples", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
def subadd_cmd(m: int, n: int, k: int, samples: int, seed: int) -> None:
    """Pathwise subadditivity check on random concatenations."""
    report = _run(mc.subadditivity_experiment, m, n, k, samples, seed)
    _emit_json({"config": {"m": m, "n": n, "k": k, "samples": samples, "seed": seed},
                **report.to_dict()})


@main.command("mono")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--samples", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
def mono_cmd(n: int, k: int, samples: int, seed: int) -> None:
    """Compare unmatched fractions at alphabet sizes k and k+1."""
    report = _run(mc.monotonicity_experiment, n, k, samples, seed)
    _emit_json({"config": {"n": n, "k": k, "samples": samples, "seed": seed},
                **report.to_dict()})


@main.command("greedy-longrun")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
def greedy_longrun_cmd(n: int, k: int, seed: int) -> None:
    """Single-trajectory greedy unmatched fraction."""
    fraction = _run(mc.greedy_longrun, n, k, seed)
    _emit_json({"config": {"n": n, "k": k, "seed": seed}, "fraction": fraction})


@main.command("reproduce")
@click.option("--only", default=None, help="Run only checks whose name contains this substring.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for JSON/CSV reports.")
def reproduce_cmd(only: str | None, out_dir: str | None) -> None:
    """Run the full acceptance bundle; exit nonzero on any failure."""
    from .reproduce import run_checks

    ok = run_checks(only=only, out_dir=out_dir, echo=click.echo)
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()

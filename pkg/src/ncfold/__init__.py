"""Non-crossing matchings of random words over signed alphabets.

Exact optimal matchings (interval DP plus brute-force oracle), the
one-sided greedy matcher and its accessible-word Markov chain solved in
closed form, analytic lower/upper bounds for the limiting unmatched
fraction, and reproducible Monte Carlo experiments.
"""

from .words import (
    Letter,
    Word,
    Rng,
    parse_word,
    format_word,
    sample_word,
    sample_letters,
    free_reduce,
    conjugate,
)
from .matching import (
    Matching,
    LengthResult,
    validate_matching,
    optimal_length,
    brute_force_length,
    ell_census,
    rho_exact,
    enumeration_budget,
)
from .greedy import GreedyTrace, greedy_match, chain_step, greedy_steps
from .chain import (
    ChainParams,
    chain_params,
    is_omega0,
    enumerate_omega0,
    a_profile,
    count_words_with_profile,
    stationary_pi,
    stationary_mass,
    continuation_mass,
    BalanceReport,
    verify_balance,
    TRUNCATION_CONVENTIONS,
    TruncatedChainResult,
    truncated_chain_pi,
    lambda_tilde,
    reduction_probability_bracket,
)
from .bounds import (
    theta,
    trivial_word_count,
    tau_asymptotic,
    entropy,
    lower_bound_base,
    lower_bound_refined_k2,
    upper_bound_elementary_k2,
    BoundReport,
    bound_report,
)
from .montecarlo import (
    EstimateReport,
    ConcentrationReport,
    SubadditivityReport,
    MonotonicityReport,
    estimate_rho,
    concentration_experiment,
    subadditivity_experiment,
    monotonicity_experiment,
    greedy_longrun,
)

__version__ = "0.1.0"

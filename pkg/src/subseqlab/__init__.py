"""Distinct-subsequence counting and random-string expectation toolkit.

Fast exact counting of distinct subsequences, brute-force oracles, three
analytic expectation engines for random strings (closed form, IID matrix,
Markov matrix), reproducible Monte Carlo estimation, and the root-solving
analysis around expected pattern-occurrence counts.
"""

from .analysis import (
    BalanceRoots,
    RootResult,
    balance_minimum,
    balance_value,
    binary_entropy,
    expected_occurrences,
    occurrence_threshold,
    solve_balance,
)
from .expectation import (
    ABWeights,
    ExpectationSeries,
    ab_explicit,
    ab_recurrence,
    asymptotic_constants,
    closed_form_binary,
    iid_matrix,
    iid_matrix_expectation,
    markov_expectation,
    markov_initial,
    markov_matrix,
)
from .models import IIDModel, MarkovModel, parse_probability
from .montecarlo import (
    EstimateRecord,
    GrowthFit,
    SuperpatternRecord,
    estimate_expected_count,
    estimate_growth_constant,
    fit_growth_rate,
    sample_string,
    superpattern_experiment,
    superpattern_k,
    trial_rng,
)
from .oracle import (
    ENUMERATION_MAX,
    EXHAUSTIVE_GUARD,
    SizeGuardError,
    TreeRow,
    check_pair_structure,
    check_submultiplicativity,
    enumerate_distinct,
    exhaustive_expectation,
    is_subsequence,
    superpattern_k_bruteforce,
    tree_row,
)
from .strings import (
    BINARY,
    Alphabet,
    IncrementalCounter,
    LetterString,
    NewCountProfile,
    count_distinct,
    count_distinct_with_empty,
    new_subseq_counts,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BINARY",
    "LetterString",
    "NewCountProfile",
    "IncrementalCounter",
    "new_subseq_counts",
    "count_distinct",
    "count_distinct_with_empty",
    "IIDModel",
    "MarkovModel",
    "parse_probability",
    "ExpectationSeries",
    "ABWeights",
    "closed_form_binary",
    "asymptotic_constants",
    "ab_recurrence",
    "ab_explicit",
    "iid_matrix",
    "iid_matrix_expectation",
    "markov_matrix",
    "markov_initial",
    "markov_expectation",
    "ENUMERATION_MAX",
    "EXHAUSTIVE_GUARD",
    "SizeGuardError",
    "TreeRow",
    "enumerate_distinct",
    "exhaustive_expectation",
    "tree_row",
    "check_pair_structure",
    "check_submultiplicativity",
    "is_subsequence",
    "superpattern_k_bruteforce",
    "EstimateRecord",
    "GrowthFit",
    "SuperpatternRecord",
    "trial_rng",
    "sample_string",
    "estimate_expected_count",
    "fit_growth_rate",
    "estimate_growth_constant",
    "superpattern_k",
    "superpattern_experiment",
    "RootResult",
    "BalanceRoots",
    "binary_entropy",
    "balance_value",
    "balance_minimum",
    "solve_balance",
    "occurrence_threshold",
    "expected_occurrences",
]

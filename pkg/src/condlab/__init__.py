"""Exact verification toolkit for randomized voting rules on majority domains.

Everything computes with rational arithmetic; all checks are exhaustive over
explicitly enumerated domains.
"""

from .core import (
    PreferenceRelation,
    Profile,
    all_profiles,
    all_relations,
    alternative_index,
    alternative_name,
    condorcet_winner,
    majority_margin,
    parse_profiles,
    swap,
    tiebroken_winner,
)
from .lottery import (
    Lottery,
    NegativeProbabilityError,
    SDRelation,
    SDVerdict,
    affine_combine,
    mix,
    sd_compare,
)
from .domains import (
    CapExceededError,
    CondorcetDomain,
    CondorcetForDomain,
    Domain,
    ExplicitDomain,
    ExtendedDomain,
    FullDomain,
    OutOfDomainError,
    TieBreakingCondorcetDomain,
    beyond_unilateral_reach,
    find_profiles_beyond_unilateral_reach,
    is_connected,
    is_weakly_connected,
    majority_cycle_profile,
    parse_domain,
)
from .sds import (
    SDS,
    Borda,
    CondorcetRule,
    Dictatorship,
    Mixture,
    Plurality,
    RandomDictatorship,
    SignedMixture,
    TableMissError,
    TableSDS,
    TieBreakingCondorcetRule,
    parse_sds,
    signed_mixture_counterexample,
)
from .axioms import (
    Verdict,
    check_ex_post_efficient,
    check_group_strategyproof,
    check_localized,
    check_non_imposition,
    check_non_perverse,
    check_strategyproof,
    checker_for,
    implication_suite,
    replay_witness,
)
from .analysis import (
    FeasibilityResult,
    InfeasibleModelError,
    MixtureCoefficients,
    extension_feasibility,
    max_dictatorial_weight,
    probe_coefficients,
    probe_profile,
    verify_extension_witness,
    verify_mixture,
)
from .adpath import (
    AdPath,
    ParityMismatchError,
    PreconditionViolatedError,
    build_adpath,
    build_adpath_fixing,
    validate_adpath,
)
from .theorems import (
    catalog,
    coefficient_grid,
    mixture_sds,
    run_battery,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

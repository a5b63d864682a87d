"""Profile-optimal stable matchings via lexicographic vector flows."""

from .model import (
    AgentRef,
    Instance,
    Matching,
    ParseError,
    Side,
    format_instance,
    parse_instance,
    preprocess,
    profile_of,
)
from .profiles import BigWeight, Profile, high_weight, lex_compare
from .rotations import (
    Rotation,
    RotationDigraph,
    build_digraph,
    eliminate_closed_subset,
    find_rotations,
    rotation_profile,
)
from .solvers import (
    Criterion,
    EnumerationCapError,
    OracleMode,
    enumerate_stable_matchings,
    matching_degree,
    oracle_exponential_flow,
    select_egalitarian,
    select_median,
    select_min_regret,
    select_sex_equal,
    solve,
    solve_generous,
    solve_rank_maximal,
)
from .stability import (
    TruncatedInstance,
    blocking_pair,
    is_stable,
    man_optimal,
    min_regret_degree,
    truncate,
    woman_optimal,
)
from .vbflow import (
    Cut,
    VbCapacity,
    VbEdge,
    VbFlow,
    VbNetwork,
    build_vb_network,
    max_profile_closed_subset,
    max_vb_flow,
    min_cut,
)
from .analytics import (
    MatchingStats,
    SpaceReport,
    batch_stats,
    generate_I1,
    generate_uniform,
    i1_rotation_profiles,
    last_choice_threshold,
    matching_stats,
    space_report,
    space_trend_summary,
)

__version__ = "0.1.0"

__all__ = [
    "AgentRef",
    "BigWeight",
    "Criterion",
    "Cut",
    "EnumerationCapError",
    "Instance",
    "Matching",
    "MatchingStats",
    "OracleMode",
    "ParseError",
    "Profile",
    "Rotation",
    "RotationDigraph",
    "Side",
    "SpaceReport",
    "TruncatedInstance",
    "VbCapacity",
    "VbEdge",
    "VbFlow",
    "VbNetwork",
    "batch_stats",
    "blocking_pair",
    "build_digraph",
    "build_vb_network",
    "eliminate_closed_subset",
    "enumerate_stable_matchings",
    "find_rotations",
    "format_instance",
    "generate_I1",
    "generate_uniform",
    "high_weight",
    "i1_rotation_profiles",
    "is_stable",
    "last_choice_threshold",
    "lex_compare",
    "man_optimal",
    "matching_degree",
    "matching_stats",
    "max_profile_closed_subset",
    "max_vb_flow",
    "min_cut",
    "min_regret_degree",
    "oracle_exponential_flow",
    "parse_instance",
    "preprocess",
    "profile_of",
    "rotation_profile",
    "select_egalitarian",
    "select_median",
    "select_min_regret",
    "select_sex_equal",
    "solve",
    "solve_generous",
    "solve_rank_maximal",
    "space_report",
    "space_trend_summary",
    "truncate",
    "woman_optimal",
]

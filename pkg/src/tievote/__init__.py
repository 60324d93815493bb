"""Exact election toolkit for votes with ties and irrational preferences.

Scoring rules under four tie extensions, Copeland^alpha, exact solvers for
weighted manipulation / control by adding voters / bribery, hardness
constructions with brute-force equivalence verification, and two-voter
majority-graph realization. All arithmetic is exact rational.
"""

from .orders import (
    Axis,
    CapExceededError,
    DuplicateCandidateError,
    EmptyGroupError,
    IrrationalOrderError,
    MalformedOrderError,
    MissingCandidateError,
    Order,
    OrderKind,
    ParseError,
    UnknownCandidateError,
    WeightedProfile,
    classify,
    enumerate_orders,
    enumerate_pairwise_relations,
    enumerate_single_peaked_votes,
    enumerate_weak_orders,
    format_order,
    format_profile,
    is_single_peaked_black,
    is_single_peaked_lackner,
    order_single_peaked,
    parse_order,
    parse_profile,
    satisfies_kind,
)
from .rules import (
    MajorityGraph,
    Rule,
    ScoringExtension,
    WinnerModel,
    approval_scores,
    copeland_scores,
    copeland_scores_from_graph,
    format_score_table,
    induced_majority_graph,
    is_winner,
    positional_scores,
    profile_scores,
    scoring_winners,
    winners,
)
from .solvers import (
    BriberyInstance,
    ControlAVInstance,
    Decision,
    FlowNetwork,
    ManipulationInstance,
    UnsupportedRegimeError,
    VoteDomain,
    bribery_exact,
    ccav_exact,
    copeland_cwcm_regime,
    cwcm_3cand_dp,
    cwcm_copeland_3cand_p,
    cwcm_exact,
    cwcm_min_extension,
    domain_votes,
    format_instance,
    llull_irrational_cwcm_flow,
    max_flow,
    parse_instance,
    replay_bribery,
    replay_control,
    replay_manipulation,
    solve_manipulation,
    weighted_bribery_t_approval,
)
from .reductions import (
    PartitionInstance,
    PartitionPrimeInstance,
    ReductionReport,
    X3CInstance,
    enumerate_partition_instances,
    enumerate_partition_prime_instances,
    gen_borda_avg_cwcm,
    gen_borda_cwcm,
    gen_copeland_cwcm,
    gen_x3c_plurality_ccav,
    partition_brute,
    partition_prime_brute,
    partition_to_partition_prime,
    random_x3c_instance,
    verify_reduction,
    x3c_brute,
)
from .tournament import OrderPair, RealizationError, realize_two_total_orders

__version__ = "0.1.0"

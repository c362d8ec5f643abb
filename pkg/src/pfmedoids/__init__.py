"""Exact K-medoids clustering of two-objective Pareto fronts."""

from .costs import (
    ClusterCost,
    CostScan,
    Shape,
    check_shape,
    cluster_cost_naive,
    medoid_dichotomic,
    prefix_costs,
    suffix_costs_to,
)
from .errors import (
    EmptyInput,
    IndexOutOfRange,
    InstanceTooLarge,
    InvalidBound,
    KOutOfRange,
    MalformedPartition,
    NonFiniteCoordinate,
    NonPositiveAlpha,
    NotAParetoFront,
    PfMedoidsError,
    TooFewPoints,
    TooManyCandidates,
)
from .oracles import (
    PartitionCandidate,
    brute_all_partitions,
    brute_interval,
    find_non_unimodal_witness,
    is_local_minimum,
    pam_heuristic,
)
from .pareto import (
    ParetoInstance,
    Point2,
    build_instance,
    dist_pow,
    dominates,
    extract_front,
    incomparable,
    precedes,
)
from .solver import (
    DpTable,
    IntervalClustering,
    LocalMinimumReport,
    build_dp_table,
    enumerate_local_minima_k2,
    objective_of,
    solve_general,
    solve_k1,
    solve_k2,
)

__version__ = "0.1.0"

"""Subset-sum solvers built on the doubling residual sequence."""
from .baselines import (
    ColorCodingConfig,
    SumsetSet,
    bellman_decides,
    brute_force_all,
    capped_sumset,
    color_coding,
)
from .core import (
    CertificateError,
    Instance,
    InstanceError,
    PositionError,
    PreconditionError,
    ResourceError,
    SolverStats,
    SubsetSolution,
    SubsetSumError,
    decode_position,
    format_instance,
    load_instance,
    parse_instance,
    position_of,
    residual_at,
)
from .enumerative import EnumerationConfig, ResidualBlock, expand_round, solve_all
from .gen import GenSpec, gen_planted, gen_random
from .greedy import GreedyConfig, TrackedResidual, prune_and_merge, sample_variance, solve_greedy
from .randomized import ProbeConfig, sample_piece, solve_probabilistic

__version__ = "0.1.0"

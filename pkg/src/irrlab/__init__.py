"""Irreducibility measures (phi and the psi bounds) for small discrete networks."""

from .dist import (
    AbsoluteContinuityViolation,
    Dist,
    JointDist,
    StateSpace,
    UnreachableState,
    conditional_mutual_information,
    entropy,
    kl_divergence,
    marginalize,
    mutual_information,
    specific_surprise,
)
from .net import (
    NetworkSpec,
    ParseError,
    TransitionMap,
    build_transition_map,
    compose_t_steps,
    joint_from_input,
    kernel_joint,
    parse_empirical_distribution,
    parse_network_spec,
    parse_transition_table,
    uniform_joint,
)
from .parts import Partition, enumerate_bipartitions, enumerate_partitions, partition_count
from .phi import (
    EiMode,
    MipResult,
    bracket_measures,
    effective_information,
    ei_beyond_partition,
    expected_state_phi,
    find_mip,
    phi_of_state,
)
from .psi import PsiBounds, bracket_psi, psi_bounds_state, psi_max_state, psi_min_state
from .report import MeasureReport, build_report, render_table
from .zoo import network

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Constructive filling volumes of PL cycles in l-infinity space, with certificates."""
from .chain import Z, Z2, Chain, boundary, is_cycle
from .chainfile import ChainFileError, emit_chain, parse_chain, read_chain, write_chain
from .constants import ConstantsTable, build_constants, reference_bound
from .decomposition import BallDecomposition, DecompositionError, compute_r0, decompose, verify_decomposition
from .filling import FillError, FillResult, fill_base_case, fill_cycle, fill_inductive, verify_fill
from .generators import generate_cycle
from .geometry import CubeBall, clamp_to_ball, cone_over_chain, restrict_to_ball, slice_at_radius, split_by_balls
from .kernels import BACKEND
from .metric import L2, L_INF, MetricKind, chain_diameter, chain_volume, distance, simplex_volume

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BallDecomposition",
    "Chain",
    "ChainFileError",
    "ConstantsTable",
    "CubeBall",
    "DecompositionError",
    "FillError",
    "FillResult",
    "L2",
    "L_INF",
    "MetricKind",
    "Z",
    "Z2",
    "boundary",
    "build_constants",
    "chain_diameter",
    "chain_volume",
    "clamp_to_ball",
    "compute_r0",
    "cone_over_chain",
    "decompose",
    "distance",
    "emit_chain",
    "fill_base_case",
    "fill_cycle",
    "fill_inductive",
    "generate_cycle",
    "is_cycle",
    "parse_chain",
    "read_chain",
    "reference_bound",
    "restrict_to_ball",
    "simplex_volume",
    "slice_at_radius",
    "split_by_balls",
    "verify_decomposition",
    "verify_fill",
    "write_chain",
]

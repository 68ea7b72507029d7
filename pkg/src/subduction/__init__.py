"""Exact subduction coefficients for S_n restricted to S_{n1} x S_{n2}."""

__version__ = "0.1.0"

from .exact import Surd, SurdSum, SparseRationalMatrix, rref_kernel, surd_normalize  # noqa: E402
from .tableaux import (  # noqa: E402
    Partition,
    StandardTableau,
    axial_distance,
    apply_generator,
    conjugate,
    enumerate_skew,
    enumerate_standard_tableaux,
    hook_dimension,
    lr_multiplicity,
    parse_partition,
    skew_count,
)
from .graph import build_grid, build_island, build_reduced_graph  # noqa: E402
from .solver import SDCTable, InvariantViolation, solve_island  # noqa: E402
from .verify import (  # noqa: E402
    conjugation_transform,
    full_system_oracle,
    reconstruct_full_table,
    verify_block_diagonalization,
    verify_unitarity,
)

__all__ = [
    "Surd",
    "SurdSum",
    "SparseRationalMatrix",
    "rref_kernel",
    "surd_normalize",
    "Partition",
    "StandardTableau",
    "axial_distance",
    "apply_generator",
    "conjugate",
    "enumerate_skew",
    "enumerate_standard_tableaux",
    "hook_dimension",
    "lr_multiplicity",
    "parse_partition",
    "skew_count",
    "build_grid",
    "build_island",
    "build_reduced_graph",
    "SDCTable",
    "InvariantViolation",
    "solve_island",
    "conjugation_transform",
    "full_system_oracle",
    "reconstruct_full_table",
    "verify_block_diagonalization",
    "verify_unitarity",
]

"""ED degrees and ED critical points of orthogonally invariant matrix
varieties, computed on the diagonal restriction and lifted back to matrix
space.

The hot path-tracking loop runs in a compiled extension when available;
``HAVE_COMPILED_KERNEL`` reports which implementation was selected.
"""

from ._core import HAVE_COMPILED_KERNEL
from .arrangements import AffineComponent, arrangement_critical, maximal_components, project, symmetrize
from .catalog import CatalogEntry, essential_variety, fermat, orthogonal_group, rank_variety, sl_pm
from .edcrit import (
    ComponentSpec,
    EDCriticalPoint,
    VarietySpec,
    build_lagrange_system,
    ed_critical_points,
    ed_degree,
)
from .homotopy import SolutionSet, SquareSystem, TrackOptions, bezout_bound, newton_refine, solve
from .polyalg import MultiPoly, SignedPermutation, act, is_abs_symmetric, parse_poly
from .spectral import (
    AlgebraicSVD,
    RealSVD,
    algebraic_svd,
    complex_sym_eigen,
    has_algebraic_svd,
    quotient_map,
    singular_value_vector,
    svd_real,
)
from .transfer import (
    LiftedCriticalPoint,
    PartitionData,
    dim_M,
    dim_fiber,
    matrix_ed_critical,
    partition_of,
    tangent_basis_M,
    verify_criticality,
)

__version__ = "0.1.0"

"""Exact surgery-theoretic invariants: L-polynomials, lattice divisibility,
L-groups of free abelian group rings, normal invariants and structure sets."""

from .homology import FgAbelianGroup, GradedGroup, ManifoldDescriptor, builtin, validate
from .lattice import AffineSublattice, LatticeBasis, divisibility, smith_normal_form
from .lpoly import denominator_constants, l_polynomial, q_series
from .surgery import Status, Verdict, decide_simply_connected, kernel_of_theta, structure_set

__version__ = "0.1.0"

"""L-groups, normal invariants, structure sets and the infinitude criteria.

The surgery obstruction map ``theta`` is modelled as assembly composed with
the map ``c_*`` induced by the classifying map ``M -> B pi``. Assembly is
taken to be injective on ``H_*(B pi; L<1>)`` for the supported groups
(trivial and free abelian), so kernels and cokernels of ``theta`` become
linear algebra over ``Z`` on the descriptor's ``classifying_map`` matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Sequence, Union

from .homology import (
    FgAbelianGroup,
    ManifoldDescriptor,
    Pi1Kind,
    builtin,
    validate,
)
from .lattice import (
    INFINITE,
    LatticeBasis,
    LatticeError,
    coordinates,
    divisibility,
    smith_normal_form,
    sublattice_index,
)

__all__ = [
    "ExtensionPresentation",
    "Hypothesis",
    "LatticePair",
    "Parallelizable",
    "PdGroup",
    "Status",
    "Summand",
    "SurgeryError",
    "TheoremCSummary",
    "Verdict",
    "cokernel_of_theta_odd",
    "decide_simply_connected",
    "div_k_invariant",
    "kernel_of_theta",
    "l_coefficient",
    "l_group_free_abelian",
    "l_group_z",
    "normal_invariants_integral",
    "normal_invariants_rational",
    "pd_group_check",
    "structure_set",
    "theorem_b_check",
    "theorem_c_summary",
    "theorem_e_bound",
]

Z = FgAbelianGroup(1)
Z2 = FgAbelianGroup(0, (2,))
ZERO = FgAbelianGroup()


class SurgeryError(ValueError):
    pass


# ---------------------------------------------------------------- L-groups


def l_coefficient(m: int) -> FgAbelianGroup:
    """``L_m(Z)`` of the non-connective 4-periodic theory: Z, 0, Z/2, 0."""
    return (Z, ZERO, Z2, ZERO)[m % 4]


def l_group_z(n: int) -> FgAbelianGroup:
    """Homotopy of the 1-connective L-spectrum: ``l_coefficient(n)`` for ``n >= 1``, else 0."""
    return l_coefficient(n) if n >= 1 else ZERO


def _cyclic_order(g: FgAbelianGroup) -> int:
    return g.cyclic_order()


def l_group_free_abelian(n: int, r: int) -> FgAbelianGroup:
    """``L_n(Z[Z^r])`` via the splitting ``sum_j H_j(T^r; L_{n-j}(Z))``."""
    if r < 0:
        raise ValueError("r must be >= 0")
    total = ZERO
    for j in range(r + 1):
        total = total + l_coefficient(n - j) * math.comb(r, j)
    return total


# ---------------------------------------------------------------- normal invariants


def normal_invariants_rational(d: ManifoldDescriptor) -> list[tuple[int, int]]:
    """``[(n - 4k, b_{n-4k})]`` for ``0 < 4k < n``, the rational normal invariants."""
    _require_valid(d)
    n = d.dimension
    return [(n - 4 * k, d.betti(n - 4 * k)) for k in range(1, (n - 1) // 4 + 1)]


@dataclass(frozen=True)
class Summand:
    degree: int
    coefficient: FgAbelianGroup
    group: FgAbelianGroup

    def __str__(self) -> str:
        return f"H_{self.degree}(M; {self.coefficient}) = {self.group}"


def normal_invariants_integral(d: ManifoldDescriptor, m: int) -> list[Summand]:
    """Nonzero summands ``H_i(M; L_{m-i}(Z))``, ``0 <= i < m``, of ``H_m(M; L<1>)``.

    Only meaningful when the Atiyah-Hirzebruch spectral sequence collapses,
    which the descriptor must assert.
    """
    if not d.flags.ahss_collapses:
        raise SurgeryError("collapse not justified: descriptor does not assert ahss_collapses")
    out = []
    for i in range(m):
        coeff = l_group_z(m - i)
        if coeff.is_trivial:
            continue
        grp = d.homology.with_coefficients(i, _cyclic_order(coeff))
        if not grp.is_trivial:
            out.append(Summand(i, coeff, grp))
    return out


# ---------------------------------------------------------------- theta


def _group_rank(d: ManifoldDescriptor) -> int:
    if d.pi1.kind is Pi1Kind.TRIVIAL:
        return 0
    if d.pi1.kind is Pi1Kind.FREE_ABELIAN:
        return d.pi1.rank or 0
    raise SurgeryError(f"unsupported fundamental group {d.pi1}; need trivial or free abelian")


def _c_star(d: ManifoldDescriptor, j: int, r: int) -> list[list[int]]:
    """Matrix of ``c_*`` on ``FH_j``, shape ``C(r, j) x b_j``."""
    rows, cols = math.comb(r, j), d.betti(j)
    if d.pi1.kind is Pi1Kind.TRIVIAL:
        return [[1] * cols] if (j == 0 and rows) else [[0] * cols for _ in range(rows)]
    mat = d.c_matrix(j)
    if mat is None:
        if d.classifying_map is None:
            raise SurgeryError("missing classifying_map for a free abelian fundamental group")
        if rows and cols:
            raise SurgeryError(f"classifying_map has no matrix in degree {j}")
        return [[0] * cols for _ in range(rows)]
    if len(mat) != rows or any(len(row) != cols for row in mat):
        raise SurgeryError(f"classifying_map degree {j}: expected a {rows}x{cols} matrix")
    return [list(row) for row in mat]


def _diagonal(mat: list[list[int]]) -> list[int]:
    if not mat or not mat[0]:
        return []
    return smith_normal_form(mat).diagonal


def _kernel(mat: list[list[int]], cols: int, m: int) -> FgAbelianGroup:
    """Kernel of ``mat (x) Z/m`` on ``(Z/m)^cols`` (``m = 0``: over ``Z``)."""
    diag = _diagonal(mat)
    diag += [0] * (cols - len(diag))
    if m == 0:
        return FgAbelianGroup(sum(1 for x in diag[:cols] if x == 0))
    return FgAbelianGroup.make(0, [math.gcd(x, m) for x in diag[:cols]])


def _cokernel(mat: list[list[int]], rows: int, m: int) -> FgAbelianGroup:
    """Cokernel of ``mat (x) Z/m`` in ``(Z/m)^rows``."""
    diag = _diagonal(mat)
    diag += [0] * (rows - len(diag))
    if m == 0:
        return FgAbelianGroup.make(0, diag[:rows])
    return FgAbelianGroup.make(0, [math.gcd(x, m) for x in diag[:rows]])


def _require_valid(d: ManifoldDescriptor) -> None:
    problems = validate(d)
    if problems:
        raise SurgeryError("invalid descriptor: " + "; ".join(map(str, problems)))


def _require_theta_data(d: ManifoldDescriptor) -> int:
    r = _group_rank(d)
    if not d.flags.ahss_collapses:
        raise SurgeryError("collapse not justified: descriptor does not assert ahss_collapses")
    if d.pi1.kind is Pi1Kind.FREE_ABELIAN and d.classifying_map is None:
        raise SurgeryError("missing classifying_map for a free abelian fundamental group")
    return r


def _torsion_free_where_mapped(d: ManifoldDescriptor, i: int, r: int, m: int) -> None:
    # c_* is only recorded on free parts; torsion in a degree that maps to B pi is undecidable here
    if r == 0 and i > 0:
        return
    if d.homology[i].torsion or (m and i > 0 and d.homology[i - 1].torsion):
        raise SurgeryError(f"torsion in H_{i}(M) with a nontrivial map to B pi is not supported")


def kernel_of_theta(d: ManifoldDescriptor) -> FgAbelianGroup:
    """Kernel of ``theta: H_n(M; L<1>) -> L_n(Z pi)``, i.e. the image of the normal invariant map."""
    r = _require_theta_data(d)
    n = d.dimension
    total = ZERO
    for s in normal_invariants_integral(d, n):
        if s.degree == 0:
            continue  # assembly is injective on H_0
        m = _cyclic_order(s.coefficient)
        _torsion_free_where_mapped(d, s.degree, r, m)
        if r == 0:
            total = total + s.group
            continue
        mat = _c_star(d, s.degree, r)
        total = total + _kernel(mat, d.betti(s.degree), m)
    return total


def cokernel_of_theta_odd(d: ManifoldDescriptor) -> FgAbelianGroup:
    """Cokernel of ``theta: H_{n+1}(M; L<1>) -> L_{n+1}(Z pi)``, which acts on the structure set."""
    r = _require_theta_data(d)
    m = d.dimension + 1
    total = ZERO
    for j in range(r + 1):
        coeff = l_coefficient(m - j)
        if coeff.is_trivial:
            continue
        order = _cyclic_order(coeff)
        rows = math.comb(r, j)
        if j < m:
            _torsion_free_where_mapped(d, j, r, order)
            mat = _c_star(d, j, r)
        else:
            mat = [[] for _ in range(rows)]
        total = total + _cokernel(mat, rows, order)
    return total


@dataclass(frozen=True)
class ExtensionPresentation:
    """A short exact sequence ``0 -> sub -> S -> quotient -> 0``; the extension is not determined."""

    sub: FgAbelianGroup
    quotient: FgAbelianGroup

    @property
    def is_isomorphism(self) -> bool:
        return self.sub.is_trivial

    @property
    def is_infinite(self) -> bool:
        return not (self.sub.is_finite and self.quotient.is_finite)

    def __str__(self) -> str:
        if self.is_isomorphism:
            return f"S ≅ {self.quotient}"
        return f"0 → {self.sub} → S → {self.quotient} → 0"

    def to_dict(self) -> dict[str, Any]:
        return {"sub": self.sub.to_dict(), "quotient": self.quotient.to_dict(), "total": "unknown extension"}


def structure_set(d: ManifoldDescriptor) -> ExtensionPresentation:
    return ExtensionPresentation(sub=cokernel_of_theta_odd(d), quotient=kernel_of_theta(d))


def div_k_invariant(v: Sequence[int], d: ManifoldDescriptor, k: int, t: int = 1) -> int:
    """Divisibility of ``L_k`` given by its coordinates ``v`` in ``(1/r_k) FH^{4k}(M; Z)``.

    ``t`` only fixes which lattice the coordinates refer to; the divisibility
    itself is basis- and scale-free.
    """
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive")
    b = d.betti(4 * k)
    if len(v) != b:
        raise SurgeryError(f"vector has length {len(v)} but b_{4 * k} = {b}")
    return divisibility(v)


# ---------------------------------------------------------------- verdicts


class Status(str, Enum):
    INFINITE = "INFINITE"
    FINITE = "FINITE"
    SIZE_ONE = "SIZE_ONE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure with the hypotheses that were checked.

    A conclusive status is only ever built by :func:`_conclude`, which falls
    back to ``INCONCLUSIVE`` as soon as one hypothesis fails.
    """

    status: Status
    theorem: str
    hypotheses: tuple[Hypothesis, ...]
    witness: Mapping[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> list[Hypothesis]:
        return [h for h in self.hypotheses if not h.holds]

    @property
    def conclusive(self) -> bool:
        return self.status is not Status.INCONCLUSIVE

    def summary(self) -> str:
        if self.conclusive:
            detail = "; ".join(h.detail or h.name for h in self.hypotheses if h.detail)
            return f"{self.status.value} ({self.theorem}: {detail})"
        why = "; ".join(f"{h.name} fails" + (f" ({h.detail})" if h.detail else "") for h in self.failed)
        return f"INCONCLUSIVE ({self.theorem}: {why})"

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "theorem": self.theorem,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "witness": dict(self.witness),
        }


def _conclude(status: Status, theorem: str, hypotheses: Sequence[Hypothesis], witness=None) -> Verdict:
    hyps = tuple(hypotheses)
    if any(not h.holds for h in hyps):
        status = Status.INCONCLUSIVE
    return Verdict(status, theorem, hyps, dict(witness or {}))


SIMPLY_CONNECTED = "simply-connected criterion"
PARALLELIZABLE = "stably-parallelizable criterion"
LATTICE_PAIR = "lattice-pair criterion"
PD_GROUP = "Poincaré-duality-group criterion"
BOREL = "M_{r,g} criterion"


def _validity(d: ManifoldDescriptor) -> Hypothesis:
    problems = validate(d)
    return Hypothesis("descriptor valid", not problems, "; ".join(map(str, problems)))


def decide_simply_connected(d: ManifoldDescriptor) -> Verdict:
    """Infinitude of ``S(M)`` and ``M(M)`` for simply connected ``M``, ``n >= 5``.

    Both are infinite exactly when ``H^{4i}(M; Q) != 0`` for some ``0 < 4i < n``;
    the same verdict holds for the smooth sets of any smoothing.
    """
    if d.pi1.kind is not Pi1Kind.TRIVIAL:
        raise SurgeryError(f"fundamental group {d.pi1} is not trivial")
    n = d.dimension
    if n < 5:
        raise SurgeryError(f"dimension {n} < 5")
    hyps = [_validity(d), Hypothesis("pi_1 trivial", True), Hypothesis("n >= 5", True, f"n = {n}")]
    for i in range(1, (n - 1) // 4 + 1):
        b = d.betti(4 * i)
        if b > 0:
            hyps.append(Hypothesis("nonzero H^{4i}", True, f"b_{4 * i} = {b}, 0<{4 * i}<{n}"))
            return _conclude(Status.INFINITE, SIMPLY_CONNECTED, hyps, {"degree": 4 * i, "betti": b})
    hyps.append(Hypothesis("no nonzero H^{4i}", True, f"no nonzero H^{{4i}}, 0<4i<{n}"))
    return _conclude(Status.FINITE, SIMPLY_CONNECTED, hyps)


@dataclass(frozen=True)
class Parallelizable:
    pass


@dataclass(frozen=True)
class LatticePair:
    """Nested lattices ``L ⊂ L'`` in ``(1/r_k) FH^{4k}(M; Z)`` (coordinates)."""

    L: LatticeBasis
    L_prime: LatticeBasis
    k: int
    l_vector: tuple[int, ...] | None = None


@dataclass(frozen=True)
class PdGroup:
    c_matrices: Mapping[int, Sequence[Sequence[int]]]
    degree_of_c: int
    pd_dimension: int | None = None


Condition = Union[Parallelizable, LatticePair, PdGroup]


def _eta_image_infinite(d: ManifoldDescriptor, claimed: bool | None) -> Hypothesis:
    n = d.dimension
    if d.pi1.kind is Pi1Kind.TRIVIAL:
        total = sum(d.betti(n - 4 * k) for k in range(1, (n - 1) // 4 + 1))
        return Hypothesis("|eta(S(M))| infinite", total > 0, f"rational rank {total}")
    if d.pi1.kind is Pi1Kind.FREE_ABELIAN and d.flags.ahss_collapses and d.classifying_map is not None:
        try:
            rank = kernel_of_theta(d).free_rank
        except SurgeryError as exc:
            return Hypothesis("|eta(S(M))| infinite", False, str(exc))
        return Hypothesis("|eta(S(M))| infinite", rank > 0, f"ker(theta) has rank {rank}")
    if claimed is None:
        return Hypothesis("|eta(S(M))| infinite", False, "not verifiable from descriptor and not asserted")
    return Hypothesis("|eta(S(M))| infinite", bool(claimed), "asserted by caller")


def theorem_b_check(d: ManifoldDescriptor, condition: Condition, eta_image_infinite: bool | None = None) -> Verdict:
    """Sufficient conditions for ``|M^{s/h}(M)| = infinity`` when ``pi_1`` may be nontrivial.

    ``eta_image_infinite`` is the caller's evidence that the normal invariant
    map has infinite image; it is only used when the descriptor cannot
    certify this itself.
    """
    if isinstance(condition, PdGroup):
        base = pd_group_check(d, condition.c_matrices, condition.degree_of_c, condition.pd_dimension)
        extra = [_eta_image_infinite(d, eta_image_infinite)] if d.pi1.kind is Pi1Kind.TRIVIAL else []
        return _conclude(Status.INFINITE, base.theorem, (*base.hypotheses, *extra), base.witness)
    n = d.dimension
    hyps = [_validity(d), Hypothesis("n >= 5", n >= 5, f"n = {n}"), _eta_image_infinite(d, eta_image_infinite)]
    if isinstance(condition, Parallelizable):
        hyps.append(Hypothesis("stably parallelizable model", d.flags.stably_parallelizable))
        return _conclude(Status.INFINITE, PARALLELIZABLE, hyps)
    if isinstance(condition, LatticePair):
        return _lattice_pair(d, condition, hyps)
    raise SurgeryError(f"malformed condition payload {condition!r}")


def _lattice_pair(d: ManifoldDescriptor, cond: LatticePair, hyps: list[Hypothesis]) -> Verdict:
    n, k = d.dimension, cond.k
    b = d.betti(4 * k)
    if cond.L.ambient_rank != b or cond.L_prime.ambient_rank != b:
        raise SurgeryError(f"lattices must live in rank b_{4 * k} = {b}")
    hyps.append(Hypothesis("0 < 4k < n", 0 < 4 * k < n, f"4k = {4 * k}"))
    hyps.append(Hypothesis("L nonzero", cond.L.rank > 0))
    try:
        index = sublattice_index(cond.L, cond.L_prime)
        hyps.append(Hypothesis("L ⊂ L' of finite index", index != INFINITE, f"index {index}"))
    except LatticeError as exc:
        index = None
        hyps.append(Hypothesis("L ⊂ L' of finite index", False, str(exc)))
    vec = cond.l_vector if cond.l_vector is not None else d.l_vector(k)
    if vec is None:
        hyps.append(Hypothesis("L_k(M) ∈ L'", False, "no L_k(M) vector supplied"))
    else:
        try:
            coordinates(vec, cond.L_prime)
            hyps.append(Hypothesis("L_k(M) ∈ L'", True, f"L_{k}(M) = {tuple(vec)}"))
        except LatticeError:
            hyps.append(Hypothesis("L_k(M) ∈ L'", False, f"L_{k}(M) = {tuple(vec)}"))
    return _conclude(Status.INFINITE, LATTICE_PAIR, hyps, {"k": k, "index": index})


def pd_group_check(
    d: ManifoldDescriptor,
    c_matrices: Mapping[int, Sequence[Sequence[int]]],
    degree_of_c: int,
    pd_dimension: int | None = None,
) -> Verdict:
    """``|M^{s/h}(M)| = infinity`` when ``pi_1`` is an ``n``-dimensional PD group,
    ``c`` has nonzero degree and ``c_*`` on ``sum_{0<4k<n} H_{n-4k}`` has infinite kernel.
    """
    n = d.dimension
    if pd_dimension is None and d.pi1.kind is Pi1Kind.FREE_ABELIAN:
        pd_dimension = d.pi1.rank
    hyps = [
        _validity(d),
        Hypothesis("n >= 5", n >= 5, f"n = {n}"),
        Hypothesis("pi_1 nontrivial", d.pi1.kind is not Pi1Kind.TRIVIAL),
        Hypothesis("pi_1 is a PD group of dimension n", pd_dimension == n, f"declared dimension {pd_dimension}"),
        Hypothesis("deg(c) != 0", degree_of_c != 0, f"deg(c) = {degree_of_c}"),
    ]
    kernel_rank = 0
    for k in range(1, (n - 1) // 4 + 1):
        j = n - 4 * k
        cols = d.betti(j)
        mat = c_matrices.get(j)
        if mat is None:
            if cols:
                raise SurgeryError(f"no c_* matrix for degree {j}")
            continue
        mat = [list(row) for row in mat]
        if any(len(row) != cols for row in mat):
            raise SurgeryError(f"c_* matrix for degree {j} needs {cols} columns")
        if d.pi1.kind is Pi1Kind.FREE_ABELIAN and len(mat) != math.comb(d.pi1.rank or 0, j):
            raise SurgeryError(f"c_* matrix for degree {j} needs {math.comb(d.pi1.rank or 0, j)} rows")
        rank = smith_normal_form(mat).rank if mat and cols else 0
        kernel_rank += cols - rank
    hyps.append(Hypothesis("|ker c_*| infinite", kernel_rank > 0, f"kernel rank {kernel_rank}"))
    return _conclude(Status.INFINITE, PD_GROUP, hyps, {"kernel_rank": kernel_rank})


# ---------------------------------------------------------------- M_{r,g}


@dataclass(frozen=True)
class TheoremCSummary:
    structure_verdict: Verdict
    polarized_verdict: Verdict
    presentation: ExtensionPresentation

    @property
    def structure_set_infinite(self) -> bool | None:
        """``True`` when established, ``None`` (not established) otherwise."""
        return True if self.structure_verdict.status is Status.INFINITE else None

    @property
    def polarized_manifold_set_size_one(self) -> bool | None:
        return True if self.polarized_verdict.status is Status.SIZE_ONE else None


def theorem_c_summary(r: int, g: int, k: int) -> TheoremCSummary:
    """``|S(M_{r,g})|`` is infinite for ``r >= 3``; ``|M_pi(M_{r,g})| = 1`` once also ``g >= r + 3``."""
    if r < 1 or g < 0 or k < 1:
        raise ValueError("need r >= 1, g >= 0, k >= 1")
    pres = structure_set(builtin("mrg", [r, g, k]))
    u = math.comb(r, 3)
    s_hyps = [
        Hypothesis("r >= 3", r >= 3, f"r = {r}"),
        Hypothesis("im(omega) ≅ Z^u infinite", pres.sub.free_rank > 0, f"u = C({r},3) = {u}, sub = {pres.sub}"),
    ]
    m_hyps = [
        Hypothesis("r >= 3", r >= 3, f"r = {r}"),
        Hypothesis("g >= r + 3", g >= r + 3, f"g = {g}"),
    ]
    return TheoremCSummary(
        structure_verdict=_conclude(Status.INFINITE, BOREL, s_hyps, {"u": u}),
        polarized_verdict=_conclude(Status.SIZE_ONE, BOREL, m_hyps),
        presentation=pres,
    )


def theorem_e_bound(r: int, g: int, k: int, theta_orders: Sequence[int] | None = None) -> int:
    """Upper bound on the smooth polarized manifold set of ``M_{r,g}``.

    ``theta_orders = (|Theta_{4k+2}|, |Theta_{4k+1}/bP_{4k+2}|, |Theta_{4k}|)``
    is supplied by the caller; it is ignored for ``k = 1``, where the bound is 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return 1
    if theta_orders is None or len(theta_orders) != 3:
        raise ValueError("k >= 2 needs three exotic-sphere group orders")
    a, b, c = (int(x) for x in theta_orders)
    if min(a, b, c) < 1:
        raise ValueError("group orders must be positive")
    return a + r * b + math.comb(r, 2) * c

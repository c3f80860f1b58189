"""Abelian groups, graded groups, manifold descriptors and the built-in examples.

Homology here is input data or formula-generated; nothing is computed from
cell complexes. Descriptors round-trip through a JSON file format whose
fields mirror :class:`ManifoldDescriptor`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .lattice import smith_normal_form
from .lpoly import GradedPoly, denominator_constants, evaluate_l_class

__all__ = [
    "BUILTIN_NAMES",
    "DescriptorError",
    "FgAbelianGroup",
    "Flags",
    "GradedGroup",
    "ManifoldDescriptor",
    "Pi1",
    "Pi1Kind",
    "Violation",
    "builtin",
    "descriptor_from_dict",
    "descriptor_to_dict",
    "dump_descriptor",
    "k_complex_homology",
    "load_descriptor",
    "parse_builtin_spec",
    "pontryagin_of_cpn",
    "torus_homology",
    "validate",
]


class DescriptorError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/t_1 + ... + Z/t_m`` with ``t_1 | t_2 | ... | t_m`` and ``t_1 >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = tuple(int(x) for x in self.torsion)
        if any(x < 2 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not an invariant-factor chain; use FgAbelianGroup.make")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def make(cls, free_rank: int = 0, cyclic_orders: Iterable[int] = ()) -> "FgAbelianGroup":
        """Normalise any list of cyclic orders (0 meaning ``Z``, 1 trivial) to invariant factors."""
        orders = [abs(int(x)) for x in cyclic_orders]
        free_rank += orders.count(0)
        orders = [x for x in orders if x > 1]
        if not orders:
            return cls(free_rank)
        diag = smith_normal_form([[x if i == j else 0 for j in range(len(orders))] for i, x in enumerate(orders)])
        return cls(free_rank, tuple(d for d in diag.diagonal if d > 1))

    @classmethod
    def cyclic(cls, order: int) -> "FgAbelianGroup":
        return cls.make(0, [order])

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls()

    @classmethod
    def integers(cls, rank: int = 1) -> "FgAbelianGroup":
        return cls(rank)

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.make(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __mul__(self, n: int) -> "FgAbelianGroup":
        """Direct sum of ``n`` copies."""
        return FgAbelianGroup.make(self.free_rank * n, self.torsion * n)

    __rmul__ = __mul__

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | float:
        return math.inf if self.free_rank else math.prod(self.torsion)

    def elementary_divisors(self) -> list[int]:
        from sympy import factorint

        out = []
        for t in self.torsion:
            out += [p**e for p, e in factorint(t).items()]
        return sorted(out)

    def tensor_cyclic(self, m: int) -> "FgAbelianGroup":
        """``self (x) Z/m``; ``m = 0`` means ``Z``."""
        if m == 0:
            return self
        return FgAbelianGroup.make(0, [m] * self.free_rank + [math.gcd(t, m) for t in self.torsion])

    def tor_cyclic(self, m: int) -> "FgAbelianGroup":
        """``Tor(self, Z/m)``; zero when ``m = 0``."""
        if m == 0:
            return FgAbelianGroup()
        return FgAbelianGroup.make(0, [math.gcd(t, m) for t in self.torsion])

    def cyclic_order(self) -> int:
        """For a cyclic group, its order with ``Z`` reported as 0."""
        if self.free_rank == 1 and not self.torsion:
            return 0
        if self.free_rank == 0 and len(self.torsion) <= 1:
            return self.torsion[0] if self.torsion else 1
        raise ValueError(f"{self} is not cyclic")

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        runs: list[list[int]] = []
        for t in self.torsion:
            if runs and runs[-1][0] == t:
                runs[-1][1] += 1
            else:
                runs.append([t, 1])
        for t, count in runs:
            parts.append(f"Z/{t}" if count == 1 else f"(Z/{t})^{count}")
        return " ⊕ ".join(parts)

    def to_dict(self) -> dict[str, Any]:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class GradedGroup:
    """Degree -> group, with trivial groups left out."""

    groups: tuple[tuple[int, FgAbelianGroup], ...] = ()

    def __post_init__(self) -> None:
        cleaned = {}
        for deg, grp in self.groups:
            if deg < 0:
                raise ValueError("negative degree")
            if deg in cleaned:
                raise ValueError(f"degree {deg} given twice")
            if not grp.is_trivial:
                cleaned[deg] = grp
        object.__setattr__(self, "groups", tuple(sorted(cleaned.items())))

    @classmethod
    def from_mapping(cls, groups: Mapping[int, FgAbelianGroup]) -> "GradedGroup":
        return cls(tuple(groups.items()))

    @classmethod
    def free(cls, ranks: Mapping[int, int] | Sequence[int]) -> "GradedGroup":
        items = ranks.items() if isinstance(ranks, Mapping) else enumerate(ranks)
        return cls(tuple((d, FgAbelianGroup(r)) for d, r in items))

    def __getitem__(self, degree: int) -> FgAbelianGroup:
        return dict(self.groups).get(degree, FgAbelianGroup())

    def rank(self, degree: int) -> int:
        return self[degree].free_rank

    def degrees(self) -> list[int]:
        return [d for d, _ in self.groups]

    @property
    def top_degree(self) -> int:
        return max(self.degrees(), default=0)

    def ranks(self, upto: int | None = None) -> tuple[int, ...]:
        top = self.top_degree if upto is None else upto
        return tuple(self.rank(d) for d in range(top + 1))

    def with_coefficients(self, degree: int, m: int) -> FgAbelianGroup:
        """``H_degree(-; Z/m)`` by universal coefficients (``m = 0`` is ``Z``)."""
        return self[degree].tensor_cyclic(m) + (self[degree - 1].tor_cyclic(m) if degree > 0 else FgAbelianGroup())

    def __str__(self) -> str:
        return ", ".join(f"H_{d} = {g}" for d, g in self.groups) or "0"


def torus_homology(r: int) -> GradedGroup:
    if r < 0:
        raise ValueError("r must be >= 0")
    return GradedGroup.free({j: math.comb(r, j) for j in range(r + 1)})


def k_complex_homology(r: int) -> GradedGroup:
    """Homology of the 2-skeleton of the product cell structure on ``T^r``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return GradedGroup.free({0: 1, 1: r, 2: math.comb(r, 2)})


class Pi1Kind(str, Enum):
    TRIVIAL = "TRIVIAL"
    FREE_ABELIAN = "FREE_ABELIAN"
    OTHER = "OTHER"


@dataclass(frozen=True)
class Pi1:
    kind: Pi1Kind
    rank: int | None = None
    label: str | None = None

    @classmethod
    def trivial(cls) -> "Pi1":
        return cls(Pi1Kind.TRIVIAL)

    @classmethod
    def free_abelian(cls, r: int) -> "Pi1":
        return cls(Pi1Kind.FREE_ABELIAN, rank=r)

    @classmethod
    def other(cls, label: str) -> "Pi1":
        return cls(Pi1Kind.OTHER, label=label)

    def __str__(self) -> str:
        if self.kind is Pi1Kind.TRIVIAL:
            return "1"
        if self.kind is Pi1Kind.FREE_ABELIAN:
            return f"Z^{self.rank}"
        return self.label or "?"


@dataclass(frozen=True)
class Flags:
    stably_parallelizable: bool = False
    ahss_collapses: bool = False
    orientable: bool = True


IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Everything the decision procedures need to know about a closed manifold ``M``.

    ``classifying_map`` holds, per degree ``j``, the matrix of
    ``c_*: H_j(M) -> H_j(B pi)`` on free parts (rows index the target).
    ``l_class`` holds, per ``k``, the coordinates of ``L_k(M)`` in the lattice
    ``(1/r_k) FH^{4k}(M; Z)``.
    """

    name: str
    dimension: int
    pi1: Pi1
    homology: GradedGroup
    wedge_model: tuple[tuple[int, int], ...] | None = None
    classifying_map: tuple[tuple[int, IntMatrix], ...] | None = None
    l_class: tuple[tuple[int, tuple[int, ...]], ...] | None = None
    flags: Flags = field(default_factory=Flags)

    def betti(self, degree: int) -> int:
        return self.homology.rank(degree)

    def c_matrix(self, degree: int) -> IntMatrix | None:
        if self.classifying_map is None:
            return None
        return dict(self.classifying_map).get(degree)

    def l_vector(self, k: int) -> tuple[int, ...] | None:
        if self.l_class is None:
            return None
        return dict(self.l_class).get(k)


@dataclass(frozen=True)
class Violation:
    invariant: str
    degree: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        tag = self.invariant if self.degree is None else f"{self.invariant}({self.degree})"
        return f"{tag}: {self.detail}" if self.detail else tag


def _bpi_rank(pi1: Pi1, degree: int) -> int | None:
    if pi1.kind is Pi1Kind.TRIVIAL:
        return int(degree == 0)
    if pi1.kind is Pi1Kind.FREE_ABELIAN:
        return math.comb(pi1.rank or 0, degree)
    return None


def validate(d: ManifoldDescriptor) -> list[Violation]:
    out: list[Violation] = []
    n = d.dimension
    H = d.homology
    if n < 0:
        out.append(Violation("Dimension", None, "negative dimension"))
    for deg in H.degrees():
        if deg > n:
            out.append(Violation("DegreeRange", deg, f"homology above dimension {n}"))
    if H[0] != FgAbelianGroup(1):
        out.append(Violation("H0", 0, f"H_0 = {H[0]}, expected Z"))
    if d.flags.orientable:
        for j in range(n + 1):
            if H.rank(j) != H.rank(n - j):
                out.append(Violation("PoincareDuality", j, f"b_{j} = {H.rank(j)} but b_{n - j} = {H.rank(n - j)}"))
        if n >= 0 and H.rank(n) != 1:
            out.append(Violation("FundamentalClass", n, "orientable closed manifold needs H_n = Z"))
    if d.pi1.kind is Pi1Kind.TRIVIAL and not H[1].is_trivial:
        out.append(Violation("SimplyConnectedH1", 1, f"H_1 = {H[1]}"))
    if d.pi1.kind is Pi1Kind.FREE_ABELIAN:
        if d.pi1.rank is None or d.pi1.rank < 0:
            out.append(Violation("Pi1Rank", None, "free abelian fundamental group needs a rank"))
        elif H[1] != FgAbelianGroup(d.pi1.rank):
            out.append(Violation("Pi1Abelianization", 1, f"H_1 = {H[1]} but pi_1 = Z^{d.pi1.rank}"))
    if d.wedge_model is not None:
        counts: dict[int, int] = {}
        for deg, c in d.wedge_model:
            if deg < 1 or c < 0:
                out.append(Violation("WedgeModel", deg, "sphere degrees must be >= 1 and counts >= 0"))
            counts[deg] = counts.get(deg, 0) + c
        for j in range(1, max([n, *counts]) + 1):
            if counts.get(j, 0) != H.rank(j):
                out.append(Violation("WedgeModel", j, f"wedge gives rank {counts.get(j, 0)}, homology {H.rank(j)}"))
    if d.flags.ahss_collapses:
        for deg, grp in H.groups:
            if grp.torsion:
                out.append(Violation("TorsionWithCollapse", deg, "collapse is only justified for torsion-free wedge types"))
    if d.classifying_map is not None:
        seen = set()
        for deg, mat in d.classifying_map:
            if deg in seen:
                out.append(Violation("ClassifyingMap", deg, "degree given twice"))
            seen.add(deg)
            cols = H.rank(deg)
            rows = _bpi_rank(d.pi1, deg)
            if any(len(row) != cols for row in mat):
                out.append(Violation("ClassifyingMap", deg, f"matrix needs {cols} columns"))
            if rows is not None and len(mat) != rows:
                out.append(Violation("ClassifyingMap", deg, f"matrix needs {rows} rows"))
    if d.l_class is not None:
        for k, vec in d.l_class:
            if k < 1 or 4 * k > n:
                out.append(Violation("LClass", k, "L_k needs 0 < 4k <= n"))
            elif len(vec) != H.rank(4 * k):
                out.append(Violation("LClass", k, f"vector length {len(vec)} but b_{4 * k} = {H.rank(4 * k)}"))
    return out


# ---------------------------------------------------------------- built-ins

BUILTIN_NAMES = ("sphere", "cpn", "wg", "mrg", "torus")


def _zero_l_class(H: GradedGroup, n: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    return tuple((k, (0,) * H.rank(4 * k)) for k in range(1, n // 4 + 1) if 4 * k < n)


def _sphere(n: int) -> ManifoldDescriptor:
    if n < 1:
        raise DescriptorError("sphere needs n >= 1")
    H = GradedGroup.free({0: 1, n: 1})
    return ManifoldDescriptor(
        name=f"S^{n}",
        dimension=n,
        pi1=Pi1.trivial(),
        homology=H,
        wedge_model=((n, 1),),
        l_class=_zero_l_class(H, n),
        flags=Flags(stably_parallelizable=True, ahss_collapses=True),
    )


def cpn_l_class(n: int, t: int = 1) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Coordinates of ``L_k(CP^n)`` in ``(1/r_k) FH^{4k}`` from ``p = (1 + x^2)^{n+1}``."""
    top = 2 * n
    p = pontryagin_of_cpn(n)
    out = []
    for k in range(1, n // 2 + 1):
        if 4 * k >= top:
            break
        coeff = evaluate_l_class(p, k).coefficient((2 * k,))
        scaled = coeff * denominator_constants(k, t).r
        if scaled.denominator != 1:
            raise ArithmeticError("L-class not integral after scaling")
        out.append((k, (int(scaled),)))
    return tuple(out)


def _cpn(n: int, t: int = 1) -> ManifoldDescriptor:
    if n < 1:
        raise DescriptorError("cpn needs n >= 1")
    H = GradedGroup.free({2 * i: 1 for i in range(n + 1)})
    return ManifoldDescriptor(
        name=f"CP^{n}",
        dimension=2 * n,
        pi1=Pi1.trivial(),
        homology=H,
        l_class=cpn_l_class(n, t),
        flags=Flags(stably_parallelizable=False, ahss_collapses=True),
    )


def _wg(g: int, k: int) -> ManifoldDescriptor:
    if g < 0 or k < 1:
        raise DescriptorError("wg needs g >= 0 and k >= 1")
    n = 8 * k
    H = GradedGroup.free({0: 1, 4 * k: 2 * g, n: 1})
    return ManifoldDescriptor(
        name=f"W_{g} (k={k})",
        dimension=n,
        pi1=Pi1.trivial(),
        homology=H,
        wedge_model=((4 * k, 2 * g), (n, 1)),
        l_class=_zero_l_class(H, n),
        flags=Flags(stably_parallelizable=True, ahss_collapses=True),
    )


def _merge_counts(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for deg, c in pairs:
        if c:
            counts[deg] = counts.get(deg, 0) + c
    return tuple(sorted(counts.items()))


def _mrg(r: int, g: int, k: int) -> ManifoldDescriptor:
    if r < 1 or g < 0 or k < 1:
        raise DescriptorError("mrg needs r >= 1, g >= 0, k >= 1")
    n = 4 * k + 2
    s = math.comb(r, 2)
    wedge = _merge_counts([(1, r), (2, s), (2 * k + 1, 2 * g), (4 * k, s), (4 * k + 1, r), (4 * k + 2, 1)])
    ranks = {0: 1, **dict(wedge)}
    H = GradedGroup.free(ranks)
    cmap = []
    for j in range(n + 1):
        rows, cols = math.comb(r, j), H.rank(j)
        if j <= 2:
            mat = tuple(tuple(int(a == b) for b in range(cols)) for a in range(rows))
        else:
            mat = tuple((0,) * cols for _ in range(rows))
        cmap.append((j, mat))
    return ManifoldDescriptor(
        name=f"M_{{{r},{g}}} (k={k})",
        dimension=n,
        pi1=Pi1.free_abelian(r),
        homology=H,
        wedge_model=wedge,
        classifying_map=tuple(cmap),
        l_class=_zero_l_class(H, n),
        flags=Flags(stably_parallelizable=True, ahss_collapses=True),
    )


def _torus(r: int) -> ManifoldDescriptor:
    if r < 1:
        raise DescriptorError("torus needs r >= 1")
    H = torus_homology(r)
    cmap = tuple(
        (j, tuple(tuple(int(a == b) for b in range(math.comb(r, j))) for a in range(math.comb(r, j))))
        for j in range(r + 1)
    )
    return ManifoldDescriptor(
        name=f"T^{r}",
        dimension=r,
        pi1=Pi1.free_abelian(r),
        homology=H,
        wedge_model=tuple((j, math.comb(r, j)) for j in range(1, r + 1)),
        classifying_map=cmap,
        l_class=_zero_l_class(H, r),
        flags=Flags(stably_parallelizable=True, ahss_collapses=True),
    )


_ARITY = {"sphere": 1, "cpn": 1, "wg": 2, "mrg": 3, "torus": 1}


def builtin(name: str, params: Sequence[int], t: int = 1) -> ManifoldDescriptor:
    """Built-in descriptors: ``sphere(n)``, ``cpn(n)``, ``wg(g, k)``, ``mrg(r, g, k)``, ``torus(r)``."""
    if name not in _ARITY:
        raise DescriptorError(f"unknown built-in {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    params = [int(p) for p in params]
    if len(params) != _ARITY[name]:
        raise DescriptorError(f"{name} takes {_ARITY[name]} parameter(s), got {len(params)}")
    if name == "sphere":
        return _sphere(*params)
    if name == "cpn":
        return _cpn(params[0], t)
    if name == "wg":
        return _wg(*params)
    if name == "mrg":
        return _mrg(*params)
    return _torus(*params)


def parse_builtin_spec(text: str) -> tuple[str, list[int]]:
    """``"mrg:3,6,1"`` -> ``("mrg", [3, 6, 1])``."""
    name, _, rest = text.partition(":")
    try:
        params = [int(x) for x in rest.split(",") if x.strip()]
    except ValueError as exc:
        raise DescriptorError(f"bad built-in parameters in {text!r}") from exc
    return name.strip(), params


# ---------------------------------------------------------------- JSON

_TOP_FIELDS = {"name", "dimension", "pi1", "homology", "wedge_model", "classifying_map", "l_class", "flags"}


def descriptor_to_dict(d: ManifoldDescriptor) -> dict[str, Any]:
    pi1: dict[str, Any] = {"type": d.pi1.kind.value}
    if d.pi1.rank is not None:
        pi1["rank"] = d.pi1.rank
    if d.pi1.label is not None:
        pi1["label"] = d.pi1.label
    out: dict[str, Any] = {
        "name": d.name,
        "dimension": d.dimension,
        "pi1": pi1,
        "homology": [{"degree": deg, **grp.to_dict()} for deg, grp in d.homology.groups],
    }
    if d.wedge_model is not None:
        out["wedge_model"] = [{"degree": deg, "count": c} for deg, c in d.wedge_model]
    if d.classifying_map is not None:
        out["classifying_map"] = [{"degree": deg, "matrix": [list(row) for row in m]} for deg, m in d.classifying_map]
    if d.l_class is not None:
        out["l_class"] = [{"k": k, "vector": list(v)} for k, v in d.l_class]
    out["flags"] = {
        "stably_parallelizable": d.flags.stably_parallelizable,
        "ahss_collapses": d.flags.ahss_collapses,
        "orientable": d.flags.orientable,
    }
    return out


def _check_keys(obj: Any, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise DescriptorError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise DescriptorError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DescriptorError(f"{where}: missing field(s) {sorted(missing)}")


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DescriptorError(f"{where}: expected an integer, got {x!r}")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise DescriptorError(f"{where}: expected an array")
    return x


def descriptor_from_dict(data: Mapping[str, Any]) -> ManifoldDescriptor:
    _check_keys(data, _TOP_FIELDS, {"name", "dimension", "pi1", "homology"}, "descriptor")
    if not isinstance(data["name"], str):
        raise DescriptorError("name: expected a string")
    _check_keys(data["pi1"], {"type", "rank", "label"}, {"type"}, "pi1")
    try:
        kind = Pi1Kind(data["pi1"]["type"])
    except ValueError as exc:
        raise DescriptorError(f"pi1.type: unknown {data['pi1']['type']!r}") from exc
    rank = data["pi1"].get("rank")
    pi1 = Pi1(kind, None if rank is None else _int(rank, "pi1.rank"), data["pi1"].get("label"))
    groups = []
    for i, entry in enumerate(_list(data["homology"], "homology")):
        _check_keys(entry, {"degree", "free_rank", "torsion"}, {"degree", "free_rank"}, f"homology[{i}]")
        torsion = [_int(t, f"homology[{i}].torsion") for t in _list(entry.get("torsion", []), "torsion")]
        try:
            grp = FgAbelianGroup(_int(entry["free_rank"], f"homology[{i}].free_rank"), tuple(torsion))
            groups.append((_int(entry["degree"], f"homology[{i}].degree"), grp))
        except ValueError as exc:
            raise DescriptorError(f"homology[{i}]: {exc}") from exc
    try:
        homology = GradedGroup(tuple(groups))
    except ValueError as exc:
        raise DescriptorError(f"homology: {exc}") from exc
    wedge = None
    if "wedge_model" in data:
        wedge = []
        for i, entry in enumerate(_list(data["wedge_model"], "wedge_model")):
            _check_keys(entry, {"degree", "count"}, {"degree", "count"}, f"wedge_model[{i}]")
            wedge.append((_int(entry["degree"], "wedge_model.degree"), _int(entry["count"], "wedge_model.count")))
        wedge = tuple(wedge)
    cmap = None
    if "classifying_map" in data:
        cmap = []
        for i, entry in enumerate(_list(data["classifying_map"], "classifying_map")):
            _check_keys(entry, {"degree", "matrix"}, {"degree", "matrix"}, f"classifying_map[{i}]")
            rows = tuple(
                tuple(_int(x, f"classifying_map[{i}].matrix") for x in _list(row, "matrix row"))
                for row in _list(entry["matrix"], "matrix")
            )
            cmap.append((_int(entry["degree"], "classifying_map.degree"), rows))
        cmap = tuple(cmap)
    lcls = None
    if "l_class" in data:
        lcls = []
        for i, entry in enumerate(_list(data["l_class"], "l_class")):
            _check_keys(entry, {"k", "vector"}, {"k", "vector"}, f"l_class[{i}]")
            vec = tuple(_int(x, f"l_class[{i}].vector") for x in _list(entry["vector"], "vector"))
            lcls.append((_int(entry["k"], "l_class.k"), vec))
        lcls = tuple(lcls)
    flags = Flags()
    if "flags" in data:
        fl = data["flags"]
        _check_keys(fl, {"stably_parallelizable", "ahss_collapses", "orientable"}, set(), "flags")
        for key, val in fl.items():
            if not isinstance(val, bool):
                raise DescriptorError(f"flags.{key}: expected a boolean")
        flags = Flags(**fl)
    return ManifoldDescriptor(
        name=data["name"],
        dimension=_int(data["dimension"], "dimension"),
        pi1=pi1,
        homology=homology,
        wedge_model=wedge,
        classifying_map=cmap,
        l_class=lcls,
        flags=flags,
    )


def load_descriptor(path: str | Path) -> ManifoldDescriptor:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path} is not valid JSON: {exc}") from exc
    return descriptor_from_dict(data)


def dump_descriptor(d: ManifoldDescriptor, path: str | Path) -> None:
    Path(path).write_text(json.dumps(descriptor_to_dict(d), indent=2) + "\n", encoding="utf-8")


def pontryagin_of_cpn(n: int) -> GradedPoly:
    """Total Pontryagin class ``(1 + x^2)^{n+1}`` of ``CP^n``, ``x`` in degree 2."""
    x = GradedPoly.generator(0, (2,), top=2 * n)
    return (GradedPoly.one((2,), 2 * n) + x * x) ** (n + 1)


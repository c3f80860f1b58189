"""Integer lattices: Smith normal form, coordinates, indices and divisibility.

Vectors are tuples of Python ints; matrices are lists of rows. A lattice is
given by a basis of linearly independent integer vectors in ``Z^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

from sympy import nextprime

__all__ = [
    "INFINITE",
    "AffineSublattice",
    "Cancelled",
    "LatticeBasis",
    "LatticeError",
    "NotFullError",
    "NotInLatticeError",
    "PrimeDividesIndexError",
    "SmithDecomposition",
    "coordinates",
    "divisibility",
    "divisibility_spectrum",
    "identity",
    "matmul",
    "prime_witness",
    "rank",
    "smith_normal_form",
    "spectrum_witnesses",
    "sublattice_index",
]

INFINITE = math.inf

Matrix = list[list[int]]
Vector = tuple[int, ...]


class LatticeError(ValueError):
    pass


class NotInLatticeError(LatticeError):
    pass


class NotFullError(LatticeError):
    pass


class PrimeDividesIndexError(LatticeError):
    pass


class Cancelled(RuntimeError):
    pass


class CancelToken(Protocol):
    def is_set(self) -> bool: ...


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(a))]


def _matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U * A * V = D`` with ``U``, ``V`` unimodular and ``D`` diagonal, ``d_1 | d_2 | ...``."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Pivot is the smallest nonzero absolute value in the remaining block, ties
    broken by lowest row then lowest column, so results are reproducible.
    """
    m = len(A)
    if m == 0 or len(A[0]) == 0:
        raise ValueError("matrix must have at least one row and one column")
    n = len(A[0])
    D = [[int(x) for x in row] for row in A]
    if any(len(row) != n for row in D):
        raise ValueError("ragged matrix")
    U = identity(m)
    V = identity(n)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, f: int) -> None:
        # row_dst += f * row_src
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src: int, dst: int, f: int) -> None:
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(D[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                return SmithDecomposition(U=U, D=D, V=V)
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(t, i, -q)
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(t, j, -q)
                if D[t][j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(U=U, D=D, V=V)


def rank(A: Sequence[Sequence[int]]) -> int:
    if not A or not A[0]:
        return 0
    return smith_normal_form(A).rank


@dataclass(frozen=True)
class LatticeBasis:
    """A lattice in ``Z^ambient_rank`` spanned by linearly independent ``vectors``."""

    ambient_rank: int
    vectors: tuple[Vector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vectors", tuple(tuple(int(x) for x in v) for v in self.vectors))
        if any(len(v) != self.ambient_rank for v in self.vectors):
            raise LatticeError("basis vector length differs from ambient rank")
        if self.vectors and rank(self.vectors) != len(self.vectors):
            raise LatticeError("basis vectors are linearly dependent")

    @classmethod
    def standard(cls, n: int) -> "LatticeBasis":
        return cls(n, tuple(tuple(row) for row in identity(n)))

    @classmethod
    def of(cls, vectors: Iterable[Iterable[int]], ambient_rank: int | None = None) -> "LatticeBasis":
        vecs = tuple(tuple(v) for v in vectors)
        if ambient_rank is None:
            if not vecs:
                raise LatticeError("ambient rank needed for an empty basis")
            ambient_rank = len(vecs[0])
        return cls(ambient_rank, vecs)

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def matrix(self) -> Matrix:
        """Basis vectors as columns (``ambient_rank x rank``)."""
        return _transpose(self.vectors, self.ambient_rank) if self.vectors else [[] for _ in range(self.ambient_rank)]

    def transform(self, U: Sequence[Sequence[int]]) -> "LatticeBasis":
        return LatticeBasis(self.ambient_rank, tuple(tuple(_matvec(U, v)) for v in self.vectors))


def coordinates(x: Sequence[int], L: LatticeBasis) -> Vector:
    """Integer coordinates of ``x`` in the basis of ``L``."""
    x = [int(c) for c in x]
    if len(x) != L.ambient_rank:
        raise LatticeError("vector length differs from ambient rank")
    if L.rank == 0:
        if any(x):
            raise NotInLatticeError("nonzero vector in the zero lattice")
        return ()
    snf = smith_normal_form(L.matrix())
    ux = _matvec(snf.U, x)
    diag = snf.diagonal
    y = []
    for i, val in enumerate(ux):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if val:
                raise NotInLatticeError(f"{tuple(x)} is not in the lattice")
            continue
        if val % d:
            raise NotInLatticeError(f"{tuple(x)} is not an integer combination of the basis")
        y.append(val // d)
    y += [0] * (L.rank - len(y))
    return tuple(_matvec(snf.V, y))


def divisibility(x: Sequence[int], L: LatticeBasis | None = None) -> int:
    """Largest ``d`` with ``x = d * x0`` for ``x0`` in ``L``; ``0`` for ``x = 0``.

    ``L`` defaults to the standard lattice.
    """
    coords = tuple(int(c) for c in x) if L is None else coordinates(x, L)
    return math.gcd(*coords) if coords else 0


def sublattice_index(L0: LatticeBasis, L: LatticeBasis) -> int | float:
    """``|L / L0|``, or ``INFINITE`` if ``L0`` has smaller rank."""
    if L0.ambient_rank != L.ambient_rank:
        raise LatticeError("lattices live in different ambient spaces")
    try:
        coords = [coordinates(v, L) for v in L0.vectors]
    except NotInLatticeError as exc:
        raise LatticeError("not a sublattice") from exc
    if L0.rank < L.rank:
        return INFINITE
    if L.rank == 0:
        return 1
    return math.prod(smith_normal_form(_transpose(coords)).diagonal)


@dataclass(frozen=True)
class AffineSublattice:
    """The coset ``offset + sublattice`` inside the standard lattice ``Z^n``."""

    offset: Vector
    sublattice: LatticeBasis

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", tuple(int(x) for x in self.offset))
        if len(self.offset) != self.sublattice.ambient_rank:
            raise LatticeError("offset length differs from ambient rank")

    @property
    def ambient_rank(self) -> int:
        return self.sublattice.ambient_rank

    def index(self) -> int | float:
        return sublattice_index(self.sublattice, LatticeBasis.standard(self.ambient_rank))

    def contains(self, x: Sequence[int]) -> bool:
        diff = [a - b for a, b in zip(x, self.offset)]
        try:
            coordinates(diff, self.sublattice)
        except NotInLatticeError:
            return False
        return True


def _centered(a: int, p: int) -> int:
    a %= p
    return a - p if a > p // 2 else a


def prime_witness(S: AffineSublattice, p: int) -> Vector:
    """An element of ``S`` whose divisibility is a multiple of the prime ``p``.

    Solves ``offset = l_p (mod p)`` for ``l_p`` in the sublattice, which is
    possible because reduction mod ``p`` is onto when ``p`` does not divide the
    index, and returns ``offset - l_p``.
    """
    index = S.index()
    if index == INFINITE:
        raise NotFullError("sublattice is not of finite index")
    if math.gcd(p, int(index)) != 1:
        raise PrimeDividesIndexError(f"{p} divides the index {index}")
    B = S.sublattice.matrix()
    snf = smith_normal_form(B)
    ux = _matvec(snf.U, S.offset)
    y = [_centered(v * pow(d, -1, p), p) for v, d in zip(ux, snf.diagonal)]
    c = [_centered(v, p) for v in _matvec(snf.V, y)]
    lp = _matvec(B, c)
    return tuple(a - b for a, b in zip(S.offset, lp))


def spectrum_witnesses(
    S: AffineSublattice, count: int, cancel: CancelToken | None = None
) -> list[tuple[int, Vector]]:
    """``count`` pairs ``(div, element)`` of ``S`` with pairwise distinct divisibilities.

    Walks the primes in increasing order, skipping divisors of the index.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if S.ambient_rank == 0:
        raise LatticeError("the zero lattice has only one divisibility")
    index = S.index()
    if index == INFINITE:
        raise NotFullError("sublattice is not of finite index")
    found: dict[int, Vector] = {}
    p = 1
    while len(found) < count:
        if cancel is not None and cancel.is_set():
            raise Cancelled("divisibility spectrum search cancelled")
        p = nextprime(p)
        if index % p == 0:
            continue
        w = prime_witness(S, p)
        d = divisibility(w)
        if d in found:
            # shifting by p * (basis vector) stays in S and keeps p | div
            for b in S.sublattice.vectors:
                shifted = tuple(x + p * y for x, y in zip(w, b))
                if divisibility(shifted) not in found:
                    w, d = shifted, divisibility(shifted)
                    break
        found.setdefault(d, w)
    return sorted(found.items())


def divisibility_spectrum(S: AffineSublattice, count: int, cancel: CancelToken | None = None) -> list[int]:
    return [d for d, _ in spectrum_witnesses(S, count, cancel)]

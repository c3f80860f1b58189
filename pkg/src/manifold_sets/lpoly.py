"""Hirzebruch L-polynomials with exact rational coefficients.

The L-polynomial of degree ``k`` is the weight-``k`` part of the product
``Q(x_1) ... Q(x_k)`` where ``Q(x) = sqrt(x) / tanh(sqrt(x))``, rewritten in
the elementary symmetric functions ``p_j = e_j(x_1, ..., x_k)``.

>>> str(l_polynomial(2))
'7/45 p2 - 1/45 p1^2'
>>> denominator_constants(2).c
45
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, lcm
from typing import Iterable, Mapping

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "DenominatorConstants",
    "GradedPoly",
    "LPolynomial",
    "denominator_constants",
    "evaluate_l_class",
    "l_polynomial",
    "partitions",
    "q_series",
    "total_l_class",
]

DEFAULT_MAX_DEGREE = 8

Partition = tuple[int, ...]


def partitions(n: int, largest: int | None = None) -> list[Partition]:
    """Partitions of ``n`` as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def _truncated_divide(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    # power series num/den, den[0] != 0, truncated to len(num)
    out: list[Fraction] = []
    for n in range(len(num)):
        acc = num[n] - sum(out[i] * den[n - i] for i in range(n) if n - i < len(den))
        out.append(acc / den[0])
    return out


def q_series(max_degree: int) -> list[Fraction]:
    """Coefficients ``q_0 .. q_max_degree`` of ``sqrt(x)/tanh(sqrt(x))`` as a series in ``x``.

    Computed as the quotient of ``sum x^n/(2n)!`` (cosh) by ``sum x^n/(2n+1)!``
    (sinh(y)/y), so no Bernoulli numbers are needed.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    even = [Fraction(1, factorial(2 * n)) for n in range(max_degree + 1)]
    odd = [Fraction(1, factorial(2 * n + 1)) for n in range(max_degree + 1)]
    return _truncated_divide(even, odd)


@dataclass(frozen=True)
class LPolynomial:
    """A weight-``degree`` polynomial in the Pontryagin classes ``p_1, p_2, ...``.

    ``terms`` maps a partition (weakly decreasing tuple, ``(2, 1)`` meaning
    ``p_2 p_1``) to its nonzero coefficient. Stored as a sorted tuple of pairs so
    that equality is a plain comparison.
    """

    degree: int
    terms: tuple[tuple[Partition, Fraction], ...]

    @classmethod
    def from_mapping(cls, degree: int, terms: Mapping[Partition, Fraction]) -> "LPolynomial":
        items = []
        for part, coeff in terms.items():
            part = tuple(sorted(part, reverse=True))
            if sum(part) != degree or any(i <= 0 for i in part):
                raise ValueError(f"partition {part} does not have weight {degree}")
            coeff = Fraction(coeff)
            if coeff:
                items.append((part, coeff))
        items.sort(reverse=True)
        return cls(degree, tuple(items))

    def as_dict(self) -> dict[Partition, Fraction]:
        return dict(self.terms)

    def coefficient(self, part: Iterable[int]) -> Fraction:
        return self.as_dict().get(tuple(sorted(part, reverse=True)), Fraction(0))

    def denominators(self) -> list[int]:
        return [c.denominator for _, c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (part, coeff) in enumerate(self.terms):
            mono = _monomial_str(part)
            mag = abs(coeff)
            body = f"{mag} {mono}" if mag != 1 else mono
            if i == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)


def _monomial_str(part: Partition) -> str:
    counts: dict[int, int] = {}
    for i in part:
        counts[i] = counts.get(i, 0) + 1
    return " ".join(f"p{i}" if e == 1 else f"p{i}^{e}" for i, e in sorted(counts.items()))


Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def _count_01(rows: Partition, cols: Partition) -> int:
    """Number of 0-1 matrices with row sums ``rows`` and column sums ``cols``.

    This is the coefficient of ``x^cols`` in ``e_rows``, i.e. the entry of the
    elementary-to-monomial change of basis.
    """
    if not rows:
        return int(not any(cols))
    first, rest = rows[0], rows[1:]
    live = [i for i, c in enumerate(cols) if c > 0]
    total = 0
    for chosen in combinations(live, first):
        nxt = list(cols)
        for i in chosen:
            nxt[i] -= 1
        total += _count_01(rest, tuple(sorted((c for c in nxt if c), reverse=True)))
    return total


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col] / aug[col][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


@lru_cache(maxsize=None)
def _l_polynomial(k: int) -> LPolynomial:
    q = q_series(k)
    parts = partitions(k)
    # monomial-symmetric coefficients of prod Q(x_i): m_lambda has coefficient prod q_{lambda_i}
    mono_coeffs = []
    for lam in parts:
        c = Fraction(1)
        for i in lam:
            c *= q[i]
        mono_coeffs.append(c)
    # change of basis: e_mu = sum_lambda M[mu][lambda] m_lambda
    change = [[_count_01(mu, lam) for lam in parts] for mu in parts]
    # a_lambda = sum_mu b_mu M[mu][lambda]  ->  solve M^T b = a
    transposed = [[Fraction(change[m][l]) for m in range(len(parts))] for l in range(len(parts))]
    coeffs = _solve_exact(transposed, mono_coeffs)
    return LPolynomial.from_mapping(k, dict(zip(parts, coeffs)))


def l_polynomial(k: int, max_degree: int | None = DEFAULT_MAX_DEGREE) -> LPolynomial:
    """The Hirzebruch L-polynomial ``L_k``.

    ``max_degree`` is a soft cap (the symmetric-function change of basis grows
    factorially); pass ``None`` to lift it.
    """
    if k < 1:
        raise ValueError("L-polynomial degree must be >= 1")
    if max_degree is not None and k > max_degree:
        raise ValueError(f"degree {k} exceeds the soft cap {max_degree}; pass max_degree=None to override")
    return _l_polynomial(k)


@dataclass(frozen=True)
class DenominatorConstants:
    k: int
    c: int
    t: int
    r: int


def denominator_constants(k: int, t: int = 1, max_degree: int | None = DEFAULT_MAX_DEGREE) -> DenominatorConstants:
    """``c_k`` (lcm of the denominators of ``L_k``) and ``r_k = c_k * t``."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    c = lcm(*l_polynomial(k, max_degree).denominators())
    return DenominatorConstants(k=k, c=c, t=t, r=c * t)


@dataclass(frozen=True)
class GradedPoly:
    """Polynomial in cohomology generators with rational coefficients.

    ``degrees[i]`` is the cohomological degree of generator ``i``. If ``top`` is
    set, terms of total degree above it are dropped (e.g. ``x^{n+1} = 0`` in
    ``H^*(CP^n)`` is ``top = 2n``).
    """

    degrees: tuple[int, ...]
    terms: tuple[tuple[Monomial, Fraction], ...] = ()
    top: int | None = None

    @classmethod
    def make(cls, degrees, terms: Mapping[Monomial, object], top: int | None = None) -> "GradedPoly":
        degrees = tuple(degrees)
        clean: dict[Monomial, Fraction] = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != len(degrees):
                raise ValueError("monomial length does not match number of generators")
            if top is not None and _mono_degree(mono, degrees) > top:
                continue
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        return cls(degrees, tuple(sorted((m, c) for m, c in clean.items() if c)), top)

    @classmethod
    def one(cls, degrees, top: int | None = None) -> "GradedPoly":
        degrees = tuple(degrees)
        return cls.make(degrees, {(0,) * len(degrees): 1}, top)

    @classmethod
    def generator(cls, i: int, degrees, top: int | None = None) -> "GradedPoly":
        degrees = tuple(degrees)
        mono = [0] * len(degrees)
        mono[i] = 1
        return cls.make(degrees, {tuple(mono): 1}, top)

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def _check(self, other: "GradedPoly") -> None:
        if self.degrees != other.degrees:
            raise ValueError("graded polynomials over different generators")

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._check(other)
        out = self.as_dict()
        for m, c in other.terms:
            out[m] = out.get(m, Fraction(0)) + c
        return GradedPoly.make(self.degrees, out, _min_top(self.top, other.top))

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            return GradedPoly.make(self.degrees, {m: c * Fraction(other) for m, c in self.terms}, self.top)
        self._check(other)
        top = _min_top(self.top, other.top)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return GradedPoly.make(self.degrees, out, top)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GradedPoly":
        result = GradedPoly.one(self.degrees, self.top)
        for _ in range(e):
            result = result * self
        return result

    def component(self, degree: int) -> "GradedPoly":
        return GradedPoly.make(
            self.degrees, {m: c for m, c in self.terms if _mono_degree(m, self.degrees) == degree}, self.top
        )

    def constant_term(self) -> Fraction:
        return self.as_dict().get((0,) * len(self.degrees), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono) -> Fraction:
        return self.as_dict().get(tuple(mono), Fraction(0))


def _mono_degree(mono: Monomial, degrees: tuple[int, ...]) -> int:
    return sum(e * d for e, d in zip(mono, degrees))


def _min_top(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def evaluate_l_class(total_pontryagin: GradedPoly, k: int, max_degree: int | None = DEFAULT_MAX_DEGREE) -> GradedPoly:
    """Substitute ``p_i = total_pontryagin[4i]`` into ``L_k``; the result has degree ``4k``."""
    if total_pontryagin.constant_term() != 1:
        raise ValueError("total Pontryagin class must have constant term 1")
    poly = l_polynomial(k, max_degree)
    p = {i: total_pontryagin.component(4 * i) for i in range(1, k + 1)}
    result = GradedPoly.make(total_pontryagin.degrees, {}, total_pontryagin.top)
    for part, coeff in poly.terms:
        term = GradedPoly.one(total_pontryagin.degrees, total_pontryagin.top) * coeff
        for i in part:
            term = term * p[i]
        result = result + term
    return result


def total_l_class(total_pontryagin: GradedPoly, up_to: int, max_degree: int | None = DEFAULT_MAX_DEGREE) -> GradedPoly:
    """``1 + L_1 + ... + L_up_to`` evaluated on ``total_pontryagin``."""
    result = GradedPoly.one(total_pontryagin.degrees, total_pontryagin.top)
    if total_pontryagin.constant_term() != 1:
        raise ValueError("total Pontryagin class must have constant term 1")
    for k in range(1, up_to + 1):
        result = result + evaluate_l_class(total_pontryagin, k, max_degree)
    return result

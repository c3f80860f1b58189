import math
import threading

import pytest
from hypothesis import assume, given, settings, strategies as st

from manifold_sets.lattice import (
    INFINITE,
    AffineSublattice,
    Cancelled,
    LatticeBasis,
    LatticeError,
    NotFullError,
    NotInLatticeError,
    PrimeDividesIndexError,
    coordinates,
    divisibility,
    divisibility_spectrum,
    identity,
    matmul,
    prime_witness,
    smith_normal_form,
    spectrum_witnesses,
    sublattice_index,
)

import oracles


def det(M):
    import sympy

    return int(sympy.Matrix(M).det())


def check_snf(A):
    snf = smith_normal_form(A)
    assert matmul(matmul(snf.U, A), snf.V) == snf.D
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    m, n = len(A), len(A[0])
    for i in range(m):
        for j in range(n):
            if i != j:
                assert snf.D[i][j] == 0
    diag = snf.diagonal
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == nonzero  # zeros trail
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    return snf


def test_snf_examples():
    assert check_snf([[1, 0], [0, 1]]).D == [[1, 0], [0, 1]]
    assert check_snf([[2, 0], [0, 3]]).D == [[1, 0], [0, 6]]
    assert check_snf([[0, 0], [0, 0]]).D == [[0, 0], [0, 0]]


def test_snf_known_matrix():
    # same matrix as the sympy normal-form docs
    snf = check_snf([[12, 6, 4], [3, 9, 6], [2, 16, 14]])
    assert snf.diagonal == [1, 10, 30]


def test_snf_deterministic():
    A = [[4, 6, 2], [6, 9, 3], [2, 2, 8]]
    assert smith_normal_form(A) == smith_normal_form(A)


def test_snf_rejects_empty():
    with pytest.raises(ValueError):
        smith_normal_form([])


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_matches_sympy_invariants(A):
    snf = check_snf(A)
    assert [d for d in snf.diagonal if d] == oracles.snf_invariants(A)


def test_divisibility_examples():
    assert divisibility((4, 6), LatticeBasis.standard(2)) == 2
    assert divisibility((3, 3), LatticeBasis.of([(1, 1)])) == 3
    assert divisibility((0, 0), LatticeBasis.standard(2)) == 0
    assert divisibility((0, 0)) == 0


def test_divisibility_not_in_lattice():
    with pytest.raises(NotInLatticeError):
        divisibility((1, 0), LatticeBasis.of([(1, 1)]))
    with pytest.raises(NotInLatticeError):
        divisibility((1, 0), LatticeBasis.of([(2, 0), (0, 1)]))


def test_dependent_basis_rejected():
    with pytest.raises(LatticeError):
        LatticeBasis.of([(1, 2), (2, 4)])


def test_sublattice_index_examples():
    Z2 = LatticeBasis.standard(2)
    assert sublattice_index(LatticeBasis.of([(2, 0), (0, 2)]), Z2) == 4
    assert sublattice_index(LatticeBasis.of([(1, 0)]), Z2) == INFINITE
    assert sublattice_index(LatticeBasis.of([(1, 1), (0, 3)]), Z2) == 3


def test_sublattice_index_requires_containment():
    with pytest.raises(LatticeError, match="not a sublattice"):
        sublattice_index(LatticeBasis.standard(2), LatticeBasis.of([(2, 0), (0, 2)]))


unimodular = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3)), min_size=0, max_size=12
)


def build_unimodular(n, ops):
    U = identity(n)
    for i, j, f in ops:
        i, j = i % n, j % n
        if i != j:
            U[i] = [a + f * b for a, b in zip(U[i], U[j])]
        else:
            U[i] = [-a for a in U[i]]
    return U


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.data())
def test_divisibility_invariant_under_unimodular(n, data):
    U = build_unimodular(n, data.draw(unimodular))
    rank = data.draw(st.integers(1, n))
    vecs = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=rank, max_size=rank))
    try:
        L = LatticeBasis.of(vecs)
    except LatticeError:
        assume(False)
    coeffs = data.draw(st.lists(st.integers(-6, 6), min_size=rank, max_size=rank))
    x = [sum(c * v[i] for c, v in zip(coeffs, vecs)) for i in range(n)]
    Ux = [sum(a * b for a, b in zip(row, x)) for row in U]
    assert divisibility(Ux, L.transform(U)) == divisibility(x, L) == oracles.div_brute(coeffs)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5), st.integers(1, 20))
def test_divisibility_scaling(x, m):
    L = LatticeBasis.standard(len(x))
    assert divisibility([m * a for a in x], L) == m * divisibility(x, L)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4).filter(any), st.integers(1, 10**6))
def test_unbounded_divisibility(vec, bound):
    # any nonzero lattice realises divisibilities above any bound
    L = LatticeBasis.of([vec])
    x = [(bound + 1) * a for a in vec]
    assert divisibility(x, L) > bound


def test_coordinates_roundtrip():
    L = LatticeBasis.of([(1, 1, 0), (0, 2, 1)])
    assert coordinates((3, 7, 2), L) == (3, 2)


def test_prime_witness_examples():
    S = AffineSublattice((1,), LatticeBasis.of([(2,)]))
    assert prime_witness(S, 3) == (3,)
    assert 3 in oracles.coset_divs(1, 2, 9)
    S = AffineSublattice((0, 0), LatticeBasis.standard(2))
    w = prime_witness(S, 5)
    assert all(a % 5 == 0 for a in w)
    S = AffineSublattice((1, 0), LatticeBasis.of([(2, 0), (0, 2)]))
    w = prime_witness(S, 3)
    assert w == (3, 0) and S.contains(w)


def test_prime_witness_rejects_dividing_prime():
    S = AffineSublattice((1,), LatticeBasis.of([(2,)]))
    with pytest.raises(PrimeDividesIndexError):
        prime_witness(S, 2)


def test_prime_witness_rejects_non_full():
    S = AffineSublattice((1, 0), LatticeBasis.of([(1, 0)]))
    with pytest.raises(NotFullError):
        prime_witness(S, 3)


def test_spectrum_examples():
    S = AffineSublattice((1,), LatticeBasis.of([(2,)]))
    spec = divisibility_spectrum(S, 3)
    assert len(set(spec)) == 3
    assert set(spec) <= oracles.coset_divs(1, 2, 50)
    assert spec == [3, 5, 7]
    spec = divisibility_spectrum(AffineSublattice((0,), LatticeBasis.standard(1)), 4)
    assert len(set(spec)) == 4
    with pytest.raises(NotFullError):
        divisibility_spectrum(AffineSublattice((1, 0), LatticeBasis.of([(1, 0)])), 2)


def test_spectrum_cancellation():
    ev = threading.Event()
    ev.set()
    with pytest.raises(Cancelled):
        divisibility_spectrum(AffineSublattice((1,), LatticeBasis.of([(2,)])), 5, cancel=ev)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.data())
def test_witnesses_lie_in_coset(n, data):
    vecs = data.draw(st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))
    assume(det(vecs) != 0)
    offset = data.draw(st.lists(st.integers(-10, 10), min_size=n, max_size=n))
    S = AffineSublattice(tuple(offset), LatticeBasis.of(vecs))
    index = S.index()
    assert index == abs(det(vecs))
    p = 2
    import sympy

    while index % p == 0:
        p = sympy.nextprime(p)
    w = prime_witness(S, p)
    assert S.contains(w)
    assert divisibility(w) % p == 0
    pairs = spectrum_witnesses(S, 5)
    assert len({d for d, _ in pairs}) == 5
    for d, w in pairs:
        assert S.contains(w) and oracles.div_brute(w) == d


def test_index_finite_iff_full_rank():
    Z3 = LatticeBasis.standard(3)
    assert sublattice_index(LatticeBasis.of([(1, 2, 3), (0, 1, 4)]), Z3) == INFINITE
    assert sublattice_index(LatticeBasis.of([(1, 2, 3), (0, 1, 4), (0, 0, 5)]), Z3) == 5
    assert math.isinf(INFINITE)

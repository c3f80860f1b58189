import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from manifold_sets.homology import (
    DescriptorError,
    FgAbelianGroup,
    Flags,
    GradedGroup,
    ManifoldDescriptor,
    Pi1,
    builtin,
    descriptor_from_dict,
    descriptor_to_dict,
    dump_descriptor,
    k_complex_homology,
    load_descriptor,
    torus_homology,
    validate,
)


def test_group_normalisation():
    assert FgAbelianGroup.make(0, [2, 3]) == FgAbelianGroup(0, (6,))
    assert FgAbelianGroup.make(1, [2, 4, 0, 1]) == FgAbelianGroup(2, (2, 4))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 2))
    assert str(FgAbelianGroup(3, (2, 2, 2))) == "Z^3 ⊕ (Z/2)^3"
    assert str(FgAbelianGroup()) == "0"


def test_group_arithmetic():
    Z2 = FgAbelianGroup.cyclic(2)
    assert FgAbelianGroup(1) + Z2 == FgAbelianGroup(1, (2,))
    assert Z2 * 3 == FgAbelianGroup(0, (2, 2, 2))
    assert FgAbelianGroup(2, (6,)).tensor_cyclic(2) == FgAbelianGroup(0, (2, 2, 2))
    assert FgAbelianGroup(2, (6,)).tor_cyclic(4) == FgAbelianGroup(0, (2,))
    assert FgAbelianGroup(0, (12,)).elementary_divisors() == [3, 4]


def test_universal_coefficients():
    # RP^2-like: H_0 = Z, H_1 = Z/2
    H = GradedGroup(((0, FgAbelianGroup(1)), (1, FgAbelianGroup(0, (2,)))))
    assert H.with_coefficients(1, 2) == FgAbelianGroup(0, (2,))
    assert H.with_coefficients(2, 2) == FgAbelianGroup(0, (2,))
    assert H.with_coefficients(2, 0).is_trivial


def test_torus_homology():
    assert torus_homology(3).ranks() == (1, 3, 3, 1)
    assert torus_homology(0).ranks() == (1,)
    assert torus_homology(5).rank(2) == 10


@pytest.mark.parametrize("r, expected", [(3, (1, 3, 3)), (1, (1, 1, 0)), (4, (1, 4, 6))])
def test_k_complex(r, expected):
    assert k_complex_homology(r).ranks(2) == expected


@pytest.mark.parametrize("r", range(1, 9))
def test_k_complex_agrees_with_torus_up_to_degree_two(r):
    assert k_complex_homology(r).ranks(2) == torus_homology(r).ranks(2)


def test_builtin_mrg():
    d = builtin("mrg", [3, 6, 1])
    assert d.dimension == 6
    assert d.pi1 == Pi1.free_abelian(3)
    assert d.wedge_model == ((1, 3), (2, 3), (3, 12), (4, 3), (5, 3), (6, 1))
    assert d.flags.ahss_collapses
    assert d.c_matrix(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert d.c_matrix(3) == ((0,) * 12,)


def test_builtin_wg_and_sphere():
    assert builtin("wg", [2, 1]).homology.ranks(8) == (1, 0, 0, 0, 4, 0, 0, 0, 1)
    s = builtin("sphere", [7])
    assert s.homology.degrees() == [0, 7]


def test_builtin_cpn_l_class():
    d = builtin("cpn", [3])
    assert d.l_vector(1) == (4,)  # (4/3) x^2 in (1/3) FH^4
    assert builtin("cpn", [3], t=2).l_vector(1) == (8,)


def test_builtin_errors():
    with pytest.raises(DescriptorError):
        builtin("klein", [2])
    with pytest.raises(DescriptorError):
        builtin("mrg", [3, 6])
    with pytest.raises(DescriptorError):
        builtin("mrg", [0, 6, 1])


@pytest.mark.parametrize(
    "name, params",
    [("sphere", [9]), ("cpn", [4]), ("wg", [3, 2]), ("mrg", [3, 6, 1]), ("mrg", [5, 0, 2]), ("torus", [4])],
)
def test_builtins_valid(name, params):
    assert validate(builtin(name, params)) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10), st.integers(1, 3))
def test_mrg_wedge_homology(r, g, k):
    d = builtin("mrg", [r, g, k])
    s = comb(r, 2)
    n = 4 * k + 2
    assert d.homology.ranks(2) == k_complex_homology(r).ranks(2)
    for j in range(n + 1):
        assert d.betti(j) == d.betti(n - j)
    assert d.betti(2 * k + 1) == 2 * g and d.betti(4 * k) == s
    assert validate(d) == []


def _plain(**kw):
    base = dict(
        name="X",
        dimension=6,
        pi1=Pi1.trivial(),
        homology=GradedGroup.free({0: 1, 2: 1, 4: 1, 6: 1}),
    )
    base.update(kw)
    return ManifoldDescriptor(**base)


def test_validate_poincare_duality():
    d = _plain(pi1=Pi1.free_abelian(2), homology=GradedGroup.free({0: 1, 1: 2, 5: 1, 6: 1}))
    kinds = {(v.invariant, v.degree) for v in validate(d)}
    assert ("PoincareDuality", 1) in kinds


def test_validate_simply_connected_h1():
    d = _plain(homology=GradedGroup.free({0: 1, 1: 1, 5: 1, 6: 1}))
    assert ("SimplyConnectedH1", 1) in {(v.invariant, v.degree) for v in validate(d)}


def test_validate_torsion_with_collapse():
    H = GradedGroup(((0, FgAbelianGroup(1)), (2, FgAbelianGroup(0, (2,))), (3, FgAbelianGroup(0, (2,))),
                     (5, FgAbelianGroup()), (6, FgAbelianGroup(1))))
    d = _plain(homology=H, flags=Flags(ahss_collapses=True))
    assert "TorsionWithCollapse" in {v.invariant for v in validate(d)}


def test_validate_wedge_mismatch():
    d = _plain(wedge_model=((2, 1), (4, 2), (6, 1)))
    assert ("WedgeModel", 4) in {(v.invariant, v.degree) for v in validate(d)}


def test_validate_classifying_shape():
    d = builtin("mrg", [3, 0, 1])
    bad = ManifoldDescriptor(**{**d.__dict__, "classifying_map": ((1, ((1, 0),)),)})
    assert "ClassifyingMap" in {v.invariant for v in validate(bad)}


@pytest.mark.parametrize("name, params", [("cpn", [3]), ("mrg", [3, 6, 1]), ("wg", [1, 1]), ("torus", [3])])
def test_json_round_trip(tmp_path, name, params):
    d = builtin(name, params)
    path = tmp_path / "m.json"
    dump_descriptor(d, path)
    assert load_descriptor(path) == d
    assert descriptor_from_dict(json.loads(path.read_text())) == d


def test_json_rejects_unknown_fields():
    doc = descriptor_to_dict(builtin("sphere", [7]))
    doc["colour"] = "blue"
    with pytest.raises(DescriptorError, match="unknown field"):
        descriptor_from_dict(doc)
    doc = descriptor_to_dict(builtin("sphere", [7]))
    doc["flags"]["smooth"] = True
    with pytest.raises(DescriptorError, match="unknown field"):
        descriptor_from_dict(doc)


def test_json_rejects_bad_types(tmp_path):
    doc = descriptor_to_dict(builtin("sphere", [7]))
    doc["dimension"] = "seven"
    with pytest.raises(DescriptorError):
        descriptor_from_dict(doc)
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(DescriptorError):
        load_descriptor(p)
    with pytest.raises(DescriptorError):
        load_descriptor(tmp_path / "missing.json")


def test_json_with_torsion():
    doc = {
        "name": "lens-like",
        "dimension": 5,
        "pi1": {"type": "OTHER", "label": "Z/3"},
        "homology": [
            {"degree": 0, "free_rank": 1, "torsion": []},
            {"degree": 1, "free_rank": 0, "torsion": [3]},
            {"degree": 3, "free_rank": 0, "torsion": [3]},
            {"degree": 5, "free_rank": 1},
        ],
    }
    d = descriptor_from_dict(doc)
    assert d.homology[1] == FgAbelianGroup(0, (3,))
    assert validate(d) == []
    assert descriptor_from_dict(descriptor_to_dict(d)) == d

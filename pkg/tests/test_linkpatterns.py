from math import comb

import pytest
from hypothesis import given, strategies as st

from rotorlab.linkpatterns import (
    LinkPattern,
    PairState,
    apply_e,
    check_algebra,
    enumerate_patterns,
    is_noncrossing,
    pair_basis,
    rotate,
)


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


@pytest.mark.parametrize("m", range(1, 6))
def test_disk_count_is_catalan(m):
    assert len(enumerate_patterns(2 * m, 0, "disk")) == catalan(m)


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_halfplane_one_defect_count(n):
    # one defect among 2k+1 points, no arc over it: same count as 2k+2 points
    assert len(enumerate_patterns(n, 1, "halfplane")) == catalan((n + 1) // 2)


@pytest.mark.parametrize("bc, n", [("pbc-even", 4), ("cbc-even", 4), ("cbc-odd", 5)])
def test_pair_basis_is_square(bc, n):
    basis = pair_basis(bc, n)
    pats = {s.red for s in basis}
    assert len(basis) == len(pats) ** 2
    assert list(basis) == sorted(basis)


def test_string_roundtrip():
    for p in enumerate_patterns(6, 0, "disk"):
        assert LinkPattern.from_string(str(p)) == p
    s = PairState.from_string("(())/()()")
    assert str(s) == "(())/()()"
    assert s.swap() == PairState.from_string("()()/(())")


@pytest.mark.parametrize("bad", ["(()", ")(", "(|)", "(x)"])
def test_bad_strings(bad):
    with pytest.raises(ValueError):
        LinkPattern.from_string(bad)


def test_from_arcs_rejects_crossing():
    with pytest.raises(ValueError):
        LinkPattern.from_arcs(4, [(1, 3), (2, 4)])


disk6 = st.sampled_from(enumerate_patterns(6, 0, "disk"))
half5 = st.sampled_from(enumerate_patterns(5, 1, "halfplane"))


@given(disk6, st.integers(min_value=1, max_value=6))
def test_e_is_idempotent_and_planar(p, i):
    e = apply_e(i, p)
    assert e.has_arc(i, i % 6 + 1) or e.has_arc(i % 6 + 1, i)
    assert apply_e(i, e) == e
    assert is_noncrossing(e)


@given(disk6, st.integers(min_value=1, max_value=5))
def test_temperley_lieb_relation(p, i):
    # e_i e_{i+1} e_i = e_i at loop weight 1
    assert apply_e(i, apply_e(i + 1, apply_e(i, p))) == apply_e(i, p)


@given(half5, st.integers(min_value=1, max_value=4))
def test_halfplane_e_keeps_one_defect(p, i):
    e = apply_e(i, p, "halfplane")
    assert len(e.defects) == 1
    assert is_noncrossing(e, "halfplane")


@given(disk6)
def test_rotation_has_order_n(p):
    r = p
    for _ in range(6):
        r = rotate(r)
    assert r == p


@pytest.mark.parametrize("bc, n", [("pbc-even", 2), ("pbc-even", 4), ("pbc-even", 6),
                                   ("cbc-even", 2), ("cbc-odd", 3), ("cbc-even", 4)])
def test_algebra_relations(bc, n):
    rep = check_algebra(bc, n)
    assert rep.ok, rep.failure
    assert rep.checked


def test_variant_RLR_eq_L_fails():
    # R_i L_{i+-1} R_i = L_i does not hold; R_i L_{i+-1} R_i = R_i does
    rep = check_algebra("pbc-even", 4)
    assert rep.ok
    assert not any(rep.variant_RLR_eq_L.values())


def test_wrong_colour_convention_is_detected():
    rep = check_algebra("pbc-even", 4, convention="red")
    assert not rep.ok
    assert rep.failure is not None


def test_size_limit():
    with pytest.raises(ValueError):
        check_algebra("pbc-even", 12)

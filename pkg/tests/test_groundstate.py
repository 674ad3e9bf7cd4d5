from fractions import Fraction

import pytest

from rotorlab.exact_arith import Q, as_eis
from rotorlab.groundstate import (
    GroundStateError,
    component,
    ground_state,
    insert_arcs,
    nearest_neighbour_stretches,
    projectively_equal,
    reconstruct_polynomial,
    sum_components,
    verify_double_degenerate,
    verify_exchange,
    verify_factorization,
    verify_proj1,
    verify_proj2,
    verify_recursion,
    verify_t_independence,
    verify_translation,
    verify_zero2,
)
from rotorlab.linkpatterns import PairState
from rotorlab.rmatrix import SamplePoint
from rotorlab.symfunc import sum_formula
from rotorlab.verify_cli import other_t, sample_points

P4 = SamplePoint([2, Fraction(-3, 5), Fraction(7, 3), Fraction(5, 2)], Fraction(1, 3))
C3 = SamplePoint([2, Fraction(-3, 5), Fraction(7, 3)], Fraction(1, 3))


def test_normalizations_are_proportional():
    a = ground_state("pbc-even", P4, normalization="reference")
    b = ground_state("pbc-even", P4, normalization="sum")
    assert projectively_equal(a.values(), b.values())
    assert sum_components(b) == sum_formula("pbc-even", 4, P4.z)
    assert a.values()[0] == 1


def test_gcd_one_at_homogeneous_point():
    g = ground_state("pbc-even", [1, 1, 1, 1], normalization="gcd-one")
    assert g.values() == [2, 1, 1, 2]
    assert component(g, "(())/(())") == 2


def test_gcd_one_rejects_irrational_vectors():
    with pytest.raises(GroundStateError):
        ground_state("pbc-even", P4, normalization="gcd-one")


def test_reference_component():
    ref = PairState.from_string("()()/(())")
    g = ground_state("pbc-even", P4, reference=ref)
    assert g.vector[ref] == 1


def test_ground_state_json():
    doc = ground_state("cbc", C3).to_json()
    assert doc["bc"] == "cbc-odd"
    assert len(doc["components"]) == 4


@pytest.mark.parametrize("bc, n", [("pbc-even", 4), ("cbc", 3), ("cbc", 4)])
def test_t_independence(bc, n):
    for p in sample_points(21, n, 2, closed=bc == "cbc"):
        assert verify_t_independence(bc, p, other_t(p, bc == "cbc"))


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_exchange_pbc(i):
    assert verify_exchange("pbc-even", P4, i)


@pytest.mark.parametrize("i", [1, 2])
def test_exchange_cbc(i):
    assert verify_exchange("cbc", C3, i)


@pytest.mark.parametrize("check", [verify_proj2, verify_proj1, verify_zero2])
@pytest.mark.parametrize("i", [1, 2, 3])
def test_degenerate_points(check, i):
    assert check("pbc-even", P4, i)


def test_translation():
    assert verify_translation(P4)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_recursion(i):
    assert verify_recursion(P4, i)


def test_insert_arcs_adds_two_points():
    s = PairState.from_string("()/()")
    t = insert_arcs(s, 2)
    assert t == PairState.from_string("(())/(())")
    assert insert_arcs(s, 1) == PairState.from_string("()()/()()")


@pytest.mark.parametrize("ratio", [Q, -Q])
def test_double_degenerate(ratio):
    assert verify_double_degenerate(P4, 1, ratio)


def test_double_degenerate_minus_one_fails():
    # z_{i+2} = -z_i does not force the components to vanish
    assert not verify_double_degenerate(P4, 1, as_eis(-1))


def test_stretches():
    assert nearest_neighbour_stretches(PairState.from_string("()()/(())")) == []
    assert nearest_neighbour_stretches(PairState.from_string("(())/(())")) == [(1, 2), (3, 4)]


def test_polynomial_degree_and_factorization():
    grid = [[Fraction(k + 2, 3) + Fraction(j, 13) for k in range(4)] for j in range(4)]
    polys = reconstruct_polynomial("pbc-even", 4, None, grid, t=Fraction(1, 3))
    probes = [[2, Fraction(-3, 5), Fraction(7, 3), Fraction(5, 2)],
              [Fraction(1, 2), 3, Fraction(-4, 3), 7]]
    for s, poly in polys.items():
        assert all(poly.degree_in(k) == 2 for k in range(4)), str(s)
        assert poly.total_degree() == 4
        for stretch in nearest_neighbour_stretches(s):
            assert verify_factorization(poly, stretch, probes)
        # the interpolant reproduces the eigenvector off the grid
        g = ground_state("pbc-even", probes[0], t=5, normalization="sum")
        assert poly(probes[0]) == g.vector[s]


def test_closed_transfer_is_scalar_at_t_one():
    # every vector is an eigenvector there, so t = 1 is excluded from sampling
    with pytest.raises(GroundStateError):
        ground_state("cbc", C3.with_t(1))

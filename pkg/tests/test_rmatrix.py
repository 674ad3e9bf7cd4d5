from hypothesis import assume, given, settings

from rotorlab.exact_arith import ONE, Q, ZERO, as_eis
from rotorlab.linalg import mat_mul
from rotorlab.linkpatterns import PairState, StateVector, pair_basis, rotor_map
from rotorlab.rmatrix import (
    apply_rcheck,
    apply_rcheck_o1,
    check_unitarity,
    face_weights,
    omega,
    rcheck_matrix,
    trace_green,
)

from conftest import nonzero_eis


def op(bc, n, kind, i):
    dim = len(pair_basis(bc, n))
    m = [[ZERO] * dim for _ in range(dim)]
    for j, k in enumerate(rotor_map(bc, n, kind, i)):
        m[k][j] = ONE
    return m


def combo(*terms):
    # sum of c * matrix
    out = None
    for c, m in terms:
        scaled = [[c * x for x in row] for row in m]
        out = scaled if out is None else [[a + b for a, b in zip(r, s)] for r, s in zip(out, scaled)]
    return out


def test_weights_vanish_at_equal_arguments():
    fw = face_weights(as_eis(3), as_eis(3))
    assert fw.wR == fw.wL == fw.wA == ZERO
    assert fw.wD != ZERO


@given(nonzero_eis, nonzero_eis)
def test_face_weight_sum_factorizes(z, w):
    fw = face_weights(z, w)
    assert fw.wR == fw.wL == omega("L", z, w)
    assert fw.total() == Q * w * w - z * z


@settings(max_examples=20)
@given(nonzero_eis, nonzero_eis)
def test_unitarity(z, w):
    assert check_unitarity("pbc-even", 4, 2, z, w)
    assert check_unitarity("cbc-odd", 3, 1, z, w)


@settings(max_examples=15)
@given(nonzero_eis)
def test_specializations(z):
    bc, n, i = "pbc-even", 4, 1
    e, r, l = (op(bc, n, k, i) for k in "ERL")
    assert rcheck_matrix(bc, n, i, z, -Q * Q * z) == combo(((Q * Q - 1) * z * z, e))
    c = (Q * Q - Q) * z * z
    assert rcheck_matrix(bc, n, i, z, Q * z) == combo((2 * c, e), (-c, r), (-c, l))


@settings(max_examples=10)
@given(nonzero_eis, nonzero_eis, nonzero_eis)
def test_yang_baxter(z1, z2, z3):
    for bc, n in (("pbc-even", 4), ("cbc-odd", 3)):
        def R(i, a, b):
            return rcheck_matrix(bc, n, i, a, b)
        lhs = mat_mul(mat_mul(R(1, z2, z3), R(2, z1, z3)), R(1, z1, z2))
        rhs = mat_mul(mat_mul(R(2, z1, z2), R(1, z1, z3)), R(2, z2, z3))
        assert lhs == rhs


@settings(max_examples=10)
@given(nonzero_eis, nonzero_eis)
def test_green_trace_intertwines(z, w):
    for s in pair_basis("pbc-even", 4):
        v = StateVector("pbc-even", 4, {s: ONE})
        for i in (1, 4):
            lhs = trace_green(apply_rcheck(i, z, w, v))
            assert lhs == apply_rcheck_o1(i, z * z, w * w, trace_green(v))


def test_apply_matches_matrix():
    z, w = as_eis(2), as_eis(-5)
    basis = pair_basis("cbc-even", 4)
    m = rcheck_matrix("cbc-even", 4, 2, z, w)
    for j, s in enumerate(basis):
        out = apply_rcheck(2, z, w, StateVector("cbc-even", 4, {s: ONE}))
        assert out.to_list(basis) == [row[j] for row in m]

import pytest
from hypothesis import given, settings, strategies as st

from rotorlab.exact_arith import ONE, ZERO, as_eis
from rotorlab.linalg import KernelError, identity, kernel, kernel_modular, mat_mul, mat_vec

from conftest import eis


def matrices(rows, cols):
    return st.lists(st.lists(eis, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def rank_deficient():
    # last row is a combination of the others, so the kernel is nontrivial
    @st.composite
    def build(draw):
        m = draw(matrices(3, 5))
        a, b = draw(eis), draw(eis)
        m.append([a * x + b * y for x, y in zip(m[0], m[1])])
        return m
    return build()


@settings(max_examples=40)
@given(rank_deficient())
def test_kernel_vectors_are_annihilated(m):
    basis = kernel(m)
    assert len(basis) >= 2
    for v in basis:
        assert all(x == ZERO for x in mat_vec(m, v))


@settings(max_examples=40)
@given(rank_deficient())
def test_modular_kernel_agrees(m):
    assert kernel_modular(m) == kernel(m)


def test_identity_has_trivial_kernel():
    assert kernel(identity(4)) == []
    with pytest.raises(KernelError):
        kernel(identity(3), expected_dim=1)


def test_normalized_free_column():
    m = [[as_eis(1), as_eis(2), as_eis(3)], [as_eis(2), as_eis(4), as_eis(6)]]
    basis = kernel(m, expected_dim=2)
    for v in basis:
        assert ONE in v


@given(matrices(2, 2), matrices(2, 2), matrices(2, 2))
def test_matmul_associative(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pimanifold.errors import DimMismatch, MissingMetric, NotSymmetric, SingularMetric, SlotMismatch
from pimanifold.tensor_core import (
    Connection,
    Tensor,
    contract,
    covariant_derivative,
    flat,
    inertia,
    kulkarni_nomizu,
    lower_last,
    matrix_inverse,
    metric_inverse,
    multilinear,
    raise_last,
    rational_array,
    sharp,
    tensor_product,
    to_rational,
)

import oracles

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def arrays(shape):
    n = int(np.prod(shape))
    return st.lists(rationals, min_size=n, max_size=n).map(lambda xs: rational_array(xs).reshape(shape))


@st.composite
def symmetric(draw, d):
    a = draw(arrays((d, d)))
    return (a + a.T) * Fraction(1, 2)


@st.composite
def metrics(draw, d):
    g = draw(symmetric(d))
    assume(np.linalg.matrix_rank(g.astype(float)) == d)
    return g


dims = st.integers(min_value=1, max_value=4)


# -- scalars and construction --------------------------------------------------


def test_to_rational_rejects_floats_and_bools():
    assert to_rational("3/4") == Fraction(3, 4)
    assert to_rational(2) == Fraction(2)
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


def test_tensor_is_immutable():
    t = Tensor.form([1, 2])
    with pytest.raises(AttributeError):
        t.dim = 3
    with pytest.raises(ValueError):
        t.components[0] = Fraction(5)


def test_rank_checks():
    with pytest.raises(DimMismatch):
        Tensor(rational_array([[1, 2], [3, 4]]), 1, 0)
    with pytest.raises(DimMismatch):
        Tensor.form([1, 2]) + Tensor.form([1, 2, 3])
    with pytest.raises(DimMismatch):
        Tensor.form([1, 2]) + Tensor.vector([1, 2])


def test_two_by_two_inverse_by_hand():
    # [[2, 1], [1, 1]]^-1 = [[1, -1], [-1, 2]]
    pair = metric_inverse(Tensor.covariant([[2, 1], [1, 1]]))
    assert pair.g_inv.components.tolist() == [[1, -1], [-1, 2]]


def test_singular_and_asymmetric_metrics_are_rejected():
    with pytest.raises(SingularMetric):
        metric_inverse(Tensor.covariant([[1, 2], [2, 4]]))
    with pytest.raises(NotSymmetric):
        metric_inverse(Tensor.covariant([[1, 2], [0, 1]]))


def test_contract_same_type_needs_metric():
    t = Tensor.covariant([[1, 0], [0, 1]])
    with pytest.raises(MissingMetric):
        contract(t, 0, 1)
    with pytest.raises(SlotMismatch):
        contract(t, 0, 0)


# -- properties -------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: metrics(d)))
def test_inverse_matches_oracle_and_contracts_to_dimension(g):
    d = g.shape[0]
    pair = metric_inverse(Tensor(g, 0, 2))
    assert pair.g_inv.components.tolist() == oracles.inverse(g.tolist())
    # g_{ij} g^{ij} = d, by metric trace and by mixed contraction of g (x) g^-1
    assert contract(pair.g, 0, 1, pair).value == d
    mixed = tensor_product(pair.g_inv, pair.g)  # slots: up a, up b, down c, down e
    assert contract(contract(mixed, 0, 2), 0, 1).value == d


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: st.tuples(metrics(d), arrays((d,)))))
def test_sharp_flat_round_trip(args):
    g, v = args
    pair = metric_inverse(Tensor(g, 0, 2))
    form = Tensor(v, 0, 1)
    assert flat(sharp(form, pair), pair) == form
    vec = Tensor(v, 1, 0)
    assert sharp(flat(vec, pair), pair) == vec


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(metrics(d), arrays((d, d, d)))))
def test_lower_raise_round_trip(args):
    g, a = args
    pair = metric_inverse(Tensor(g, 0, 2))
    t = Tensor(a, 1, 2)
    assert raise_last(lower_last(t, pair), pair) == t


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: st.tuples(symmetric(d), symmetric(d))))
def test_kulkarni_nomizu_is_curvature_like(args):
    s, p = args
    K = kulkarni_nomizu(Tensor(s, 0, 2), Tensor(p, 0, 2))
    assert K == -K.permute(1, 0, 2, 3)
    assert K == -K.permute(0, 1, 3, 2)
    assert K == K.permute(2, 3, 0, 1)
    assert (K + K.permute(2, 0, 1, 3) + K.permute(1, 2, 0, 3)).is_zero()
    assert K == kulkarni_nomizu(Tensor(p, 0, 2), Tensor(s, 0, 2))


def test_kulkarni_nomizu_of_orthonormal_metric():
    # (g o g)(x,y,z,w) = 2 (g(x,z) g(y,w) - g(y,z) g(x,w))
    g = Tensor.covariant(np.eye(3, dtype=int).tolist())
    K = kulkarni_nomizu(g, g)
    assert K[0, 1, 0, 1] == 2
    assert K[0, 1, 1, 0] == -2
    assert K[0, 0, 1, 1] == 0


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda d: st.tuples(arrays((d, d, d)), arrays((d,)), arrays((d,)), arrays((d,)), arrays((d,)), rationals)
    )
)
def test_multilinear_is_linear_in_each_slot(args):
    comps, x, x2, y, z, a = args
    lhs = multilinear(comps, x + a * x2, y, z)
    assert lhs == multilinear(comps, x, y, z) + a * multilinear(comps, x2, y, z)
    # agrees with a plain contraction
    assert multilinear(comps, x, y, z) == sum(
        comps[i, j, k] * x[i] * y[j] * z[k] for i in range(len(x)) for j in range(len(x)) for k in range(len(x))
    )


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(arrays((d, d, d)), arrays((d,)), arrays((d,)))))
def test_covariant_derivative_leibniz(args):
    gamma, a, b = args
    conn = Connection(gamma)
    A, B = Tensor(a, 0, 1), Tensor(b, 0, 1)
    lhs = covariant_derivative(tensor_product(A, B), conn).components
    dA = covariant_derivative(A, conn).components
    dB = covariant_derivative(B, conn).components
    rhs = np.einsum("yi,j->yij", dA, b) + np.einsum("i,yj->yij", a, dB)
    assert (lhs == rhs).all()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(arrays((d, d, d)), arrays((d,)), arrays((d,)))))
def test_covariant_derivative_of_contraction_commutes(args):
    # D(alpha(v)) = 0 for constant fields: (D alpha)(v) + alpha(D v) = 0
    gamma, a, v = args
    conn = Connection(gamma)
    dA = covariant_derivative(Tensor(a, 0, 1), conn).components
    dv = covariant_derivative(Tensor(v, 1, 0), conn).components  # [k, y]
    total = np.einsum("yi,i->y", dA, v) + np.einsum("i,iy->y", a, dv)
    assert all(x == 0 for x in total)


def test_identity_covariant_derivative_vanishes():
    gamma = rational_array(np.arange(27).reshape(3, 3, 3).tolist())
    assert covariant_derivative(Tensor.identity(3), Connection(gamma)).is_zero()


@pytest.mark.parametrize(
    "matrix,expected",
    [
        ([[1, 0], [0, 1]], (2, 0, 0)),
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[1, 0, 0], [0, -1, 0], [0, 0, 0]], (1, 1, 1)),
        ([[0, 0], [0, 0]], (0, 0, 2)),
    ],
)
def test_inertia(matrix, expected):
    assert inertia(matrix) == expected


def test_matrix_inverse_general():
    a = rational_array([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    assert (np.einsum("ij,jk->ik", a, matrix_inverse(a)) == np.eye(3, dtype=int)).all()


def test_permute_rejects_contravariant():
    with pytest.raises(SlotMismatch):
        Tensor.vector([1, 2]).permute(0)


def test_nonzero_and_witness():
    t = Tensor.covariant([[0, -3], [2, 0]])
    assert t.nonzero() == [((0, 1), -3), ((1, 0), 2)]
    assert t.witness() == (0, 1)
    assert t.max_abs() == 3
    assert Tensor.zeros(2, 0, 2).witness() is None

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pimanifold.catalog import (
    build_abelian,
    build_f1_example,
    build_f5_example,
    build_f11_example,
    build_para_sasaki_example,
)
from pimanifold.classifier import ClassLabel
from pimanifold.errors import IdentityViolation, NaturalityViolation, UnsupportedClass
from pimanifold.levi_civita import curvature_bundle, fundamental_data, koszul_levi_civita
from pimanifold.natural_connection import (
    Potential,
    closed_form_connection,
    curvature_via_potential,
    directional_derivative,
    first_natural_connection,
    first_natural_pipeline,
    first_natural_potential,
    torsion,
    torsion_form_relations,
    torsion_via_F,
    torsion_via_nijenhuis,
)
from pimanifold.pi_manifold import change_basis
from pimanifold.tensor_core import Tensor

import oracles
from conftest import analysis_of

params = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def oracle_first_natural(m):
    """D1_x y = nabla_x y - 1/2 {(nabla_x phi) phi y - (nabla_x eta)(y) xi} - eta(y) nabla_x xi, by loops."""
    d = m.dim
    c = oracles.to_lists(m.algebra.structure_constants)
    g = oracles.to_lists(m.g_matrix)
    phi = oracles.to_lists(m.phi_matrix)
    xi = oracles.to_lists(m.xi)
    eta = oracles.to_lists(m.structure.eta.components)
    G = oracles.levi_civita(c, g)
    nab = lambda x, y: oracles.apply_connection(G, x, y)  # noqa: E731
    ph = lambda v: [sum(phi[a][i] * v[i] for i in range(d)) for a in range(d)]  # noqa: E731
    et = lambda v: sum(eta[i] * v[i] for i in range(d))  # noqa: E731
    out = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            x, y = oracles.basis(d, i), oracles.basis(d, j)
            py = ph(y)
            dphi_py = [a - b for a, b in zip(nab(x, ph(py)), ph(nab(x, py)))]
            deta_y = -et(nab(x, y))
            nxi = nab(x, xi)
            out[i][j] = [
                nab(x, y)[k] - Fraction(1, 2) * (dphi_py[k] - deta_y * xi[k]) - et(y) * nxi[k] for k in range(d)
            ]
    return out


def published_first_natural(lam, mu):
    table = {
        (0, 1): {2: lam, 4: mu},
        (0, 2): {1: -lam, 3: -mu},
        (0, 3): {2: mu, 4: lam},
        (0, 4): {1: -mu, 3: -lam},
    }
    return [[[Fraction(table.get((i, j), {}).get(k, 0)) for k in range(5)] for j in range(5)] for i in range(5)]


@settings(max_examples=10, deadline=None)
@given(params, params)
def test_first_natural_matches_published_table(lam, mu):
    m = build_para_sasaki_example(lam=lam, mu=mu)
    lc = koszul_levi_civita(m)
    data = fundamental_data(m, lc)
    conn = first_natural_connection(m, lc, first_natural_potential(m, lc, data.F))
    assert conn.gamma.tolist() == published_first_natural(lam, mu)


@pytest.mark.parametrize(
    "build",
    [
        build_para_sasaki_example,
        build_f5_example,
        lambda: build_f11_example(2),
        build_f1_example,
        lambda: change_basis(build_f11_example(1), [[1, 0, 0], [1, 1, 0], [0, 2, 1]]),
    ],
)
def test_first_natural_matches_loop_oracle(build):
    m = build()
    assert analysis_of(m).natural.connection.gamma.tolist() == oracle_first_natural(m)


def test_torsion_of_example(example_analysis):
    tor = example_analysis.natural.torsion
    expected = {(0, 1, 3): 1, (0, 3, 1): 1, (0, 2, 4): 1, (0, 4, 2): 1}
    expected.update({(j, i, k): -v for (i, j, k), v in list(expected.items())})
    assert dict(tor.T3.nonzero()) == expected
    assert tor.t.is_zero() and tor.t_hat.is_zero()
    assert tor.t_star.components.tolist() == [4, 0, 0, 0, 0]


def test_example_is_flat(example_analysis):
    fn = example_analysis.natural
    assert fn.bundle.R.is_zero()
    assert fn.bundle.ricci.is_zero() and fn.bundle.tau == 0
    assert fn.R_via_potential == fn.bundle.R


def test_torsion_routes_agree():
    for build in (build_para_sasaki_example, build_f5_example, build_f1_example, lambda: build_f11_example(1)):
        m = build()
        a = analysis_of(m)
        T3 = a.natural.torsion.T3
        assert torsion_via_F(m, a.data.F) == T3
        assert torsion_via_nijenhuis(m, a.data.N, a.data.N_assoc) == T3


def test_abelian_degenerates():
    m = build_abelian(2)
    a = analysis_of(m)
    assert a.natural.connection == a.lc
    assert a.natural.torsion.T.is_zero()
    assert a.natural.bundle.R.is_zero() and a.lc_bundle.R.is_zero()


def test_tforms_signed_relation_and_printed_slip():
    a = analysis_of(build_f1_example())
    res = dict(torsion_form_relations(a.instance, a.data, a.natural.torsion))
    assert not res["tforms.t_star-phi"].is_zero()
    failing = [k for k, r in res.items() if not r.is_zero()]
    assert failing == ["tforms.t_star-phi"]


def test_non_natural_potential_is_rejected():
    m = build_para_sasaki_example()
    lc = koszul_levi_civita(m)
    zero = Tensor.zeros(5, 1, 2)
    with pytest.raises(NaturalityViolation):
        first_natural_connection(m, lc, Potential(zero, Tensor.zeros(5, 0, 3)))


def test_potential_route_mismatch_is_raised():
    m = build_para_sasaki_example()
    lc = koszul_levi_civita(m)
    data = fundamental_data(m, lc)
    bundle = curvature_bundle(m, lc)
    pot = first_natural_potential(m, lc, data.F)
    with pytest.raises(IdentityViolation):
        curvature_via_potential(m, bundle, pot, lc, direct=bundle.R)


def test_closed_forms_require_main_class(example_analysis):
    a = example_analysis
    with pytest.raises(UnsupportedClass):
        closed_form_connection(a.instance, ClassLabel.F0, a.data, a.lc)
    assert closed_form_connection(a.instance, ClassLabel.F4, a.data, a.lc) == a.natural.connection


def test_directional_derivative_of_invariant_scalar_is_zero():
    m = build_f5_example()
    assert directional_derivative(m, m.e(1), Fraction(7)) == 0


def test_pipeline_checks_pass_on_f5():
    m = build_f5_example()
    lc = koszul_levi_civita(m)
    data = fundamental_data(m, lc)
    fn = first_natural_pipeline(m, lc, data, curvature_bundle(m, lc))
    assert fn.bundle.R.is_zero()
    assert torsion(m, fn.connection).T == fn.torsion.T

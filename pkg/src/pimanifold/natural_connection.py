"""The first natural connection D1, its torsion and curvature.

Direct computations (potential, connection coefficients, torsion from the
definition, curvature from the coefficients) are asserted against the
identities that follow from the definitions.  The per-class closed forms are
evaluated separately and only ever compared, never asserted: they are
reported by :mod:`pimanifold.verify`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classifier import ClassLabel
from .errors import IdentityViolation, NaturalityViolation, UnsupportedClass
from .levi_civita import (
    CurvatureBundle,
    FundamentalData,
    curvature_identity_residuals,
    nabla_phi,
    trace_metric,
)
from .pi_manifold import PiManifoldInstance, derived_metrics, eta_eta
from .tensor_core import (
    Connection,
    Tensor,
    covariant_derivative,
    einsum,
    kulkarni_nomizu,
    lower_last,
    multilinear,
    tabulate,
    tabulate_vectors,
    zeros,
)

HALF = Fraction(1, 2)
SUPPORTED = (ClassLabel.F1, ClassLabel.F4, ClassLabel.F5, ClassLabel.F11)


def _check(residuals, exc):
    for name, r in residuals:
        if not r.is_zero():
            raise exc(name, r)


def _require_main(label) -> ClassLabel:
    label = ClassLabel(label)
    if label not in SUPPORTED:
        raise UnsupportedClass(f"no closed form for class {label}")
    return label


def directional_derivative(instance: PiManifoldInstance, x, value: Fraction) -> Fraction:
    """``x(f)`` for a left-invariant function f.

    Every scalar built from invariant data is constant on the group, so the
    result is zero; keeping the call makes the closed forms read like their
    general versions.
    """
    return Fraction(0)


# -- potential and connection -------------------------------------------------


@dataclass(frozen=True)
class Potential:
    Q: Tensor  # (1,2), components [k, i, j]
    Q3: Tensor  # (0,3), Q3(x, y, z) = g(Q(x, y), z)


def potential_residuals(instance: PiManifoldInstance, pot: Potential, F: Tensor):
    m = instance
    q, f = pot.Q3.components, F.components
    phi, eta, xi = m.phi, m.eta, m.xi
    cond_phi = tabulate(m.dim, 3, lambda x, y, z: multilinear(q, x, y, phi(z)) - multilinear(q, x, phi(y), z) - multilinear(f, x, y, z))
    skew = pot.Q3 + pot.Q3.permute(0, 2, 1)
    via_F = tabulate(
        m.dim, 3,
        lambda x, y, z: -HALF * (multilinear(f, x, phi(y), z) + eta(z) * multilinear(f, x, phi(y), xi))
        + eta(y) * multilinear(f, x, phi(z), xi),
    )
    return [
        ("Q.phi-condition", Tensor(cond_phi, 0, 3)),
        ("Q.skew", skew),
        ("Q.F-expression", pot.Q3 - Tensor(via_F, 0, 3)),
    ]


def first_natural_potential(instance: PiManifoldInstance, lc: Connection, F: Tensor | None = None, check: bool = True) -> Potential:
    """``Q(x,y) = -1/2 {(D_x phi) phi y - (D_x eta)(y) xi} - eta(y) D_x xi`` for the Levi-Civita D."""
    m = instance
    nphi = nabla_phi(m, lc)
    neta = covariant_derivative(m.structure.eta, lc).components
    nxi = covariant_derivative(m.structure.xi, lc).components
    xi = m.xi

    def q(x, y):
        dphi_phiy = einsum("aij,i,j->a", nphi, x, m.phi(y))
        return -HALF * (dphi_phiy - multilinear(neta, x, y) * xi) - m.eta(y) * einsum("ai,i->a", nxi, x)

    Q = Tensor(tabulate_vectors(m.dim, 2, q), 1, 2)
    pot = Potential(Q, lower_last(Q, m.metric))
    if check:
        if F is None:
            from .levi_civita import fundamental_tensor

            F = fundamental_tensor(m, lc, check=False)
        _check(potential_residuals(m, pot, F), NaturalityViolation)
    return pot


def naturality_residuals(instance: PiManifoldInstance, conn: Connection) -> list[tuple[str, Tensor]]:
    """``D phi, D g, D xi, D eta, D g~``; all vanish iff ``conn`` is natural."""
    s = instance.structure
    g_tilde, _, _ = derived_metrics(instance)
    return [
        ("natural.phi", covariant_derivative(s.phi, conn)),
        ("natural.g", covariant_derivative(s.metric.g, conn)),
        ("natural.xi", covariant_derivative(s.xi, conn)),
        ("natural.eta", covariant_derivative(s.eta, conn)),
        ("natural.gtilde", covariant_derivative(g_tilde, conn)),
    ]


def connection_from_potential(lc: Connection, Q: Tensor, label: str) -> Connection:
    return Connection(lc.gamma + np.transpose(Q.components, (1, 2, 0)), label)


def first_natural_connection(instance: PiManifoldInstance, lc: Connection, potential: Potential, check: bool = True) -> Connection:
    conn = connection_from_potential(lc, potential.Q, "first-natural")
    if check:
        _check(naturality_residuals(instance, conn), NaturalityViolation)
    return conn


# -- torsion ------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionData:
    T: Tensor  # (1,2), components [k, i, j]
    T3: Tensor
    t: Tensor
    t_star: Tensor
    t_hat: Tensor


def torsion_forms(instance: PiManifoldInstance, T3: Tensor, trace: str = "horizontal"):
    """``t(x) = g^{ij} T(x,e_i,e_j)``, ``t*(x) = g^{ij} T(x,e_i,phi e_j)``, ``t^(x) = T(x,xi,xi)``.

    Same trace-range convention as :func:`~pimanifold.levi_civita.lee_forms`.
    """
    ginv = trace_metric(instance, trace)
    t3 = T3.components
    t = einsum("ab,xab->x", ginv, t3)
    t_star = einsum("ab,cb,xac->x", ginv, instance.phi_matrix, t3)
    t_hat = einsum("a,b,xab->x", instance.xi, instance.xi, t3)
    return Tensor(t, 0, 1), Tensor(t_star, 0, 1), Tensor(t_hat, 0, 1)


def torsion(instance: PiManifoldInstance, conn: Connection) -> TorsionData:
    """``T(x,y) = D_x y - D_y x - [x,y]`` with its lowered form and torsion forms."""
    gam = conn.gamma
    c = instance.algebra.structure_constants
    T = Tensor(np.transpose(gam - np.transpose(gam, (1, 0, 2)) - c, (2, 0, 1)), 1, 2)
    T3 = lower_last(T, instance.metric)
    return TorsionData(T, T3, *torsion_forms(instance, T3))


def torsion_residuals(instance: PiManifoldInstance, tor: TorsionData, potential: Potential | None = None):
    out = [
        ("T.antisym", tor.T3 + tor.T3.permute(1, 0, 2)),
        ("T.hat-xi", Tensor.scalar(multilinear(tor.t_hat.components, instance.xi), instance.dim)),
    ]
    if potential is not None:
        Q = potential.Q.components
        out.append(("T.potential", tor.T - Tensor(Q - np.transpose(Q, (0, 2, 1)), 1, 2)))
    return out


def torsion_via_F(instance: PiManifoldInstance, F: Tensor) -> Tensor:
    m = instance
    f = F.components
    phi, eta, xi = m.phi, m.eta, m.xi

    def Fv(a, b, c):
        return multilinear(f, a, b, c)

    def val(x, y, z):
        return (
            -HALF * (Fv(x, phi(y), z) - Fv(y, phi(x), z))
            - HALF * eta(z) * (Fv(x, phi(y), xi) - Fv(y, phi(x), xi))
            + eta(y) * Fv(x, phi(z), xi) - eta(x) * Fv(y, phi(z), xi)
        )

    return Tensor(tabulate(m.dim, 3, val), 0, 3)


def torsion_via_nijenhuis(instance: PiManifoldInstance, N: Tensor, Nt: Tensor) -> Tensor:
    m = instance
    n, nt = N.components, Nt.components
    phi, phi2, eta, xi = m.phi, m.phi2, m.eta, m.xi

    def Nv(a, b, c):
        return multilinear(n, a, b, c)

    def Ntv(a, b, c):
        return multilinear(nt, a, b, c)

    def val(x, y, z):
        px, py, pz = phi(x), phi(y), phi(z)
        a = (2 * Nv(px, py, z) + Nv(px, z, py) - Nv(py, z, px) + Ntv(px, z, py) - Ntv(py, z, px))
        b = 2 * Nv(xi, py, pz) - Nv(py, pz, xi) + 2 * eta(z) * Ntv(xi, xi, phi2(y)) - Ntv(py, pz, xi)
        c = 2 * Nv(xi, px, pz) - Nv(px, pz, xi) + 2 * eta(z) * Ntv(xi, xi, phi2(x)) - Ntv(px, pz, xi)
        e = 2 * Nv(px, py, xi) + Nv(px, xi, py) - Nv(py, xi, px) + Ntv(px, xi, py) - Ntv(py, xi, px)
        return (
            -Fraction(1, 8) * a
            + Fraction(1, 4) * eta(x) * b
            - Fraction(1, 4) * eta(y) * c
            - Fraction(1, 8) * eta(z) * e
        )

    return Tensor(tabulate(m.dim, 3, val), 0, 3)


def torsion_via_nijenhuis_hv(instance: PiManifoldInstance, N: Tensor, Nt: Tensor) -> Tensor:
    """The same torsion written on horizontal and vertical components."""
    m = instance
    n, nt = N.components, Nt.components

    def Nv(a, b, c):
        return multilinear(n, a, b, c)

    def Ntv(a, b, c):
        return multilinear(nt, a, b, c)

    def h(v):
        return m.phi2(v)

    def v_(v):
        return m.eta(v) * m.xi

    def val(x, y, z):
        xh, yh, zh, xv, yv, zv = h(x), h(y), h(z), v_(x), v_(y), v_(z)
        cyclic = Nv(xh, yh, zh) + Nv(yh, zh, xh) + Nv(zh, xh, yh)
        first = cyclic + Nv(xh, yh, zh) + Ntv(yh, zh, xh) - Ntv(zh, xh, yh)
        second = (
            2 * Nv(xh, yh, zv) + Nv(yh, zv, xh) + Nv(zv, xh, yh)
            + 2 * Nv(xv, yh, zh) + Nv(yh, zh, xv) + 2 * Nv(xh, yv, zh)
            + Nv(zh, xh, yv) + 2 * Ntv(yh, zh, xv) - Ntv(zv, xh, yh)
            - Ntv(zh, xh, yv) - 2 * Ntv(zv, xv, yh) + 2 * Ntv(yv, zv, xh)
        )
        return -Fraction(1, 8) * first - Fraction(1, 4) * second

    return Tensor(tabulate(m.dim, 3, val), 0, 3)


def torsion_form_relations(instance: PiManifoldInstance, lee: FundamentalData, tor: TorsionData):
    """The eight relations between the torsion forms of D1 and the Lee forms.

    ``tforms.t_star-phi`` (``t* o phi = t o phi^2``) inherits the sign slip of
    the Lee-form relation ``theta* o phi^2 = theta o phi``; the consistent
    version ``t* o phi = -t o phi^2`` is returned as ``tforms.t_star-phi-signed``.
    """
    m = instance
    d = m.dim
    th, ths, om = lee.theta.components, lee.theta_star.components, lee.omega.components
    t, ts, th_ = tor.t.components, tor.t_star.components, tor.t_hat.components
    theta_xi = multilinear(th, m.xi)
    theta_star_xi = multilinear(ths, m.xi)

    def form(fn):
        return Tensor(tabulate(d, 1, fn), 0, 1)

    def ev(c, v):
        return multilinear(c, v)

    return [
        ("tforms.t", form(lambda x: ev(t, x) - HALF * ev(th, m.phi(x)) + theta_star_xi * m.eta(x))),
        ("tforms.t_star", form(lambda x: ev(ts, x) - HALF * ev(ths, m.phi(x)) + theta_xi * m.eta(x))),
        ("tforms.t_hat", form(lambda x: ev(th_, x) - ev(om, m.phi(x)))),
        ("tforms.t_star-phi", form(lambda x: ev(ts, m.phi(x)) - ev(t, m.phi2(x)))),
        ("tforms.t_star-phi-signed", form(lambda x: ev(ts, m.phi(x)) + ev(t, m.phi2(x)))),
        ("tforms.t-phi", form(lambda x: 2 * ev(t, m.phi(x)) - ev(th, m.phi2(x)))),
        ("tforms.t-phi2", form(lambda x: 2 * ev(t, m.phi2(x)) - ev(th, m.phi(x)))),
        ("tforms.t_star-phi-lee", form(lambda x: 2 * ev(ts, m.phi(x)) - ev(ths, m.phi2(x)))),
        ("tforms.t_star-phi2-lee", form(lambda x: 2 * ev(ts, m.phi2(x)) - ev(ths, m.phi(x)))),
    ]


# -- curvature ----------------------------------------------------------------


def curvature_via_potential(
    instance: PiManifoldInstance,
    lc_bundle: CurvatureBundle,
    potential: Potential,
    lc: Connection,
    direct: Tensor | None = None,
) -> Tensor:
    """``R + (D_x Q)(y,z,w) - (D_y Q)(x,z,w) + g(Q(x,z),Q(y,w)) - g(Q(y,z),Q(x,w))``.

    When ``direct`` is given the result is asserted equal to it.
    """
    nq = covariant_derivative(potential.Q3, lc).components
    Q = potential.Q.components
    g = instance.g_matrix
    quad = einsum("axz,byw,ab->xyzw", Q, Q, g) - einsum("ayz,bxw,ab->xyzw", Q, Q, g)
    deriv = nq - np.transpose(nq, (1, 0, 2, 3))
    R_dot = lc_bundle.R + Tensor(deriv + quad, 0, 4)
    if direct is not None and R_dot != direct:
        raise IdentityViolation("Rdot.potential", R_dot - direct)
    return R_dot


def first_natural_curvature_residuals(R_dot: Tensor):
    return curvature_identity_residuals(R_dot, prefix="Rdot", bianchi=False)


# -- per-class closed forms ---------------------------------------------------


class _Ctx:
    """Vector-level shorthands shared by the closed-form evaluators."""

    def __init__(self, instance: PiManifoldInstance, lee: FundamentalData):
        m = self.m = instance
        self.n = Fraction(m.n)
        self.phi, self.phi2, self.eta, self.g, self.xi = m.phi, m.phi2, m.eta, m.g, m.xi
        self.lee = lee
        self.theta_sharp = lee.theta_sharp.components
        self.omega_sharp = lee.omega_sharp.components
        self.theta_xi = self.theta(self.xi)
        self.theta_star_xi = self.theta_star(self.xi)

    def theta(self, v):
        return multilinear(self.lee.theta.components, v)

    def theta_star(self, v):
        return multilinear(self.lee.theta_star.components, v)

    def omega(self, v):
        return multilinear(self.lee.omega.components, v)

    def d(self, x, value):
        return directional_derivative(self.m, x, value)


def _closed_potential(ctx: _Ctx, label: ClassLabel):
    """Vector-valued ``D1_x y - D_x y`` for the class."""
    phi, phi2, eta, g, xi, n = ctx.phi, ctx.phi2, ctx.eta, ctx.g, ctx.xi, ctx.n
    if label is ClassLabel.F1:
        ts = ctx.theta_sharp

        def q(x, y):
            return -(
                ctx.theta(phi(y)) * phi2(x) - ctx.theta(phi2(y)) * phi(x)
                + g(x, phi(y)) * phi2(ts) - g(phi(x), phi(y)) * phi(ts)
            ) / (4 * n)
    elif label is ClassLabel.F4:
        def q(x, y):
            return -ctx.theta_xi / (2 * n) * (g(x, phi(y)) * xi - eta(y) * phi(x))
    elif label is ClassLabel.F5:
        def q(x, y):
            return -ctx.theta_star_xi / (2 * n) * (g(phi(x), phi(y)) * xi - eta(y) * phi2(x))
    else:
        os_ = ctx.omega_sharp

        def q(x, y):
            return -eta(x) * (ctx.omega(phi(y)) * xi - eta(y) * phi(os_))
    return q


def closed_form_connection(instance: PiManifoldInstance, label, lee: FundamentalData, lc: Connection) -> Connection:
    """D1 of a main-class manifold as given by its closed form in terms of the Lee forms."""
    label = _require_main(label)
    ctx = _Ctx(instance, lee)
    Q = Tensor(tabulate_vectors(instance.dim, 2, _closed_potential(ctx, label)), 1, 2)
    return connection_from_potential(lc, Q, f"first-natural[{label}]")


def closed_form_torsion(instance: PiManifoldInstance, label, lee: FundamentalData) -> Tensor:
    """(1,2) torsion of D1 from the class closed form, components ``[k, i, j]``."""
    label = _require_main(label)
    ctx = _Ctx(instance, lee)
    phi, phi2, eta, xi, n = ctx.phi, ctx.phi2, ctx.eta, ctx.xi, ctx.n
    th = ctx.theta
    if label is ClassLabel.F1:
        def t(x, y):
            return -(
                th(phi(y)) * phi2(x) - th(phi(x)) * phi2(y) + th(phi2(x)) * phi(y) - th(phi2(y)) * phi(x)
            ) / (4 * n)
    elif label is ClassLabel.F4:
        def t(x, y):
            return ctx.theta_xi / (2 * n) * (eta(y) * phi(x) - eta(x) * phi(y))
    elif label is ClassLabel.F5:
        def t(x, y):
            return ctx.theta_star_xi / (2 * n) * (eta(y) * phi2(x) - eta(x) * phi2(y))
    else:
        def t(x, y):
            return (eta(y) * ctx.omega(phi(x)) - eta(x) * ctx.omega(phi(y))) * xi
    return Tensor(tabulate_vectors(instance.dim, 2, t), 1, 2)


def torsion_from_forms(instance: PiManifoldInstance, label, tor: TorsionData) -> Tensor:
    """(1,2) torsion of D1 rebuilt from its own torsion forms, per class."""
    label = _require_main(label)
    m = instance
    phi, phi2, eta, xi, n = m.phi, m.phi2, m.eta, m.xi, Fraction(m.n)

    def t_(v):
        return multilinear(tor.t.components, v)

    t_star_xi = multilinear(tor.t_star.components, xi)
    t_xi = t_(xi)

    if label is ClassLabel.F1:
        def fn(x, y):
            return -(
                t_(phi2(y)) * phi2(x) - t_(phi2(x)) * phi2(y) + t_(phi(x)) * phi(y) - t_(phi(y)) * phi(x)
            ) / (2 * n)
    elif label is ClassLabel.F4:
        def fn(x, y):
            return -t_star_xi / (2 * n) * (eta(y) * phi(x) - eta(x) * phi(y))
    elif label is ClassLabel.F5:
        def fn(x, y):
            return -t_xi / (2 * n) * (eta(y) * phi2(x) - eta(x) * phi2(y))
    else:
        def fn(x, y):
            th = tor.t_hat.components
            return (eta(y) * multilinear(th, x) - eta(x) * multilinear(th, y)) * xi
    return Tensor(tabulate_vectors(m.dim, 2, fn), 1, 2)


def divergences(instance: PiManifoldInstance, form: Tensor, lc: Connection) -> tuple[Fraction, Fraction]:
    """``Div = g^{ij} (D_{e_i} form)(e_j)`` and ``Div* = g^{ij} (D_{e_i} form)(phi e_j)``."""
    nf = covariant_derivative(form, lc).components
    ginv = instance.g_inv_matrix
    div = einsum("ij,ij->", ginv, nf)[()]
    div_star = einsum("ij,aj,ia->", ginv, instance.phi_matrix, nf)[()]
    return div, div_star


def _compose(instance: PiManifoldInstance, form: Tensor, power: int) -> Tensor:
    """The 1-form ``form o phi^power``."""
    phi = instance.phi_matrix
    comps = form.components
    for _ in range(power):
        comps = einsum("a,ai->i", comps, phi)
    return Tensor(comps, 0, 1)


@dataclass(frozen=True)
class ClosedCurvature:
    R_dot: Tensor
    aux: dict  # named (0,2) tensors used by the formula (S1, S2, S3)


def closed_form_curvature(
    instance: PiManifoldInstance,
    label,
    lee: FundamentalData,
    lc: Connection,
    lc_bundle: CurvatureBundle,
) -> ClosedCurvature:
    """Curvature of D1 from the class closed form (R plus Kulkarni-Nomizu terms)."""
    label = _require_main(label)
    m = instance
    d = m.dim
    ctx = _Ctx(m, lee)
    n = ctx.n
    g = m.metric.g
    g_tilde, g_star, g_2star = derived_metrics(m)
    ee = eta_eta(m)
    R = lc_bundle.R
    aux = {}
    phi, phi2 = ctx.phi, ctx.phi2

    if label is ClassLabel.F1:
        th = ctx.theta
        d_t2 = covariant_derivative(_compose(m, lee.theta, 2), lc).components
        d_t1 = covariant_derivative(_compose(m, lee.theta, 1), lc).components
        S1 = Tensor(
            d_t2 + tabulate(d, 2, lambda x, y: (th(phi(x)) * th(phi2(y)) + th(phi2(x)) * th(phi(y))) / (4 * n)), 0, 2
        )
        S2 = Tensor(
            d_t1 + tabulate(d, 2, lambda x, y: (th(phi2(x)) * th(phi2(y)) + th(phi(x)) * th(phi(y))) / (4 * n)), 0, 2
        )
        aux = {"S1": S1, "S2": S2}
        ts = ctx.theta_sharp
        a = th(phi(ts))
        b = th(phi2(ts))
        bracket = (
            kulkarni_nomizu(g_star, S1) - kulkarni_nomizu(g_2star, S2)
            - a * kulkarni_nomizu(g_star, g_2star)
            - b * (kulkarni_nomizu(g, g_2star) + kulkarni_nomizu(g_star, g_tilde) - kulkarni_nomizu(g_tilde, g))
        )
        R_dot = R + bracket * (1 / (4 * n))
    elif label is ClassLabel.F4:
        t_xi = ctx.theta_xi
        K = kulkarni_nomizu(ee, g_star).components
        deriv = tabulate(
            d, 4,
            lambda x, y, z, w: ctx.d(x, t_xi) * multilinear(K, ctx.xi, y, z, w)
            - ctx.d(y, t_xi) * multilinear(K, ctx.xi, x, z, w),
        )
        R_dot = (
            R + Tensor(deriv, 0, 4) * (1 / (2 * n))
            - (2 * kulkarni_nomizu(ee, g) - kulkarni_nomizu(g_star, g_star)) * (t_xi**2 / (8 * n**2))
        )
    elif label is ClassLabel.F5:
        ts_xi = ctx.theta_star_xi
        gg = kulkarni_nomizu(g, g)
        K = gg.components
        deriv = tabulate(
            d, 4,
            lambda x, y, z, w: ctx.d(x, ts_xi) * multilinear(K, ctx.xi, y, z, w)
            - ctx.d(y, ts_xi) * multilinear(K, ctx.xi, x, z, w),
        )
        R_dot = R + Tensor(deriv, 0, 4) * (1 / (4 * n)) + gg * (ts_xi**2 / (8 * n**2))
    else:
        d_om = covariant_derivative(lee.omega, lc).components
        S3 = Tensor(
            tabulate(d, 2, lambda x, y: multilinear(d_om, x, phi(y)) + ctx.omega(phi(x)) * ctx.omega(phi(y))), 0, 2
        )
        aux = {"S3": S3}
        R_dot = R - kulkarni_nomizu(ee, S3)
    return ClosedCurvature(R_dot, aux)


@dataclass(frozen=True)
class ClosedRicci:
    rho_dot: Tensor
    rho_dot_star: Tensor
    tau_dot: Fraction
    tau_dot_star: Fraction


def closed_form_ricci(
    instance: PiManifoldInstance,
    label,
    lee: FundamentalData,
    lc: Connection,
    lc_bundle: CurvatureBundle,
) -> ClosedRicci:
    """Ricci tensors and scalar curvatures of D1 from the class closed forms."""
    label = _require_main(label)
    m = instance
    d = m.dim
    ctx = _Ctx(m, lee)
    n = ctx.n
    phi, phi2, eta, g, xi = ctx.phi, ctx.phi2, ctx.eta, ctx.g, ctx.xi
    rho, rho_s = lc_bundle.ricci.components, lc_bundle.ricci_star.components
    tau, tau_s = lc_bundle.tau, lc_bundle.tau_star

    if label is ClassLabel.F1:
        th = ctx.theta
        ts = ctx.theta_sharp
        a = th(phi(ts))
        b = th(phi2(ts))
        t1 = _compose(m, lee.theta, 1)
        t2 = _compose(m, lee.theta, 2)
        d_t1 = covariant_derivative(t1, lc).components
        d_t2 = covariant_derivative(t2, lc).components
        div_t1, divs_t1 = divergences(m, t1, lc)
        div_t2, divs_t2 = divergences(m, t2, lc)

        def r(y, z):
            return (
                HALF * (multilinear(d_t1, y, z) + (th(phi2(y)) * th(phi2(z)) + th(phi(y)) * th(phi(z))) / (4 * n))
                - (
                    (div_t2 - (4 * n**2 - 4 * n - 1) / (2 * n) * a + 2 * (n - 1) * b) * g(y, phi(z))
                    - (div_t1 + (8 * n**2 - 8 * n + 1) / (2 * n) * b) * g(phi(y), phi(z))
                ) / (4 * n)
            )

        def rs(y, z):
            return (
                -HALF * (multilinear(d_t2, y, z) + (th(phi(y)) * th(phi2(z)) + th(phi2(y)) * th(phi(z))) / (4 * n))
                + (
                    (divs_t1 + (2 * n - 1) ** 2 / (2 * n) * a - 2 * (n - 1) * b) * g(phi(y), phi(z))
                    - (divs_t2 - (8 * n**2 - 8 * n - 1) / (2 * n) * b) * g(y, phi(z))
                ) / (4 * n)
            )

        tau_dot = tau + div_t1 + (2 * n - 1) ** 2 / (2 * n) * b
        tau_dot_star = tau_s + (n - 1) * a - (2 * n - 3) / 2 * b
    elif label is ClassLabel.F4:
        t_xi = ctx.theta_xi

        def r(y, z):
            return (
                -(ctx.d(xi, t_xi) * g(y, phi(z)) - ctx.d(phi(y), t_xi) * eta(z)) / (2 * n)
                + t_xi**2 / (2 * n**2) * (g(y, z) + (n - 1) * eta(y) * eta(z))
            )

        def rs(y, z):
            return (
                (ctx.d(phi2(y), t_xi) - 2 * n * ctx.d(y, t_xi)) * eta(z) / (2 * n)
                - (2 * n - 1) / (4 * n**2) * t_xi**2 * g(y, phi(z))
            )

        tau_dot = tau + t_xi**2 / (2 * n)
        tau_dot_star = tau_s - ctx.d(xi, t_xi)
    elif label is ClassLabel.F5:
        s_xi = ctx.theta_star_xi

        def r(y, z):
            return (
                -(ctx.d(xi, s_xi) * g(y, z) + (2 * n - 1) * ctx.d(y, s_xi) * eta(z)) / (2 * n)
                - s_xi**2 / (2 * n) * g(y, z)
            )

        def rs(y, z):
            return -(ctx.d(phi(y), s_xi) * eta(z)) / (2 * n) + s_xi**2 / (4 * n**2) * g(y, phi(z))

        tau_dot = tau - 2 * ctx.d(xi, s_xi) - (2 * n + 1) / (2 * n) * s_xi**2
        tau_dot_star = tau_s
    else:
        om = ctx.omega
        os_ = ctx.omega_sharp
        d_om = covariant_derivative(lee.omega, lc).components
        div_om, divs_om = divergences(m, lee.omega, lc)
        c_rho = divs_om + om(phi2(os_))
        c_rho_s = div_om + om(phi(os_))

        def r(y, z):
            return multilinear(d_om, y, phi(z)) + om(phi(y)) * om(phi(z)) + c_rho * eta(y) * eta(z)

        def rs(y, z):
            return c_rho_s * eta(y) * eta(z)

        tau_dot = tau + 2 * c_rho
        tau_dot_star = tau_s + c_rho_s

    rho_dot = Tensor(rho + tabulate(d, 2, r), 0, 2)
    rho_dot_star = Tensor(rho_s + tabulate(d, 2, rs), 0, 2)
    return ClosedRicci(rho_dot, rho_dot_star, Fraction(tau_dot), Fraction(tau_dot_star))


# -- one-shot pipeline --------------------------------------------------------


@dataclass(frozen=True)
class FirstNaturalData:
    potential: Potential
    connection: Connection
    torsion: TorsionData
    bundle: CurvatureBundle
    R_via_potential: Tensor


def first_natural_pipeline(
    instance: PiManifoldInstance,
    lc: Connection,
    lee: FundamentalData,
    lc_bundle: CurvatureBundle,
    check: bool = True,
) -> FirstNaturalData:
    from .levi_civita import curvature_bundle

    pot = first_natural_potential(instance, lc, lee.F, check=check)
    conn = first_natural_connection(instance, lc, pot, check=check)
    tor = torsion(instance, conn)
    if check:
        _check(torsion_residuals(instance, tor, pot), IdentityViolation)
    bundle = curvature_bundle(instance, conn)
    via = curvature_via_potential(instance, lc_bundle, pot, lc, direct=bundle.R if check else None)
    if check:
        _check(first_natural_curvature_residuals(bundle.R), IdentityViolation)
    return FirstNaturalData(pot, conn, tor, bundle, via)


__all__ = [
    "ClosedCurvature",
    "ClosedRicci",
    "FirstNaturalData",
    "Potential",
    "TorsionData",
    "closed_form_connection",
    "closed_form_curvature",
    "closed_form_ricci",
    "closed_form_torsion",
    "curvature_via_potential",
    "divergences",
    "first_natural_connection",
    "first_natural_pipeline",
    "first_natural_potential",
    "naturality_residuals",
    "potential_residuals",
    "torsion_forms",
    "torsion",
    "torsion_form_relations",
    "torsion_from_forms",
    "torsion_residuals",
    "torsion_via_F",
    "torsion_via_nijenhuis",
    "torsion_via_nijenhuis_hv",
]

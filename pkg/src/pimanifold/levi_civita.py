"""Levi-Civita connection from structure constants, and everything built on it.

Covers the fundamental tensor F, the Lee forms, the Nijenhuis pair and the
curvature bundle (R, Ricci, scalar curvature and their starred versions).  The
curvature routine accepts any connection, so it is reused for D1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IdentityViolation, LemmaViolation
from .pi_manifold import PiManifoldInstance
from .tensor_core import (
    Connection,
    Tensor,
    covariant_derivative,
    einsum,
    lower_last,
    multilinear,
    sharp,
    tabulate,
    tabulate_vectors,
)

# Re-exported: the connection type lives next to covariant differentiation.
__all__ = [
    "Connection",
    "CurvatureBundle",
    "FundamentalData",
    "curvature_bundle",
    "curvature_identity_residuals",
    "f_symmetry_residuals",
    "fundamental_data",
    "fundamental_tensor",
    "koszul_levi_civita",
    "lee_forms",
    "lee_relation_residuals",
    "trace_metric",
    "levi_civita_residuals",
    "nabla_xi_eta",
    "nijenhuis_pair",
    "nijenhuis_residuals",
    "reconstruct_F",
]


def _raise_if_nonzero(residuals, exc=IdentityViolation):
    for name, r in residuals:
        if not r.is_zero():
            raise exc(name, r)


def levi_civita_residuals(instance: PiManifoldInstance, conn: Connection) -> list[tuple[str, Tensor]]:
    """Torsion and ``D g`` of a connection, which both vanish for Levi-Civita."""
    c = instance.algebra.structure_constants
    gam = conn.gamma
    torsion = gam - np.transpose(gam, (1, 0, 2)) - c
    return [
        ("lc.torsion-free", Tensor(np.transpose(torsion, (2, 0, 1)), 1, 2)),
        ("lc.metric", covariant_derivative(instance.metric.g, conn)),
    ]


def koszul_levi_civita(instance: PiManifoldInstance, check: bool = True) -> Connection:
    """Levi-Civita coefficients from the Koszul formula for invariant fields.

    ``2 g(D_i b_j, b_k) = g([b_i,b_j],b_k) - g([b_j,b_k],b_i) + g([b_k,b_i],b_j)``
    """
    c = instance.algebra.structure_constants
    g = instance.g_matrix
    cl = einsum("ijm,mk->ijk", c, g)
    low = (cl - np.transpose(cl, (2, 0, 1)) + np.transpose(cl, (1, 2, 0))) * Fraction(1, 2)
    gamma = einsum("ijk,kl->ijl", low, instance.g_inv_matrix)
    conn = Connection(gamma, "levi-civita")
    if check:
        _raise_if_nonzero(levi_civita_residuals(instance, conn))
    return conn


def nabla_phi(instance: PiManifoldInstance, conn: Connection) -> np.ndarray:
    """Array ``[a, i, j]`` of ``((D_{b_i} phi) b_j)^a``."""
    return covariant_derivative(instance.structure.phi, conn).components


def fundamental_tensor(instance: PiManifoldInstance, conn: Connection, check: bool = True) -> Tensor:
    """``F(x, y, z) = g((D_x phi) y, z)``."""
    F = Tensor(einsum("aij,ak->ijk", nabla_phi(instance, conn), instance.g_matrix), 0, 3)
    if check:
        _raise_if_nonzero(f_symmetry_residuals(instance, F))
    return F


def f_symmetry_residuals(instance: PiManifoldInstance, F: Tensor) -> list[tuple[str, Tensor]]:
    m = instance
    d = m.dim
    xi = m.xi
    f = F.components

    def Fv(x, y, z):
        return multilinear(f, x, y, z)

    phi, phi2, eta = m.phi, m.phi2, m.eta
    out = [
        ("F.sym.23", tabulate(d, 3, lambda x, y, z: Fv(x, y, z) - Fv(x, z, y))),
        (
            "F.sym.phi-phi",
            tabulate(
                d, 3,
                lambda x, y, z: Fv(x, y, z) + Fv(x, phi(y), phi(z)) - eta(y) * Fv(x, xi, z) - eta(z) * Fv(x, y, xi),
            ),
        ),
        (
            "F.sym.phi-z",
            tabulate(
                d, 3,
                lambda x, y, z: Fv(x, y, phi(z)) + Fv(x, phi(y), z)
                - eta(z) * Fv(x, phi(y), xi) - eta(y) * Fv(x, phi(z), xi),
            ),
        ),
        ("F.sym.phi2-phi2", tabulate(d, 3, lambda x, y, z: Fv(x, phi(y), phi(z)) + Fv(x, phi2(y), phi2(z)))),
        ("F.sym.phi-phi2", tabulate(d, 3, lambda x, y, z: Fv(x, phi(y), phi2(z)) + Fv(x, phi2(y), phi(z)))),
    ]
    return [(name, Tensor(arr, 0, 3)) for name, arr in out]


def trace_metric(instance: PiManifoldInstance, trace: str = "horizontal"):
    """Inverse metric used for the Lee-form and torsion-form traces.

    ``"horizontal"`` sums over a frame ``{xi; e_1..e_2n}`` with ``eta(e_i) = 0``
    and skips xi, i.e. uses ``g^{ij} - xi^i xi^j``; ``"full"`` uses ``g^{ij}``.
    """
    ginv = instance.g_inv_matrix
    if trace == "full":
        return ginv
    if trace != "horizontal":
        raise ValueError(f"unknown trace range {trace!r}")
    return ginv - einsum("i,j->ij", instance.xi, instance.xi)


def lee_forms(instance: PiManifoldInstance, F: Tensor, trace: str = "horizontal"):
    """``(theta, theta_star, omega, theta_sharp, omega_sharp)``.

    ``theta = g^{ij} F(e_i, e_j, .)``, ``theta* = g^{ij} F(e_i, phi e_j, .)``,
    ``omega = F(xi, xi, .)``.  The two full-frame and horizontal traces differ
    by omega for theta and agree for theta*.
    """
    ginv = trace_metric(instance, trace)
    xi = instance.xi
    f = F.components
    theta = Tensor(einsum("ij,ijz->z", ginv, f), 0, 1)
    theta_star = Tensor(einsum("ij,aj,iaz->z", ginv, instance.phi_matrix, f), 0, 1)
    omega = Tensor(einsum("a,b,abz->z", xi, xi, f), 0, 1)
    return theta, theta_star, omega, sharp(theta, instance.metric), sharp(omega, instance.metric)


def lee_relation_residuals(instance: PiManifoldInstance, theta: Tensor, theta_star: Tensor, omega: Tensor):
    """Residuals of the Lee-form relations.

    ``lee.theta-star-phi2`` is the relation ``theta* o phi^2 = theta o phi`` as
    usually printed; composing ``theta* o phi = -theta o phi^2`` with phi shows
    the consistent sign is ``theta* o phi^2 = -theta o phi``, checked as
    ``lee.theta-star-phi2-signed``.
    """
    m = instance
    d = m.dim

    def on(form, fn):
        return tabulate(d, 1, lambda x: multilinear(form.components, fn(x)))

    return [
        ("lee.omega-xi", Tensor.scalar(multilinear(omega.components, m.xi), d)),
        ("lee.theta-star-phi", Tensor(on(theta_star, m.phi) + on(theta, m.phi2), 0, 1)),
        ("lee.theta-star-phi2", Tensor(on(theta_star, m.phi2) - on(theta, m.phi), 0, 1)),
        ("lee.theta-star-phi2-signed", Tensor(on(theta_star, m.phi2) + on(theta, m.phi), 0, 1)),
    ]


def nabla_xi_eta(instance: PiManifoldInstance, conn: Connection, F: Tensor | None = None, check: bool = True):
    """``(D xi, D eta)`` as a (1,1)-tensor ``[a, i]`` and a (0,2)-tensor ``[i, j]``."""
    nxi = covariant_derivative(instance.structure.xi, conn)
    neta = covariant_derivative(instance.structure.eta, conn)
    if check:
        if F is None:
            F = fundamental_tensor(instance, conn, check=False)
        _raise_if_nonzero(lemma_residuals(instance, nxi, neta, F), LemmaViolation)
    return nxi, neta


def lemma_residuals(instance: PiManifoldInstance, nxi: Tensor, neta: Tensor, F: Tensor):
    m = instance
    d = m.dim
    g = m.g_matrix
    r1 = neta.components - einsum("ai,aj->ij", nxi.components, g)
    r2 = einsum("a,ai->i", m.structure.eta.components, nxi.components)
    r3 = tabulate(d, 2, lambda x, y: multilinear(F.components, x, m.phi(y), m.xi) + multilinear(neta.components, x, y))
    return [
        ("lemma.nabla-eta", Tensor(r1, 0, 2)),
        ("lemma.eta-nabla-xi", Tensor(r2, 0, 1)),
        ("lemma.F-phi-xi", Tensor(r3, 0, 2)),
    ]


def nijenhuis_pair(instance: PiManifoldInstance, conn: Connection, F: Tensor | None = None, check: bool = True):
    """Nijenhuis tensor and associated Nijenhuis tensor as (0,3)-tensors.

    Built from their (1,2) definitions via ``D phi`` and ``D eta``; when
    ``check`` is set, their (anti)symmetry and the expressions through F are
    asserted.
    """
    m = instance
    d = m.dim
    nphi = nabla_phi(m, conn)
    neta = covariant_derivative(m.structure.eta, conn).components
    xi = m.xi

    def dphi(x, y):
        return einsum("aij,i,j->a", nphi, x, y)

    def half(x, y):
        return dphi(m.phi(x), y) - m.phi(dphi(x, y)) - multilinear(neta, x, y) * xi

    N = tabulate_vectors(d, 2, lambda x, y: half(x, y) - half(y, x))
    Nt = tabulate_vectors(d, 2, lambda x, y: half(x, y) + half(y, x))
    N3 = lower_last(Tensor(N, 1, 2), m.metric)
    Nt3 = lower_last(Tensor(Nt, 1, 2), m.metric)
    if check:
        if F is None:
            F = fundamental_tensor(m, conn, check=False)
        _raise_if_nonzero(nijenhuis_residuals(m, N3, Nt3, F))
    return N3, Nt3


def nijenhuis_from_F(instance: PiManifoldInstance, F: Tensor) -> tuple[Tensor, Tensor]:
    """The (0,3) Nijenhuis pair written through the fundamental tensor."""
    m = instance
    f = F.components
    xi, phi, eta = m.xi, m.phi, m.eta

    def Fv(x, y, z):
        return multilinear(f, x, y, z)

    def N(x, y, z):
        return (
            Fv(phi(x), y, z) - Fv(phi(y), x, z) - Fv(x, y, phi(z)) + Fv(y, x, phi(z))
            + eta(z) * (Fv(x, phi(y), xi) - Fv(y, phi(x), xi))
        )

    def Nt(x, y, z):
        return (
            Fv(phi(x), y, z) + Fv(phi(y), x, z) - Fv(x, y, phi(z)) - Fv(y, x, phi(z))
            + eta(z) * (Fv(x, phi(y), xi) + Fv(y, phi(x), xi))
        )

    return Tensor(tabulate(m.dim, 3, N), 0, 3), Tensor(tabulate(m.dim, 3, Nt), 0, 3)


def nijenhuis_residuals(instance: PiManifoldInstance, N: Tensor, Nt: Tensor, F: Tensor):
    NF, NtF = nijenhuis_from_F(instance, F)
    return [
        ("N.antisym", N + N.permute(1, 0, 2)),
        ("Ntilde.sym", Nt - Nt.permute(1, 0, 2)),
        ("N.F-expression", N - NF),
        ("Ntilde.F-expression", Nt - NtF),
    ]


def reconstruct_F(N: Tensor, N_assoc: Tensor, instance: PiManifoldInstance) -> Tensor:
    """Fundamental tensor recovered from the Nijenhuis pair alone."""
    m = instance
    xi, phi, eta = m.xi, m.phi, m.eta
    n, nt = N.components, N_assoc.components

    def val(x, y, z):
        px = phi(x)
        first = (
            multilinear(n, px, y, z) + multilinear(n, px, z, y)
            + multilinear(nt, px, y, z) + multilinear(nt, px, z, y)
        )
        second = (
            multilinear(n, xi, y, phi(z)) + multilinear(nt, xi, y, phi(z))
            + eta(z) * multilinear(nt, xi, xi, phi(y))
        )
        return Fraction(1, 4) * first - Fraction(1, 2) * eta(x) * second

    return Tensor(tabulate(m.dim, 3, val), 0, 3)


@dataclass(frozen=True)
class FundamentalData:
    F: Tensor
    theta: Tensor
    theta_star: Tensor
    omega: Tensor
    theta_sharp: Tensor
    omega_sharp: Tensor
    N: Tensor
    N_assoc: Tensor


def fundamental_data(instance: PiManifoldInstance, conn: Connection | None = None, check: bool = True) -> FundamentalData:
    if conn is None:
        conn = koszul_levi_civita(instance, check=check)
    F = fundamental_tensor(instance, conn, check=check)
    theta, theta_star, omega, theta_sharp, omega_sharp = lee_forms(instance, F)
    N, Nt = nijenhuis_pair(instance, conn, F, check=check)
    return FundamentalData(F, theta, theta_star, omega, theta_sharp, omega_sharp, N, Nt)


@dataclass(frozen=True)
class CurvatureBundle:
    R: Tensor
    ricci: Tensor
    tau: Fraction
    ricci_star: Tensor
    tau_star: Fraction
    connection_label: str


def curvature_tensor(instance: PiManifoldInstance, conn: Connection) -> Tensor:
    """(0,4) curvature ``R(x,y,z,w) = g(D_x D_y z - D_y D_x z - D_[x,y] z, w)``."""
    gam = conn.gamma
    c = instance.algebra.structure_constants
    # R(b_i,b_j)b_k = sum_l R_up[l,i,j,k] b_l with constant frame components
    r_up = (
        einsum("jkm,iml->lijk", gam, gam)
        - einsum("ikm,jml->lijk", gam, gam)
        - einsum("ijm,mkl->lijk", c, gam)
    )
    return Tensor(einsum("lijk,lw->ijkw", r_up, instance.g_matrix), 0, 4)


def ricci_traces(instance: PiManifoldInstance, R: Tensor):
    """``(rho, tau, rho_star, tau_star)`` for any (0,4) curvature-type tensor."""
    ginv = instance.g_inv_matrix
    r = R.components
    rho = einsum("ab,axyb->xy", ginv, r)
    rho_star = einsum("ab,cb,axyc->xy", ginv, instance.phi_matrix, r)
    tau = einsum("ab,ab->", ginv, rho)[()]
    tau_star = einsum("ab,ab->", ginv, rho_star)[()]
    return Tensor(rho, 0, 2), tau, Tensor(rho_star, 0, 2), tau_star


def curvature_bundle(instance: PiManifoldInstance, conn: Connection) -> CurvatureBundle:
    R = curvature_tensor(instance, conn)
    rho, tau, rho_star, tau_star = ricci_traces(instance, R)
    return CurvatureBundle(R, rho, tau, rho_star, tau_star, conn.label)


def curvature_identity_residuals(R: Tensor, prefix: str = "R", bianchi: bool = True):
    """Antisymmetries in slots (1,2), (3,4) and, optionally, the cyclic Bianchi sum."""
    out = [
        (f"{prefix}.antisym12", R + R.permute(1, 0, 2, 3)),
        (f"{prefix}.antisym34", R + R.permute(0, 1, 3, 2)),
    ]
    if bianchi:
        # R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w)
        out.append((f"{prefix}.bianchi", R + R.permute(2, 0, 1, 3) + R.permute(1, 2, 0, 3)))
    return out

"""Riemannian Pi-manifolds given by Lie-algebra data and an invariant structure.

An instance is a Lie algebra with structure constants ``C[i, j, k]``
(``[b_i, b_j] = sum_k C[i, j, k] b_k``) and a left-invariant structure
``(phi, xi, eta, g)`` on the same frame.  Vectors are handled as 1-d object
arrays of Fractions holding frame components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatch, SlotMismatch
from .tensor_core import (
    MetricPair,
    Tensor,
    basis_vector,
    einsum,
    identity_matrix,
    inertia,
    matrix_inverse,
    metric_inverse,
    multilinear,
    rational_array,
    tabulate,
)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    structure_constants: np.ndarray

    def __post_init__(self):
        c = rational_array(self.structure_constants)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimMismatch(f"structure constants must be d x d x d, got {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "structure_constants", c)

    @property
    def dim(self) -> int:
        return self.structure_constants.shape[0]

    def bracket(self, x, y) -> np.ndarray:
        return einsum("i,j,ijk->k", rational_array(x), rational_array(y), self.structure_constants)

    def antisymmetry_residual(self) -> Tensor:
        """Components ``[k, i, j]`` of C[i, j, k] + C[j, i, k]."""
        c = self.structure_constants
        return Tensor(np.transpose(c + np.transpose(c, (1, 0, 2)), (2, 0, 1)), 1, 2)

    def jacobi_residual(self) -> Tensor:
        """Components ``[k, i, j, l]`` of the cyclic sum of [[b_i, b_j], b_l]."""
        c = self.structure_constants
        # [[b_i,b_j],b_l] = sum_m C[i,j,m] C[m,l,k]
        jac = einsum("ijm,mlk->kijl", c, c)
        total = jac + np.transpose(jac, (0, 2, 3, 1)) + np.transpose(jac, (0, 3, 1, 2))
        return Tensor(total, 1, 3)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        a, b = self.structure_constants, other.structure_constants
        return a.shape == b.shape and bool(np.all(a == b))

    def __hash__(self):
        return hash(tuple(self.structure_constants.flat))


@dataclass(frozen=True, eq=False)
class PiStructure:
    """``phi`` as a (1,1)-tensor with ``phi(b_i) = sum_a phi[a, i] b_a``."""

    phi: Tensor
    xi: Tensor
    eta: Tensor
    metric: MetricPair
    n: int

    def __post_init__(self):
        if self.phi.type != (1, 1) or self.xi.type != (1, 0) or self.eta.type != (0, 1):
            raise SlotMismatch("phi, xi, eta must have types (1,1), (1,0), (0,1)")
        d = self.phi.dim
        if {self.xi.dim, self.eta.dim, self.metric.dim} != {d}:
            raise DimMismatch("structure tensors have inconsistent dimensions")
        if d != 2 * self.n + 1:
            raise DimMismatch(f"dimension {d} is not 2n+1 with n={self.n}")

    @property
    def dim(self) -> int:
        return self.phi.dim

    def __eq__(self, other):
        if not isinstance(other, PiStructure):
            return NotImplemented
        return (
            self.n == other.n
            and self.phi == other.phi
            and self.xi == other.xi
            and self.eta == other.eta
            and self.metric == other.metric
        )

    def __hash__(self):
        return hash((self.phi, self.xi, self.eta, self.metric))


@dataclass(frozen=True, eq=False)
class PiManifoldInstance:
    algebra: LieAlgebra
    structure: PiStructure
    name: str = field(default="instance")

    def __post_init__(self):
        if self.algebra.dim != self.structure.dim:
            raise DimMismatch("Lie algebra and structure dimensions differ")

    # equality ignores the label
    def __eq__(self, other):
        if not isinstance(other, PiManifoldInstance):
            return NotImplemented
        return self.algebra == other.algebra and self.structure == other.structure

    def __hash__(self):
        return hash((self.algebra, self.structure))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def n(self) -> int:
        return self.structure.n

    @property
    def metric(self) -> MetricPair:
        return self.structure.metric

    # vector-level helpers used to transcribe formulas
    def e(self, i: int) -> np.ndarray:
        return basis_vector(self.dim, i)

    def frame(self) -> list[np.ndarray]:
        return [self.e(i) for i in range(self.dim)]

    @property
    def xi(self) -> np.ndarray:
        return self.structure.xi.components

    def phi(self, x) -> np.ndarray:
        return einsum("ai,i->a", self.structure.phi.components, rational_array(x))

    def phi2(self, x) -> np.ndarray:
        return self.phi(self.phi(x))

    def eta(self, x):
        return multilinear(self.structure.eta.components, x)

    def g(self, x, y):
        return multilinear(self.metric.g.components, x, y)

    def bracket(self, x, y) -> np.ndarray:
        return self.algebra.bracket(x, y)

    @property
    def g_matrix(self) -> np.ndarray:
        return self.metric.g.components

    @property
    def g_inv_matrix(self) -> np.ndarray:
        return self.metric.g_inv.components

    @property
    def phi_matrix(self) -> np.ndarray:
        return self.structure.phi.components


@dataclass(frozen=True)
class ValidationOutcome:
    residuals: list  # (name, Tensor) pairs in check order
    all_zero: bool

    def failing(self) -> list[str]:
        return [name for name, r in self.residuals if not r.is_zero()]


def validate(instance: PiManifoldInstance) -> ValidationOutcome:
    """Residual of every defining identity of the structure and the algebra."""
    s = instance.structure
    d = instance.dim
    phi = s.phi.components
    xi = s.xi.components
    eta = s.eta.components
    g = s.metric.g.components
    eye = identity_matrix(d)
    phi2 = einsum("ab,bc->ac", phi, phi)
    eta_xi = einsum("a,b->ab", xi, eta)

    residuals = [
        ("antisymmetry", instance.algebra.antisymmetry_residual()),
        ("jacobi", instance.algebra.jacobi_residual()),
        ("phi-xi", Tensor(einsum("ab,b->a", phi, xi), 1, 0)),
        ("phi-squared", Tensor(phi2 - eye + eta_xi, 1, 1)),
        ("eta-phi", Tensor(einsum("a,ab->b", eta, phi), 0, 1)),
        ("eta-xi", Tensor.scalar(einsum("a,a->", eta, xi)[()] - 1, d)),
        ("trace-phi", Tensor.scalar(einsum("aa->", phi)[()], d)),
        (
            "compatibility",
            Tensor(einsum("ax,by,ab->xy", phi, phi, g) - g + einsum("x,y->xy", eta, eta), 0, 2),
        ),
        ("phi-symmetric", Tensor(einsum("ax,ay->xy", phi, g) - einsum("xa,ay->xy", g, phi), 0, 2)),
        ("g-xi-eta", Tensor(einsum("xa,a->x", g, xi) - eta, 0, 1)),
        ("g-xi-xi", Tensor.scalar(einsum("a,ab,b->", xi, g, xi)[()] - 1, d)),
    ]
    return ValidationOutcome(residuals, all(r.is_zero() for _, r in residuals))


def derived_metrics(instance: PiManifoldInstance) -> tuple[Tensor, Tensor, Tensor]:
    """The associated metric and the two auxiliary metrics ``(g~, g*, g**)``."""
    g_star = tabulate(instance.dim, 2, lambda x, y: instance.g(x, instance.phi(y)))
    g_tilde = g_star + tabulate(instance.dim, 2, lambda x, y: instance.eta(x) * instance.eta(y))
    g_2star = tabulate(instance.dim, 2, lambda x, y: instance.g(instance.phi(x), instance.phi(y)))
    return Tensor(g_tilde, 0, 2), Tensor(g_star, 0, 2), Tensor(g_2star, 0, 2)


def eta_eta(instance: PiManifoldInstance) -> Tensor:
    eta = instance.structure.eta.components
    return Tensor(einsum("x,y->xy", eta, eta), 0, 2)


def project(instance: PiManifoldInstance, x: Tensor) -> tuple[Tensor, Tensor]:
    """Horizontal ``phi^2 x`` and vertical ``eta(x) xi`` parts of a vector."""
    if x.type != (1, 0):
        raise SlotMismatch("project expects a (1,0)-tensor")
    v = x.components
    return Tensor(instance.phi2(v), 1, 0), Tensor(instance.xi * instance.eta(v), 1, 0)


def associated_signature(instance: PiManifoldInstance) -> tuple[int, int, int]:
    """Inertia ``(positive, negative, zero)`` of the associated metric g~."""
    g_tilde, _, _ = derived_metrics(instance)
    return inertia(g_tilde.components)


def change_basis(instance: PiManifoldInstance, A, name: str | None = None) -> PiManifoldInstance:
    """The same manifold described in the frame ``b'_i = sum_k A[k, i] b_k``.

    ``A`` must be invertible; every frame-independent quantity (class,
    ``theta(xi)``, scalar curvatures, vanishing of identities) is unchanged.
    """
    A = rational_array(A)
    Ainv = matrix_inverse(A)
    s = instance.structure
    c = einsum("pi,qj,pqr,kr->ijk", A, A, instance.algebra.structure_constants, Ainv)
    phi = einsum("ka,ab,bi->ki", Ainv, s.phi.components, A)
    xi = einsum("ka,a->k", Ainv, s.xi.components)
    eta = einsum("a,ai->i", s.eta.components, A)
    g = einsum("ai,ab,bj->ij", A, s.metric.g.components, A)
    structure = PiStructure(Tensor(phi, 1, 1), Tensor(xi, 1, 0), Tensor(eta, 0, 1), metric_inverse(Tensor(g, 0, 2)), s.n)
    return PiManifoldInstance(LieAlgebra(c), structure, name or f"{instance.name}[frame]")

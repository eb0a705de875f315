"""Concrete instances: the 5-dimensional para-Sasaki-like family and a small test corpus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pi_manifold import LieAlgebra, PiManifoldInstance, PiStructure
from .tensor_core import Tensor, metric_inverse, to_rational, zeros

DEFAULT_PARAMETERS = (
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(1)),
    (Fraction(2), Fraction(-3)),
    (Fraction(1, 2), Fraction(1, 3)),
)


@dataclass(frozen=True)
class ExampleParams:
    lam: Fraction = Fraction(1)
    mu: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "lam", to_rational(self.lam))
        object.__setattr__(self, "mu", to_rational(self.mu))


def family_brackets(lam, mu) -> dict[tuple[int, int], list]:
    """Nonzero brackets ``[e_i, e_j]`` (i < j) as coefficient lists over e_0..e_4."""
    lam, mu = to_rational(lam), to_rational(mu)
    return {
        (0, 1): [0, 0, lam, -1, mu],
        (0, 2): [0, -lam, 0, -mu, -1],
        (0, 3): [0, -1, mu, 0, lam],
        (0, 4): [0, -mu, -1, -lam, 0],
    }


def structure_constants_from(dim: int, brackets: dict):
    c = zeros((dim, dim, dim))
    for (i, j), coeffs in brackets.items():
        for k, v in enumerate(coeffs):
            c[i, j, k] = to_rational(v)
            c[j, i, k] = -to_rational(v)
    return c


def paraholomorphic_structure(n: int) -> PiStructure:
    """The standard structure on ``e_0, ..., e_2n``.

    ``xi = e_0``, ``eta = e^0``, ``g`` orthonormal and ``phi`` swapping
    ``e_i <-> e_{i+n}`` for ``i = 1..n``.
    """
    d = 2 * n + 1
    phi = zeros((d, d))
    for i in range(1, n + 1):
        phi[i + n, i] = Fraction(1)
        phi[i, i + n] = Fraction(1)
    xi = zeros(d)
    xi[0] = Fraction(1)
    g = zeros((d, d))
    for i in range(d):
        g[i, i] = Fraction(1)
    return PiStructure(
        phi=Tensor(phi, 1, 1),
        xi=Tensor(xi, 1, 0),
        eta=Tensor(xi.copy(), 0, 1),
        metric=metric_inverse(Tensor(g, 0, 2)),
        n=n,
    )


def _from_brackets(n: int, brackets: dict, name: str) -> PiManifoldInstance:
    d = 2 * n + 1
    return PiManifoldInstance(
        LieAlgebra(structure_constants_from(d, brackets)), paraholomorphic_structure(n), name=name
    )


def build_para_sasaki_example(params: ExampleParams | None = None, *, lam=None, mu=None) -> PiManifoldInstance:
    """The 5-dimensional para-Sasaki-like Lie group with parameters (lambda, mu).

    Only the brackets depend on the parameters; all of them are brackets with
    ``e_0``, so the Jacobi identity holds for every choice.
    """
    if params is None:
        params = ExampleParams(Fraction(1) if lam is None else lam, Fraction(1) if mu is None else mu)
    return _from_brackets(2, family_brackets(params.lam, params.mu), f"para-sasaki-like(lambda={params.lam}, mu={params.mu})")


def build_abelian(n: int = 2) -> PiManifoldInstance:
    d = 2 * n + 1
    return _from_brackets(n, {}, f"abelian-{d}")


def build_f5_example() -> PiManifoldInstance:
    """Dimension 5, ``[e_0, e_i] = e_i`` on the horizontal frame.

    Here ``nabla xi = -phi^2`` and F is a multiple of
    ``g(x, phi y) eta(z) + g(x, phi z) eta(y)`` with ``theta*(xi) = 4``.
    D1 is flat.
    """
    brackets = {(0, i): [1 if k == i else 0 for k in range(5)] for i in range(1, 5)}
    return _from_brackets(2, brackets, "exp-horizontal-5")


def build_f11_example(n: int = 1) -> PiManifoldInstance:
    """``[e_0, e_1] = e_0``: ``nabla_xi xi = -e_1`` and F is carried by ``omega = e^{1+n}`` alone."""
    d = 2 * n + 1
    return _from_brackets(n, {(0, 1): [1] + [0] * (d - 1)}, f"reeb-shift-{d}")


def build_f1_example() -> PiManifoldInstance:
    """Dimension 3, ``[e_1, e_2] = e_2``; a horizontal F with ``theta o phi != 0``.

    Not part of :func:`build_catalog`: on it the printed forms of the
    relations ``theta* o phi^2 = theta o phi`` and ``t* o phi = t o phi^2``
    fail while their sign-consistent versions hold.
    """
    return _from_brackets(1, {(1, 2): [0, 0, 1]}, "horizontal-affine-3")


def build_catalog() -> list[PiManifoldInstance]:
    """Instances on which every hard invariant must hold.

    Abelian (F0) in dimensions 5 and 3, the para-Sasaki-like family at the
    default parameters (F4), one F5 instance and F11 instances in dimensions
    3 and 5.
    """
    cat = [build_abelian(2)]
    cat += [build_para_sasaki_example(ExampleParams(lam, mu)) for lam, mu in DEFAULT_PARAMETERS]
    cat += [build_abelian(1), build_f5_example(), build_f11_example(1), build_f11_example(2)]
    return cat

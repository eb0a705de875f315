"""Membership in F0 and the main classes F1, F4, F5, F11."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .levi_civita import FundamentalData, fundamental_data, koszul_levi_civita, nabla_xi_eta
from .pi_manifold import PiManifoldInstance
from .tensor_core import Connection, Tensor, multilinear, tabulate


class ClassLabel(str, enum.Enum):
    F0 = "F0"
    F1 = "F1"
    F4 = "F4"
    F5 = "F5"
    F11 = "F11"
    UNRESOLVED = "UNRESOLVED"

    def __str__(self) -> str:
        return self.value


MAIN_CLASSES = (ClassLabel.F1, ClassLabel.F4, ClassLabel.F5, ClassLabel.F11)


def characteristic_F(instance: PiManifoldInstance, label: ClassLabel, data: FundamentalData) -> Tensor:
    """The closed form of F that characterises a main class, built from the Lee forms."""
    m = instance
    n = Fraction(m.n)
    phi, phi2, eta, g, xi = m.phi, m.phi2, m.eta, m.g, m.xi
    th, ths, om = data.theta.components, data.theta_star.components, data.omega.components

    def theta(v):
        return multilinear(th, v)

    if label is ClassLabel.F1:
        def fn(x, y, z):
            return (
                g(phi(x), phi(y)) * theta(phi2(z)) + g(phi(x), phi(z)) * theta(phi2(y))
                - g(x, phi(y)) * theta(phi(z)) - g(x, phi(z)) * theta(phi(y))
            ) / (2 * n)
    elif label is ClassLabel.F4:
        t_xi = theta(xi)

        def fn(x, y, z):
            return t_xi / (2 * n) * (g(phi(x), phi(y)) * eta(z) + g(phi(x), phi(z)) * eta(y))
    elif label is ClassLabel.F5:
        ts_xi = multilinear(ths, xi)

        def fn(x, y, z):
            return ts_xi / (2 * n) * (g(x, phi(y)) * eta(z) + g(x, phi(z)) * eta(y))
    elif label is ClassLabel.F11:
        def fn(x, y, z):
            return eta(x) * (eta(y) * multilinear(om, z) + eta(z) * multilinear(om, y))
    else:
        raise ValueError(f"no characteristic form for {label}")
    return Tensor(tabulate(m.dim, 3, fn), 0, 3)


def class_residuals(instance: PiManifoldInstance, F: Tensor, data: FundamentalData) -> dict[ClassLabel, Tensor]:
    """``F`` minus each class's closed form; the F0 entry is F itself."""
    out = {ClassLabel.F0: F}
    for label in MAIN_CLASSES:
        out[label] = F - characteristic_F(instance, label, data)
    return out


def special_flags(instance: PiManifoldInstance, conn: Connection) -> tuple[bool, bool]:
    """``(paracontact, para_sasaki)`` for the Levi-Civita connection ``conn``.

    paracontact: ``2 g(x, phi y) = (D_x eta)(y) + (D_y eta)(x)``;
    para-Sasaki: ``phi x = D_x xi``.
    """
    nxi, neta = nabla_xi_eta(instance, conn, check=False)
    m = instance
    e = neta.components
    paracontact = all(
        2 * m.g(x, m.phi(y)) == multilinear(e, x, y) + multilinear(e, y, x)
        for x in m.frame()
        for y in m.frame()
    )
    para_sasaki = bool((nxi.components == m.phi_matrix).all())
    return paracontact, para_sasaki


@dataclass(frozen=True)
class ClassificationReport:
    residuals: dict
    label: ClassLabel
    theta_xi: Fraction
    theta_star_xi: Fraction
    f4_prime: bool
    para_sasaki: bool
    paracontact: bool
    zero_labels: list = field(default_factory=list)

    def residual_is_zero(self, label: ClassLabel) -> bool:
        return self.residuals[label].is_zero()


def classify(
    instance: PiManifoldInstance,
    conn: Connection | None = None,
    data: FundamentalData | None = None,
) -> ClassificationReport:
    """Label F0 when F vanishes, else the unique main class whose closed form matches F.

    Several matching main classes (or none) give UNRESOLVED; the matches are
    kept in ``zero_labels``.
    """
    if conn is None:
        conn = koszul_levi_civita(instance)
    if data is None:
        data = fundamental_data(instance, conn)
    res = class_residuals(instance, data.F, data)
    zero = [lab for lab in MAIN_CLASSES if res[lab].is_zero()]
    if data.F.is_zero():
        label = ClassLabel.F0
    elif len(zero) == 1:
        label = zero[0]
    else:
        label = ClassLabel.UNRESOLVED
    theta_xi = multilinear(data.theta.components, instance.xi)
    theta_star_xi = multilinear(data.theta_star.components, instance.xi)
    paracontact, para_sasaki = special_flags(instance, conn)
    f4_prime = label is ClassLabel.F4 and theta_xi == -2 * instance.n
    return ClassificationReport(
        residuals=res,
        label=label,
        theta_xi=theta_xi,
        theta_star_xi=theta_star_xi,
        f4_prime=f4_prime,
        para_sasaki=para_sasaki,
        paracontact=paracontact,
        zero_labels=zero,
    )

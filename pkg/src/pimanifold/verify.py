"""Identity and cross-check suites with deterministic, serializable reports.

Every identity has a frozen id (see ``IDENTITY_IDS``).  Two categories:

``hard-invariant``
    follows from the definitions alone; a residual means an engine bug.
``paper-crosscheck``
    a closed-form formula compared against the direct computation; a
    residual is a finding about the formula and never an error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .classifier import MAIN_CLASSES, ClassificationReport, ClassLabel, classify
from .levi_civita import (
    CurvatureBundle,
    FundamentalData,
    curvature_bundle,
    curvature_identity_residuals,
    f_symmetry_residuals,
    fundamental_data,
    koszul_levi_civita,
    lee_forms,
    lee_relation_residuals,
    lemma_residuals,
    levi_civita_residuals,
    nabla_xi_eta,
    nijenhuis_residuals,
    reconstruct_F,
)
from .natural_connection import (
    FirstNaturalData,
    closed_form_connection,
    closed_form_curvature,
    closed_form_ricci,
    closed_form_torsion,
    first_natural_curvature_residuals,
    first_natural_pipeline,
    naturality_residuals,
    potential_residuals,
    torsion_form_relations,
    torsion_forms,
    torsion_from_forms,
    torsion_residuals,
    torsion_via_F,
    torsion_via_nijenhuis,
    torsion_via_nijenhuis_hv,
)
from .pi_manifold import PiManifoldInstance
from .tensor_core import Connection, Tensor

HARD = "hard-invariant"
CROSSCHECK = "paper-crosscheck"
HOLDS = "holds"
RESIDUAL = "residual"
SKIPPED = "skipped"

# Printed relations whose sign is inconsistent with a neighbouring relation;
# they are reported as cross-checks next to a provable "-signed" version.
PRINTED_SIGN_SLIPS = frozenset({"lee.theta-star-phi2", "tforms.t_star-phi"})

# Frozen ids of the identity suite, in report order.
IDENTITY_IDS = (
    "F.reconstruct",
    "F.sym.23",
    "F.sym.phi-phi",
    "F.sym.phi-phi2",
    "F.sym.phi-z",
    "F.sym.phi2-phi2",
    "N.F-expression",
    "N.antisym",
    "Ntilde.F-expression",
    "Ntilde.sym",
    "Q.F-expression",
    "Q.phi-condition",
    "Q.skew",
    "R.antisym12",
    "R.antisym34",
    "R.bianchi",
    "Rdot.antisym12",
    "Rdot.antisym34",
    "Rdot.potential",
    "T.antisym",
    "T.hat-xi",
    "T.potential",
    "lc.metric",
    "lc.torsion-free",
    "lee.full-trace",
    "lee.omega-xi",
    "lee.theta-star-phi",
    "lee.theta-star-phi2",
    "lee.theta-star-phi2-signed",
    "lemma.F-phi-xi",
    "lemma.eta-nabla-xi",
    "lemma.nabla-eta",
    "natural.eta",
    "natural.g",
    "natural.gtilde",
    "natural.phi",
    "natural.xi",
    "tforms.full-trace",
    "tforms.t",
    "tforms.t-phi",
    "tforms.t-phi2",
    "tforms.t_hat",
    "tforms.t_star",
    "tforms.t_star-phi",
    "tforms.t_star-phi-lee",
    "tforms.t_star-phi-signed",
    "tforms.t_star-phi2-lee",
)

# Class-independent cross-checks; class rows follow ``class_row_ids``.
TORSION_CROSSCHECK_IDS = ("torsion.F-expression", "torsion.NN-expression", "torsion.NN-hv-expression")
SKIP_ID = "class-rows"

CLASS_ROWS = (
    "thm4.2",
    "thm4.3",
    "cor4.4",
    "thm4.5",
    "cor4.6.{}.rho",
    "cor4.6.{}.rho_star",
    "cor4.6.{}.tau",
    "cor4.6.{}.tau_star",
)


def class_row_ids(label) -> list[str]:
    label = ClassLabel(label)
    return [row.format(label) if "{}" in row else f"{row}.{label}" for row in CLASS_ROWS]


@dataclass(frozen=True)
class IdentityReport:
    id: str
    category: str
    status: str
    max_abs_residual: Fraction
    witness: tuple[int, ...] | None
    components: tuple = ()  # nonzero residual entries ((index, value), ...)
    note: str = ""

    @property
    def fatal(self) -> bool:
        return self.category == HARD and self.status == RESIDUAL

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "category": self.category,
            "status": self.status,
            "max_abs_residual": str(self.max_abs_residual),
            "witness": None if self.witness is None else list(self.witness),
            "components": [[list(idx), str(v)] for idx, v in self.components],
            "note": self.note,
        }


def report(identity: str, residual: Tensor, category: str = HARD) -> IdentityReport:
    if residual.is_zero():
        return IdentityReport(identity, category, HOLDS, Fraction(0), None)
    return IdentityReport(
        identity,
        category,
        RESIDUAL,
        residual.max_abs(),
        residual.witness(),
        tuple(residual.nonzero()),
    )


def skipped(identity: str, note: str, category: str = CROSSCHECK) -> IdentityReport:
    return IdentityReport(identity, category, SKIPPED, Fraction(0), None, (), note)


# -- shared computation -------------------------------------------------------


@dataclass(frozen=True)
class Analysis:
    """Everything the suites need, computed once without raising on residuals."""

    instance: PiManifoldInstance
    lc: Connection
    data: FundamentalData
    lc_bundle: CurvatureBundle
    natural: FirstNaturalData
    classification: ClassificationReport


def analyze(instance: PiManifoldInstance) -> Analysis:
    lc = koszul_levi_civita(instance, check=False)
    data = fundamental_data(instance, lc, check=False)
    bundle = curvature_bundle(instance, lc)
    natural = first_natural_pipeline(instance, lc, data, bundle, check=False)
    return Analysis(instance, lc, data, bundle, natural, classify(instance, lc, data))


def _as_tensor(conn_gamma: np.ndarray) -> Tensor:
    """Connection-coefficient array ``[i, j, k]`` as a (1,2) tensor ``[k, i, j]``."""
    return Tensor(np.transpose(conn_gamma, (2, 0, 1)), 1, 2)


def _scalar(value, dim: int) -> Tensor:
    return Tensor.scalar(Fraction(value), dim)


# -- suites -------------------------------------------------------------------


def _identity_residuals(a: Analysis) -> list[tuple[str, Tensor]]:
    m, data, fn = a.instance, a.data, a.natural
    nxi, neta = nabla_xi_eta(m, a.lc, data.F, check=False)
    full_theta = lee_forms(m, data.F, trace="full")[0]
    tor_full = torsion_forms(m, fn.torsion.T3, trace="full")
    out = []
    out += levi_civita_residuals(m, a.lc)
    out += f_symmetry_residuals(m, data.F)
    out += lee_relation_residuals(m, data.theta, data.theta_star, data.omega)
    out.append(("lee.full-trace", full_theta - data.theta))
    out += lemma_residuals(m, nxi, neta, data.F)
    out += nijenhuis_residuals(m, data.N, data.N_assoc, data.F)
    out.append(("F.reconstruct", data.F - reconstruct_F(data.N, data.N_assoc, m)))
    out += curvature_identity_residuals(a.lc_bundle.R, prefix="R")
    out += potential_residuals(m, fn.potential, data.F)
    out += naturality_residuals(m, fn.connection)
    out += torsion_residuals(m, fn.torsion, fn.potential)
    out += torsion_form_relations(m, data, fn.torsion)
    out.append(("tforms.full-trace", tor_full[0] - fn.torsion.t))
    out.append(("Rdot.potential", fn.R_via_potential - fn.bundle.R))
    out += first_natural_curvature_residuals(fn.bundle.R)
    return out


# Comparisons of the trace-range convention; informational.
_TRACE_COMPARISONS = frozenset({"lee.full-trace", "tforms.full-trace"})


def _category(identity: str) -> str:
    if identity in PRINTED_SIGN_SLIPS or identity in _TRACE_COMPARISONS:
        return CROSSCHECK
    return HARD


def run_identity_suite(instance: PiManifoldInstance, analysis: Analysis | None = None) -> list[IdentityReport]:
    """All definitional identities, sorted by id."""
    a = analysis or analyze(instance)
    reps = [report(name, r, _category(name)) for name, r in _identity_residuals(a)]
    return sorted(reps, key=lambda r: r.id)


def _class_rows(a: Analysis, label: ClassLabel) -> list[IdentityReport]:
    m, data, fn = a.instance, a.data, a.natural
    d = m.dim
    ids = class_row_ids(label)
    conn = closed_form_connection(m, label, data, a.lc)
    T_closed = closed_form_torsion(m, label, data)
    T_forms = torsion_from_forms(m, label, fn.torsion)
    curv = closed_form_curvature(m, label, data, a.lc, a.lc_bundle)
    ric = closed_form_ricci(m, label, data, a.lc, a.lc_bundle)
    b = fn.bundle
    residuals = [
        _as_tensor(fn.connection.gamma - conn.gamma),
        fn.torsion.T - T_closed,
        fn.torsion.T - T_forms,
        b.R - curv.R_dot,
        b.ricci - ric.rho_dot,
        b.ricci_star - ric.rho_dot_star,
        _scalar(b.tau - ric.tau_dot, d),
        _scalar(b.tau_star - ric.tau_dot_star, d),
    ]
    return [report(i, r, CROSSCHECK) for i, r in zip(ids, residuals)]


def run_crosscheck_suite(instance: PiManifoldInstance, analysis: Analysis | None = None) -> list[IdentityReport]:
    """Closed-form formulas against the direct computation, sorted by id.

    Class rows run for the instance's main class; an F0 instance runs the
    rows of all four classes (each must hold trivially).  Any other label
    produces one skip report for the class rows.
    """
    a = analysis or analyze(instance)
    m, data, T3 = a.instance, a.data, a.natural.torsion.T3
    reps = [
        report("torsion.F-expression", T3 - torsion_via_F(m, data.F), CROSSCHECK),
        report("torsion.NN-expression", T3 - torsion_via_nijenhuis(m, data.N, data.N_assoc), CROSSCHECK),
        report("torsion.NN-hv-expression", T3 - torsion_via_nijenhuis_hv(m, data.N, data.N_assoc), CROSSCHECK),
    ]
    label = a.classification.label
    if label is ClassLabel.F0:
        for lab in MAIN_CLASSES:
            reps += _class_rows(a, lab)
    elif label in MAIN_CLASSES:
        reps += _class_rows(a, label)
    else:
        matches = ",".join(str(x) for x in a.classification.zero_labels) or "none"
        reps.append(skipped(SKIP_ID, f"not in a single main class (matching: {matches})"))
    return sorted(reps, key=lambda r: r.id)


SUITES = ("core", "paper", "all")


def run_suites(instance: PiManifoldInstance, suite: str = "all", analysis: Analysis | None = None) -> list[IdentityReport]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    a = analysis or analyze(instance)
    reps = []
    if suite in ("core", "all"):
        reps += run_identity_suite(instance, a)
    if suite in ("paper", "all"):
        reps += run_crosscheck_suite(instance, a)
    return sorted(reps, key=lambda r: r.id)


def hard_failures(reports) -> list[IdentityReport]:
    return [r for r in reports if r.fatal]


# -- serialization ------------------------------------------------------------


def classification_dict(rep: ClassificationReport) -> dict:
    return {
        "label": str(rep.label),
        "theta_xi": str(rep.theta_xi),
        "theta_star_xi": str(rep.theta_star_xi),
        "f4_prime": rep.f4_prime,
        "para_sasaki": rep.para_sasaki,
        "paracontact": rep.paracontact,
        "matching_classes": [str(x) for x in rep.zero_labels],
    }


def report_document(instance: PiManifoldInstance, reports, classification: ClassificationReport, params=None) -> dict:
    params = params or {}
    return {
        "instance": instance.name,
        "params": {k: str(Fraction(params[k])) for k in sorted(params)},
        "classification": classification_dict(classification),
        "reports": [r.to_dict() for r in reports],
    }


def dumps(document: dict) -> str:
    """Byte-stable JSON text (fixed key order, newline-terminated)."""
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


# -- recorded residual tables -------------------------------------------------

EXPECTED_RESIDUALS = "expected_residuals.json"


def residual_table(reports) -> dict[str, list]:
    """``{id: [[index, "p/q"], ...]}`` for every report with status residual."""
    return {
        r.id: [[list(idx), str(v)] for idx, v in r.components]
        for r in sorted(reports, key=lambda r: r.id)
        if r.status == RESIDUAL
    }


def record_expected_residuals(instances: dict[str, PiManifoldInstance]) -> str:
    """JSON text of the cross-check residual tables, keyed by the given names."""
    doc = {key: residual_table(run_crosscheck_suite(instances[key])) for key in sorted(instances)}
    return dumps(doc)


def load_expected_residuals() -> dict:
    text = resources.files("pimanifold").joinpath("data", EXPECTED_RESIDUALS).read_text(encoding="utf-8")
    return json.loads(text)


__all__ = [
    "CROSSCHECK",
    "HARD",
    "HOLDS",
    "RESIDUAL",
    "SKIPPED",
    "IDENTITY_IDS",
    "SKIP_ID",
    "TORSION_CROSSCHECK_IDS",
    "Analysis",
    "IdentityReport",
    "analyze",
    "class_row_ids",
    "classification_dict",
    "dumps",
    "hard_failures",
    "load_expected_residuals",
    "record_expected_residuals",
    "report",
    "report_document",
    "residual_table",
    "run_crosscheck_suite",
    "run_identity_suite",
    "run_suites",
]

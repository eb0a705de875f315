"""Line-oriented manifold description files (``.pim``).

Grammar (one statement per line, ``#`` starts a comment)::

    pim 1
    n = 2
    param lambda = 1/2
    bracket[0,1] = lambda*e2 - e3 + mu*e4
    phi[1] = e3
    xi = e0
    eta = 1 0 0 0 0          # or: eta[0] = 1
    g = diag(1, 1, 1, 1, 1)  # or: g[0,0] = 1

Linear combinations are sums of ``c*ek`` / ``ek`` terms where ``c`` is a
rational literal (``p`` or ``p/q``) or a declared parameter, or the single
literal ``0``.  Unset brackets and phi images are zero, unset metric entries
are zero and ``g[i,j]`` also sets ``g[j,i]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, SingularMetric, ValidationError
from .pi_manifold import LieAlgebra, PiManifoldInstance, PiStructure, validate
from .tensor_core import Tensor, metric_inverse, zeros

HEADER = "pim 1"

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RATIONAL_RE = re.compile(rf"\s*({_RATIONAL})\s*")
_TERM_RE = re.compile(rf"\s*([+-])?\s*(?:(\d+(?:/\d+)?|{_NAME})\s*\*\s*)?e(\d+)\s*")
_BASIS_RE = re.compile(r"e\d+$")

_STATEMENTS = [
    ("n", re.compile(r"n\s*=\s*(?P<value>.*)$")),
    ("param", re.compile(rf"param\s+(?P<name>{_NAME})\s*=\s*(?P<value>.*)$")),
    ("bracket", re.compile(r"bracket\s*\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\]\s*=\s*(?P<value>.*)$")),
    ("phi", re.compile(r"phi\s*\[\s*(?P<i>\d+)\s*\]\s*=\s*(?P<value>.*)$")),
    ("xi", re.compile(r"xi\s*=\s*(?P<value>.*)$")),
    ("eta_i", re.compile(r"eta\s*\[\s*(?P<i>\d+)\s*\]\s*=\s*(?P<value>.*)$")),
    ("eta", re.compile(r"eta\s*=\s*(?P<value>.*)$")),
    ("g_diag", re.compile(r"g\s*=\s*diag\s*\((?P<value>.*)\)\s*$")),
    ("g_ij", re.compile(r"g\s*\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\]\s*=\s*(?P<value>.*)$")),
]


@dataclass
class ParsedSpec:
    instance: PiManifoldInstance
    params: dict[str, Fraction] = field(default_factory=dict)


@dataclass
class _Stmt:
    kind: str
    line: int
    col: int  # 1-based column where the statement starts
    groups: dict
    value_col: int  # 1-based column of the right-hand side


def _rational(text: str, line: int, col: int) -> Fraction:
    m = _RATIONAL_RE.fullmatch(text)
    if not m:
        raise ParseError(f"expected a rational number, got {text.strip()!r}", line, col)
    num, _, den = m.group(1).partition("/")
    if den and int(den) == 0:
        raise ParseError("zero denominator", line, col)
    return Fraction(int(num), int(den) if den else 1)


def _rational_list(text: str, line: int, col: int) -> list[Fraction]:
    out = []
    pos = 0
    for piece in re.split(r"(\s*,\s*|\s+)", text):
        if piece and not re.fullmatch(r"\s*,\s*|\s+", piece):
            out.append(_rational(piece, line, col + pos))
        pos += len(piece)
    return out


def _combo(text: str, dim: int, params: dict, line: int, col: int) -> list[Fraction]:
    vec = [Fraction(0)] * dim
    stripped = text.strip()
    if stripped == "0":
        return vec
    if not stripped:
        raise ParseError("empty linear combination", line, col)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        here = col + pos
        if not m or m.end() == pos:
            raise ParseError(f"cannot read term at {text[pos:].strip()!r}", line, here)
        sign, coef, k = m.groups()
        if sign is None and not first:
            raise ParseError("expected '+' or '-' between terms", line, here)
        if coef is None:
            value = Fraction(1)
        elif coef[0].isdigit():
            value = _rational(coef, line, here)
        elif coef in params:
            value = params[coef]
        else:
            raise ParseError(f"undeclared parameter {coef!r}", line, here)
        k = int(k)
        if k >= dim:
            raise ParseError(f"basis symbol e{k} outside e0..e{dim - 1}", line, here)
        vec[k] += -value if sign == "-" else value
        pos = m.end()
        first = False
    return vec


def _index(value: str, dim: int, line: int, col: int) -> int:
    i = int(value)
    if i >= dim:
        raise ParseError(f"index {i} outside 0..{dim - 1}", line, col)
    return i


def _statements(text: str) -> list[_Stmt]:
    stmts = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        content = body.lstrip()
        if not content:
            continue
        col = len(body) - len(content) + 1
        if not header_seen:
            if re.fullmatch(r"pim\s+1", content) is None:
                raise ParseError(f"expected header {HEADER!r}", lineno, col)
            header_seen = True
            continue
        for kind, rx in _STATEMENTS:
            m = rx.match(content)
            if m:
                stmts.append(_Stmt(kind, lineno, col, m.groupdict(), col + m.start("value")))
                break
        else:
            raise ParseError(f"unrecognised statement {content!r}", lineno, col)
    if not header_seen:
        raise ParseError(f"missing header {HEADER!r}", 1, 1)
    return stmts


def read_spec(text: str, overrides: dict | None = None, name: str = "spec") -> ParsedSpec:
    """Parse and validate a description; ``overrides`` replace parameter defaults."""
    stmts = _statements(text)

    def once(kind):
        found = [s for s in stmts if s.kind == kind]
        if len(found) > 1:
            raise ParseError(f"duplicate {kind!r} statement", found[1].line, found[1].col)
        return found[0] if found else None

    n_stmt = once("n")
    if n_stmt is None:
        raise ParseError("missing 'n = <int>' statement", 1, 1)
    if not re.fullmatch(r"\s*\d+\s*", n_stmt.groups["value"]):
        raise ParseError("n must be a non-negative integer", n_stmt.line, n_stmt.value_col)
    n = int(n_stmt.groups["value"])
    d = 2 * n + 1

    params: dict[str, Fraction] = {}
    for s in stmts:
        if s.kind == "param":
            pname = s.groups["name"]
            if pname in params:
                raise ParseError(f"parameter {pname!r} declared twice", s.line, s.col)
            if _BASIS_RE.match(pname):
                raise ParseError(f"parameter name {pname!r} clashes with a basis symbol", s.line, s.col)
            params[pname] = _rational(s.groups["value"], s.line, s.value_col)
    for key, value in (overrides or {}).items():
        if key not in params:
            raise ParseError(f"override for undeclared parameter {key!r}")
        params[key] = Fraction(value)

    c = zeros((d, d, d))
    phi = zeros((d, d))
    xi = zeros(d)
    eta = zeros(d)
    g = zeros((d, d))
    seen: dict = {}

    def claim(key, s):
        if key in seen:
            raise ParseError(f"{key[0]} entry {key[1:]} set twice", s.line, s.col)
        seen[key] = s

    for s in stmts:
        v, lc = s.groups.get("value"), s.value_col
        if s.kind == "bracket":
            i = _index(s.groups["i"], d, s.line, s.col)
            j = _index(s.groups["j"], d, s.line, s.col)
            if i == j:
                raise ParseError("bracket of a basis vector with itself is zero", s.line, s.col)
            claim(("bracket", min(i, j), max(i, j)), s)
            vec = _combo(v, d, params, s.line, lc)
            for k in range(d):
                c[i, j, k] = vec[k]
                c[j, i, k] = -vec[k]
        elif s.kind == "phi":
            i = _index(s.groups["i"], d, s.line, s.col)
            claim(("phi", i), s)
            for k, val in enumerate(_combo(v, d, params, s.line, lc)):
                phi[k, i] = val
        elif s.kind == "xi":
            claim(("xi",), s)
            xi[:] = _combo(v, d, params, s.line, lc)
        elif s.kind == "eta":
            claim(("eta",), s)
            vals = _rational_list(v, s.line, lc)
            if len(vals) != d:
                raise ParseError(f"eta needs {d} entries, got {len(vals)}", s.line, lc)
            eta[:] = vals
        elif s.kind == "eta_i":
            i = _index(s.groups["i"], d, s.line, s.col)
            if ("eta",) in seen:
                raise ParseError("eta given both as a list and by entries", s.line, s.col)
            claim(("eta", i), s)
            eta[i] = _rational(v, s.line, lc)
        elif s.kind == "g_diag":
            claim(("g",), s)
            vals = _rational_list(v, s.line, lc)
            if len(vals) != d:
                raise ParseError(f"diag needs {d} entries, got {len(vals)}", s.line, lc)
            for i, val in enumerate(vals):
                g[i, i] = val
        elif s.kind == "g_ij":
            i = _index(s.groups["i"], d, s.line, s.col)
            j = _index(s.groups["j"], d, s.line, s.col)
            if ("g",) in seen:
                raise ParseError("g given both by diag and by entries", s.line, s.col)
            claim(("g", min(i, j), max(i, j)), s)
            g[i, j] = g[j, i] = _rational(v, s.line, lc)
    if any(k[0] == "eta" and len(k) == 2 for k in seen) and ("eta",) in seen:
        s = seen[("eta",)]
        raise ParseError("eta given both as a list and by entries", s.line, s.col)
    if any(k[0] == "g" and len(k) == 3 for k in seen) and ("g",) in seen:
        s = seen[("g",)]
        raise ParseError("g given both by diag and by entries", s.line, s.col)

    try:
        metric = metric_inverse(Tensor(g, 0, 2))
    except SingularMetric as exc:
        raise ValidationError(["metric-invertible"]) from exc
    structure = PiStructure(Tensor(phi, 1, 1), Tensor(xi, 1, 0), Tensor(eta, 0, 1), metric, n)
    instance = PiManifoldInstance(LieAlgebra(c), structure, name=name)
    outcome = validate(instance)
    if not outcome.all_zero:
        raise ValidationError(outcome.failing())
    return ParsedSpec(instance, params)


def parse_spec(text: str, overrides: dict | None = None, name: str = "spec") -> PiManifoldInstance:
    return read_spec(text, overrides, name).instance


# -- emission -----------------------------------------------------------------


def format_combo(terms) -> str:
    """``[(coef, k), ...]`` to ``c*ek`` text; ``coef`` is a Fraction or ``(sign, name)``."""
    parts = []
    for coef, k in terms:
        if isinstance(coef, tuple):
            sign, body = coef
        else:
            if coef == 0:
                continue
            sign = -1 if coef < 0 else 1
            body = None if abs(coef) == 1 else str(abs(coef))
        term = f"e{k}" if body is None else f"{body}*e{k}"
        if not parts:
            parts.append(("-" if sign < 0 else "") + term)
        else:
            parts.append(("- " if sign < 0 else "+ ") + term)
    return " ".join(parts) if parts else "0"


def _vector_terms(vec) -> list:
    return [(Fraction(v), k) for k, v in enumerate(vec) if v != 0]


def emit_spec(instance: PiManifoldInstance, params: dict | None = None, brackets: dict | None = None) -> str:
    """Description text for ``instance``.

    ``brackets`` may map ``(i, j)`` to symbolic term lists (see
    :func:`format_combo`) written in place of the numeric brackets; the
    parameters they use must appear in ``params``.
    """
    m = instance
    d = m.dim
    lines = [HEADER, f"# {m.name}", f"n = {m.n}"]
    for key, value in (params or {}).items():
        lines.append(f"param {key} = {Fraction(value)}")
    c = m.algebra.structure_constants
    for i in range(d):
        for j in range(i + 1, d):
            if brackets and (i, j) in brackets:
                lines.append(f"bracket[{i},{j}] = {format_combo(brackets[(i, j)])}")
            elif any(v != 0 for v in c[i, j]):
                lines.append(f"bracket[{i},{j}] = {format_combo(_vector_terms(c[i, j]))}")
    phi = m.phi_matrix
    for i in range(d):
        if any(v != 0 for v in phi[:, i]):
            lines.append(f"phi[{i}] = {format_combo(_vector_terms(phi[:, i]))}")
    lines.append(f"xi = {format_combo(_vector_terms(m.xi))}")
    lines.append("eta = " + " ".join(str(v) for v in m.structure.eta.components))
    g = m.g_matrix
    if all(g[i, j] == 0 for i in range(d) for j in range(d) if i != j):
        lines.append("g = diag(" + ", ".join(str(g[i, i]) for i in range(d)) + ")")
    else:
        for i in range(d):
            for j in range(i, d):
                if g[i, j] != 0:
                    lines.append(f"g[{i},{j}] = {g[i, j]}")
    return "\n".join(lines) + "\n"


def para_sasaki_brackets() -> dict:
    """Symbolic brackets of the para-Sasaki-like family in ``lambda``, ``mu``."""
    lam, mlam = (1, "lambda"), (-1, "lambda")
    mu, mmu = (1, "mu"), (-1, "mu")
    one, mone = Fraction(1), Fraction(-1)
    return {
        (0, 1): [(lam, 2), (mone, 3), (mu, 4)],
        (0, 2): [(mlam, 1), (mmu, 3), (mone, 4)],
        (0, 3): [(mone, 1), (mu, 2), (lam, 4)],
        (0, 4): [(mmu, 1), (mone, 2), (mlam, 3)],
    }


def emit_para_sasaki_spec(lam, mu) -> str:
    from .catalog import build_para_sasaki_example

    inst = build_para_sasaki_example(lam=lam, mu=mu)
    return emit_spec(inst, {"lambda": Fraction(lam), "mu": Fraction(mu)}, para_sasaki_brackets())


__all__ = [
    "HEADER",
    "ParsedSpec",
    "emit_para_sasaki_spec",
    "emit_spec",
    "format_combo",
    "para_sasaki_brackets",
    "parse_spec",
    "read_spec",
]

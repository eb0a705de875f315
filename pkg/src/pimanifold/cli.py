"""Command-line front end.

Exit codes: 0 success, 1 the file does not describe a Pi-manifold, 2 parse or
usage error, 3 a hard invariant reported a residual.  Cross-check residuals
never change the exit code.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .classifier import classify
from .errors import ParseError, ValidationError
from .levi_civita import curvature_bundle, fundamental_data, koszul_levi_civita
from .natural_connection import first_natural_pipeline
from .specfile import emit_para_sasaki_spec, read_spec
from .tensor_core import Tensor
from .verify import analyze, dumps, hard_failures, report_document, run_suites

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_HARD_RESIDUAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _param_arg(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected name=p/q, got {text!r}")
    return name.strip(), _rational_arg(value.strip())


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--param", action="append", type=_param_arg, default=[], metavar="NAME=P/Q",
                        help="override a declared parameter (repeatable)")

    p = _Parser(prog="pimanifold", description="Exact computations on left-invariant Riemannian Pi-manifolds.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("validate", "check the structure identities"),
        ("classify", "main-class membership and special flags"),
        ("connection", "Levi-Civita and first natural connection tables, torsion"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file")
    sp = sub.add_parser("curvature", parents=[common], help="curvature, Ricci and scalar curvatures")
    sp.add_argument("file")
    sp.add_argument("--connection", choices=("lc", "fnc"), default="lc")
    sp = sub.add_parser("verify", parents=[common], help="run the identity and cross-check suites")
    sp.add_argument("file")
    sp.add_argument("--suite", choices=("core", "paper", "all"), default="all")
    sp.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    sp = sub.add_parser("example", parents=[common], help="description file of the para-Sasaki-like family")
    sp.add_argument("--lambda", dest="lam", type=_rational_arg, default=Fraction(1))
    sp.add_argument("--mu", type=_rational_arg, default=Fraction(1))
    sp.add_argument("--emit", nargs="?", const="-", default="-", metavar="PATH",
                    help="write to PATH (default: stdout)")
    return p


# -- formatting ---------------------------------------------------------------


def _combo(vec) -> str:
    terms = [(Fraction(v), k) for k, v in enumerate(vec) if v != 0]
    if not terms:
        return "0"
    out = []
    for c, k in terms:
        body = f"e{k}" if abs(c) == 1 else f"{abs(c)}*e{k}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def _connection_table(gamma) -> list[str]:
    d = gamma.shape[0]
    return [
        f"  D_e{i} e{j} = {_combo(gamma[i, j])}"
        for i in range(d)
        for j in range(d)
        if any(v != 0 for v in gamma[i, j])
    ]


def _components(label: str, t: Tensor) -> list[str]:
    nz = t.nonzero()
    if not nz:
        return [f"  {label} = 0"]
    return [f"  {label}_{''.join(map(str, idx))} = {v}" for idx, v in nz]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# -- commands -----------------------------------------------------------------


def _load(args):
    path = Path(args.file)
    text = path.read_text(encoding="utf-8")
    overrides = dict(args.param)
    return read_spec(text, overrides, name=path.stem)


def _cmd_validate(args, out) -> int:
    spec = _load(args)
    m = spec.instance
    print(f"valid: {m.name} (n = {m.n}, dim = {m.dim})", file=out)
    return EXIT_OK


def _cmd_classify(args, out) -> int:
    rep = classify(_load(args).instance)
    print(
        f"class: {rep.label}, F4': {_yes(rep.f4_prime)}, para-Sasaki: {_yes(rep.para_sasaki)}, "
        f"theta(xi) = {rep.theta_xi}",
        file=out,
    )
    print(f"paracontact: {_yes(rep.paracontact)}, theta*(xi) = {rep.theta_star_xi}", file=out)
    if rep.zero_labels and str(rep.label) == "UNRESOLVED":
        print("matching classes: " + ", ".join(map(str, rep.zero_labels)), file=out)
    return EXIT_OK


def _cmd_connection(args, out) -> int:
    m = _load(args).instance
    lc = koszul_levi_civita(m)
    data = fundamental_data(m, lc)
    fn = first_natural_pipeline(m, lc, data, curvature_bundle(m, lc))
    tor = fn.torsion
    lines = ["Levi-Civita connection:"] + (_connection_table(lc.gamma) or ["  0"])
    lines += ["first natural connection:"] + (_connection_table(fn.connection.gamma) or ["  0"])
    lines += ["torsion T(e_i, e_j, e_k) of the first natural connection:"] + _components("T", tor.T3)
    lines += ["torsion forms:"] + _components("t", tor.t) + _components("t*", tor.t_star) + _components("t^", tor.t_hat)
    print("\n".join(lines), file=out)
    return EXIT_OK


def _cmd_curvature(args, out) -> int:
    m = _load(args).instance
    lc = koszul_levi_civita(m)
    bundle = curvature_bundle(m, lc)
    if args.connection == "fnc":
        bundle = first_natural_pipeline(m, lc, fundamental_data(m, lc), bundle).bundle
    lines = [f"curvature of the {bundle.connection_label} connection:"]
    lines += _components("R", bundle.R)
    lines += ["Ricci tensors:"] + _components("rho", bundle.ricci) + _components("rho*", bundle.ricci_star)
    lines += [f"  tau = {bundle.tau}", f"  tau* = {bundle.tau_star}"]
    print("\n".join(lines), file=out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    spec = _load(args)
    m = spec.instance
    a = analyze(m)
    reps = run_suites(m, args.suite, a)
    for r in reps:
        extra = ""
        if r.status == "residual":
            extra = f"  max |r| = {r.max_abs_residual} at {r.witness}"
        elif r.note:
            extra = f"  ({r.note})"
        print(f"{r.status:8} {r.category:16} {r.id}{extra}", file=out)
    fatal = hard_failures(reps)
    findings = [r for r in reps if r.status == "residual" and not r.fatal]
    print(f"{len(reps)} checks, {len(fatal)} hard-invariant residuals, {len(findings)} cross-check findings", file=out)
    if args.json:
        text = dumps(report_document(m, reps, a.classification, spec.params))
        if args.json == "-":
            out.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")
    return EXIT_HARD_RESIDUAL if fatal else EXIT_OK


def _cmd_example(args, out) -> int:
    params = {"lambda": args.lam, "mu": args.mu}
    for name, value in args.param:
        if name not in params:
            raise ParseError(f"the example has no parameter {name!r}")
        params[name] = value
    text = emit_para_sasaki_spec(params["lambda"], params["mu"])
    if args.emit == "-":
        out.write(text)
    else:
        Path(args.emit).write_text(text, encoding="utf-8")
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "classify": _cmd_classify,
    "connection": _cmd_connection,
    "curvature": _cmd_curvature,
    "verify": _cmd_verify,
    "example": _cmd_example,
}


def run_command(argv, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_PARSE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid structure: {exc}", file=err)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

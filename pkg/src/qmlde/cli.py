"""Command-line front end.

Every command prints one envelope ``{"command", "parameters", "payload",
"status"}``; exit code 0/1/2 mirrors status ok / verification_failed /
usage_error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import lcm

from . import deligne as dl
from .exactq import LATTICE_DEN, format_rational, parse_rational, to_json_obj, to_latex, to_text
from .mlde import (
    FrobeniusSolution,
    LogarithmicObstruction,
    NotAnExponent,
    frobenius_solve,
    indicial,
    resonances,
    second_order_weight0,
)
from .modforms import FORMS, named_form
from .scanner import Branch, ScanResult, extra_passes, scan_grid

EXIT = {"ok": 0, "verification_failed": 1, "usage_error": 2}
DEFAULT_ORDER = 200


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational p/q, got {text!r}") from None


def _r(x) -> str | None:
    return None if x is None else format_rational(Fraction(x))


def solution_json(sol: FrobeniusSolution) -> dict:
    """QSeries schema plus solver flags.

    Exponents off the 1/24 lattice (k with large denominators) widen
    ``lattice_den`` to the exponent's denominator.
    """
    return {
        "lattice_den": lcm(LATTICE_DEN, sol.exponent.denominator),
        "lead_exp": _r(sol.exponent),
        "coeffs": [_r(c) for c in sol.coeffs],
        "trunc": sol.trunc,
        "exponent": _r(sol.exponent),
        "resonant": sol.resonant,
        "obstruction_at": sol.obstruction_at,
    }


def scan_result_json(r: ScanResult) -> dict:
    return {
        "k": _r(r.k),
        "branch": r.branch.value,
        "checked_order": r.checked_order,
        "vacuum_type": r.vacuum_type,
        "failure_offset": r.failure_offset,
        "failure_kind": None if r.failure_kind is None else r.failure_kind.value,
        "coeffs": [_r(c) for c in r.head],
    }


def entry_json(e: dl.DeligneEntry) -> dict:
    return {
        "label": e.label,
        "h_dual": e.h_dual,
        "level": _r(e.level),
        "central_charge": _r(e.central_charge),
        "dim_g": e.dim_g,
        "dim_l2theta": e.dim_l2theta,
        "admissible": e.admissible,
        "quasi_modular_depth_positive": e.quasi_modular_depth_positive,
    }


def report_json(rep: dl.CharacterReport) -> dict:
    out = {
        "entry": entry_json(rep.entry),
        "order": rep.order,
        "agree_to_order": rep.agree_to_order,
        "agrees": rep.agrees,
        "leading_coefficient": _r(rep.leading_coefficient),
        "first_coefficient": _r(rep.first_coefficient),
        "closed_form": to_json_obj(rep.closed_form),
        "mlde_solution": solution_json(rep.mlde_solution),
    }
    if rep.e1l3_variant_used is not None:
        out["e1l3_variant_used"] = rep.e1l3_variant_used
        out["variant_agreement"] = dict(rep.variant_agreement)
        out["variant_coefficients"] = {
            v: [_r(c) for c in cs] for v, cs in rep.variant_coefficients.items()
        }
    return out


# -- commands ---------------------------------------------------------------

def cmd_expand(args) -> tuple[str, dict]:
    if args.form not in FORMS:
        raise UsageError(f"unknown form {args.form!r}; choose from {', '.join(FORMS)}")
    f = named_form(args.form, args.order)
    payload = {
        "name": args.form,
        "weight": _r(f.weight),
        "quasi_modular_depth": f.quasi_modular_depth,
        "series": to_json_obj(f.series),
        "text": to_text(f.series),
    }
    if args.format == "latex":
        payload["latex"] = to_latex(f.series)
    return "ok", payload


def _alpha(k: Fraction, spec: str) -> Fraction:
    if spec == "minus":
        return -k / 12
    if spec == "plus":
        return (k + 2) / 12
    return _rational(spec)


def cmd_mlde(args) -> tuple[str, dict]:
    k = args.k
    m = second_order_weight0(k)
    ind = indicial(m)
    try:
        lam = _alpha(k, args.alpha)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "k": _r(k),
        "indicial_polynomial": [_r(c) for c in ind.polynomial],
        "roots": [_r(r) for r in ind.roots],
        "has_irrational_roots": ind.has_irrational_roots,
        "resonances": [
            {"small": _r(a), "large": _r(b), "gap": g} for a, b, g in resonances(m)
        ],
        "exponent": _r(lam),
    }
    try:
        sol = frobenius_solve(m, lam, args.order)
    except NotAnExponent as exc:
        payload["error"] = str(exc)
        payload["indicial_value"] = _r(ind(lam))
        return "verification_failed", payload
    except LogarithmicObstruction as exc:
        payload["error"] = str(exc)
        payload["solution"] = solution_json(exc.solution)
        return "verification_failed", payload
    payload["solution"] = solution_json(sol)
    return "ok", payload


def cmd_deligne(args) -> tuple[str, dict]:
    target = args.target
    if target == "table":
        return "ok", {"entries": [entry_json(e) for e in dl.registry()]}
    if target == "verify-all":
        reps = dl.verify_all(args.order)
        payload = {"reports": [report_json(r) for r in reps]}
        return ("ok" if all(r.agrees for r in reps) else "verification_failed"), payload
    label = target
    if target == "char":
        if not args.label:
            raise UsageError("deligne char needs a label")
        label = args.label
    if label not in dl.LABELS:
        raise UsageError(f"unknown target {label!r}; use table, verify-all, char LABEL or a label")
    rep = dl.verify_character(label, args.order, args.variant)
    return ("ok" if rep.agrees else "verification_failed"), report_json(rep)


def cmd_scan(args) -> tuple[str, dict]:
    if args.max_den < 1:
        raise UsageError("--max-den must be at least 1")
    if args.max_num <= 0:
        raise UsageError("--max-num must be positive")
    branch = Branch(args.branch)
    results = scan_grid(args.max_num, args.max_den, branch, args.order, workers=args.workers)
    listed = dl.CAND1 if branch is Branch.MINUS else dl.CAND2
    in_range = [k for k in listed if k <= args.max_num and k.denominator <= args.max_den]
    passed = {r.k for r in results if r.vacuum_type}
    payload = {
        "results": [scan_result_json(r) for r in results],
        "passes": [_r(r.k) for r in results if r.vacuum_type],
        "extra_passes": [_r(r.k) for r in extra_passes(results, listed)],
        "listed_in_range_not_passing": [_r(k) for k in in_range if k not in passed],
    }
    return "ok", payload


def cmd_dims(args) -> tuple[str, dict]:
    h = args.hdual
    try:
        dg, dl2 = dl.deligne_dim(h), dl.dim_l2theta(h)
    except ZeroDivisionError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "h_dual": _r(h),
        "dim_g": _r(dg),
        "dim_g_integer": dg.denominator == 1,
        "dim_l2theta": _r(dl2),
        "dim_l2theta_integer": dl2.denominator == 1,
    }
    if h == 24:
        payload["note"] = (
            "h = 24 is not the dual Coxeter number of any Deligne-series algebra, "
            "yet the order-2 MLDE has a vacuum-type solution there (k = 23, plus branch)"
        )
    return "ok", payload


COMMANDS = {
    "expand": cmd_expand,
    "mlde": cmd_mlde,
    "deligne": cmd_deligne,
    "scan": cmd_scan,
    "dims": cmd_dims,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = _Parser(prog="qmlde", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("expand", parents=[common], help="q-expansion of a named form")
    e.add_argument("form")

    m = sub.add_parser("mlde", parents=[common], help="solve f'' - E2 f'/6 - k(k+2)/144 E4 f = 0")
    m.add_argument("--k", type=_rational, required=True)
    m.add_argument("--alpha", default="plus", help="minus, plus, or an explicit rational")

    d = sub.add_parser("deligne", parents=[common], help="Deligne-series characters")
    d.add_argument("target", help="table | verify-all | char | A1 .. E8")
    d.add_argument("label", nargs="?")
    d.add_argument("--variant", choices=("eisenstein", "printed"), default="eisenstein")

    s = sub.add_parser("scan", parents=[common], help="vacuum-type scan over rational k")
    s.add_argument("--branch", choices=("minus", "plus"), required=True)
    s.add_argument("--max-num", type=_rational, default=Fraction(6))
    s.add_argument("--max-den", type=int, default=12)
    s.add_argument("--workers", type=int, default=None)

    x = sub.add_parser("dims", parents=[common], help="Deligne dimension formulas")
    x.add_argument("--hdual", type=_rational, required=True)
    return p


def _parameters(args) -> dict:
    out = {}
    for key, val in vars(args).items():
        if key == "command":
            continue
        out[key] = _r(val) if isinstance(val, Fraction) else val
    return out


def _print_text(env: dict, out) -> None:
    print(f"{env['command']}: {env['status']}", file=out)
    payload = env.get("payload") or {}
    for key, val in payload.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val)
        print(f"  {key}: {val}", file=out)


def _wants_json(argv: list[str]) -> bool:
    # format must be known even when parsing fails
    for i, tok in enumerate(argv):
        if tok == "--format=json" or (tok == "--format" and argv[i + 1 : i + 2] == ["json"]):
            return True
    return False


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    fmt = "json" if _wants_json(argv) else "text"
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        status, payload = COMMANDS[args.command](args)
        env = {
            "command": args.command,
            "parameters": _parameters(args),
            "payload": payload,
            "status": status,
        }
    except UsageError as exc:
        print(f"qmlde: error: {exc}", file=sys.stderr)
        env = {
            "command": argv[0] if argv else None,
            "parameters": {"argv": argv},
            "payload": {"error": str(exc)},
            "status": "usage_error",
        }
    if fmt == "json":
        print(json.dumps(env, indent=2), file=out)
    else:
        _print_text(env, out)
    return EXIT[env["status"]]


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: session loading, subcommand dispatch, reports.

Exit codes: 0 ok, 1 check failed, 2 error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import groebner, verify
from .errors import FplabError, NotStabilizedError
from .frobenius import (
    bracket_power,
    frobenius_closure,
    frobenius_preimage,
    frobenius_root,
    fedder_is_fpure,
    hsl_hypersurface,
    in_frobenius_closure,
)
from .groebner import GREVLEX, Ideal, colon, eliminate, intersect
from .hilbert import INFINITE, dimension, embedding_dimension, hilbert_series, length_quotient, multiplicity
from .poly import LEX
from .session import Session, load_session

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3

_ORDERS = {"grevlex": GREVLEX, "lex": LEX}


@dataclass
class CliReport:
    command: str
    inputs: list[str]
    result: object
    elapsed_ms: int
    status: dict = field(default_factory=lambda: {"kind": "ok"})
    exit_code: int = EXIT_OK

    def payload(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "elapsed_ms": self.elapsed_ms,
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = []

        def walk(prefix, value):
            if isinstance(value, dict):
                for k in sorted(value):
                    walk(f"{prefix}.{k}" if prefix else str(k), value[k])
            elif isinstance(value, list):
                if not value:
                    lines.append(f"{prefix}: []")
                for i, item in enumerate(value):
                    walk(f"{prefix}[{i}]", item)
            else:
                lines.append(f"{prefix}: {value}")

        walk("", self.payload())
        width = max((len(l.split(":", 1)[0]) for l in lines), default=0)
        out = []
        for l in lines:
            k, v = l.split(":", 1)
            out.append(f"{k.ljust(width)}:{v}")
        return "\n".join(out)


def _encode(value):
    """Make a result JSON-friendly with exact numbers only."""
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if value is INFINITE:
        return "infinite"
    if isinstance(value, Ideal):
        return [str(g) for g in value.gens]
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return str(value)


def _gens_out(ideal: Ideal) -> dict:
    return {"generators": [str(g) for g in ideal.gens]}


def _basis_out(basis) -> dict:
    return {"generators": [str(g) for g in basis]}


# Each handler returns (result, exit_code, status_kind, detail).


def _cmd_gb(session, args):
    order = _ORDERS[args.order] if args.order else session.ctx.order
    basis = session.ideal_arg(args.ideal).groebner_basis(order)
    return _basis_out(basis), EXIT_OK, "ok", None


def _cmd_nf(session, args):
    order = _ORDERS[args.order] if args.order else session.ctx.order
    f = session.poly_arg(args.poly)
    r = session.ideal_arg(args.ideal).normal_form(f, order)
    return {"normal_form": str(r)}, EXIT_OK, "ok", None


def _cmd_member(session, args):
    f = session.poly_arg(args.poly)
    ok = f in session.ideal_arg(args.ideal)
    return {"member": ok}, EXIT_OK if ok else EXIT_CHECK_FAILED, "ok", None


def _cmd_sum(session, args):
    out = session.ideal_arg(args.first) + session.ideal_arg(args.second)
    return _gens_out(out), EXIT_OK, "ok", None


def _cmd_product(session, args):
    out = session.ideal_arg(args.first) * session.ideal_arg(args.second)
    return _gens_out(out), EXIT_OK, "ok", None


def _cmd_intersect(session, args):
    out = intersect(session.ideal_arg(args.first), session.ideal_arg(args.second))
    return _gens_out(out), EXIT_OK, "ok", None


def _cmd_colon(session, args):
    out = colon(session.ideal_arg(args.first), session.ideal_arg(args.second))
    return _gens_out(out), EXIT_OK, "ok", None


def _cmd_eliminate(session, args):
    out = eliminate(session.ideal_arg(args.ideal), args.count)
    return _gens_out(out), EXIT_OK, "ok", None


def _cmd_hilbert(session, args):
    hs = hilbert_series(session.ideal_arg(args.ideal))
    return (
        {
            "numerator": list(hs.numerator),
            "reduced_numerator": list(hs.reduced_numerator),
            "pole_order": hs.pole_order,
        },
        EXIT_OK,
        "ok",
        None,
    )


def _cmd_dim(session, args):
    return {"value": dimension(session.ideal_arg(args.ideal))}, EXIT_OK, "ok", None


def _cmd_mult(session, args):
    return {"value": multiplicity(session.ideal_arg(args.ideal))}, EXIT_OK, "ok", None


def _cmd_embdim(session, args):
    return {"value": embedding_dimension(session.ideal_arg(args.ideal))}, EXIT_OK, "ok", None


def _cmd_length(session, args):
    value = length_quotient(session.ideal_arg(args.ideal))
    return {"value": _encode(value)}, EXIT_OK, "ok", None


def _cmd_bracket(session, args):
    out = bracket_power(session.ideal_arg(args.ideal), args.e)
    return _gens_out(out), EXIT_OK, "ok", None


def _cmd_froot(session, args):
    out = frobenius_root(session.poly_arg(args.poly), args.e)
    return _gens_out(out), EXIT_OK, "ok", None


def _cmd_fpreimage(session, args):
    out = frobenius_preimage(session.ideal_arg(args.ideal), args.e)
    return _gens_out(out), EXIT_OK, "ok", None


def _ambient(session, args) -> Ideal:
    if args.ambient is None:
        return Ideal(session.ctx, ())
    return session.ideal_arg(args.ambient)


def _cmd_fclosure(session, args):
    report = frobenius_closure(session.ideal_arg(args.ideal), _ambient(session, args), args.e_max)
    result = {
        "chain": [[str(g) for g in step.gens] for step in report.chain],
        "stabilized_at": report.stabilized_at,
        "certified": report.certified,
    }
    if report.stabilized_at is None:
        return result, EXIT_INCONCLUSIVE, "inconclusive", f"no repeat within e_max={args.e_max}"
    return result, EXIT_OK, "ok", None


def _cmd_inclosure(session, args):
    membership = in_frobenius_closure(
        session.poly_arg(args.poly), session.ideal_arg(args.ideal), _ambient(session, args), args.e_max
    )
    result = {
        "member": membership.member,
        "e": membership.witness.e if membership.witness else None,
        "q": membership.witness.q if membership.witness else None,
    }
    if membership.member:
        return result, EXIT_OK, "ok", None
    return result, EXIT_INCONCLUSIVE, "inconclusive", f"not a member up to e_max={args.e_max}"


def _cmd_fedder(session, args):
    ok = fedder_is_fpure(session.ideal_arg(args.ideal))
    return {"f_pure": ok}, EXIT_OK if ok else EXIT_CHECK_FAILED, "ok", None


def _cmd_hsl(session, args):
    report = hsl_hypersurface(session.poly_arg(args.poly), args.e_max)
    result = {
        "eta": report.stabilized_at,
        "chain": [[str(g) for g in step.gens] for step in report.chain],
        "certified": report.certified,
    }
    if report.stabilized_at is None:
        return result, EXIT_INCONCLUSIVE, "inconclusive", f"no repeat within e_max={args.e_max}"
    return result, EXIT_OK, "ok", None


def _cmd_reduction(session, args):
    rep = verify.is_reduction(session.ideal_arg(args.ideal), _ambient(session, args), args.s_max)
    if rep.reduction_at is None:
        return rep.as_dict(), EXIT_INCONCLUSIVE, "inconclusive", f"not shown up to s_max={args.s_max}"
    return rep.as_dict(), EXIT_OK, "ok", None


def _cmd_skoda(session, args):
    rep = verify.check_skoda(session.ideal_arg(args.ideal), _ambient(session, args), args.e_max)
    if rep.status == "holds":
        return rep.as_dict(), EXIT_OK, "ok", None
    return rep.as_dict(), EXIT_INCONCLUSIVE, "inconclusive", "unresolved closure memberships"


def _cmd_hwbound(session, args):
    rep = verify.check_hw_bound(session.ideal_arg(args.ideal))
    return rep.as_dict(), EXIT_OK if rep.holds else EXIT_CHECK_FAILED, "ok", None


def _cmd_hslbound(session, args):
    rep = verify.check_hsl_bound(session.poly_arg(args.poly), args.e_max)
    return rep.as_dict(), EXIT_OK if rep.holds else EXIT_CHECK_FAILED, "ok", None


def _cmd_gamma(_session, args):
    value = verify.gamma(args.n, args.p)
    return _encode(value), EXIT_OK, "ok", None


def _cmd_verify(_session, args):
    checks = verify.run_suite(args.suite, n=args.n, p=args.p, e_max=args.e_max, s_max=args.s_max)
    result = {
        "checks": [_encode(c.as_dict()) for c in checks],
        "passed": sum(c.verdict == "pass" for c in checks),
        "failed": sum(c.verdict == "fail" for c in checks),
        "inconclusive": sum(c.verdict == "inconclusive" for c in checks),
        "errors": sum(c.verdict == "error" for c in checks),
    }
    if result["errors"]:
        return result, EXIT_ERROR, "error", "a check raised an error"
    if result["failed"]:
        return result, EXIT_CHECK_FAILED, "ok", None
    if result["inconclusive"]:
        return result, EXIT_INCONCLUSIVE, "inconclusive", "a check was inconclusive"
    return result, EXIT_OK, "ok", None


_NEEDS_SESSION = {
    "gb", "nf", "member", "sum", "product", "intersect", "colon", "eliminate",
    "hilbert", "dim", "mult", "embdim", "length", "bracket", "froot",
    "fpreimage", "fclosure", "inclosure", "fedder", "hsl", "reduction",
    "skoda", "hwbound", "hslbound",
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fplab",
        description="Exact commutative algebra over prime fields.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, *, poly=None, ideals=(), ambient=False,
            e=False, e_max=False, s_max=False, count=False, order=False):
        sp = sub.add_parser(name, help=help_text)
        if name in _NEEDS_SESSION:
            sp.add_argument("-f", "--session", required=True, help="session file")
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
        sp.add_argument("--pair-budget", type=int, default=None, help="S-pair budget override")
        if poly:
            sp.add_argument("poly", help=poly)
        for arg_name, help_str in ideals:
            sp.add_argument(arg_name, help=help_str)
        if ambient:
            sp.add_argument("ambient", nargs="?", default=None, help="ambient ideal (default: zero)")
        if e:
            sp.add_argument("e", type=int, help="Frobenius iterate")
        if count:
            sp.add_argument("count", type=int, help="number of leading variables to eliminate")
        if e_max:
            sp.add_argument("--e-max", type=int, default=4, help="Frobenius step limit")
        if s_max:
            sp.add_argument("--s-max", type=int, default=10, help="reduction step limit")
        if order:
            sp.add_argument("--order", choices=sorted(_ORDERS), default=None, help="monomial order")
        sp.set_defaults(handler=handler)
        return sp

    add("gb", _cmd_gb, "reduced Groebner basis", ideals=[("ideal", "ideal name")], order=True)
    add("nf", _cmd_nf, "normal form of a polynomial", poly="polynomial name or expression",
        ideals=[("ideal", "ideal name")], order=True)
    add("member", _cmd_member, "ideal membership", poly="polynomial name or expression",
        ideals=[("ideal", "ideal name")])
    add("sum", _cmd_sum, "ideal sum", ideals=[("first", "ideal name"), ("second", "ideal name")])
    add("product", _cmd_product, "ideal product", ideals=[("first", "ideal name"), ("second", "ideal name")])
    add("intersect", _cmd_intersect, "ideal intersection", ideals=[("first", "ideal name"), ("second", "ideal name")])
    add("colon", _cmd_colon, "colon ideal (first : second)", ideals=[("first", "ideal name"), ("second", "ideal name")])
    add("eliminate", _cmd_eliminate, "eliminate leading variables", ideals=[("ideal", "ideal name")], count=True)
    add("hilbert", _cmd_hilbert, "Hilbert series of the quotient", ideals=[("ideal", "ideal name")])
    add("dim", _cmd_dim, "Krull dimension of the quotient", ideals=[("ideal", "ideal name")])
    add("mult", _cmd_mult, "multiplicity of the quotient", ideals=[("ideal", "ideal name")])
    add("embdim", _cmd_embdim, "embedding dimension of the quotient", ideals=[("ideal", "ideal name")])
    add("length", _cmd_length, "length of the quotient (or infinite)", ideals=[("ideal", "ideal name")])
    add("bracket", _cmd_bracket, "bracket power I^[p^e]", ideals=[("ideal", "ideal name")], e=True)
    add("froot", _cmd_froot, "Frobenius root of a polynomial", poly="polynomial name or expression", e=True)
    add("fpreimage", _cmd_fpreimage, "Frobenius preimage {x : x^q in I}", ideals=[("ideal", "ideal name")], e=True)
    add("fclosure", _cmd_fclosure, "Frobenius closure chain", ideals=[("ideal", "ideal name")],
        ambient=True, e_max=True)
    add("inclosure", _cmd_inclosure, "Frobenius closure membership", poly="polynomial name or expression",
        ideals=[("ideal", "ideal name")], ambient=True, e_max=True)
    add("fedder", _cmd_fedder, "Fedder F-purity test", ideals=[("ideal", "ideal name")])
    add("hsl", _cmd_hsl, "hypersurface HSL number", poly="polynomial name or expression", e_max=True)
    add("reduction", _cmd_reduction, "reduction test for an ideal", ideals=[("ideal", "ideal name")],
        ambient=True, s_max=True)
    add("skoda", _cmd_skoda, "Skoda-type closure containment", ideals=[("ideal", "ideal name")],
        ambient=True, e_max=True)
    add("hwbound", _cmd_hwbound, "binomial multiplicity bound", ideals=[("ideal", "ideal name")])
    add("hslbound", _cmd_hslbound, "HSL multiplicity bound for a hypersurface",
        poly="polynomial name or expression", e_max=True)

    sp = add("gamma", _cmd_gamma, "sharpness ratio of the hypersurface family")
    sp.add_argument("--n", type=int, required=True, help="number of variables")
    sp.add_argument("--p", type=int, required=True, help="characteristic")

    sp = add("verify", _cmd_verify, "run a built-in verification suite", e_max=True, s_max=True)
    sp.add_argument("suite", choices=verify.SUITE_NAMES, help="suite name")
    sp.add_argument("--n", type=int, default=3, help="family size (remark33 suite)")
    sp.add_argument("--p", type=int, default=2, help="characteristic (remark33 suite)")
    sp.set_defaults(e_max=None, s_max=None)
    return ap


def dispatch(argv) -> CliReport:
    """Run one command line and return the structured report."""
    ap = build_parser()
    args = ap.parse_args(argv)

    saved_budget = groebner.get_default_pair_budget()
    budget = args.pair_budget
    if budget is None and os.environ.get("FPLAB_PAIR_BUDGET"):
        try:
            budget = int(os.environ["FPLAB_PAIR_BUDGET"])
        except ValueError:
            return CliReport(args.command, [], None, 0,
                             {"kind": "error", "message": "FPLAB_PAIR_BUDGET must be an integer"},
                             EXIT_ERROR)

    inputs = [v for k in ("poly", "ideal", "first", "second", "ambient", "suite")
              for v in [getattr(args, k, None)] if v]
    start = time.perf_counter()
    try:
        if budget is not None:
            groebner.set_default_pair_budget(budget)
        session = load_session(args.session) if args.command in _NEEDS_SESSION else None
        result, code, kind, detail = args.handler(session, args)
    except NotStabilizedError as exc:
        status = {"kind": "inconclusive", "detail": str(exc)}
        return CliReport(args.command, inputs, None,
                         round((time.perf_counter() - start) * 1000), status, EXIT_INCONCLUSIVE)
    except (FplabError, ValueError, ZeroDivisionError, OverflowError, OSError) as exc:
        status = {"kind": "error", "message": str(exc)}
        return CliReport(args.command, inputs, None,
                         round((time.perf_counter() - start) * 1000), status, EXIT_ERROR)
    finally:
        groebner.set_default_pair_budget(saved_budget)
    elapsed = round((time.perf_counter() - start) * 1000)
    status = {"kind": kind}
    if detail:
        status["detail"] = detail
    return CliReport(args.command, inputs, result, elapsed, status, code)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report = dispatch(argv)
    wants_json = "--json" in argv
    print(report.to_json() if wants_json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())

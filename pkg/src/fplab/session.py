"""Session files: one ring declaration plus named polynomials and ideals.

Format (UTF-8, one declaration per line, '#' starts a comment):

    ring p=<prime> vars=<v1>,<v2>,... order=grevlex|lex
    poly <name> = <expr>
    ideal <name> = <expr>, <expr>, ...

Exactly one ring line, and it must precede every poly/ideal line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import ParseError
from .field import Prime
from .groebner import Ideal
from .poly import GREVLEX, LEX, Polynomial, RingCtx, parse_poly

_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
_DECL = re.compile(r"(poly|ideal)\s+([a-zA-Z][a-zA-Z0-9_]*)\s*=\s*(.*)$")

_ORDERS = {"grevlex": GREVLEX, "lex": LEX}


@dataclass
class Session:
    ctx: RingCtx
    polys: dict[str, Polynomial] = field(default_factory=dict)
    ideals: dict[str, Ideal] = field(default_factory=dict)

    def poly_arg(self, text: str) -> Polynomial:
        """Resolve a CLI argument: a session name first, else an expression."""
        if text in self.polys:
            return self.polys[text]
        return parse_poly(text, self.ctx)

    def ideal_arg(self, name: str) -> Ideal:
        if name not in self.ideals:
            raise ParseError(f"unknown ideal {name!r}")
        return self.ideals[name]


def _parse_ring_line(line: str, lineno: int) -> RingCtx:
    parts = line.split()
    if not parts or parts[0] != "ring":
        raise ParseError("missing ring declaration", line=lineno)
    seen = {}
    for part in parts[1:]:
        if "=" not in part:
            raise ParseError(f"malformed ring field {part!r}", line=lineno)
        key, value = part.split("=", 1)
        if key in seen:
            raise ParseError(f"duplicate ring field {key!r}", line=lineno)
        seen[key] = value
    if "p" not in seen or "vars" not in seen:
        raise ParseError("ring line needs p=<prime> and vars=<names>", line=lineno)
    try:
        prime = Prime(int(seen["p"]))
    except ValueError as exc:
        raise ParseError(str(exc), line=lineno) from None
    names = tuple(v for v in seen["vars"].split(",") if v)
    order_name = seen.get("order", "grevlex")
    if order_name not in _ORDERS:
        raise ParseError(f"unknown order {order_name!r}", line=lineno)
    extra = set(seen) - {"p", "vars", "order"}
    if extra:
        raise ParseError(f"unknown ring field {sorted(extra)[0]!r}", line=lineno)
    try:
        return RingCtx(prime, names, _ORDERS[order_name])
    except ValueError as exc:
        raise ParseError(str(exc), line=lineno) from None


def parse_session_text(text: str) -> Session:
    session = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("ring"):
            if session is not None:
                raise ParseError("duplicate ring declaration", line=lineno)
            session = Session(_parse_ring_line(stripped, lineno))
            continue
        if session is None:
            raise ParseError("missing ring declaration", line=lineno)
        m = _DECL.match(stripped)
        if not m:
            raise ParseError("expected 'poly <name> = ...' or 'ideal <name> = ...'", line=lineno)
        kind, name, body = m.group(1), m.group(2), m.group(3)
        if name in session.polys or name in session.ideals:
            raise ParseError(f"duplicate name {name!r}", line=lineno)
        offset = (len(line) - len(line.lstrip())) + m.start(3)
        if kind == "poly":
            session.polys[name] = parse_poly(body, session.ctx, column_offset=offset, line=lineno)
        else:
            gens = []
            pos = 0
            for part in body.split(","):
                if not part.strip():
                    raise ParseError("empty generator", line=lineno, column=offset + pos + 1)
                gens.append(
                    parse_poly(part, session.ctx, column_offset=offset + pos, line=lineno)
                )
                pos += len(part) + 1
            session.ideals[name] = Ideal(session.ctx, tuple(gens))
    if session is None:
        raise ParseError("missing ring declaration")
    return session


def load_session(path: str) -> Session:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_session_text(fh.read())


def load_builtin_session(name: str) -> Session:
    """Load one of the sessions shipped with the package."""
    text = resources.files("fplab").joinpath("assets").joinpath(name).read_text(encoding="utf-8")
    return parse_session_text(text)


def sharpness_session_text(n: int, p: int) -> str:
    """Session text for the sharpness family in n variables over F_p.

    Mirrors the generated asset naming remark33_<n>_<p>.fpl.
    """
    from .verify import sharpness_family  # deferred: verify imports this module

    f, h = sharpness_family(n, Prime(p))
    names = ",".join(f.ctx.vars)
    return (
        f"ring p={int(p)} vars={names} order=grevlex\n"
        f"poly f = {f}\n"
        f"poly h = {h}\n"
        f"ideal F = {f}\n"
    )

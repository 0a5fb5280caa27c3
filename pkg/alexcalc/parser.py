"""Expression language: pyparsing grammar and lowering to SpaceExpr.

    expr    := term ("#" term)*
    term    := primary ("#^{" site "," site "}" primary)*
    primary := atom | "(" expr ")"
    atom    := "cap(" NAME ")" | "double(" NAME ")" | "glue(" NAME "," NAME ")"
             | "Xg(" INT ")" | "L(" INT "," INT ")" | NAME
    site    := IDENT ("@" INT)?
"""

from __future__ import annotations

import functools
import logging
import re
from dataclasses import dataclass

from pyparsing import (
    Forward,
    Literal,
    Optional,
    ParseBaseException,
    ParserElement,
    Regex,
    Suppress,
    ZeroOrMore,
)

from alexcalc.catalog import Catalog, default_catalog
from alexcalc.errors import AlexCalcError, ExprSyntaxError, NotClosed
from alexcalc.expr import Atom, SpaceExpr, SumP2, SumS2, resolve_site
from alexcalc.spaces import AtomSpec

logger = logging.getLogger(__name__)

NAME_CHARS = r"A-Za-z0-9_~./+\-"
GENERIC_NAME = rf"[A-Za-z][{NAME_CHARS}]*"


@dataclass(frozen=True)
class AtomToken:
    kind: str
    args: tuple
    span: tuple[int, int]


@dataclass(frozen=True)
class SiteToken:
    site_id: str
    occurrence: int
    span: tuple[int, int]


@dataclass(frozen=True)
class HatSites:
    left: SiteToken
    right: SiteToken


@dataclass(frozen=True)
class SumNode:
    left: object
    right: object


@dataclass(frozen=True)
class HatNode:
    left: object
    sites: HatSites
    right: object


_SURFACE = {
    "name": lambda a: a[0],
    "cap": lambda a: f"cap({a[0]})",
    "double": lambda a: f"double({a[0]})",
    "glue": lambda a: f"glue({a[0]},{a[1]})",
    "xg": lambda a: f"Xg({a[0]})",
    "lens": lambda a: f"L({a[0]},{a[1]})",
}


def _spanned(kind: str):
    def action(s, loc, toks):
        args = tuple(toks)
        return [AtomToken(kind, args, (loc, loc + len(_SURFACE[kind](args))))]

    return action


def _name_token(names: list[str]) -> Regex:
    ordered = sorted(set(names), key=lambda n: (-len(n), n))
    alternatives = "|".join(re.escape(n) for n in ordered)
    return Regex(rf"(?:{alternatives})(?![{NAME_CHARS}])") if ordered else Regex(GENERIC_NAME)


@functools.lru_cache(maxsize=8)
def build_grammar(catalog: Catalog) -> ParserElement:
    integer = Regex(r"-?\d+").set_parse_action(lambda t: int(t[0]))
    vocabulary = _name_token(catalog.names())
    generic = Regex(GENERIC_NAME)
    name = vocabulary | generic

    lpar, rpar, comma = Suppress("("), Suppress(")"), Suppress(",")
    cap = Suppress(Literal("cap(")) + name + rpar
    double = Suppress(Literal("double(")) + name + rpar
    glue = Suppress(Literal("glue(")) + name + comma + name + rpar
    xg = Suppress(Literal("Xg(")) + integer + rpar
    lens = Suppress(Literal("L(")) + integer + comma + integer + rpar

    cap.set_parse_action(_spanned("cap"))
    double.set_parse_action(_spanned("double"))
    glue.set_parse_action(_spanned("glue"))
    xg.set_parse_action(_spanned("xg"))
    lens.set_parse_action(_spanned("lens"))
    plain = name.copy().set_parse_action(_spanned("name"))
    atom = cap | double | glue | xg | lens | plain

    site = Regex(r"[A-Za-z0-9_]+") + Optional(Suppress("@") + Regex(r"\d+"))

    def site_action(s, loc, toks):
        k = int(toks[1]) if len(toks) > 1 else 1
        return [SiteToken(toks[0], k, (loc, loc + len(toks[0])))]

    site.set_parse_action(site_action)
    hat = Suppress(Literal("#^{")) + site + comma + site + Suppress("}")
    hat.set_parse_action(lambda t: [HatSites(t[0], t[1])])

    expr = Forward()
    primary = atom | (lpar + expr + rpar)
    term = primary + ZeroOrMore(hat + primary)
    term.set_parse_action(_fold_hats)
    expr <<= term + ZeroOrMore(Suppress(Regex(r"#(?!\^)")) + term)
    expr.set_parse_action(_fold_sums)
    return expr


def _fold_hats(toks):
    node = toks[0]
    for i in range(1, len(toks), 2):
        node = HatNode(node, toks[i], toks[i + 1])
    return [node]


def _fold_sums(toks):
    node = toks[0]
    for t in toks[1:]:
        node = SumNode(node, t)
    return [node]


# ---------------------------------------------------------------------------
# lowering
# ---------------------------------------------------------------------------


def _closed(result, span) -> SpaceExpr:
    if isinstance(result, AtomSpec):
        return Atom(result)
    if isinstance(result, (Atom, SumS2, SumP2)):
        return result
    raise NotClosed(f"{result.name} has boundary and cannot appear in a closed expression", span)


def _lower_atom(tok: AtomToken, catalog: Catalog) -> SpaceExpr:
    match tok.kind, tok.args:
        case "name", (name,):
            return _closed(catalog.lookup(name), tok.span)
        case "cap", (name,):
            return _closed(catalog.cap_off(catalog.block(name)), tok.span)
        case "double", (name,):
            return catalog.double_along(catalog.block(name))
        case "glue", (a, b):
            return _closed(catalog.glue(catalog.block(a), catalog.block(b)), tok.span)
        case "xg", (g,):
            return Atom(catalog.xg_atom(g))
        case "lens", (p, q):
            return Atom(catalog.atom(f"L({p},{q})"))
    raise ExprSyntaxError(f"unexpected atom {tok.kind}", tok.span)


def _with_span(exc: AlexCalcError, span) -> AlexCalcError:
    if exc.span is None:
        exc.span = span
    return exc


def lower(node, catalog: Catalog) -> SpaceExpr:
    match node:
        case AtomToken():
            try:
                return _lower_atom(node, catalog)
            except AlexCalcError as exc:
                raise _with_span(exc, node.span)
        case SumNode(left, right):
            return SumS2(lower(left, catalog), lower(right, catalog))
        case HatNode(left, sites, right):
            a, b = lower(left, catalog), lower(right, catalog)
            try:
                sa = resolve_site(a, sites.left.site_id, sites.left.occurrence)
            except AlexCalcError as exc:
                raise _with_span(exc, sites.left.span)
            try:
                sb = resolve_site(b, sites.right.site_id, sites.right.occurrence)
            except AlexCalcError as exc:
                raise _with_span(exc, sites.right.span)
            return SumP2(a, sa, b, sb)
    raise TypeError(f"unexpected parse node {node!r}")


def parse_expr(text: str, catalog: Catalog | None = None) -> SpaceExpr:
    catalog = catalog or default_catalog()
    if not text.strip():
        raise ExprSyntaxError("empty expression", (0, 0))
    grammar = build_grammar(catalog)
    try:
        tree = grammar.parse_string(text, parse_all=True)[0]
    except ParseBaseException as exc:
        raise ExprSyntaxError(f"syntax error: {exc.msg}", (exc.loc, exc.loc + 1)) from None
    logger.debug("parse_expr: %r -> %r", text, tree)
    return lower(tree, catalog)

"""Seeded random expressions, equivalent rebuilds, and the normal-form self-test."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from alexcalc.catalog import Catalog, default_catalog
from alexcalc.catalog_data import SUSPENSION
from alexcalc.expr import Atom, SiteRef, SpaceExpr, SumP2, SumS2, available_sites, singular_count
from alexcalc.formatter import format_expr, format_normal_form
from alexcalc.normalizer import normal_form
from alexcalc.parser import parse_expr
from alexcalc.spaces import AtomSpec

logger = logging.getLogger(__name__)

DEFAULT_SELFTEST_COUNT = 200
MAX_ATOMS = 12


def atom_pool(catalog: Catalog) -> list[AtomSpec]:
    pool = [a for a in catalog.atoms() if not a.opaque]
    pool += [catalog.xg_atom(1), catalog.xg_atom(2)]
    # weight Susp(P2) up so absorption gets exercised
    pool += [catalog.atom(SUSPENSION)] * 3
    return pool


def random_expr(rng: random.Random, catalog: Catalog | None = None, max_atoms: int = MAX_ATOMS) -> SpaceExpr:
    """Random closed expression with between one and *max_atoms* atoms."""
    catalog = catalog or default_catalog()
    pool = atom_pool(catalog)
    parts: list[SpaceExpr] = [Atom(rng.choice(pool)) for _ in range(rng.randint(1, max_atoms))]
    while len(parts) > 1:
        i, j = rng.sample(range(len(parts)), 2)
        a, b = parts[i], parts[j]
        sa, sb = available_sites(a), available_sites(b)
        if sa and sb and rng.random() < 0.6:
            node: SpaceExpr = SumP2(a, rng.choice(sa), b, rng.choice(sb))
        else:
            node = SumS2(a, b)
        parts = [p for k, p in enumerate(parts) if k not in (i, j)] + [node]
    return parts[0]


def _rebuild(e: SpaceExpr, rng: random.Random) -> tuple[SpaceExpr, dict[tuple, tuple]]:
    """Equivalent tree plus a map from old atom paths to new ones."""
    match e:
        case Atom():
            return e, {(): ()}
        case SumP2(left, left_site, right, right_site):
            lt, lm = _rebuild(left, rng)
            rt, rm = _rebuild(right, rng)
            ls = SiteRef(lm[left_site.path], left_site.site_id)
            rs = SiteRef(rm[right_site.path], right_site.site_id)
            if rng.random() < 0.5:
                moved = {(0,) + p: (1,) + q for p, q in lm.items()}
                moved |= {(1,) + p: (0,) + q for p, q in rm.items()}
                return SumP2(rt, rs, lt, ls), moved
            kept = {(0,) + p: (0,) + q for p, q in lm.items()}
            kept |= {(1,) + p: (1,) + q for p, q in rm.items()}
            return SumP2(lt, ls, rt, rs), kept
        case SumS2():
            parts = []
            for sub, prefix in _summands(e, ()):
                t, m = _rebuild(sub, rng)
                parts.append((t, {prefix + p: q for p, q in m.items()}))
            rng.shuffle(parts)
            while len(parts) > 1:
                i = rng.randrange(len(parts) - 1)
                (a, ma), (b, mb) = parts[i], parts[i + 1]
                merged = {p: (0,) + q for p, q in ma.items()} | {p: (1,) + q for p, q in mb.items()}
                parts[i : i + 2] = [(SumS2(a, b), merged)]
            return parts[0]
    raise TypeError(f"not an expression: {e!r}")


def _summands(e: SpaceExpr, prefix: tuple) -> list[tuple[SpaceExpr, tuple]]:
    if isinstance(e, SumS2):
        return _summands(e.left, prefix + (0,)) + _summands(e.right, prefix + (1,))
    return [(e, prefix)]


def rebuild(e: SpaceExpr, rng: random.Random) -> SpaceExpr:
    """Same space, different tree: operands of #^ swapped and # summands shuffled and rebracketed."""
    return _rebuild(e, rng)[0]


@dataclass
class SelftestResult:
    count: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def selftest(count: int = DEFAULT_SELFTEST_COUNT, seed: int = 0, catalog: Catalog | None = None) -> SelftestResult:
    """Normal forms must survive rebuilding, random rule order, and printing then parsing."""
    catalog = catalog or default_catalog()
    rng = random.Random(seed)
    result = SelftestResult(count)
    for i in range(count):
        e = random_expr(rng, catalog)
        text = format_expr(e)
        nf = normal_form(e, catalog)
        shown = format_normal_form(nf)
        if singular_count(e) % 2:
            result.failures.append(f"#{i} odd singular count: {text}")
        if normal_form(rebuild(e, rng), catalog) != nf:
            result.failures.append(f"#{i} rebuild changed the normal form: {text}")
        shuffled = normal_form(e, catalog, rng=random.Random(rng.random()))
        if shuffled != nf or format_normal_form(shuffled) != shown:
            result.failures.append(f"#{i} rule order changed the normal form: {text}")
        if parse_expr(text, catalog) != e:
            result.failures.append(f"#{i} parse(format(e)) differs: {text}")
        logger.debug("selftest #%d: %s -> %s", i, text, shown)
    return result

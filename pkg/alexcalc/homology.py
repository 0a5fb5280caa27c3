"""First homology of expressions via Smith normal form of relation matrices."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from alexcalc.expr import SpaceExpr, layout
from alexcalc.spaces import UNKNOWN, Unknown

if TYPE_CHECKING:
    from alexcalc.spaces import AtomSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, each >= 2."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_diagonal(cls, diagonal, generators: int) -> AbelianGroup:
        """Cokernel of a relation matrix with Smith diagonal *diagonal* on *generators* columns."""
        nonzero = [abs(d) for d in diagonal if d != 0]
        torsion = tuple(sorted(d for d in nonzero if d > 1))
        return cls(rank=generators - len(nonzero), torsion=_chain(torsion))

    @classmethod
    def direct_sum(cls, *groups: AbelianGroup) -> AbelianGroup:
        rank = sum(g.rank for g in groups)
        factors = [d for g in groups for d in g.torsion]
        return cls(rank, _chain(tuple(factors)))

    @property
    def generators(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _chain(factors: tuple[int, ...]) -> tuple[int, ...]:
    """Invariant factors of Z/f1 + Z/f2 + ... (orders need not divide each other)."""
    if not factors:
        return ()
    diagonal, _ = smith_normal_form(IntMatrix.diagonal(list(factors)))
    return tuple(d for d in diagonal if d > 1)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def diagonal(cls, values: list[int]) -> IntMatrix:
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    def to_sympy(self) -> Matrix:
        return Matrix(self.rows, self.cols, [x for r in self.entries for x in r])


@dataclass(frozen=True)
class SmithTransforms:
    left: IntMatrix
    right: IntMatrix


def smith_normal_form(
    m: IntMatrix, with_transforms: bool = False
) -> tuple[tuple[int, ...], SmithTransforms | None]:
    """Diagonal of the Smith normal form, non-negative, with its divisibility chain.

    With *with_transforms*, also returns unimodular U, V such that U·m·V = D.
    """
    k = min(m.rows, m.cols)
    if k == 0:
        transforms = None
        if with_transforms:
            transforms = SmithTransforms(
                IntMatrix.diagonal([1] * m.rows) if m.rows else IntMatrix(0, 0, ()),
                IntMatrix.diagonal([1] * m.cols) if m.cols else IntMatrix(0, 0, ()),
            )
        return (), transforms

    smf, s, t = smith_normal_decomp(m.to_sympy(), domain=ZZ)
    diagonal = []
    for i in range(k):
        d = int(smf[i, i])
        if d < 0:
            s[i, :] = -s[i, :]
            d = -d
        diagonal.append(d)
    transforms = None
    if with_transforms:
        transforms = SmithTransforms(
            IntMatrix.from_rows([[int(x) for x in s.row(i)] for i in range(s.rows)], s.cols),
            IntMatrix.from_rows([[int(x) for x in t.row(i)] for i in range(t.rows)], t.cols),
        )
    return tuple(diagonal), transforms


def cokernel(relations: list[list[int]], generators: int) -> AbelianGroup:
    if not relations:
        return AbelianGroup(rank=generators)
    diagonal, _ = smith_normal_form(IntMatrix.from_rows(relations, generators))
    return AbelianGroup.from_diagonal(diagonal, generators)


# ---------------------------------------------------------------------------
# presentations of expressions
# ---------------------------------------------------------------------------


def _presentation(e: SpaceExpr, close_sites: bool) -> tuple[list[list[int]], int] | Unknown:
    lay = layout(e)
    offsets = []
    total = 0
    for atom in lay.atoms:
        if atom.h1 is None:
            return UNKNOWN
        offsets.append(total)
        total += atom.h1.generators

    def site_vector(occ: int, site_id: str) -> list[int] | None:
        atom: AtomSpec = lay.atoms[occ]
        image = atom.site(site_id).h1_image
        if image is None:
            return None
        row = [0] * total
        for i, x in enumerate(image):
            row[offsets[occ] + i] = x
        return row

    relations: list[list[int]] = []
    for occ, atom in enumerate(lay.atoms):
        for i, d in enumerate(atom.h1.torsion):
            row = [0] * total
            row[offsets[occ] + atom.h1.rank + i] = d
            relations.append(row)

    for g in lay.gluings:
        va = site_vector(g.left_occurrence, g.left_site)
        vb = site_vector(g.right_occurrence, g.right_site)
        if va is None or vb is None:
            return UNKNOWN
        relations.append([a - b for a, b in zip(va, vb)])

    if close_sites:
        for occ, site_id in lay.available:
            v = site_vector(occ, site_id)
            if v is None:
                return UNKNOWN
            relations.append(v)
    return relations, total


def h1(e: SpaceExpr) -> AbelianGroup | Unknown:
    """H1 of the manifold part of *e* (open cone neighbourhoods of free sites removed)."""
    pres = _presentation(e, close_sites=False)
    if pres is UNKNOWN:
        return UNKNOWN
    relations, total = pres
    group = cokernel(relations, total)
    logger.debug("h1: %d generators, %d relations -> %s", total, len(relations), group)
    return group


def h1_space(e: SpaceExpr) -> AbelianGroup | Unknown:
    """H1 of the closed space: every remaining cone kills the class of its link."""
    pres = _presentation(e, close_sites=True)
    if pres is UNKNOWN:
        return UNKNOWN
    relations, total = pres
    return cokernel(relations, total)

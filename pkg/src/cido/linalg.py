"""Exact linear algebra over Q for spans of polynomials inside a finite monomial slice.

Rows are stored sparsely as ``{column: Rational}``.  Column ``j`` of a slice
is the ``j``-th monomial of the slice in descending graded-lex order, so the
pivot of a row is its largest monomial.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .qpoly import Polynomial, Rational


class SupportError(ValueError):
    """A polynomial has a monomial outside the slice it was placed in."""


@dataclass(frozen=True)
class SliceMatrix:
    columns: tuple
    rows: tuple

    def __post_init__(self):
        width = len(self.columns)
        for r in self.rows:
            if len(r) != width:
                raise ValueError("row length does not match the number of columns")

    @property
    def rank_bound(self) -> int:
        return len(self.rows)


def row_reduce(m: SliceMatrix) -> tuple:
    """Reduced row-echelon form over Q.  Returns ``(reduced, pivots)``; zero rows dropped."""
    rows = [[Rational(x) for x in r] for r in m.rows]
    width = len(m.columns)
    pivots = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    reduced = SliceMatrix(tuple(m.columns), tuple(tuple(row) for row in rows[:r]))
    return reduced, pivots


class Echelon:
    """Incremental sparse echelon form with optional tracking of row combinations.

    Rows are added one by one.  A row that reduces to zero is discarded, so the
    kept rows are the greedy independent prefix of the input sequence; the
    combination recorded for a reduced target therefore only involves kept rows
    and is unique.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict = {}  # column -> (row dict normalized to 1 at column, combo dict)
        self.added = 0

    def __len__(self):
        return len(self.pivots)

    def _reduce(self, vec: dict, combo: dict | None):
        heap = list(vec)
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            c = vec.get(col)
            if not c:
                continue
            entry = self.pivots.get(col)
            if entry is None:
                continue
            row, rcombo = entry
            for j, v in row.items():
                nv = vec.get(j, 0) - c * v
                if nv:
                    if j not in vec:
                        heapq.heappush(heap, j)
                    vec[j] = nv
                else:
                    vec.pop(j, None)
            if combo is not None:
                for j, v in rcombo.items():
                    nv = combo.get(j, 0) - c * v
                    if nv:
                        combo[j] = nv
                    else:
                        combo.pop(j, None)
        return vec, combo

    def add(self, row: dict) -> bool:
        """Add a row; return True if it was independent of the rows so far."""
        index = self.added
        self.added += 1
        vec = {j: Rational(v) for j, v in row.items() if v}
        combo = {index: Rational(1)} if self.track else None
        vec, combo = self._reduce(vec, combo)
        if not vec:
            return False
        lead = min(vec)
        inv = 1 / vec[lead]
        vec = {j: v * inv for j, v in vec.items()}
        if combo is not None:
            combo = {j: v * inv for j, v in combo.items()}
        self.pivots[lead] = (vec, combo)
        return True

    def reduce(self, target: dict) -> tuple:
        """Return ``(remainder, combination)`` with ``target = remainder + sum(c_i * row_i)``.

        The remainder has no entries on pivot columns.  ``combination`` is None
        unless tracking is enabled.
        """
        vec = {j: Rational(v) for j, v in target.items() if v}
        combo: dict | None = {} if self.track else None
        vec, combo = self._reduce(vec, combo)
        if combo is not None:
            combo = {j: -v for j, v in combo.items()}
        return vec, combo

    def pivot_columns(self) -> list:
        return sorted(self.pivots)


def _column_map(slice_: Sequence) -> dict:
    return {tuple(m): j for j, m in enumerate(slice_)}


def poly_to_row(p: Polynomial, colmap: dict) -> dict:
    row = {}
    for m, c in p.terms.items():
        j = colmap.get(m)
        if j is None:
            raise SupportError(f"monomial {m} is outside the slice")
        row[j] = c
    return row


def quotient_basis(slice_: Sequence, spanning: Iterable[Polynomial]) -> list:
    """Slice monomials whose classes form a basis of slice-span / spanning-span.

    These are the non-pivot columns under the given column order.
    """
    colmap = _column_map(slice_)
    ech = Echelon()
    # pivot set does not depend on insertion order; short rows first is cheaper
    rows = sorted((poly_to_row(p, colmap) for p in spanning), key=len)
    for row in rows:
        ech.add(row)
    return [m for j, m in enumerate(slice_) if j not in ech.pivots]


def solve_membership(target: Polynomial, spanning: Sequence[Polynomial]):
    """Coefficients ``c`` with ``target == sum(c_i * spanning_i)``, or None.

    Free variables (spanning polynomials dependent on earlier ones) are set to
    zero, so the answer is a function of the ordered input.
    """
    support = set(target.terms)
    for p in spanning:
        support.update(p.terms)
    slice_ = sorted(support, key=lambda m: (sum(m), m), reverse=True)
    colmap = _column_map(slice_)
    ech = Echelon(track=True)
    for p in spanning:
        ech.add(poly_to_row(p, colmap))
    rem, combo = ech.reduce(poly_to_row(target, colmap))
    if rem:
        return None
    return [combo.get(i, Rational(0)) for i in range(len(spanning))]

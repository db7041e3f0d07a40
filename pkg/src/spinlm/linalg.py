"""Incremental sparse row echelon forms over ``Q`` and ``F_p``.

Rows are dicts ``{column: coefficient}``; the pivot of a row is its smallest
column.  Over ``Q`` rows are kept as primitive integer vectors and reduced
fraction-free.  Over ``F_p`` pivots are normalized to 1.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .polyalg.fields import ExactField


def _primitive(v: dict) -> dict:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = v[min(v)]
    if lead < 0:
        g = -g
    if g != 1:
        v = {c: x // g for c, x in v.items()}
    return v


def _integral(v: Mapping) -> dict:
    dens = 1
    for x in v.values():
        if isinstance(x, Fraction) and x.denominator != 1:
            dens = dens * x.denominator // gcd(dens, x.denominator)
    out = {}
    for c, x in v.items():
        y = x * dens
        y = int(y) if not isinstance(y, Fraction) else y.numerator
        if y:
            out[c] = y
    return out


class Echelon:
    """Echelon basis of a growing row space; ``add`` returns whether the rank grew."""

    def __init__(self, field: ExactField):
        self.field = field
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _prepare(self, row: Mapping) -> dict:
        if self.field.p:
            p = self.field.p
            F = self.field
            return {c: v for c, x in row.items() if (v := F(x) % p)}
        return _integral(row)

    def _eliminate(self, v: dict, c: int, prow: dict, heap: list) -> dict:
        if self.field.p:
            p = self.field.p
            f = v[c]
            for k, x in prow.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = y
                else:
                    v.pop(k, None)
            return v
        a, b = prow[c], v[c]
        if a != 1:
            v = {k: a * x for k, x in v.items()}
        for k, x in prow.items():
            y = v.get(k, 0) - b * x
            if y:
                if k not in v:
                    heapq.heappush(heap, k)
                v[k] = y
            else:
                v.pop(k, None)
        return _primitive(v) if v else v

    def reduce(self, row: Mapping, full: bool = True) -> dict:
        """Reduce ``row`` against the basis.

        With ``full=False`` the result only has a non-pivot leading column;
        with ``full=True`` no column of the result is a pivot column.
        """
        v = self._prepare(row)
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            if c not in v:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                if not full:
                    break
                continue
            v = self._eliminate(v, c, prow, heap)
        return v

    def project(self, row: Mapping) -> dict:
        """Exact image of ``row`` in the complement coordinates (no pivot columns).

        Unlike :meth:`reduce` over ``Q`` this is not rescaled, so it is linear in ``row``.
        """
        F = self.field
        v = {c: F(x) for c, x in row.items() if F(x) != 0}
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            if c not in v or c not in self.pivots:
                continue
            prow = self.pivots[c]
            f = F(Fraction(v[c]) / prow[c]) if not F.p else v[c] * pow(prow[c], -1, F.p) % F.p
            for k, x in prow.items():
                y = F(v.get(k, 0) - f * x)
                if y:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def copy(self) -> "Echelon":
        E = Echelon(self.field)
        E.pivots = dict(self.pivots)
        return E

    def add(self, row: Mapping) -> bool:
        v = self.reduce(row, full=False)
        if not v:
            return False
        c = min(v)
        if self.field.p:
            p = self.field.p
            inv = pow(v[c], -1, p)
            v = {k: x * inv % p for k, x in v.items()}
        else:
            v = _primitive(v)
        self.pivots[c] = v
        return True

    def extend(self, rows: Iterable[Mapping]) -> int:
        return sum(1 for r in rows if self.add(r))

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row, full=False)


def rank_of(rows: Iterable[Mapping], field: ExactField) -> int:
    E = Echelon(field)
    E.extend(rows)
    return E.rank


def solve_in_span(target: Mapping, vectors: list[Mapping], field: ExactField) -> list | None:
    """Coefficients ``c`` with ``sum c_k vectors[k] == target``, or ``None``.

    Small dense-tagged elimination with field arithmetic; intended for
    normal-form coordinates where the number of vectors is modest.
    """
    F = field
    n = len(vectors)
    pivots: dict[int, tuple[dict, dict]] = {}

    def reduce(v: dict, tag: dict) -> tuple[dict, dict]:
        while v:
            c = min(v)
            if c not in pivots:
                return v, tag
            pv, pt = pivots[c]
            f = v[c]
            for k, x in pv.items():
                y = F(v.get(k, 0) - f * x)
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            for k, x in pt.items():
                y = F(tag.get(k, 0) - f * x)
                if y:
                    tag[k] = y
                else:
                    tag.pop(k, None)
        return v, tag

    for idx, vec in enumerate(vectors):
        v = {c: F(x) for c, x in vec.items() if F(x) != 0}
        v, tag = reduce(v, {idx: 1})
        if not v:
            continue
        c = min(v)
        inv = F.inv(v[c])
        pivots[c] = ({k: F(x * inv) for k, x in v.items()}, {k: F(x * inv) for k, x in tag.items()})
    t = {c: F(x) for c, x in target.items() if F(x) != 0}
    rest, tag = reduce(t, {})
    if rest:
        return None
    # tag expresses -(target reduction); target = sum tag_k * vectors[k] with sign flip
    coeffs = [0] * n
    for k, x in tag.items():
        coeffs[k] = F(-x)
    return coeffs

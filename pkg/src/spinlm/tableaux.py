"""Partitions, tableaux over the barred alphabet, and GL/O/SO standardness.

Tableau entries are integer codes from :mod:`spinlm.indexcomb`, so the
alphabet order is integer order.  Cells are addressed 1-based as ``(row, col)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import ContractViolation, InvalidInput, Unsupported
from .indexcomb import label, perp_barred, sign_tau

Partition = tuple[int, ...]


def as_partition(parts: Sequence[int]) -> Partition:
    lam = tuple(int(x) for x in parts if int(x) != 0)
    if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise InvalidInput(f"{tuple(parts)} is not a partition")
    return lam


def conjugate(lam: Sequence[int]) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= k) for k in range(1, lam[0] + 1))


def partitions_of(d: int, max_parts: int | None = None) -> list[Partition]:
    """Partitions of ``d`` in decreasing lexicographic order."""
    out: list[Partition] = []

    def rec(left: int, cap: int, acc: list[int]) -> None:
        if left == 0:
            out.append(tuple(acc))
            return
        if max_parts is not None and len(acc) >= max_parts:
            return
        for k in range(min(left, cap), 0, -1):
            rec(left - k, k, acc + [k])

    rec(d, d, [])
    return out


def partition_lt(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """Size first; for equal sizes, ``mu`` dominates ``lam``."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam == mu:
        return False
    if sum(lam) != sum(mu):
        return sum(lam) < sum(mu)
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a > b:
            return False
    return True


def partition_total_key(lam: Sequence[int]) -> tuple:
    """Sort key of a fixed total order refining :func:`partition_lt` (size, then parts lexicographically)."""
    lam = as_partition(lam)
    return (sum(lam), lam)


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(r) == 0 for r in rows):
            raise InvalidInput("tableau rows must be non-empty")
        as_partition([len(r) for r in rows])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "Tableau":
        if not cols:
            return cls(())
        lengths = [len(c) for c in cols]
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise InvalidInput("column lengths must be weakly decreasing")
        return cls(tuple(tuple(c[r] for c in cols if len(c) > r) for r in range(lengths[0])))

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def columns(self) -> list[tuple[int, ...]]:
        if not self.rows:
            return []
        return [tuple(r[j] for r in self.rows if len(r) > j) for j in range(len(self.rows[0]))]

    def column(self, j: int) -> tuple[int, ...]:
        cols = self.columns()
        return cols[j - 1] if 1 <= j <= len(cols) else ()

    def cell(self, r: int, c: int) -> int | None:
        if 1 <= r <= len(self.rows) and 1 <= c <= len(self.rows[r - 1]):
            return self.rows[r - 1][c - 1]
        return None

    def word(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def with_first_column(self, col: Sequence[int]) -> "Tableau":
        cols = self.columns()
        if len(col) != len(cols[0]):
            raise InvalidInput("replacement column has the wrong length")
        return Tableau.from_columns([tuple(col)] + cols[1:])

    def pretty(self, N: int) -> str:
        return "/".join(",".join(label(x, N) for x in r) for r in self.rows)


@dataclass(frozen=True)
class Bitableau:
    left: Tableau
    right: Tableau

    def __post_init__(self) -> None:
        if self.left.shape != self.right.shape:
            raise InvalidInput("bitableau tableaux must have the same shape")

    @property
    def shape(self) -> Partition:
        return self.left.shape

    def columns(self) -> tuple[list, list]:
        return self.left.columns(), self.right.columns()


# standardness


def is_gl_standard(T: Tableau, N: int) -> bool:
    if len(T.rows) > N:
        return False
    if any(x < 1 or x > N for x in T.word()):
        return False
    for r in T.rows:
        if any(a > b for a, b in zip(r, r[1:])):
            return False
    for c in T.columns():
        if any(a >= b for a, b in zip(c, c[1:])):
            return False
    return True


def _os_conditions(T: Tableau, N: int) -> bool:
    col1, col2 = T.column(1), T.column(2)
    for i in range(1, N // 2 + 1):
        ibar, ii = 2 * i - 1, 2 * i
        alpha = sum(1 for x in col1 if x <= ii)
        beta = sum(1 for x in col2 if x <= ii)
        if alpha + beta > 2 * i:
            return False
        if alpha + beta != 2 * i:
            continue
        if alpha > beta:
            # missing cells make the hypothesis fail and the conclusion false
            if T.cell(alpha, 1) == ii and T.cell(beta, 2) == ibar and T.cell(alpha - 1, 1) != ibar:
                return False
        elif alpha == beta and T.cell(i, 1) == ibar:
            row = T.rows[i - 1] if i <= len(T.rows) else ()
            for b in range(2, len(row) + 1):
                if row[b - 1] == ii and T.cell(i - 1, b) != ibar:
                    return False
    return True


def is_on_standard(T: Tableau, N: int) -> bool:
    if not is_gl_standard(T, N):
        return False
    conj = conjugate(T.shape)
    if (conj[0] if conj else 0) + (conj[1] if len(conj) > 1 else 0) > N:
        return False
    return _os_conditions(T, N)


def gl_standard_tableaux(lam: Sequence[int], N: int) -> Iterator[Tableau]:
    """Column-strict, row-weak fillings in lexicographic order of the row-reading word."""
    lam = as_partition(lam)
    if len(lam) > N:
        return
    cells = [(r, c) for r, length in enumerate(lam) for c in range(length)]
    grid = [[0] * length for length in lam]

    def rec(k: int) -> Iterator[Tableau]:
        if k == len(cells):
            yield Tableau(tuple(tuple(r) for r in grid))
            return
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        # room for the rows still below in this column
        below = sum(1 for rr in range(r + 1, len(lam)) if lam[rr] > c)
        for v in range(lo, N - below + 1):
            grid[r][c] = v
            yield from rec(k + 1)
        grid[r][c] = 0

    yield from rec(0)


def enumerate_on_standard(lam: Sequence[int], N: int) -> list[Tableau]:
    """All O(N)-standard tableaux of shape ``lam``; empty when the two-column bound fails."""
    return list(_on_standard_cached(as_partition(lam), N))


@lru_cache(maxsize=None)
def _on_standard_cached(lam: Partition, N: int) -> tuple[Tableau, ...]:
    conj = conjugate(lam)
    if (conj[0] if conj else 0) + (conj[1] if len(conj) > 1 else 0) > N:
        return ()
    return tuple(T for T in gl_standard_tableaux(lam, N) if _os_conditions(T, N))


def canonical_tableau(lam: Sequence[int]) -> Tableau:
    """Row ``j`` filled with ``jbar``."""
    lam = as_partition(lam)
    return Tableau(tuple((2 * j - 1,) * length for j, length in enumerate(lam, start=1)))


def _need_even(N: int) -> None:
    if N % 2:
        raise Unsupported("perp on tableaux needs even N")


def tableau_perp(T: Tableau, N: int, check: bool = True) -> Tableau:
    _need_even(N)
    if check and not is_on_standard(T, N):
        raise ContractViolation("tableau_perp expects an O(N)-standard tableau")
    height = len(T.rows)
    if height > N // 2:
        raise ContractViolation("first column longer than N/2")
    if height < N // 2:
        return T
    return T.with_first_column(perp_barred(T.column(1), N))


def sign_tau_tableau(T: Tableau, N: int) -> int:
    return sign_tau(T.column(1), N)


def prec_pm(T: Tableau, N: int, sign: int) -> bool:
    """``T`` precedes its perp for the ``sign`` tie-break (first column of length ``N/2``)."""
    _need_even(N)
    P = tableau_perp(T, N, check=False)
    if P != T:
        return T.column(1) <= P.column(1)
    return sign_tau_tableau(T, N) == sign * sign_tau_tableau(canonical_tableau(T.shape), N)


def is_so_standard(T: Tableau, N: int) -> bool:
    if not is_on_standard(T, N):
        return False
    _need_even(N)
    if len(T.rows) < N // 2:
        return True
    if len(T.rows) > N // 2:
        return False
    return prec_pm(T, N, +1)


def tableau_order_prec(T: Tableau, T2: Tableau) -> bool:
    """Strict order: compare at the right-most differing column, top-most differing entry."""
    if T.shape != T2.shape:
        raise InvalidInput("tableaux must have the same shape")
    for c1, c2 in zip(reversed(T.columns()), reversed(T2.columns())):
        if c1 != c2:
            for a, b in zip(c1, c2):
                if a != b:
                    return a < b
    return False


def count_row(lam: Sequence[int], N: int) -> dict:
    """Counts of GL-, O- and (even N) SO-standard tableaux of a shape."""
    lam = as_partition(lam)
    gl = sum(1 for _ in gl_standard_tableaux(lam, N))
    on = enumerate_on_standard(lam, N)
    son = None
    if N % 2 == 0:
        son = sum(1 for T in on if len(T.rows) <= N // 2 and is_so_standard(T, N))
    return {"N": N, "lambda": lam, "count_GL": gl, "count_ON": len(on), "count_SON": son}

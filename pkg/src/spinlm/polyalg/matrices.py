"""Constant matrices, generic variable matrices, minors and bideterminants."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from ..errors import InvalidInput, SingularMatrix
from ..indexcomb import label, perm_sign
from .fields import QQ, ExactField
from .poly import ExactPoly, PolyRing, poly_sum


class ConstMatrix:
    """Dense matrix of normalized field elements."""

    __slots__ = ("rows", "field")

    def __init__(self, rows: Sequence[Sequence], field: ExactField = QQ):
        rows = [[field(x) for x in r] for r in rows]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise InvalidInput("matrix must be non-empty and rectangular")
        self.rows = rows
        self.field = field

    @classmethod
    def identity(cls, n: int, field: ExactField = QQ) -> "ConstMatrix":
        return cls([[1 if a == b else 0 for b in range(n)] for a in range(n)], field)

    @classmethod
    def zeros(cls, r: int, c: int, field: ExactField = QQ) -> "ConstMatrix":
        return cls([[0] * c for _ in range(r)], field)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, rc: tuple[int, int]):
        return self.rows[rc[0]][rc[1]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConstMatrix) and self.field == other.field and self.rows == other.rows

    def __repr__(self) -> str:
        return f"ConstMatrix({self.rows}, {self.field.name})"

    def T(self) -> "ConstMatrix":
        return ConstMatrix([list(c) for c in zip(*self.rows)], self.field)

    def __matmul__(self, other: "ConstMatrix") -> "ConstMatrix":
        if self.shape[1] != other.shape[0]:
            raise InvalidInput(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return ConstMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows], self.field
        )

    def __add__(self, other: "ConstMatrix") -> "ConstMatrix":
        return ConstMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field
        )

    def __sub__(self, other: "ConstMatrix") -> "ConstMatrix":
        return ConstMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field
        )

    def scale(self, c) -> "ConstMatrix":
        return ConstMatrix([[a * c for a in r] for r in self.rows], self.field)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ConstMatrix":
        """0-based row and column index lists."""
        rows, cols = list(rows), list(cols)
        return ConstMatrix([[self.rows[a][b] for b in cols] for a in rows], self.field)

    def minor(self, rows: Iterable[int], cols: Iterable[int]):
        """Minor on 1-based index sets; the empty minor is 1."""
        rows, cols = list(rows), list(cols)
        if len(rows) != len(cols):
            raise InvalidInput("minor needs equally many rows and columns")
        if not rows:
            return self.field.one
        return self.submatrix([a - 1 for a in rows], [b - 1 for b in cols]).det()

    def det(self):
        n, c = self.shape
        if n != c:
            raise InvalidInput("determinant of a non-square matrix")
        F = self.field
        a = [list(r) for r in self.rows]
        if not F.p:
            a = [[Fraction(x) for x in r] for r in a]
        sign = 1
        for k in range(n):
            piv = next((r for r in range(k, n) if a[r][k] != 0), None)
            if piv is None:
                return F.zero
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            inv = F.inv(a[k][k])
            for r in range(k + 1, n):
                f = a[r][k]
                if f != 0:
                    f = F(f * inv)
                    a[r] = [F(x - f * y) for x, y in zip(a[r], a[k])]
        d = sign
        for k in range(n):
            d = F(d * a[k][k])
        return d

    def rank(self) -> int:
        F = self.field
        a = [list(r) for r in self.rows]
        rows, cols = self.shape
        rank = 0
        for k in range(cols):
            piv = next((r for r in range(rank, rows) if a[r][k] != 0), None)
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            inv = F.inv(a[rank][k])
            for r in range(rank + 1, rows):
                f = a[r][k]
                if f != 0:
                    f = F(f * inv)
                    a[r] = [F(x - f * y) for x, y in zip(a[r], a[rank])]
            rank += 1
        return rank

    def inverse(self) -> "ConstMatrix":
        n, c = self.shape
        if n != c:
            raise InvalidInput("inverse of a non-square matrix")
        F = self.field
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for k in range(n):
            piv = next((r for r in range(k, n) if a[r][k] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            a[k], a[piv] = a[piv], a[k]
            inv = F.inv(a[k][k])
            a[k] = [F(x * inv) for x in a[k]]
            for r in range(n):
                if r != k and a[r][k] != 0:
                    f = a[r][k]
                    a[r] = [F(x - f * y) for x, y in zip(a[r], a[k])]
        return ConstMatrix([r[n:] for r in a], F)

    def is_permutation(self) -> bool:
        n, c = self.shape
        return n == c and all(sorted(r) == [0] * (n - 1) + [1] for r in self.rows) and all(
            sorted(col) == [0] * (n - 1) + [1] for col in zip(*self.rows)
        )


def J_matrix(N: int, field: ExactField = QQ) -> ConstMatrix:
    """Block diagonal with ``m`` hyperbolic 2x2 blocks, plus a trailing 1 for odd ``N``."""
    rows = [[0] * N for _ in range(N)]
    for k in range(N // 2):
        rows[2 * k][2 * k + 1] = 1
        rows[2 * k + 1][2 * k] = 1
    if N % 2:
        rows[N - 1][N - 1] = 1
    return ConstMatrix(rows, field)


def H_matrix(N: int, field: ExactField = QQ) -> ConstMatrix:
    """Anti-diagonal unit matrix."""
    return ConstMatrix([[1 if a + b == N - 1 else 0 for b in range(N)] for a in range(N)], field)


def transition_permutation(N: int) -> list[int]:
    """``sigma(j) = 2j-1`` for ``j <= ceil(N/2)`` and ``2(N+1-j)`` otherwise (1-based)."""
    up = (N + 1) // 2
    return [2 * j - 1 if j <= up else 2 * (N + 1 - j) for j in range(1, N + 1)]


def C_matrix(N: int, field: ExactField = QQ) -> ConstMatrix:
    """Permutation matrix with ``C[sigma(j), j] = 1``, so that ``H = C^t J C``."""
    sigma = transition_permutation(N)
    rows = [[0] * N for _ in range(N)]
    for j, s in enumerate(sigma):
        rows[s - 1][j] = 1
    return ConstMatrix(rows, field)


class VarMatrix:
    """The generic ``N x N`` matrix ``X = (x_ab)``; ``x_ab`` is variable ``(a-1)N + (b-1)``.

    ``barred`` only affects variable names: barred labels for the J-form,
    plain integers for the H-form.
    """

    def __init__(self, N: int, field: ExactField = QQ, barred: bool = True):
        if N < 1:
            raise InvalidInput("N must be positive")
        self.N = N
        self.field = field
        self.barred = barred
        lab = (lambda c: label(c, N)) if barred else str
        names = [f"x[{lab(a)},{lab(b)}]" for a in range(1, N + 1) for b in range(1, N + 1)]
        self.ring = PolyRing(N * N, field, names)

    def index(self, a: int, b: int) -> int:
        return (a - 1) * self.N + (b - 1)

    def entry(self, a: int, b: int) -> ExactPoly:
        return self.ring.var(self.index(a, b))

    def matrix(self) -> list[list[ExactPoly]]:
        return [[self.entry(a, b) for b in range(1, self.N + 1)] for a in range(1, self.N + 1)]

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> ExactPoly:
        """Minor with the given (1-based, ordered as given) row and column lists."""
        rows, cols = list(rows), list(cols)
        if len(rows) != len(cols):
            raise InvalidInput("minor needs equally many rows and columns")
        if len(set(rows)) < len(rows) or len(set(cols)) < len(cols):
            return self.ring.zero()
        nv = self.N * self.N
        F = self.field
        terms = {}
        for perm in permutations(range(len(cols))):
            e = [0] * nv
            for r, k in zip(rows, perm):
                e[self.index(r, cols[k])] += 1
            terms[tuple(e)] = F(perm_sign(perm))
        return ExactPoly(self.ring, terms)

    def transpose_map(self) -> list[ExactPoly]:
        """Images of the variables under ``X -> X^t``."""
        return [self.entry(b, a) for a in range(1, self.N + 1) for b in range(1, self.N + 1)]


def minor(X: VarMatrix, rows: Sequence[int], cols: Sequence[int]) -> ExactPoly:
    return X.minor(rows, cols)


def bideterminant(B, X: VarMatrix) -> ExactPoly:
    """Product over columns of the minors ``[S^j : T^j](X)``.

    ``B`` is a :class:`~spinlm.tableaux.Bitableau` or a pair of column lists.
    """
    if hasattr(B, "left"):
        left, right = B.left.columns(), B.right.columns()
    else:
        left, right = B
    if len(left) != len(right):
        raise InvalidInput("bitableau tableaux must have the same shape")
    out = X.ring.one()
    for s, t in zip(left, right):
        if len(s) != len(t):
            raise InvalidInput("bitableau tableaux must have the same shape")
        out = out * X.minor(s, t)
    return out


def poly_matmul(A: Sequence[Sequence[ExactPoly]], B: Sequence[Sequence[ExactPoly]], ring: PolyRing) -> list[list[ExactPoly]]:
    if len(A[0]) != len(B):
        raise InvalidInput("incompatible matrix sizes")
    return [
        [poly_sum(ring, (A[i][k] * B[k][j] for k in range(len(B)) if A[i][k] and B[k][j])) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def const_to_poly(M: ConstMatrix, ring: PolyRing) -> list[list[ExactPoly]]:
    return [[ring.const(x) for x in r] for r in M.rows]


def poly_transpose(A: Sequence[Sequence[ExactPoly]]) -> list[list[ExactPoly]]:
    return [list(c) for c in zip(*A)]


def poly_det(M: Sequence[Sequence[ExactPoly]], ring: PolyRing) -> ExactPoly:
    """Determinant by first-row Laplace expansion with memoization on column sets."""
    n = len(M)
    if n == 0:
        return ring.one()
    memo: dict[tuple[int, ...], ExactPoly] = {}

    def rec(r: int, cols: tuple[int, ...]) -> ExactPoly:
        if r == n:
            return ring.one()
        if cols in memo:
            return memo[cols]
        acc = ring.zero()
        for pos, c in enumerate(cols):
            entry = M[r][c]
            if entry.is_zero():
                continue
            sub = rec(r + 1, cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(n)))


def poly_minor(M: Sequence[Sequence[ExactPoly]], rows: Sequence[int], cols: Sequence[int], ring: PolyRing) -> ExactPoly:
    """Minor of a polynomial matrix on 1-based row/column lists."""
    return poly_det([[M[a - 1][b - 1] for b in cols] for a in rows], ring)


def conjugate_variables(P: ExactPoly, C: ConstMatrix, X: VarMatrix | None = None) -> ExactPoly:
    """Replace each ``x_ab`` of ``P`` by the ``(a,b)`` entry of ``C^t X C``."""
    N = C.shape[0]
    if C.shape != (N, N) or P.ring.nvars != N * N:
        raise InvalidInput("C must be square of the size of the variable matrix")
    X = X if X is not None else VarMatrix(N, P.field)
    ring = P.ring
    CP = const_to_poly(ConstMatrix(C.rows, P.field), ring)
    Y = poly_matmul(poly_matmul(poly_transpose(CP), X.matrix(), ring), CP, ring)
    images = [Y[a][b] for a in range(N) for b in range(N)]
    return P.substitute(images, ring)

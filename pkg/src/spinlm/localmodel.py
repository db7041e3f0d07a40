"""Symbolic affine chart around the worst point of the spin local models.

Everything here is exact and symbolic.  The uniformizer is an extra
polynomial variable ``pi`` and the special fiber is the substitution
``pi -> 0``.  Subsets of ``[1, 2n]`` are 1-based sorted tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .errors import InvalidInput
from .indexcomb import complement, d_comparison, d_of, perp_subset, sign_sigma
from .linalg import Echelon
from .polyalg.fields import QQ, ExactField
from .polyalg.matrices import ConstMatrix, VarMatrix, poly_det
from .polyalg.poly import ExactPoly, PolyRing
from .rings import IdealSpec, build_ideal


@dataclass(frozen=True)
class ChartConfig:
    n: int
    i: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.i < 0 or 2 * self.i > self.n:
            raise InvalidInput(f"need n >= 1 and 0 <= 2i <= n, got n={self.n}, i={self.i}")

    @property
    def r(self) -> int:
        """Width ``n - 2i`` of the middle blocks."""
        return self.n - 2 * self.i


# small polynomial matrices with explicit shapes (blocks may be empty)


class PMat:
    def __init__(self, ring: PolyRing, nrows: int, ncols: int, data: list[list[ExactPoly]] | None = None):
        self.ring = ring
        self.nrows, self.ncols = nrows, ncols
        self.data = data if data is not None else [[ring.zero() for _ in range(ncols)] for _ in range(nrows)]

    @classmethod
    def const(cls, ring: PolyRing, M: ConstMatrix) -> "PMat":
        r, c = M.shape
        return cls(ring, r, c, [[ring.const(x) for x in row] for row in M.rows])

    @classmethod
    def eye(cls, ring: PolyRing, k: int, scale: ExactPoly | None = None) -> "PMat":
        out = cls(ring, k, k)
        for a in range(k):
            out.data[a][a] = scale if scale is not None else ring.one()
        return out

    @classmethod
    def antidiag(cls, ring: PolyRing, k: int) -> "PMat":
        out = cls(ring, k, k)
        for a in range(k):
            out.data[a][k - 1 - a] = ring.one()
        return out

    @classmethod
    def stack(cls, ring: PolyRing, blocks: Sequence[Sequence["PMat"]]) -> "PMat":
        """Block matrix from a grid of blocks with compatible shapes."""
        heights = [row[0].nrows for row in blocks]
        widths = [b.ncols for b in blocks[0]]
        for row, h in zip(blocks, heights):
            if [b.ncols for b in row] != widths or any(b.nrows != h for b in row):
                raise InvalidInput("incompatible block shapes")
        out = cls(ring, sum(heights), sum(widths))
        r0 = 0
        for row, h in zip(blocks, heights):
            c0 = 0
            for b, w in zip(row, widths):
                for a in range(h):
                    for c in range(w):
                        out.data[r0 + a][c0 + c] = b.data[a][c]
                c0 += w
            r0 += h
        return out

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "PMat":
        return PMat(self.ring, r1 - r0, c1 - c0, [row[c0:c1] for row in self.data[r0:r1]])

    @property
    def T(self) -> "PMat":
        return PMat(self.ring, self.ncols, self.nrows, [[self.data[a][b] for a in range(self.nrows)] for b in range(self.ncols)])

    def __matmul__(self, other: "PMat") -> "PMat":
        if self.ncols != other.nrows:
            raise InvalidInput("incompatible matrix sizes")
        out = PMat(self.ring, self.nrows, other.ncols)
        for a in range(self.nrows):
            for b in range(other.ncols):
                acc = self.ring.zero()
                for k in range(self.ncols):
                    x, y = self.data[a][k], other.data[k][b]
                    if x and y:
                        acc = acc + x * y
                out.data[a][b] = acc
        return out

    def _zip(self, other: "PMat", op: Callable) -> "PMat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise InvalidInput("incompatible matrix sizes")
        return PMat(self.ring, self.nrows, self.ncols,
                    [[op(x, y) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __add__(self, other: "PMat") -> "PMat":
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other: "PMat") -> "PMat":
        return self._zip(other, lambda x, y: x - y)

    def __neg__(self) -> "PMat":
        return PMat(self.ring, self.nrows, self.ncols, [[-x for x in r] for r in self.data])

    def times(self, p: ExactPoly) -> "PMat":
        return PMat(self.ring, self.nrows, self.ncols, [[x * p for x in r] for r in self.data])

    def substitute(self, images: Sequence[ExactPoly]) -> "PMat":
        return PMat(self.ring, self.nrows, self.ncols, [[x.substitute(images, self.ring) for x in r] for r in self.data])

    def entries(self) -> list[ExactPoly]:
        return [x for r in self.data for x in r]

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PMat) and (self.nrows, self.ncols) == (other.nrows, other.ncols)
                and all(x == y for x, y in zip(self.entries(), other.entries())))


# block system


class BlockSystem:
    """Chart variables: the ``n x n`` matrix ``N``, the blocks ``M`` (``i x n``), ``M'`` (``(n-i) x n``) and ``pi``.

    Row/column splits: ``N`` is ``(i, i, n-2i)`` on both sides, ``M = (M7 M4 M1)``
    and ``M' = ((M9 M6 M3), (M8 M5 M2))`` with columns ``(n-2i, i, i)`` and the
    rows of ``M'`` split ``(n-2i, i)``.
    """

    def __init__(self, cfg: ChartConfig, field: ExactField = QQ):
        self.cfg = cfg
        self.field = field
        n, i = cfg.n, cfg.i
        names = [f"N{a + 1}_{b + 1}" for a in range(n) for b in range(n)]
        names += [f"M{a + 1}_{b + 1}" for a in range(i) for b in range(n)]
        names += [f"Mp{a + 1}_{b + 1}" for a in range(n - i) for b in range(n)]
        names.append("pi")
        self.ring = PolyRing(len(names), field, names)
        R = self.ring
        self.n_vars = n * n
        self.pi_index = 2 * n * n
        self.pi = R.var(self.pi_index)
        self.N = PMat(R, n, n, [[R.var(a * n + b) for b in range(n)] for a in range(n)])
        off = n * n
        self.M = PMat(R, i, n, [[R.var(off + a * n + b) for b in range(n)] for a in range(i)])
        off += i * n
        self.Mp = PMat(R, n - i, n, [[R.var(off + a * n + b) for b in range(n)] for a in range(n - i)])

    # block access

    def n_block(self, k: int) -> PMat:
        i, n = self.cfg.i, self.cfg.n
        cuts = [0, i, 2 * i, n]
        a, b = divmod(k - 1, 3)
        return self.N.block(cuts[a], cuts[a + 1], cuts[b], cuts[b + 1])

    def m_block(self, k: int) -> PMat:
        i, r = self.cfg.i, self.cfg.r
        cols = {0: (0, r), 1: (r, r + i), 2: (r + i, r + 2 * i)}
        pos = {7: (None, 0), 4: (None, 1), 1: (None, 2),
               9: (0, 0), 6: (0, 1), 3: (0, 2), 8: (1, 0), 5: (1, 1), 2: (1, 2)}
        row, col = pos[k]
        c0, c1 = cols[col]
        if row is None:
            return self.M.block(0, i, c0, c1)
        r0, r1 = (0, r) if row == 0 else (r, r + i)
        return self.Mp.block(r0, r1, c0, c1)

    def blocks(self) -> dict[str, PMat]:
        out = {f"N{k}": self.n_block(k) for k in range(1, 10)}
        out.update({f"M{k}": self.m_block(k) for k in range(1, 10)})
        return out

    @property
    def X(self) -> PMat:
        """The ``2i x 2i`` matrix ``((N1, N2), (N4, N5))``, the top-left corner of ``N``."""
        return self.N.block(0, 2 * self.cfg.i, 0, 2 * self.cfg.i)

    # the three 2n x n matrices and the structure constants

    def H(self, k: int) -> PMat:
        return PMat.antidiag(self.ring, k)

    def I(self, k: int) -> PMat:
        return PMat.eye(self.ring, k)

    def Z(self, a: int, b: int) -> PMat:
        return PMat(self.ring, a, b)

    def f_matrix(self) -> PMat:
        """``(M; I_n; M')``."""
        n = self.cfg.n
        return PMat.stack(self.ring, [[self.M], [self.I(n)], [self.Mp]])

    def chart_matrix(self) -> PMat:
        """``(0 I_{n-i}; N; I_i 0)``, rows in the order of the lattice basis."""
        n, i = self.cfg.n, self.cfg.i
        top = PMat.stack(self.ring, [[self.Z(n - i, i), self.I(n - i)]])
        bottom = PMat.stack(self.ring, [[self.I(i), self.Z(i, n - i)]])
        return PMat.stack(self.ring, [[top], [self.N], [bottom]])

    def iota(self, which: int) -> PMat:
        n, i = self.cfg.n, self.cfg.i
        if which == 1:
            diag = [self.pi] * i + [self.ring.one()] * (2 * n - 2 * i) + [self.pi] * i
        else:
            diag = [self.ring.one()] * i + [self.pi] * (2 * n - 2 * i) + [self.ring.one()] * i
        out = PMat(self.ring, 2 * n, 2 * n)
        for a, x in enumerate(diag):
            out.data[a][a] = x
        return out


# span utilities


def _vectorize(polys: Iterable[ExactPoly], cols: dict) -> list[dict]:
    out = []
    for p in polys:
        v = {}
        for e, c in p.terms.items():
            v[cols.setdefault(e, len(cols))] = c
        out.append(v)
    return out


def same_span(A: Sequence[ExactPoly], B: Sequence[ExactPoly], field: ExactField) -> bool:
    """Whether two lists of polynomials span the same space of constants-combinations."""
    return span_contains(A, B, field) and span_contains(B, A, field)


def span_contains(A: Sequence[ExactPoly], B: Sequence[ExactPoly], field: ExactField) -> bool:
    """Whether every element of ``B`` is a constant linear combination of ``A``."""
    cols: dict = {}
    E = Echelon(field)
    E.extend(_vectorize(A, cols))
    return all(E.contains(v) for v in _vectorize(B, cols))


def _canonical(p: ExactPoly) -> tuple:
    """Key of ``p`` up to a nonzero scalar."""
    lead = p.leading_term()
    F = p.field
    inv = F.inv(lead[1])
    return tuple(sorted((e, F(c * inv)) for e, c in p.terms.items()))


# LM2


@dataclass
class BlockIdentity:
    name: str
    expression: PMat
    solved_for: str
    solution: PMat


@dataclass
class LM2Result:
    identities: list[BlockIdentity]
    substitution: list[ExactPoly]
    matches_expansion: bool
    vanishes_after_substitution: bool

    @property
    def ok(self) -> bool:
        return self.matches_expansion and self.vanishes_after_substitution


def _lm2_display(bs: BlockSystem) -> list[list[PMat]]:
    i, r = bs.cfg.i, bs.cfg.r
    B = bs.blocks()
    H = bs.H
    return [
        [B["M7"].T @ H(i) + H(r) @ B["N7"], B["M8"].T @ H(i) + H(r) @ B["N8"], H(r) @ B["N9"] + B["M9"].T @ H(r)],
        [B["M4"].T @ H(i) + H(i) @ B["N4"], B["M5"].T @ H(i) + H(i) @ B["N5"], H(i) @ B["N6"] + B["M6"].T @ H(r)],
        [B["M1"].T @ H(i) + H(i) @ B["N1"], B["M2"].T @ H(i) + H(i) @ B["N2"], H(i) @ B["N3"] + B["M3"].T @ H(r)],
    ]


_LM2_GRID = [[7, 8, 9], [4, 5, 6], [1, 2, 3]]


def lm2_substitution(bs: BlockSystem) -> list[ExactPoly]:
    """Images of all chart variables with ``M_k = -H_c N_k^t H_r`` (``N_k`` of size ``r x c``)."""
    R = bs.ring
    images = [R.var(k) for k in range(R.nvars)]
    n, i = bs.cfg.n, bs.cfg.i
    for k in range(1, 10):
        Nk = bs.n_block(k)
        sol = -(bs.H(Nk.ncols) @ Nk.T @ bs.H(Nk.nrows))
        Mk = bs.m_block(k)
        for a in range(Mk.nrows):
            for b in range(Mk.ncols):
                (e, _), = Mk.data[a][b].terms.items()
                images[e.index(1)] = sol.data[a][b]
    return images


def derive_lm2(cfg: ChartConfig, field: ExactField = QQ) -> LM2Result:
    """Expand ``(M; I; M')^t H_2n (chart matrix)`` and check the nine block identities and their solution."""
    bs = BlockSystem(cfg, field)
    n, i, r = cfg.n, cfg.i, cfg.r
    prod = bs.f_matrix().T @ bs.H(2 * n) @ bs.chart_matrix()
    rcuts, ccuts = [0, r, r + i, n], [0, i, 2 * i, n]
    display = _lm2_display(bs)
    matches = all(
        prod.block(rcuts[a], rcuts[a + 1], ccuts[b], ccuts[b + 1]) == display[a][b]
        for a in range(3) for b in range(3)
    )
    images = lm2_substitution(bs)
    vanishes = prod.substitute(images).is_zero()
    ids = []
    for a in range(3):
        for b in range(3):
            k = _LM2_GRID[a][b]
            ids.append(BlockIdentity(f"LM2[{a + 1},{b + 1}]", display[a][b], f"M{k}", bs.m_block(k).substitute(images)))
    return LM2Result(ids, images, matches, vanishes)


# LM3


def _a2(bs: BlockSystem) -> PMat:
    B, i, r = bs.blocks(), bs.cfg.i, bs.cfg.r
    return PMat.stack(bs.ring, [
        [B["M8"], B["M5"], B["M2"]],
        [B["M7"], B["M4"], B["M1"]],
        [PMat.eye(bs.ring, r, bs.pi), bs.Z(r, i), bs.Z(r, i)],
    ])


def _a1(bs: BlockSystem) -> PMat:
    B, i, r = bs.blocks(), bs.cfg.i, bs.cfg.r
    return PMat.stack(bs.ring, [
        [bs.Z(r, i), bs.Z(r, i), bs.I(r)],
        [B["N1"], B["N2"], B["N3"]],
        [B["N4"], B["N5"], B["N6"]],
    ])


def _lm3_lists(bs: BlockSystem) -> tuple[list[PMat], list[PMat]]:
    """The two printed lists of block equations (left-hand sides)."""
    B, i = bs.blocks(), bs.cfg.i
    p = bs.pi
    pI = PMat.eye(bs.ring, i, p)
    first = [
        B["N1"] @ B["M8"] + B["N2"] @ B["M7"] + B["N3"].times(p),
        B["N1"] @ B["M5"] + B["N2"] @ B["M4"] - pI,
        B["N1"] @ B["M2"] + B["N2"] @ B["M1"],
        B["N4"] @ B["M8"] + B["N5"] @ B["M7"] + B["N6"].times(p),
        B["N4"] @ B["M2"] + B["N5"] @ B["M1"] - pI,
        B["N7"] @ B["M8"] + B["N8"] @ B["M7"] + B["N9"].times(p) - B["M9"].times(p),
        B["N7"] @ B["M5"] + B["N8"] @ B["M4"] - B["M6"].times(p),
        B["N7"] @ B["M2"] + B["N8"] @ B["M1"] - B["M3"].times(p),
    ]
    second = [
        B["M4"] @ B["N1"] + B["M1"] @ B["N4"],
        B["M4"] @ B["N2"] + B["M1"] @ B["N5"] - pI,
        B["M7"] + B["M4"] @ B["N3"] + B["M1"] @ B["N6"],
        B["M6"] @ B["N1"] + B["M3"] @ B["N4"] - B["N7"],
        B["M9"] + B["M6"] @ B["N3"] + B["M3"] @ B["N6"] - B["N9"],
        B["M5"] @ B["N1"] + B["M2"] @ B["N4"] - pI,
        B["M5"] @ B["N2"] + B["M2"] @ B["N5"],
        B["M8"] + B["M5"] @ B["N3"] + B["M2"] @ B["N6"],
    ]
    return first, second


def _reduced_display(bs: BlockSystem) -> list[PMat]:
    """The nine printed equations after LM2 (left-hand sides)."""
    B, i, r = bs.blocks(), bs.cfg.i, bs.cfg.r
    H = bs.H
    pH = H(i).times(bs.pi)
    N = {k: B[f"N{k}"] for k in range(1, 10)}
    return [
        N[1] @ H(i) @ N[5].T + N[2] @ H(i) @ N[4].T + pH,
        N[1] @ H(i) @ N[2].T + N[2] @ H(i) @ N[1].T,
        N[4] @ H(i) @ N[2].T + N[5] @ H(i) @ N[1].T + pH,
        N[4].T @ H(i) @ N[1] + N[1].T @ H(i) @ N[4],
        N[4].T @ H(i) @ N[2] + N[1].T @ H(i) @ N[5] + pH,
        N[5].T @ H(i) @ N[2] + N[2].T @ H(i) @ N[5],
        N[6].T @ H(i) @ N[1] + N[3].T @ H(i) @ N[4] + H(r) @ N[7],
        N[3].T @ H(i) @ N[5] + N[6].T @ H(i) @ N[2] + H(r) @ N[8],
        N[9].T @ H(r) + H(r) @ N[9] + N[6].T @ H(i) @ N[3] + N[3].T @ H(i) @ N[6],
    ]


def _x_equations(bs: BlockSystem) -> list[PMat]:
    i = bs.cfg.i
    X, H = bs.X, bs.H(2 * i)
    pH = H.times(bs.pi)
    return [X @ H @ X.T + pH, X.T @ H @ X + pH]


def _entries(mats: Iterable[PMat]) -> list[ExactPoly]:
    return [x for M in mats for x in M.entries() if not x.is_zero()]


def _entry_keys(mats: Iterable[PMat]) -> set:
    return {_canonical(x) for x in _entries(mats)}


def ideal_contains(gens: Sequence[ExactPoly], targets: Sequence[ExactPoly], field: ExactField,
                   variables: Sequence[int], max_multiplier_degree: int = 2) -> bool:
    """Certificate that each target lies in the ideal of ``gens``.

    Searches for combinations ``sum c * m * g`` with ``m`` a monomial of degree at
    most ``max_multiplier_degree`` in ``variables``; a ``True`` answer is exact,
    a ``False`` answer only means no certificate of that size exists.
    """
    if not targets:
        return True
    ring = gens[0].ring if gens else targets[0].ring
    mults: list[tuple[int, ...]] = [()]
    for d in range(1, max_multiplier_degree + 1):
        mults += list(combinations_with_replacement(variables, d))
    polys = []
    for m in mults:
        e = [0] * ring.nvars
        for v in m:
            e[v] += 1
        polys += [g.mul_monomial(e) for g in gens]
    return span_contains(polys, targets, field)


@dataclass
class LM3Result:
    printed_in_expansion: bool
    omitted_equations: list[ExactPoly]
    reduced_equivalent: bool
    printed_six_match_x: bool
    n7_n8_determined: bool
    n7_n8_solution: dict[str, PMat] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.printed_in_expansion and self.reduced_equivalent and self.n7_n8_determined


def _block_vars(bs: BlockSystem, names: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for k in names:
        for x in bs.n_block(k).entries():
            out |= x.variables()
    return out


def derive_lm3(cfg: ChartConfig, field: ExactField = QQ) -> LM3Result:
    """Expand both inclusion conditions, substitute the LM2 solution and compare with the reduced system.

    ``reduced_equivalent`` certifies that the substituted system and
    ``{XH X^t + pi H, X^t H X + pi H, eq7, eq8, eq9}`` generate the same ideal
    (one direction by constant combinations, the other with multipliers of
    degree at most 2).
    """
    bs = BlockSystem(cfg, field)
    F, C = bs.f_matrix(), bs.chart_matrix()
    D2 = bs.iota(2) @ F - C @ _a2(bs)
    D1 = bs.iota(1) @ C - F @ _a1(bs)
    first, second = _lm3_lists(bs)
    computed = _entry_keys([D1, D2])
    printed = _entry_keys(first + second)
    printed_ok = printed <= computed
    omitted = [x for x in _entries([D2, D1]) if _canonical(x) not in printed]
    images = lm2_substitution(bs)
    full = [x.substitute(images, bs.ring) for x in _entries([D1, D2])]
    red = _reduced_display(bs)
    target = _entries(_x_equations(bs) + red[6:])
    vs = list(range(bs.n_vars)) + [bs.pi_index]
    equivalent = span_contains(full, target, field) and ideal_contains(target, full, field, vs, 2)
    six_match = same_span(_entries(red[:6]), _entries(_x_equations(bs)), field)
    # eq7 and eq8 are H N7 (resp. H N8) plus terms in X, N3, N6 only
    allowed = _block_vars(bs, (1, 2, 3, 4, 5, 6))
    r = cfg.r
    determined = True
    sol = {}
    for eq, k in ((red[6], 7), (red[7], 8)):
        rest = eq - bs.H(r) @ bs.n_block(k)
        used = set().union(*(x.variables() for x in rest.entries())) if rest.entries() else set()
        determined &= used <= allowed
        sol[f"N{k}"] = -(bs.H(r) @ rest)
    return LM3Result(printed_ok, omitted, equivalent, six_match, determined, sol)


# LM4: minors of the chart matrix


def _check_subset(S: Iterable[int], n: int) -> tuple[int, ...]:
    S = tuple(sorted(S))
    if len(S) != n or len(set(S)) != n or (S and (S[0] < 1 or S[-1] > 2 * n)):
        raise InvalidInput(f"expected an {n}-subset of [1, {2 * n}], got {S}")
    return S


def a_S_minor(cfg: ChartConfig, S: Iterable[int], bs: BlockSystem | None = None) -> ExactPoly:
    """Minor of the ``2n x n`` chart matrix on the rows ``S``."""
    bs = bs or BlockSystem(cfg)
    S = _check_subset(S, cfg.n)
    C = bs.chart_matrix()
    return poly_det([C.data[a - 1] for a in S], bs.ring)


def x_minor(bs: BlockSystem, rows: Sequence[int], cols: Sequence[int]) -> ExactPoly:
    """``[rows:cols](X)`` with 1-based indices into ``[1, 2i]``."""
    X = bs.X
    return poly_det([[X.data[a - 1][b - 1] for b in cols] for a in rows], bs.ring)


def wedge_subset(cfg: ChartConfig, rows: Sequence[int], cols: Sequence[int]) -> tuple[int, ...]:
    """Rows ``S`` of the chart matrix whose minor is ``+-[rows:cols](X)`` for an ``(i+1)``-minor.

    ``S`` meets ``[i+1, 2n-i]`` in ``(rows + n - i)`` together with ``[i+1, n-i]``; the
    identity rows cover the columns of ``X`` outside ``cols``.
    """
    n, i = cfg.n, cfg.i
    S = set(range(i + 1, n - i + 1)) | {a + n - i for a in rows}
    for c in complement(cols, 2 * i):
        S.add(2 * n - i + c if c <= i else c - i)
    return tuple(sorted(S))


@dataclass
class WedgeRecord:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    S: tuple[int, ...]
    sign: int
    d_less: bool


def verify_prop_wedge(cfg: ChartConfig, bs: BlockSystem | None = None) -> tuple[bool, list[WedgeRecord]]:
    """Match every ``(i+1)``-minor of ``X`` with ``+-a_S`` for some ``S`` with ``d_S < d_{S^perp}``."""
    if cfg.i < 1:
        raise InvalidInput("needs i >= 1")
    bs = bs or BlockSystem(cfg)
    n, i = cfg.n, cfg.i
    records = []
    ok = True
    for R in combinations(range(1, 2 * i + 1), i + 1):
        for Cc in combinations(range(1, 2 * i + 1), i + 1):
            S = wedge_subset(cfg, R, Cc)
            D, a = x_minor(bs, R, Cc), a_S_minor(cfg, S, bs)
            sign = 1 if a == D else (-1 if a == -D else 0)
            less = d_comparison(S, n, i) == "<"
            ok &= sign != 0 and less and not D.is_zero()
            records.append(WedgeRecord(R, Cc, S, sign, less))
    return ok, records


def sign_subsets(cfg: ChartConfig) -> list[tuple[int, ...]]:
    """All ``S`` containing ``[i+1, n-i]`` with ``#(S cap [n-i+1, n+i]) = i`` and ``d_S = d_{S^perp}``."""
    n, i = cfg.n, cfg.i
    core = set(range(i + 1, n - i + 1))
    out = []
    for S in combinations(range(1, 2 * n + 1), n):
        if not core <= set(S):
            continue
        if sum(1 for x in S if n - i < x <= n + i) != i:
            continue
        if d_of(S, n, i) == d_of(perp_subset(S, n), n, i):
            out.append(S)
    return out


@dataclass
class SignRecord:
    S: tuple[int, ...]
    U: tuple[int, ...]
    U2: tuple[int, ...]
    exponent: int
    formula_ok: bool
    bookkeeping_ok: bool
    perp_ok: bool
    relation_ok: bool


def sign_data(cfg: ChartConfig, S: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """``(U, U', e)`` with ``a_S = (-1)^e [U:U'](X)`` as predicted by the Laplace expansion."""
    n, i = cfg.n, cfg.i
    S1 = [x for x in S if x <= i]
    S2 = [x for x in S if n - i < x <= n + i]
    S3 = [x for x in S if x > 2 * n - i]
    r1, r3 = len(S1), len(S3)
    U = tuple(x - (n - i) for x in S2)
    T1 = complement([x - (2 * n - i) for x in S3], i)
    T3 = tuple(sorted(set(range(i + 1, 2 * i + 1)) - {x + i for x in S1}))
    U2 = tuple(sorted(T1 + T3))
    e = (n - i) * r1 + r1 * (r1 + 1) // 2 + r3 * (r3 + 1) // 2 + sum(S1) + sum(S3)
    return U, U2, e


def verify_prop_sign(cfg: ChartConfig, bs: BlockSystem | None = None) -> tuple[bool, list[SignRecord]]:
    """Certify the Laplace sign formula for ``a_S`` and its translation into the ``X``-relations.

    For each admissible ``S`` and each sign ``eps``:
    ``a_S - eps sgn(sigma_S) a_{S^perp} = +-([U:U'] - eps sgn(sigma_U) sgn(sigma_U') [U^perp:U'^perp])``.
    """
    if cfg.i < 1:
        raise InvalidInput("needs i >= 1")
    bs = bs or BlockSystem(cfg)
    n, i = cfg.n, cfg.i
    records = []
    ok = True
    for S in sign_subsets(cfg):
        U, U2, e = sign_data(cfg, S)
        aS = a_S_minor(cfg, S, bs)
        minor = x_minor(bs, U, U2)
        formula = aS == minor.scale((-1) ** e)
        r1 = sum(1 for x in S if x <= i)
        book = sum(S) == n * (n + 1) // 2 + 2 * n * (i - r1) + sum(U) - sum(U2)
        P = perp_subset(S, n)
        Up, U2p, ep = sign_data(cfg, P)
        S1 = [x for x in S if x <= i] + [x for x in S if x > 2 * n - i]
        P1 = [x for x in P if x <= i] + [x for x in P if x > 2 * n - i]
        perp = (Up == perp_subset(U, i) and U2p == perp_subset(U2, i) and sum(S1) == sum(P1)
                and (e - ep) % 2 == 0 and a_S_minor(cfg, P, bs) == x_minor(bs, Up, U2p).scale((-1) ** ep))
        rel = True
        for eps in (1, -1):
            lhs = aS - a_S_minor(cfg, P, bs).scale(eps * sign_sigma(S, n))
            c = eps * sign_sigma(U, i) * sign_sigma(U2, i)
            rhs = minor - x_minor(bs, Up, U2p).scale(c)
            rel &= lhs == rhs or lhs == -rhs
        ok &= formula and book and perp and rel
        records.append(SignRecord(S, U, U2, e, formula, book, perp, rel))
    return ok, records


def ceil_parity_guard(max_n: int = 12) -> bool:
    """``ceil(n/2) = n(n+1)/2 (mod 2)`` for ``1 <= n <= max_n``."""
    return all((-(-n // 2) - n * (n + 1) // 2) % 2 == 0 for n in range(1, max_n + 1))


# W_pm lattice basis


LATTICE_BASES = ("dual", "listed", "chart")


def lattice_valuations(cfg: ChartConfig, basis: str = "dual") -> list[int]:
    """Exponents ``v_j`` with ``g_j = pi^{v_j} e_j`` for a diagonal basis of ``Lambda_{-i}``.

    ``dual`` is the H-dual of ``pi^{-1}e_1..pi^{-1}e_i, e_{i+1}..e_{2n}``;
    ``listed`` is ``e_1..e_i, pi e_{i+1}..pi e_{2n}``; ``chart`` is
    ``e_1..e_{n-i}, pi e_{n-i+1}..pi e_{2n}``.
    """
    n, i = cfg.n, cfg.i
    if basis == "dual":
        u = [-1 if j <= i else 0 for j in range(1, 2 * n + 1)]
        return [-u[2 * n - j] for j in range(1, 2 * n + 1)]
    if basis == "listed":
        return [0 if j <= i else 1 for j in range(1, 2 * n + 1)]
    if basis == "chart":
        return [0 if j <= n - i else 1 for j in range(1, 2 * n + 1)]
    raise InvalidInput(f"basis must be one of {LATTICE_BASES}")


def is_self_dual_pair(cfg: ChartConfig, basis: str) -> bool:
    """Whether ``basis`` spans the H-dual of ``Lambda_i`` (valuations ``-u_{2n+1-j}``)."""
    return lattice_valuations(cfg, basis) == lattice_valuations(cfg, "dual")


def prec_perp(S: Sequence[int], n: int, sign: int) -> bool:
    """``S`` precedes ``S^perp``: lex smaller if different, else ``sgn(sigma_S) = sign``."""
    P = perp_subset(S, n)
    if tuple(S) != P:
        return tuple(S) < P
    return sign_sigma(S, n) == sign


@dataclass
class WedgeEntry:
    S: tuple[int, ...]
    d: int
    d_perp: int
    sgn: int
    in_B0: bool
    h_exponents: tuple[int, int]


@dataclass
class LatticeWedgeBasis:
    n: int
    i: int
    sign: int
    basis: str
    entries: list[WedgeEntry]
    checks: dict[str, bool]

    @property
    def B0(self) -> list[tuple[int, ...]]:
        return [e.S for e in self.entries if e.in_B0]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _f_vector(S: tuple[int, ...], n: int, sign: int) -> dict:
    v: dict = {}
    P = perp_subset(S, n)
    v[S] = v.get(S, 0) + 1
    v[P] = v.get(P, 0) + sign * sign_sigma(S, n)
    return {k: c for k, c in v.items() if c}


def wedge_lattice_basis(cfg: ChartConfig, sign: int, basis: str = "dual") -> LatticeWedgeBasis:
    """``d``-values, ``B_0`` and the generators ``h_S`` of ``W(Lambda_{-i})_pm``.

    ``h_exponents`` are the powers of ``pi`` on ``(g_S, g_{S^perp})`` in
    ``h_S``.  The checks record the pairing rule, ``f_{S^perp} = +-sgn f_S``,
    the dimension of ``W_pm`` and whether ``h_S`` is a primitive lattice
    vector for the chosen diagonal basis.
    """
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    n, i = cfg.n, cfg.i
    vals = lattice_valuations(cfg, basis)
    entries = []
    pairing = f_perp = primitive = True
    consistent = True
    for S in combinations(range(1, 2 * n + 1), n):
        P = perp_subset(S, n)
        d, dp = d_of(S, n, i), d_of(P, n, i)
        top = max(d, dp)
        exps = (top - d, top - dp)
        inb = prec_perp(S, n, sign)
        entries.append(WedgeEntry(S, d, dp, sign_sigma(S, n), inb, exps))
        if S != P:
            pairing &= inb != prec_perp(P, n, sign)
        else:
            pairing &= inb == (sign_sigma(S, n) == sign)
        fs = _f_vector(S, n, sign)
        fp = _f_vector(P, n, sign)
        f_perp &= fp == {k: sign * sign_sigma(S, n) * c for k, c in fs.items()}
        vS, vP = sum(vals[x - 1] for x in S), sum(vals[x - 1] for x in P)
        consistent &= (vS, vP) == (d, dp)
        if inb:
            # h_S = pi^top f_S in g-coordinates
            ex = [top - vS] + ([top - vP] if P != S else [])
            primitive &= min(ex) >= 0 and 0 in ex
    rows = [_f_vector(e.S, n, sign) for e in entries if e.in_B0]
    cols: dict = {}
    vecs = [{cols.setdefault(k, len(cols)): c for k, c in v.items()} for v in rows]
    E = Echelon(QQ)
    E.extend(vecs)
    total = len(entries)
    checks = {
        "pairing": pairing,
        "f_perp": f_perp,
        "dimension": E.rank == len(rows) == total // 2,
        "valuations_match_d": consistent,
        "h_primitive": primitive,
    }
    return LatticeWedgeBasis(n, i, sign, basis, entries, checks)


# presentation of the special fiber


@dataclass
class ChartPresentation:
    ideal: IdealSpec
    free_vars: int
    free_vars_formula: int
    match: bool
    only_x_variables: bool

    @property
    def ok(self) -> bool:
        return self.match and self.only_x_variables and self.free_vars == self.free_vars_formula


def free_variable_count(cfg: ChartConfig, field: ExactField = QQ) -> int:
    """Entries of ``N3, N6`` plus the dimension of the solution space of the linear part of eq9 in ``N9``."""
    bs = BlockSystem(cfg, field)
    r = cfg.r
    eq9 = _reduced_display(bs)[8]
    n9 = sorted(_block_vars(bs, (9,)))
    pos = {v: k for k, v in enumerate(n9)}
    E = Echelon(field)
    for x in eq9.entries():
        row = {}
        for e, c in x.terms.items():
            if sum(e) == 1 and e.index(1) in pos:
                row[pos[e.index(1)]] = c
        if row:
            E.add(row)
    return len(_block_vars(bs, (3, 6))) + r * r - E.rank


def build_chart_presentation(cfg: ChartConfig, variant: str = "plus", field: ExactField = QQ) -> ChartPresentation:
    """Special-fiber equations on ``X`` read off from the chart, as an H-form ideal of size ``2i``.

    Generators: ``XH X^t`` and ``X^t H X`` (``pi = 0``), the ``a_S`` with
    ``d_S < d_{S^perp}`` from the wedge matching, and for the spin variants the
    relations ``a_S -+ sgn(sigma_S) a_{S^perp}`` with ``d_S = d_{S^perp}``.  The
    minors of size ``i+1`` are included for the naive variant as well, to
    compare with the naive ring of size ``2i``.
    """
    if variant not in ("naive", "plus", "minus"):
        raise InvalidInput("variant must be naive, plus or minus")
    if cfg.i < 1:
        raise InvalidInput("needs i >= 1")
    bs = BlockSystem(cfg, field)
    n, i = cfg.n, cfg.i
    gens: list[ExactPoly] = []
    labels: list[str] = []
    for name, M in zip(("XHXt", "XtHX"), _x_equations(bs)):
        for a in range(M.nrows):
            for b in range(a, M.ncols):
                gens.append(M.data[a][b])
                labels.append(f"{name}[{a + 1},{b + 1}]")
    _, wrec = verify_prop_wedge(cfg, bs)
    for w in wrec:
        gens.append(a_S_minor(cfg, w.S, bs))
        labels.append(f"a{w.S}")
    if variant != "naive":
        eps = 1 if variant == "plus" else -1
        for S in sign_subsets(cfg):
            P = perp_subset(S, n)
            gens.append(a_S_minor(cfg, S, bs) - a_S_minor(cfg, P, bs).scale(eps * sign_sigma(S, n)))
            labels.append(f"a{S}-a{P}")
    X = VarMatrix(2 * i, field, barred=False)
    R = X.ring
    xvars = set()
    images = [R.zero()] * bs.ring.nvars
    for a in range(2 * i):
        for b in range(2 * i):
            images[a * n + b] = X.entry(a + 1, b + 1)
            xvars.add(a * n + b)
    only_x = True
    out_g, out_l = [], []
    for g, lab in zip(gens, labels):
        special = g.substitute([bs.ring.zero() if k == bs.pi_index else bs.ring.var(k) for k in range(bs.ring.nvars)], bs.ring)
        only_x &= special.variables() <= xvars
        img = special.substitute(images, R)
        if not img.is_zero():
            out_g.append(img)
            out_l.append(lab)
    ideal = IdealSpec(2 * i, "H", variant, field, X, out_g, out_l)
    ref = build_ideal(2 * i, "H", variant, field)
    match = {_canonical(g) for g in out_g} == {_canonical(g) for g in ref.generators}
    formula = (n - 2 * i) * (n + 2 * i - 1) // 2
    return ChartPresentation(ideal, free_variable_count(cfg, field), formula, match, only_x)


def rank_stratum_of_point(cfg: ChartConfig, point: Sequence[Sequence], field: ExactField = QQ) -> int:
    """Rank of a numeric ``X`` on the special fiber (``XH X^t = X^t H X = 0``)."""
    k = 2 * cfg.i
    if len(point) != k or any(len(r) != k for r in point):
        raise InvalidInput(f"point must be a {k}x{k} matrix")
    if k == 0:
        return 0
    A = ConstMatrix([[field(x) for x in r] for r in point], field)
    H = ConstMatrix([[1 if a + b == k - 1 else 0 for b in range(k)] for a in range(k)], field)
    zero = ConstMatrix.zeros(k, k, field)
    if A @ H @ A.T() != zero or A.T() @ H @ A != zero:
        raise InvalidInput("point does not satisfy X H X^t = X^t H X = 0")
    return A.rank()


def chart_report(cfg: ChartConfig, variant: str = "plus", field: ExactField = QQ) -> dict:
    """Summary flags for one chart."""
    lm2 = derive_lm2(cfg, field)
    lm3 = derive_lm3(cfg, field)
    out = {"n": cfg.n, "i": cfg.i, "lm2_ok": lm2.ok, "lm3_ok": lm3.ok,
           "lm3_printed_six_match_x": lm3.printed_six_match_x,
           "lm3_omitted_equations": len(lm3.omitted_equations)}
    if cfg.i >= 1:
        out["wedge_ok"] = verify_prop_wedge(cfg)[0]
        out["sign_ok"] = verify_prop_sign(cfg)[0]
        pres = build_chart_presentation(cfg, variant, field)
        out["presentation_match"] = pres.match and pres.only_x_variables
        out["free_vars"] = pres.free_vars
        out["free_vars_formula"] = pres.free_vars_formula
    else:
        out.update(wedge_ok=True, sign_ok=True, presentation_match=True,
                   free_vars=free_variable_count(cfg, field), free_vars_formula=cfg.n * (cfg.n - 1) // 2)
    return out

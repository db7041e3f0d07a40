"""Determinantal and spin ideals, their graded slices and standard-basis checks.

Every generator is homogeneous for the total degree and for the torus weight
of the orthogonal group acting on rows and on columns.  Each degree slice is
therefore split into weight blocks before elimination, so the ranks are
computed on much smaller matrices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from .config import Budget
from .errors import ContractViolation, InvalidInput, Unsupported
from .indexcomb import base_index, is_barred, perp_barred, perp_subset, sign_sigma, sign_tau
from .linalg import Echelon, solve_in_span
from .polyalg.fields import QQ, ExactField
from .polyalg.matrices import (
    ConstMatrix,
    H_matrix,
    J_matrix,
    VarMatrix,
    bideterminant,
    const_to_poly,
    poly_matmul,
    poly_transpose,
)
from .polyalg.poly import ExactPoly, monomials_of_degree
from .tableaux import (
    Bitableau,
    Tableau,
    as_partition,
    enumerate_on_standard,
    is_so_standard,
    partition_lt,
    partitions_of,
    partition_total_key,
    sign_tau_tableau,
    tableau_perp,
)

FORMS = ("J", "H")
VARIANTS = ("naive", "plus", "minus")


# ideals


@dataclass
class IdealSpec:
    N: int
    form: str
    variant: str
    field: ExactField
    X: VarMatrix
    generators: list[ExactPoly]
    labels: list[str] = dc_field(default_factory=list)

    @property
    def ring(self):
        return self.X.ring

    @property
    def m(self) -> int:
        return self.N // 2


def _perp_and_sign(form: str, N: int):
    if form == "J":
        return (lambda U: perp_barred(U, N)), (lambda U: sign_tau(U, N))
    return (lambda U: perp_subset(U, N // 2)), (lambda U: sign_sigma(U, N // 2))


def spin_generator(X: VarMatrix, form: str, U: Sequence[int], U2: Sequence[int], relation_sign: int) -> ExactPoly:
    """``[U:U'] + relation_sign * s(U) s(U') [U^perp : U'^perp]`` for the given form."""
    perp, sgn = _perp_and_sign(form, X.N)
    c = relation_sign * sgn(U) * sgn(U2)
    return X.minor(U, U2) + X.minor(perp(U), perp(U2)).scale(c)


def build_ideal(N: int, form: str = "J", variant: str = "naive", field: ExactField = QQ) -> IdealSpec:
    """Generators of the naive ideal ``(XPX^t, X^tPX, minors of size m+1)`` plus the spin relations.

    ``P`` is ``J_N`` for the J-form and ``H_N`` for the H-form.  The ``plus``
    variant adds the relations with relative sign ``-1`` and ``minus`` those
    with sign ``+1``.
    """
    if form not in FORMS:
        raise InvalidInput(f"form must be one of {FORMS}")
    if variant not in VARIANTS:
        raise InvalidInput(f"variant must be one of {VARIANTS}")
    if field.p == 2:
        raise InvalidInput("characteristic 2 is not supported")
    if variant != "naive" and N % 2:
        raise Unsupported("spin variants need even N")
    X = VarMatrix(N, field, barred=(form == "J"))
    ring = X.ring
    P = const_to_poly(J_matrix(N, field) if form == "J" else H_matrix(N, field), ring)
    Xm = X.matrix()
    XPXt = poly_matmul(poly_matmul(Xm, P, ring), poly_transpose(Xm), ring)
    XtPX = poly_matmul(poly_matmul(poly_transpose(Xm), P, ring), Xm, ring)
    gens: list[ExactPoly] = []
    labels: list[str] = []

    def push(p: ExactPoly, lab: str) -> None:
        if not p.is_zero():
            gens.append(p)
            labels.append(lab)

    for a in range(N):
        for b in range(a, N):
            push(XPXt[a][b], f"XPXt[{a + 1},{b + 1}]")
    for a in range(N):
        for b in range(a, N):
            push(XtPX[a][b], f"XtPX[{a + 1},{b + 1}]")
    m = N // 2
    idx = range(1, N + 1)
    for R in combinations(idx, m + 1):
        for C in combinations(idx, m + 1):
            push(X.minor(R, C), f"minor{R}x{C}")
    if variant != "naive":
        rel = -1 if variant == "plus" else 1
        for U in combinations(idx, m):
            for U2 in combinations(idx, m):
                push(spin_generator(X, form, U, U2, rel), f"spin{U}x{U2}")
    return IdealSpec(N, form, variant, field, X, gens, labels)


# torus weights


def variable_weights(N: int, form: str) -> list[tuple[int, ...]]:
    """Weight in ``Z^m x Z^m`` (row torus, column torus) of each variable ``x_ab``."""
    m = N // 2

    def w(a: int) -> list[int]:
        vec = [0] * m
        if form == "J":
            k = base_index(a, N)
            if k:
                vec[k - 1] = 1 if is_barred(a, N) else -1
        else:
            if a <= m:
                vec[a - 1] = 1
            elif a > N - m:
                vec[N - a] = -1
        return vec

    return [tuple(w(a) + w(b)) for a in range(1, N + 1) for b in range(1, N + 1)]


def _weight(e: Sequence[int], vw: list[tuple[int, ...]], size: int) -> tuple[int, ...]:
    acc = [0] * size
    for k, x in enumerate(e):
        if x:
            for j, y in enumerate(vw[k]):
                if y:
                    acc[j] += x * y
    return tuple(acc)


# graded slices


class Slice:
    """Degree-``d`` piece of an ideal: weight blocks, each with its own echelon basis."""

    def __init__(self, ring: "GradedRing", d: int):
        self.d = d
        self.ring = ring
        monos = monomials_of_degree(ring.nvars, d)
        self.n_monomials = len(monos)
        self.col: dict[tuple, tuple[tuple, int]] = {}
        self.block_monomials: dict[tuple, list[tuple]] = {}
        for e in monos:
            w = ring.weight(e)
            lst = self.block_monomials.setdefault(w, [])
            self.col[e] = (w, len(lst))
            lst.append(e)
        self.blocks: dict[tuple, Echelon] = {w: Echelon(ring.field) for w in self.block_monomials}
        for g in ring.ideal.generators:
            dg = g.degree()
            if dg > d:
                continue
            for mono in monomials_of_degree(ring.nvars, d - dg):
                for w, row in self.vectors(g.mul_monomial(mono)).items():
                    self.blocks[w].add(row)

    @property
    def rank(self) -> int:
        return sum(E.rank for E in self.blocks.values())

    @property
    def quotient_dim(self) -> int:
        return self.n_monomials - self.rank

    def vectors(self, P: ExactPoly) -> dict[tuple, dict[int, object]]:
        """Split a degree-``d`` polynomial into weight blocks as sparse column vectors."""
        out: dict[tuple, dict[int, object]] = {}
        for e, c in P.terms.items():
            try:
                w, k = self.col[e]
            except KeyError:
                raise InvalidInput(f"polynomial is not homogeneous of degree {self.d}") from None
            out.setdefault(w, {})[k] = c
        return out

    def contains(self, P: ExactPoly) -> bool:
        return all(self.blocks[w].contains(v) for w, v in self.vectors(P).items())

    def images_rank(self, polys: Sequence[ExactPoly]) -> int:
        """Rank of the images of ``polys`` in the quotient slice."""
        split = [self.vectors(P) for P in polys]
        if any(len(v) > 1 for v in split):
            return self.images_rank_per_poly(polys)
        extra: dict[tuple, Echelon] = {}
        total = 0
        for parts in split:
            for w, v in parts.items():
                r = self.blocks[w].reduce(v, full=True)
                if r:
                    E = extra.setdefault(w, Echelon(self.ring.field))
                    total += E.add(r)
        return total

    def images_rank_per_poly(self, polys: Sequence[ExactPoly]) -> int:
        """Like :meth:`images_rank` but treats each polynomial as one vector across blocks."""
        stacked = []
        for P in polys:
            vec = {}
            for w, v in self.vectors(P).items():
                r = self.blocks[w].project(v)
                for k, x in r.items():
                    vec[(w, k)] = x
            stacked.append(vec)
        keys = sorted({k for v in stacked for k in v})
        pos = {k: i for i, k in enumerate(keys)}
        E = Echelon(self.ring.field)
        return E.extend({pos[k]: x for k, x in v.items()} for v in stacked)

    def projection(self, P: ExactPoly) -> dict[tuple, object]:
        out = {}
        for w, v in self.vectors(P).items():
            for k, x in self.blocks[w].project(v).items():
                out[(w, k)] = x
        return out

    def standard_monomials(self) -> list[tuple]:
        """Monomials on non-pivot columns; their classes form a basis of the quotient slice."""
        out = []
        for w, monos in self.block_monomials.items():
            piv = self.blocks[w].pivots
            out.extend(e for k, e in enumerate(monos) if k not in piv)
        return out


class GradedRing:
    """Quotient of the polynomial ring by an :class:`IdealSpec`, sliced by degree on demand."""

    def __init__(self, ideal: IdealSpec, budget: Budget | None = None):
        self.ideal = ideal
        self.field = ideal.field
        self.nvars = ideal.ring.nvars
        self.budget = budget or Budget.default()
        self._slices: dict[int, Slice] = {}
        vw = variable_weights(ideal.N, ideal.form)
        size = 2 * (ideal.N // 2)
        self._vw, self._wsize = vw, size
        if not all(self._is_weight_homogeneous(g) for g in ideal.generators):
            self._vw, self._wsize = [()] * self.nvars, 0

    def _is_weight_homogeneous(self, P: ExactPoly) -> bool:
        return len({_weight(e, self._vw, self._wsize) for e in P.terms}) <= 1

    def weight(self, e: Sequence[int]) -> tuple[int, ...]:
        return _weight(e, self._vw, self._wsize)

    def slice(self, d: int) -> Slice:
        if d not in self._slices:
            self.budget.check_ring(self.ideal.N, d, self.nvars)
            self._slices[d] = Slice(self, d)
        return self._slices[d]

    def contains(self, P: ExactPoly) -> bool:
        return all(self.slice(d).contains(part) for d, part in P.homogeneous_parts().items())


@dataclass
class GradedPiece:
    degree: int
    n_monomials: int
    rank: int
    quotient_dim: int


def graded_quotient_dims(ideal: IdealSpec, max_degree: int, budget: Budget | None = None) -> list[GradedPiece]:
    R = GradedRing(ideal, budget)
    out = []
    for d in range(max_degree + 1):
        s = R.slice(d)
        out.append(GradedPiece(d, s.n_monomials, s.rank, s.quotient_dim))
    return out


def membership(P: ExactPoly, ideal: IdealSpec | GradedRing, budget: Budget | None = None) -> bool:
    R = ideal if isinstance(ideal, GradedRing) else GradedRing(ideal, budget)
    return R.contains(P)


# standard bideterminants


def _orbit_representative(S: Tableau, T: Tableau, N: int, variant: str) -> bool:
    """Whether ``[S:T]`` is kept when the pair is identified with its perp pair."""
    Sp, Tp = tableau_perp(S, N, check=False), tableau_perp(T, N, check=False)
    if S != Sp:
        return S.column(1) < Sp.column(1)
    if T != Tp:
        return T.column(1) < Tp.column(1)
    wanted = 1 if variant == "plus" else -1
    return sign_tau_tableau(S, N) * sign_tau_tableau(T, N) == wanted


def standard_bitableaux(N: int, d: int, variant: str = "naive", rule: str = "orbit") -> list[Bitableau]:
    """Bitableaux indexing a basis candidate in degree ``d``.

    Shapes have first column at most ``N/2`` and both tableaux are
    O(N)-standard.  For the spin variants and first column exactly ``N/2``,
    ``rule`` decides which pairs are kept:

    ``"orbit"``  one pair from each orbit of ``[S:T] -> [S^perp:T^perp]``;
                 a fixed pair is kept iff the product of its two
                 tau-signs is ``+1`` (plus) or ``-1`` (minus);
    ``"both"``   both tableaux SO(N)-standard.
    """
    if rule not in ("orbit", "both"):
        raise InvalidInput(f"unknown rule {rule!r}")
    m = N // 2
    out: list[Bitableau] = []
    shapes = sorted(partitions_of(d, max_parts=m), key=partition_total_key) if d else [()]
    for lam in shapes:
        tabs = enumerate_on_standard(lam, N) if lam else [Tableau(())]
        if variant == "naive" or len(lam) < m:
            out.extend(Bitableau(S, T) for S in tabs for T in tabs)
        elif rule == "both":
            good = [T for T in tabs if is_so_standard(T, N)]
            out.extend(Bitableau(S, T) for S in good for T in good)
        else:
            out.extend(Bitableau(S, T) for S in tabs for T in tabs if _orbit_representative(S, T, N, variant))
    return out


@dataclass
class BasisVerdict:
    degree: int
    standard_count: int
    quotient_dim: int
    independent: bool
    spanning: bool
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.standard_count == self.quotient_dim and self.independent


def verify_standard_basis(
    N: int,
    variant: str = "naive",
    field: ExactField = QQ,
    max_degree: int = 3,
    form: str = "J",
    rule: str = "orbit",
    budget: Budget | None = None,
    ring: GradedRing | None = None,
) -> list[BasisVerdict]:
    R = ring or GradedRing(build_ideal(N, form, variant, field), budget)
    ideal = R.ideal
    if ideal.form != "J":
        raise Unsupported("standard bideterminants are indexed by the barred alphabet (J-form)")
    out = []
    for d in range(max_degree + 1):
        t0 = time.perf_counter()
        s = R.slice(d)
        bits = standard_bitableaux(N, d, variant, rule)
        polys = [bideterminant(B, ideal.X) for B in bits]
        r = s.images_rank(polys)
        count = len(bits)
        independent = r == count
        out.append(
            BasisVerdict(
                d, count, s.quotient_dim, independent, r == s.quotient_dim, (time.perf_counter() - t0) * 1e3
            )
        )
    return out


def normal_form(
    P: ExactPoly, ring: GradedRing, rule: str = "orbit"
) -> dict[int, list[tuple[Bitableau, object]]]:
    """Coordinates of the class of ``P`` in the standard bideterminant basis, degree by degree."""
    ideal = ring.ideal
    out: dict[int, list[tuple[Bitableau, object]]] = {}
    for d, part in P.homogeneous_parts().items():
        s = ring.slice(d)
        bits = standard_bitableaux(ideal.N, d, ideal.variant, rule)
        if len(bits) != s.quotient_dim:
            raise ContractViolation(f"standard basis not verified in degree {d}")
        polys = [bideterminant(B, ideal.X) for B in bits]
        vecs = [s.projection(q) for q in polys]
        keys = sorted({k for v in vecs for k in v} | set(s.projection(part)))
        pos = {k: i for i, k in enumerate(keys)}
        target = {pos[k]: x for k, x in s.projection(part).items()}
        coeffs = solve_in_span(target, [{pos[k]: x for k, x in v.items()} for v in vecs], ring.field)
        if coeffs is None:
            raise ContractViolation(f"standard bideterminants do not span degree {d}")
        out[d] = [(B, c) for B, c in zip(bits, coeffs) if c != 0]
    return out


def shapes_respect_order(coords: Iterable[tuple[Bitableau, object]], lam: Sequence[int]) -> bool:
    """Every shape appearing is ``lam`` or strictly below it."""
    lam = as_partition(lam)
    return all(B.shape == lam or partition_lt(B.shape, lam) for B, _ in coords)


# L-sum


def l_sum(X: VarMatrix, S0_cols: Sequence[Sequence[int]], T: Tableau, C: Sequence[int], a: int) -> ExactPoly:
    """Sum over increasing ``i_1 < ... < i_a`` outside ``C`` of ``[rows (i_k, bar i_k) over S0 : T]``."""
    from .indexcomb import bar

    N = X.N
    f0 = list(S0_cols[0]) if len(S0_cols) > 0 else []
    g0 = list(S0_cols[1]) if len(S0_cols) > 1 else []
    T1, T2 = T.column(1), T.column(2)
    if len(T1) != a + len(f0) or len(T2) != a + len(g0):
        raise InvalidInput("S0 and T do not fit together")
    pool = [i for i in range(1, N + 1) if i not in set(C)]
    total = X.ring.zero()
    for A in combinations(pool, a):
        col1 = list(A) + f0
        col2 = [bar(i, N) for i in A] + g0
        total = total + X.minor(col1, T1) * X.minor(col2, T2)
    return total


def verify_L_lemma(
    N: int,
    lam: Sequence[int],
    C: Sequence[int],
    a: int,
    S0_cols: Sequence[Sequence[int]],
    T: Tableau,
    field: ExactField = QQ,
    ring: GradedRing | None = None,
) -> bool:
    """Membership of the L-sum in the naive ideal, for a two-column shape ``lam``."""
    lam = as_partition(lam)
    m = N // 2
    if not lam or lam[0] != 2:
        raise InvalidInput("the shape must have exactly two columns")
    l1 = len(lam)
    l2 = sum(1 for x in lam if x >= 2)
    c = len(set(C))
    if not (c < a <= l2 <= l1 <= m):
        raise InvalidInput(f"need |C| < a <= l2' <= l1' <= m, got c={c}, a={a}, l1'={l1}, l2'={l2}, m={m}")
    if T.shape != lam:
        raise InvalidInput("T must have shape lam")
    R = ring or GradedRing(build_ideal(N, "J", "naive", field))
    return R.contains(l_sum(R.ideal.X, S0_cols, T, C, a))


# group actions


def cayley_element(N: int, field: ExactField, rng, tries: int = 100) -> ConstMatrix:
    """``(I - A)(I + A)^{-1}`` with ``A = J K`` and ``K`` skew; orthogonal for ``J`` with determinant 1."""
    J = J_matrix(N, field)
    I = ConstMatrix.identity(N, field)
    for _ in range(tries):
        K = [[0] * N for _ in range(N)]
        for a in range(N):
            for b in range(a + 1, N):
                x = field.random_element(rng, 3)
                K[a][b], K[b][a] = x, field(-x)
        A = J @ ConstMatrix(K, field)
        P = I + A
        if P.det() == 0:
            continue
        return (I - A) @ P.inverse()
    raise ContractViolation("could not find an invertible Cayley denominator")


def is_special_orthogonal(g: ConstMatrix, N: int) -> bool:
    J = J_matrix(N, g.field)
    return g.T() @ J @ g == J and g.det() == 1


def act_left(P: ExactPoly, g: ConstMatrix, X: VarMatrix) -> ExactPoly:
    """Substitute ``X -> gX``."""
    ring = X.ring
    Y = poly_matmul(const_to_poly(g, ring), X.matrix(), ring)
    return P.substitute([Y[a][b] for a in range(X.N) for b in range(X.N)], ring)


def act_right(P: ExactPoly, g: ConstMatrix, X: VarMatrix) -> ExactPoly:
    """Substitute ``X -> Xg``."""
    ring = X.ring
    Y = poly_matmul(X.matrix(), const_to_poly(g, ring), ring)
    return P.substitute([Y[a][b] for a in range(X.N) for b in range(X.N)], ring)


def verify_so_invariance(
    N: int, variant: str, g: ConstMatrix, field: ExactField = QQ, max_degree: int | None = None,
    ring: GradedRing | None = None,
) -> bool:
    if variant == "naive":
        raise InvalidInput("the invariance check concerns the spin relations")
    if not is_special_orthogonal(g, N):
        raise InvalidInput("g must satisfy g^t J g = J and det g = 1")
    R = ring or GradedRing(build_ideal(N, "J", variant, field))
    X = R.ideal.X
    m = N // 2
    if max_degree is not None and m > max_degree:
        return True
    rel = -1 if variant == "plus" else 1
    idx = range(1, N + 1)
    for U in combinations(idx, m):
        for U2 in combinations(idx, m):
            f = spin_generator(X, "J", U, U2, rel)
            if f.is_zero():
                continue
            if not (R.contains(act_left(f, g, X)) and R.contains(act_right(f, g, X))):
                return False
    return True


def nzd_f_ranks(field: ExactField = QQ, max_degree: int = 3, budget: Budget | None = None) -> list[dict]:
    """For ``N = 4`` plus: rank of multiplication by ``[{2bar,2}:{2bar,2}]`` from degree ``d`` to ``d+2``."""
    R = GradedRing(build_ideal(4, "J", "plus", field), budget)
    X = R.ideal.X
    f = X.minor([3, 4], [3, 4])
    rows = []
    for d in range(max_degree + 1):
        t0 = time.perf_counter()
        src = R.slice(d)
        tgt = R.slice(d + 2)
        basis = src.standard_monomials()
        images = [f.mul_monomial(e) for e in basis]
        r = tgt.images_rank(images)
        rows.append(
            {"degree": d, "source_dim": len(basis), "image_rank": r, "injective": r == len(basis),
             "elapsed_ms": (time.perf_counter() - t0) * 1e3}
        )
    return rows


def verify_nzd_f(field: ExactField = QQ, max_degree: int = 3, budget: Budget | None = None) -> bool:
    return all(r["injective"] for r in nzd_f_ranks(field, max_degree, budget))


def compare_char_p(
    N: int, variant: str, primes: Sequence[int], max_degree: int, form: str = "J", budget: Budget | None = None
) -> dict:
    from .polyalg.fields import prime_field

    if any(p == 2 for p in primes):
        raise InvalidInput("p = 2 is not supported")
    table = {"Q": [g.quotient_dim for g in graded_quotient_dims(build_ideal(N, form, variant, QQ), max_degree, budget)]}
    for p in primes:
        F = prime_field(p)
        table[F.name] = [g.quotient_dim for g in graded_quotient_dims(build_ideal(N, form, variant, F), max_degree, budget)]
    differing = [name for name, dims in table.items() if dims != table["Q"]]
    return {"N": N, "variant": variant, "form": form, "dims": table, "differing": differing}


def convert_J_to_H(P: ExactPoly, N: int) -> ExactPoly:
    """Image of a J-form polynomial under ``X -> C Y C^t`` with ``C`` the transition permutation.

    Since ``H = C^t J C``, this sends ``XJX^t`` to ``C (Y H Y^t) C^t``.
    """
    from .polyalg.matrices import C_matrix, conjugate_variables

    return conjugate_variables(P, C_matrix(N, P.field).T())

"""Young symmetrizers on tensor space, the contraction subspace and the modules ``O^lambda``.

A tensor is a dict from words (tuples of alphabet codes) to coefficients.
A lambda-tableau is identified with the word read off down its columns,
left to right, which is the order in which ``t^lambda`` is numbered.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial, prod
from typing import Iterable, Sequence

from .config import Budget
from .errors import CharacteristicError, InvalidInput
from .indexcomb import bar, perm_sign
from .linalg import Echelon
from .polyalg.fields import QQ, ExactField
from .polyalg.matrices import VarMatrix, bideterminant
from .tableaux import (
    Bitableau,
    Tableau,
    as_partition,
    canonical_tableau,
    conjugate,
    enumerate_on_standard,
)

TensorVector = dict


@dataclass(frozen=True)
class YoungData:
    lam: tuple[int, ...]
    t: tuple[tuple[int, ...], ...]
    row_group: tuple[tuple[int, ...], ...]
    col_group: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def row_order(self) -> int:
        return len(self.row_group)


def numbering(lam: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """``t^lambda``: 1..l filled down the columns, left to right (1-based entries)."""
    lam = as_partition(lam)
    conj = conjugate(lam)
    grid = [[0] * length for length in lam]
    k = 1
    for c, height in enumerate(conj):
        for r in range(height):
            grid[r][c] = k
            k += 1
    return tuple(tuple(r) for r in grid)


def _group(blocks: Sequence[Sequence[int]], l: int) -> list[tuple[int, ...]]:
    """All permutations of ``range(l)`` (0-based one-line form) preserving each block."""
    perms = [tuple(range(l))]
    for block in blocks:
        if len(block) < 2:
            continue
        new = []
        for base in perms:
            for image in permutations(block):
                p = list(base)
                for src, dst in zip(block, image):
                    p[src] = dst
                new.append(tuple(p))
        perms = new
    return perms


def young_data(lam: Sequence[int]) -> YoungData:
    lam = as_partition(lam)
    t = numbering(lam)
    l = sum(lam)
    rows = [[x - 1 for x in r] for r in t]
    cols = [[r[c] - 1 for r in t if len(r) > c] for c in range(lam[0] if lam else 0)]
    R = tuple(_group(rows, l))
    C = tuple((p, perm_sign(p)) for p in _group(cols, l))
    return YoungData(lam, t, R, C)


def act(perm: Sequence[int], word: Sequence[int]) -> tuple[int, ...]:
    """``sigma . w_{i_1..i_l} = w_{i_{sigma^-1(1)} .. i_{sigma^-1(l)}}`` with 0-based ``perm``."""
    out = [0] * len(word)
    for k, x in enumerate(word):
        out[perm[k]] = x
    return tuple(out)


def tableau_word(T: Tableau) -> tuple[int, ...]:
    return tuple(x for col in T.columns() for x in col)


def word_tableau(word: Sequence[int], lam: Sequence[int]) -> Tableau:
    conj = conjugate(lam)
    cols, k = [], 0
    for h in conj:
        cols.append(tuple(word[k : k + h]))
        k += h
    return Tableau.from_columns(cols)


def _check_field(field: ExactField, l: int) -> None:
    if field.p and field.p <= l:
        raise CharacteristicError(f"characteristic {field.p} divides the order of the symmetric group on {l} letters")


def young_apply(
    lam: Sequence[int], T: Tableau | Sequence[int], field: ExactField = QQ, order: str = "row_first",
    budget: Budget | None = None,
) -> TensorVector:
    """``Y^lambda`` applied to the basis tensor of ``T``.

    ``order="row_first"`` applies the row permutation before the signed
    column permutation; ``order="column_first"`` composes the other way,
    which is the literal left action of the product ``rho sigma``.
    """
    lam = as_partition(lam)
    l = sum(lam)
    (budget or Budget.default()).check_tensor(l)
    _check_field(field, l)
    word = tableau_word(T) if isinstance(T, Tableau) else tuple(T)
    if len(word) != l:
        raise InvalidInput("tableau does not match the shape")
    Y = young_data(lam)
    acc: dict[tuple[int, ...], int] = {}
    if order == "row_first":
        inner = {}
        for rho in Y.row_group:
            w = act(rho, word)
            inner[w] = inner.get(w, 0) + 1
        for w, c in inner.items():
            for sigma, s in Y.col_group:
                v = act(sigma, w)
                acc[v] = acc.get(v, 0) + s * c
    elif order == "column_first":
        inner = {}
        for sigma, s in Y.col_group:
            w = act(sigma, word)
            inner[w] = inner.get(w, 0) + s
        for w, c in inner.items():
            if c == 0:
                continue
            for rho in Y.row_group:
                v = act(rho, w)
                acc[v] = acc.get(v, 0) + c
    else:
        raise InvalidInput(f"unknown order {order!r}")
    return {w: v for w, c in acc.items() if (v := field(c)) != 0}


def wedge(vectors: Sequence[int], field: ExactField = QQ) -> TensorVector:
    """``w_{v_1} ^ ... ^ w_{v_d}`` embedded as the signed sum of permuted tensors."""
    out: dict = {}
    for p in permutations(range(len(vectors))):
        w = tuple(vectors[k] for k in p)
        out[w] = field(out.get(w, 0) + perm_sign(p))
    return {w: c for w, c in out.items() if c != 0}


def tensor_product(a: TensorVector, b: TensorVector, field: ExactField = QQ) -> TensorVector:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            w = u + v
            out[w] = field(out.get(w, 0) + x * y)
    return {w: c for w, c in out.items() if c != 0}


def canonical_image(lam: Sequence[int], field: ExactField = QQ) -> TensorVector:
    """``m_1``: tensor product over the columns of ``w_{1bar} ^ ... ^ w_{h bar}``."""
    out: TensorVector = {(): 1}
    for h in conjugate(lam):
        out = tensor_product(out, wedge([2 * j - 1 for j in range(1, h + 1)], field), field)
    return out


def check_canonical_identity(lam: Sequence[int], field: ExactField = QQ, order: str = "row_first") -> bool:
    """``Y^lambda T^lambda == |R^lambda| m_1``."""
    lam = as_partition(lam)
    lhs = young_apply(lam, canonical_tableau(lam), field, order)
    r = prod(factorial(x) for x in lam)
    rhs = {w: field(r * c) for w, c in canonical_image(lam, field).items()}
    return lhs == {w: c for w, c in rhs.items() if c != 0}


def _column_strict_words(lam: Sequence[int], N: int) -> Iterable[tuple[int, ...]]:
    conj = conjugate(lam)
    for cols in product(*(combinations(range(1, N + 1), h) for h in conj)):
        yield tuple(x for c in cols for x in c)


def _row_sorted_words(lam: Sequence[int], N: int) -> Iterable[tuple[int, ...]]:
    t = numbering(lam)
    l = sum(lam)
    for rows in product(*(combinations_with_replacement(range(1, N + 1), len(r)) for r in t)):
        w = [0] * l
        for r, vals in zip(t, rows):
            for pos, x in zip(r, vals):
                w[pos - 1] = x
        yield tuple(w)


def _all_words(lam: Sequence[int], N: int) -> Iterable[tuple[int, ...]]:
    return product(range(1, N + 1), repeat=sum(lam))


def _word_index(l: int, N: int):
    def idx(w: Sequence[int]) -> int:
        k = 0
        for x in w:
            k = k * N + (x - 1)
        return k

    return idx


def m_lambda_vectors(lam: Sequence[int], N: int, field: ExactField = QQ, restrict: bool = True, order: str = "row_first") -> list[TensorVector]:
    lam = as_partition(lam)
    if not restrict:
        words = _all_words(lam, N)
    elif order == "column_first":
        words = _column_strict_words(lam, N)
    else:
        words = _row_sorted_words(lam, N)
    out = []
    for w in words:
        v = young_apply(lam, w, field, order)
        if v:
            out.append(v)
    return out


def m_lambda_dim(lam: Sequence[int], N: int, field: ExactField = QQ, restrict: bool = True, order: str = "row_first") -> int:
    """Dimension of the span of all ``Y^lambda T``.

    With ``restrict`` a smaller generating set is used.  When the column
    permutation acts last, ``Y^lambda`` absorbs row permutations of ``T``, so
    row-sorted ``T`` suffice; when it acts first, permuting a column of ``T``
    only changes a sign, so column-strict ``T`` suffice.
    """
    lam = as_partition(lam)
    idx = _word_index(sum(lam), N)
    E = Echelon(field)
    E.extend({idx(w): c for w, c in v.items()} for v in m_lambda_vectors(lam, N, field, restrict, order))
    return E.rank


def contraction_vectors(l: int, N: int, field: ExactField = QQ) -> list[TensorVector]:
    """Spanning set of the contraction subspace in ``E^{(x) l}``: all slot pairs ``p<q``, all fillings."""
    if l < 2:
        return []
    out = []
    for p, q in combinations(range(l), 2):
        for rest in product(range(1, N + 1), repeat=l - 2):
            vec: dict = {}
            for i in range(1, N + 1):
                w = list(rest)
                w.insert(p, i)
                w.insert(q, bar(i, N))
                w = tuple(w)
                vec[w] = field(vec.get(w, 0) + 1)
            out.append({w: c for w, c in vec.items() if c != 0})
    return out


def contraction_subspace(l: int, N: int, field: ExactField = QQ) -> tuple[list[TensorVector], int]:
    vecs = contraction_vectors(l, N, field)
    idx = _word_index(l, N)
    E = Echelon(field)
    E.extend({idx(w): c for w, c in v.items()} for v in vecs)
    return vecs, E.rank


def o_lambda_dim(lam: Sequence[int], N: int, field: ExactField = QQ, order: str = "row_first", budget: Budget | None = None) -> int:
    """``dim M^lambda - dim (M^lambda cap U) = dim (M + U) - dim U``."""
    lam = as_partition(lam)
    conj = conjugate(lam)
    if (conj[0] if conj else 0) + (conj[1] if len(conj) > 1 else 0) > N:
        raise InvalidInput("shape violates the two-column bound")
    if field.p:
        raise CharacteristicError("O^lambda dimensions are computed in characteristic 0")
    l = sum(lam)
    (budget or Budget.default()).check_tensor(l)
    idx = _word_index(l, N)
    EU = Echelon(field)
    EU.extend({idx(w): c for w, c in v.items()} for v in contraction_vectors(l, N, field))
    dim_u = EU.rank
    EU.extend({idx(w): c for w, c in v.items()} for v in m_lambda_vectors(lam, N, field, True, order))
    return EU.rank - dim_u


def repn_row(lam: Sequence[int], N: int, order: str = "row_first") -> dict:
    lam = as_partition(lam)
    dim_m = m_lambda_dim(lam, N, QQ, True, order)
    dim_o = o_lambda_dim(lam, N, QQ, order)
    count = len(enumerate_on_standard(lam, N))
    return {"N": N, "lambda": lam, "dim_M": dim_m, "dim_O": dim_o, "count_ON_standard": count, "match": dim_o == count}


def x1_point(N: int) -> list:
    """Values of the variables at ``X_1``: 1 on the diagonal entries ``(jbar, jbar)``, 0 elsewhere."""
    vals = [0] * (N * N)
    for j in range(1, N // 2 + 1):
        c = 2 * j - 1
        vals[(c - 1) * N + (c - 1)] = 1
    return vals


def verify_evaluation_map(lam: Sequence[int], N: int, field: ExactField = QQ) -> bool:
    """``[T^lambda : T^lambda](X_1) = 1`` and the contraction coefficients lie in the naive ideal."""
    from .rings import GradedRing, build_ideal

    lam = as_partition(lam)
    if len(lam) > N // 2:
        raise InvalidInput("needs first column at most N/2")
    X = VarMatrix(N, field)
    T = canonical_tableau(lam)
    value = bideterminant(Bitableau(T, T), X).evaluate(x1_point(N)) if lam else 1
    if value != 1:
        return False
    R = GradedRing(build_ideal(N, "J", "naive", field))
    for j in range(1, N + 1):
        for k in range(1, N + 1):
            coeff = X.ring.zero()
            for i in range(1, N + 1):
                coeff = coeff + X.entry(j, i) * X.entry(k, bar(i, N))
            if not R.contains(coeff):
                return False
    return True

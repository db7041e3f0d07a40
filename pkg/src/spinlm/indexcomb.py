"""Barred index sets, subset involutions and the permutation signs built on them.

Elements of the ordered alphabet ``1bar < 1 < 2bar < 2 < ... < mbar < m (< 0)``
are stored as integer codes: ``ibar -> 2i-1``, ``i -> 2i`` and, for odd ``N``,
``0 -> N``.  With this encoding the alphabet order is the integer order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInput, Unsupported

BAR = "̄"


def half(N: int) -> int:
    return N // 2


def index_set(N: int) -> list[int]:
    """All codes of the alphabet for size ``N``, in increasing order."""
    if N < 0:
        raise InvalidInput(f"N must be non-negative, got {N}")
    return list(range(1, N + 1))


def code_of(i: int, barred: bool, N: int) -> int:
    """Code of ``ibar`` (barred) or ``i``; ``i = 0`` is only valid for odd ``N``."""
    if i == 0:
        if N % 2 == 0 or barred:
            raise InvalidInput("index 0 exists only for odd N and has no bar")
        return N
    if not 1 <= i <= half(N):
        raise InvalidInput(f"index {i} out of range for N={N}")
    return 2 * i - 1 if barred else 2 * i


def bar(code: int, N: int) -> int:
    if not 1 <= code <= N:
        raise InvalidInput(f"code {code} out of range for N={N}")
    if N % 2 == 1 and code == N:
        return code
    return code + 1 if code % 2 == 1 else code - 1


def base_index(code: int, N: int) -> int:
    """The unbarred integer behind a code (``ibar`` and ``i`` both give ``i``)."""
    if N % 2 == 1 and code == N:
        return 0
    return (code + 1) // 2


def is_barred(code: int, N: int) -> bool:
    return not (N % 2 == 1 and code == N) and code % 2 == 1


def label(code: int, N: int) -> str:
    i = base_index(code, N)
    return f"{i}{BAR}" if is_barred(code, N) else str(i)


def parse_label(text: str, N: int) -> int:
    """Inverse of :func:`label`; also accepts a trailing ``'`` or ``b`` as the bar."""
    t = text.strip()
    barred = False
    for mark in (BAR, "'", "b"):
        if t.endswith(mark):
            barred, t = True, t[: -len(mark)]
            break
    try:
        i = int(t)
    except ValueError:
        raise InvalidInput(f"cannot parse barred index {text!r}") from None
    return code_of(i, barred, N)


@dataclass(frozen=True, order=True)
class BarredIndex:
    value: int
    N: int

    def __post_init__(self) -> None:
        if not 1 <= self.value <= self.N:
            raise InvalidInput(f"code {self.value} out of range for N={self.N}")

    def bar(self) -> "BarredIndex":
        return BarredIndex(bar(self.value, self.N), self.N)

    def __str__(self) -> str:
        return label(self.value, self.N)


def perm_sign(seq: Sequence[int]) -> int:
    """Parity of the permutation sorting ``seq`` (distinct entries), by inversion count."""
    inv = 0
    n = len(seq)
    for a in range(n):
        x = seq[a]
        for b in range(a + 1, n):
            if seq[b] < x:
                inv += 1
    return -1 if inv % 2 else 1


def _check_subset(S: Iterable[int], ambient: int, size: int | None) -> tuple[int, ...]:
    T = tuple(sorted(S))
    if len(set(T)) != len(T):
        raise InvalidInput(f"subset {T} has repeated elements")
    if T and (T[0] < 1 or T[-1] > ambient):
        raise InvalidInput(f"subset {T} not contained in [1,{ambient}]")
    if size is not None and len(T) != size:
        raise InvalidInput(f"subset {T} must have {size} elements")
    return T


# subsets of [1, 2n]


def star(S: Iterable[int], n: int) -> tuple[int, ...]:
    return tuple(sorted(2 * n + 1 - s for s in S))


def perp_subset(S: Iterable[int], n: int) -> tuple[int, ...]:
    """``[1,2n]`` minus ``{2n+1-s : s in S}``."""
    T = _check_subset(S, 2 * n, n)
    excluded = set(star(T, n))
    return tuple(j for j in range(1, 2 * n + 1) if j not in excluded)


def sigma_perm(S: Iterable[int], n: int) -> tuple[int, ...]:
    """One-line form of the permutation sending ``[1,n]`` onto ``S`` and the rest onto the complement, both increasingly."""
    T = _check_subset(S, 2 * n, n)
    inside = set(T)
    return T + tuple(j for j in range(1, 2 * n + 1) if j not in inside)


def sign_sigma(S: Iterable[int], n: int) -> int:
    return perm_sign(sigma_perm(S, n))


def d_of(S: Iterable[int], n: int, i: int) -> int:
    """Number of elements of ``S`` in the top window ``[2n-i+1, 2n]``."""
    if not 0 <= i <= n:
        raise InvalidInput(f"need 0 <= i <= n, got i={i}, n={n}")
    T = _check_subset(S, 2 * n, None)
    return sum(1 for s in T if s >= 2 * n - i + 1)


def d_comparison(S: Iterable[int], n: int, i: int) -> str:
    """``'<'``, ``'='`` or ``'>'`` comparing ``d_S`` with ``d`` of the perp."""
    T = _check_subset(S, 2 * n, n)
    a, b = d_of(T, n, i), d_of(perp_subset(T, n), n, i)
    return "<" if a < b else ("=" if a == b else ">")


# subsets of the barred alphabet


def bar_set(U: Iterable[int], N: int) -> tuple[int, ...]:
    return tuple(sorted(bar(u, N) for u in U))


def perp_barred(U: Iterable[int], N: int) -> tuple[int, ...]:
    """Complement of the barred image of ``U``."""
    T = _check_subset(U, N, None)
    excluded = set(bar_set(T, N))
    return tuple(j for j in range(1, N + 1) if j not in excluded)


def sign_tau(U: Iterable[int], N: int) -> int:
    """Parity of sorting the sequence ``U`` followed by the bars of the perp of ``U``."""
    if N % 2:
        raise Unsupported("sign_tau is defined only for even N")
    T = _check_subset(U, N, N // 2)
    tail = [bar(k, N) for k in perp_barred(T, N)]
    return perm_sign(list(T) + tail)


def complement(U: Iterable[int], ambient: int) -> tuple[int, ...]:
    inside = set(U)
    return tuple(j for j in range(1, ambient + 1) if j not in inside)

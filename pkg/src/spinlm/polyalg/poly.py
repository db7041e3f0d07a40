"""Sparse multivariate polynomials over an exact field.

A polynomial is a dict from exponent tuples to nonzero normalized field
elements.  Terms are listed in graded reverse lexicographic order.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..errors import InvalidInput
from .fields import ExactField


def grevlex_key(e: Sequence[int]) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """Polynomial ring ``F[x_0, ..., x_{n-1}]`` with optional variable names."""

    def __init__(self, nvars: int, field: ExactField, names: Sequence[str] | None = None):
        if names is not None and len(names) != nvars:
            raise InvalidInput("names must match nvars")
        self.nvars = nvars
        self.field = field
        self.names = list(names) if names is not None else [f"x{k}" for k in range(nvars)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRing) and other.nvars == self.nvars and other.field == self.field

    def __hash__(self) -> int:
        return hash((self.nvars, self.field))

    def zero(self) -> "ExactPoly":
        return ExactPoly(self, {})

    def one(self) -> "ExactPoly":
        return self.const(1)

    def const(self, c) -> "ExactPoly":
        c = self.field(c)
        return ExactPoly(self, {(0,) * self.nvars: c} if c != 0 else {})

    def var(self, k: int) -> "ExactPoly":
        e = [0] * self.nvars
        e[k] = 1
        return ExactPoly(self, {tuple(e): 1})

    def monomial(self, e: Sequence[int], c=1) -> "ExactPoly":
        c = self.field(c)
        return ExactPoly(self, {tuple(e): c} if c != 0 else {})

    def from_terms(self, terms: Mapping[tuple, object]) -> "ExactPoly":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c != 0:
                out[tuple(e)] = c
        return ExactPoly(self, out)


class ExactPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        # terms must already be normalized with no zero coefficients
        self.ring = ring
        self.terms = terms

    @property
    def field(self) -> ExactField:
        return self.ring.field

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "ExactPoly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: ExactPoly(self.ring, t) for d, t in sorted(parts.items())}

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple, object] | None:
        if not self.terms:
            return None
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def coefficient(self, e: Sequence[int]):
        return self.terms.get(tuple(e), 0)

    def variables(self) -> set[int]:
        return {k for e in self.terms for k, x in enumerate(e) if x}

    # arithmetic

    def _coerce(self, other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            if other.ring != self.ring:
                raise InvalidInput("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "ExactPoly":
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ExactPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "ExactPoly":
        F = self.field
        return ExactPoly(self.ring, {e: F(-c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "ExactPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "ExactPoly":
        F = self.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return ExactPoly(self.ring, {e: F(v * c) for e, v in self.terms.items()})

    def __mul__(self, other) -> "ExactPoly":
        if not isinstance(other, ExactPoly):
            return self.scale(other)
        other = self._coerce(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ExactPoly(self.ring, {e: v for e, c in out.items() if (v := F(c)) != 0})

    def __rmul__(self, other) -> "ExactPoly":
        return self.scale(other)

    def __pow__(self, k: int) -> "ExactPoly":
        if k < 0:
            raise InvalidInput("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: Sequence[int]) -> "ExactPoly":
        return ExactPoly(
            self.ring, {tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # substitution and evaluation

    def substitute(self, images: Sequence["ExactPoly"], ring: PolyRing | None = None) -> "ExactPoly":
        """Ring map sending ``x_k`` to ``images[k]`` (all in ``ring``)."""
        if len(images) != self.ring.nvars:
            raise InvalidInput("need one image per variable")
        target = ring if ring is not None else (images[0].ring if images else self.ring)
        powers: dict[tuple[int, int], ExactPoly] = {}

        def power(k: int, a: int) -> ExactPoly:
            key = (k, a)
            if key not in powers:
                powers[key] = images[k] if a == 1 else power(k, a - 1) * images[k]
            return powers[key]

        total = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for k, a in enumerate(e):
                if a:
                    term = term * power(k, a)
            total = total + term
        return total

    def evaluate(self, values: Sequence) -> object:
        F = self.field
        total = 0
        for e, c in self.terms.items():
            v = c
            for k, a in enumerate(e):
                if a:
                    v = v * values[k] ** a
            total += v
        return F(total)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[k] if a == 1 else f"{names[k]}^{a}" for k, a in enumerate(e) if a
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces)


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree ``d``, in decreasing grevlex order."""
    out: list[tuple[int, ...]] = []

    def rec(k: int, left: int, acc: list[int]) -> None:
        if k == nvars - 1:
            out.append(tuple(acc + [left]))
            return
        for a in range(left, -1, -1):
            rec(k + 1, left - a, acc + [a])

    if nvars == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    out.sort(key=grevlex_key, reverse=True)
    return out


def poly_sum(ring: PolyRing, polys: Iterable[ExactPoly]) -> ExactPoly:
    F = ring.field
    acc: dict = {}
    for p in polys:
        for e, c in p.terms.items():
            acc[e] = acc.get(e, 0) + c
    return ExactPoly(ring, {e: v for e, c in acc.items() if (v := F(c)) != 0})

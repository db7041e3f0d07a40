"""Exact coefficient fields: the rationals and prime fields of odd characteristic."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any

from ..errors import CharacteristicError, InvalidInput

P_MAX = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class ExactField:
    """Either ``Q`` (``p == 0``) or ``F_p`` for an odd prime ``p < 2**31``.

    Elements are plain Python numbers: ``int``/``Fraction`` for ``Q`` and
    ``int`` in ``[0, p)`` for ``F_p``.  ``F(x)`` normalizes any int or Fraction.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if p == 2:
                raise CharacteristicError("characteristic 2 is not supported")
            if not (is_prime(p) and p < P_MAX):
                raise InvalidInput(f"{p} is not an odd prime below 2**31")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.p else "Q"

    @property
    def spec(self) -> str:
        return f"Fp:{self.p}" if self.p else "Q"

    def __repr__(self) -> str:
        return f"ExactField({self.name})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExactField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("ExactField", self.p))

    def __call__(self, x: Any) -> Any:
        p = self.p
        if p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        return Fraction(x)

    zero = 0
    one = 1

    def inv(self, x: Any) -> Any:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(x), -1, self.p)
        return self(Fraction(1) / x)

    def div(self, x: Any, y: Any) -> Any:
        return self(x * self.inv(y))

    def random_element(self, rng, bound: int = 5) -> Any:
        """Uniform element of ``F_p``, or a small random fraction over ``Q``."""
        if self.p:
            return rng.randrange(self.p)
        num = rng.randint(-bound, bound)
        den = rng.randint(1, 3)
        return self(Fraction(num, den))


QQ = ExactField(0)


@lru_cache(maxsize=None)
def prime_field(p: int) -> ExactField:
    return ExactField(p)


def parse_field(text: str) -> ExactField:
    """Parse ``Q``, ``Fp:<p>``, ``F<p>`` or a bare prime."""
    t = text.strip()
    if t.upper() in ("Q", "QQ"):
        return QQ
    for prefix in ("Fp:", "FP:", "fp:", "F", "f"):
        if t.startswith(prefix):
            t = t[len(prefix):]
            break
    try:
        p = int(t)
    except ValueError:
        raise InvalidInput(f"unknown field {text!r}") from None
    return prime_field(p)

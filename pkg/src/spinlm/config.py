"""Resource caps shared by the ring, tensor and CLI layers."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from math import comb

from .errors import BudgetExceeded

ENV_VAR = "SPINLM_BUDGET"


@dataclass(frozen=True)
class Budget:
    max_N: int = 4
    max_degree: int = 5
    max_monomials: int = 200_000
    max_tensor_length: int = 6

    @classmethod
    def default(cls) -> "Budget":
        """Hard defaults, with the monomial cap overridable through ``SPINLM_BUDGET``."""
        b = cls()
        raw = os.environ.get(ENV_VAR)
        if raw:
            b = replace(b, max_monomials=int(raw))
        return b

    def check_ring(self, N: int, degree: int, nvars: int) -> None:
        if N > self.max_N:
            raise BudgetExceeded(f"N={N} exceeds the cap {self.max_N}")
        if degree > self.max_degree:
            raise BudgetExceeded(f"degree {degree} exceeds the cap {self.max_degree}")
        size = comb(nvars + degree - 1, degree)
        if size > self.max_monomials:
            raise BudgetExceeded(
                f"degree-{degree} monomial space in {nvars} variables has {size} elements, cap {self.max_monomials}"
            )

    def check_tensor(self, length: int) -> None:
        if length > self.max_tensor_length:
            raise BudgetExceeded(f"tensor length {length} exceeds the cap {self.max_tensor_length}")

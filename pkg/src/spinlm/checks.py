"""Check records, reports and the verification suites shared by the CLI and the tests."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

from . import __version__
from .config import Budget
from .errors import SingularMatrix
from .indexcomb import d_comparison, d_of, index_set, perp_subset, sign_sigma
from .polyalg.fields import QQ, ExactField, prime_field
from .polyalg.identities import check_binet_cauchy, check_jacobi, check_laplace
from .polyalg.matrices import C_matrix, ConstMatrix, H_matrix, J_matrix
from .tableaux import canonical_tableau, count_row, enumerate_on_standard, partitions_of, Tableau


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


@dataclass
class Record:
    name: str
    params: dict
    expected: Any
    actual: Any
    passed: bool
    elapsed_ms: float = 0.0
    finding: bool = False

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "params": _jsonable(self.params),
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "pass": bool(self.passed),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.finding:
            out["finding"] = True
        return out


@dataclass
class Report:
    config: dict
    records: list[Record] = dc_field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        """All non-finding records pass and no error interrupted the run."""
        return self.error is None and all(r.passed for r in self.records if not r.finding)

    def extend(self, records: Iterable[Record]) -> None:
        for r in records:
            self.records.append(r)

    def to_dict(self) -> dict:
        out = {
            "tool": "spinlm",
            "version": __version__,
            "config": _jsonable(self.config),
            "records": [r.to_dict() for r in self.records],
            "pass": self.passed,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def timed(name: str, params: dict, expected: Any, fn: Callable[[], Any],
          compare: Callable[[Any, Any], bool] | None = None, finding: bool = False) -> Record:
    """Run ``fn`` and compare its value with ``expected`` (``None`` means informational)."""
    t0 = time.perf_counter()
    actual = fn()
    ms = (time.perf_counter() - t0) * 1e3
    if compare is not None:
        ok = compare(expected, actual)
    else:
        ok = True if expected is None else actual == expected
    return Record(name, params, expected, actual, ok, ms, finding)


def field_list(specs: Sequence[int]) -> list[ExactField]:
    return [QQ if p == 0 else prime_field(p) for p in specs]


# combinatorics


def suite_sign_formula(max_n: int = 6) -> list[Record]:
    """Inversion-count sign of sigma_S against the closed form, exhaustively."""
    out = []
    for n in range(1, max_n + 1):
        def run(n=n):
            bad = 0
            for S in combinations(range(1, 2 * n + 1), n):
                closed = -1 if (sum(S) + (n + 1) // 2) % 2 else 1
                bad += sign_sigma(S, n) != closed
            return bad
        out.append(timed("sign_sigma_closed_form", {"n": n}, 0, run))
    return out


def suite_d_comparison(max_n: int = 6) -> list[Record]:
    """``d_S <= d_{S^perp}`` iff ``#(S cap [i+1, 2n-i]) >= n-i``, all ``S`` and ``0 <= i <= n``."""
    out = []
    for n in range(1, max_n + 1):
        def run(n=n):
            bad = 0
            for i in range(n + 1):
                for S in combinations(range(1, 2 * n + 1), n):
                    lhs = d_of(S, n, i) <= d_of(perp_subset(S, n), n, i)
                    rhs = sum(1 for x in S if i < x <= 2 * n - i) >= n - i
                    bad += lhs != rhs
                    bad += (d_comparison(S, n, i) != ">") != lhs
            return bad
        out.append(timed("d_comparison_window", {"n": n}, 0, run))
    return out


def suite_tableaux(N: int, lam: Sequence[int] | None = None, max_size: int = 4) -> list[Record]:
    """Tableau counts; the O(N) count is cross-checked against a filter of all GL-standard tableaux."""
    from .tableaux import gl_standard_tableaux, is_on_standard

    shapes = [tuple(lam)] if lam is not None else [p for d in range(1, max_size + 1) for p in partitions_of(d)]
    out = []
    for mu in shapes:
        def run(mu=mu):
            return count_row(mu, N)

        def brute(mu=mu):
            return sum(1 for T in gl_standard_tableaux(mu, N) if is_on_standard(T, N))

        rec = timed("tableaux_count", {"N": N, "lambda": list(mu)}, None, run)
        rec.expected = {"count_ON": brute()}
        rec.passed = rec.actual["count_ON"] == rec.expected["count_ON"]
        out.append(rec)
    return out


# determinant identities


def _rand_matrix(rng: random.Random, r: int, c: int, field: ExactField) -> ConstMatrix:
    return ConstMatrix([[field(rng.randint(-5, 5)) for _ in range(c)] for _ in range(r)], field)


def _rand_subset(rng: random.Random, n: int, k: int) -> list[int]:
    return sorted(rng.sample(range(1, n + 1), k))


def suite_identities(fields: Sequence[ExactField], count: int = 100, max_size: int = 6, seed: int = 0) -> list[Record]:
    """Randomized Laplace, Binet-Cauchy and Jacobi instances per field."""
    out = []
    for F in fields:
        rng = random.Random(f"{seed}:{F.name}")

        def laplace():
            bad = 0
            for _ in range(count):
                d = rng.randint(1, max_size)
                A = _rand_matrix(rng, d, d, F)
                bad += not check_laplace(A, _rand_subset(rng, d, rng.randint(1, d)))
            return bad

        def binet():
            bad = 0
            for _ in range(count):
                r, e, c = (rng.randint(1, max_size) for _ in range(3))
                p = rng.randint(1, min(r, e, c))
                A, B = _rand_matrix(rng, r, e, F), _rand_matrix(rng, e, c, F)
                bad += not check_binet_cauchy(A, B, _rand_subset(rng, r, p), _rand_subset(rng, c, p))
            return bad

        def jacobi():
            bad = done = 0
            while done < count:
                d = rng.randint(1, max_size)
                A = _rand_matrix(rng, d, d, F)
                k = rng.randint(1, d)
                try:
                    bad += not check_jacobi(A, _rand_subset(rng, d, k), _rand_subset(rng, d, k))
                except SingularMatrix:
                    continue
                done += 1
            return bad

        for name, fn in (("laplace", laplace), ("binet_cauchy", binet), ("jacobi", jacobi)):
            out.append(timed(f"identity_{name}", {"field": F.spec, "instances": count, "max_size": max_size, "seed": seed}, 0, fn))
    return out


# rings


N2_CLOSED = {"naive": lambda d: 1 if d == 0 else 4, "plus": lambda d: 1 if d == 0 else 2,
             "minus": lambda d: 1 if d == 0 else 2}


def ring_dims(N: int, variant: str, field: ExactField, max_degree: int, form: str = "J",
              budget: Budget | None = None) -> list[int]:
    from .rings import build_ideal, graded_quotient_dims

    return [g.quotient_dim for g in graded_quotient_dims(build_ideal(N, form, variant, field), max_degree, budget)]


def suite_ring_dims(N: int, variant: str, field: ExactField, max_degree: int, form: str = "J",
                    budget: Budget | None = None) -> list[Record]:
    """Graded dimensions; for ``N = 2`` compared with the closed forms ``k[x1,x4]/(x1 x4)`` and naive."""
    expected = [N2_CLOSED[variant](d) for d in range(max_degree + 1)] if N == 2 else None
    params = {"N": N, "variant": variant, "field": field.spec, "form": form, "max_degree": max_degree}
    return [timed("ring_dims", params, expected, lambda: ring_dims(N, variant, field, max_degree, form, budget))]


def suite_standard_basis(cases: Sequence[tuple[int, str, int]], fields: Sequence[ExactField],
                         budget: Budget | None = None) -> list[Record]:
    from .rings import verify_standard_basis

    out = []
    for F in fields:
        for N, variant, dmax in cases:
            verdicts = verify_standard_basis(N, variant, F, dmax, budget=budget)
            for v in verdicts:
                out.append(Record(
                    "standard_basis", {"N": N, "variant": variant, "field": F.spec, "degree": v.degree},
                    {"quotient_dim": v.quotient_dim, "independent": True},
                    {"standard_count": v.standard_count, "independent": v.independent},
                    v.passed, v.elapsed_ms,
                ))
    return out


def l_lemma_cases(N: int, max_a: int = 2, max_size: int = 4, max_T: int = 4):
    """Admissible ``(shape, a, C, S0, T)`` with two-column shapes, ``|C| < a <= l2' <= l1' <= m``."""
    m = N // 2
    for d in range(2, max_size + 1):
        for lam in partitions_of(d):
            if lam[0] != 2 or len(lam) > m:
                continue
            l1, l2 = len(lam), sum(1 for x in lam if x == 2)
            S = canonical_tableau(lam)
            Ts = enumerate_on_standard(lam, N)[:max_T] or [S]
            for a in range(1, min(max_a, l2) + 1):
                f0 = [row[0] for row in S.rows[a:]]
                g0 = [row[1] for row in S.rows[a:] if len(row) > 1]
                for c in range(a):
                    for C in combinations(index_set(N), c):
                        for T in Ts:
                            yield lam, a, C, (f0, g0), T


def suite_l_lemma(Ns: Sequence[int] = (2, 3, 4), max_a: int = 2, max_size: int = 4,
                  field: ExactField = QQ) -> list[Record]:
    from .rings import GradedRing, build_ideal, verify_L_lemma

    out = []
    for N in Ns:
        R = GradedRing(build_ideal(N, "J", "naive", field))

        def run(N=N, R=R):
            total = bad = 0
            for lam, a, C, S0, T in l_lemma_cases(N, max_a, max_size):
                total += 1
                bad += not verify_L_lemma(N, lam, C, a, S0, T, field, R)
            return {"cases": total, "failures": bad}

        out.append(timed("l_lemma", {"N": N, "max_a": max_a, "max_size": max_size}, None, run,
                         compare=lambda e, a: a["failures"] == 0 and a["cases"] > 0))
    return out


def suite_l_lemma_negative(field: ExactField = QQ) -> list[Record]:
    """Dropping the hypothesis ``c < a`` breaks the statement (N=4, shape (2), a=1, C={1bar})."""
    from .rings import GradedRing, build_ideal, l_sum

    R = GradedRing(build_ideal(4, "J", "naive", field))
    T = canonical_tableau((2,))
    return [timed("l_lemma_negative_control", {"N": 4, "a": 1, "C": [1]}, False,
                  lambda: R.contains(l_sum(R.ideal.X, ([], []), T, [1], 1)))]


def suite_so_invariance(Ns: Sequence[int], fields: Sequence[ExactField], count: int = 20, seed: int = 0) -> list[Record]:
    from .rings import GradedRing, build_ideal, cayley_element, verify_so_invariance

    out = []
    for F in fields:
        for N in Ns:
            for variant in ("plus", "minus"):
                R = GradedRing(build_ideal(N, "J", variant, F))
                rng = random.Random(f"{seed}:{F.name}:{N}:{variant}")

                def run(N=N, variant=variant, R=R, rng=rng):
                    return sum(1 for _ in range(count)
                               if not verify_so_invariance(N, variant, cayley_element(N, F, rng), F, ring=R))

                out.append(timed("so_invariance", {"N": N, "variant": variant, "field": F.spec, "samples": count,
                                                   "seed": seed}, 0, run))
    return out


def suite_nzd(max_degree: int = 3, field: ExactField = QQ, budget: Budget | None = None) -> list[Record]:
    from .rings import nzd_f_ranks

    rows = nzd_f_ranks(field, max_degree, budget)
    return [Record("nzd_f", {"N": 4, "variant": "plus", "field": field.spec, "degree": r["degree"]},
                   r["source_dim"], r["image_rank"], r["injective"], r["elapsed_ms"]) for r in rows]


def suite_forms(max_N_matrix: int = 6, max_N_ring: int = 4, max_degree: int = 3,
                budget: Budget | None = None) -> list[Record]:
    out = []
    for N in range(2, max_N_matrix + 1):
        def run(N=N):
            C = C_matrix(N)
            return C.T() @ J_matrix(N) @ C == H_matrix(N) and C.is_permutation()
        out.append(timed("H_equals_CtJC", {"N": N}, True, run))
    for N in range(2, max_N_ring + 1):
        for variant in ("naive", "plus", "minus") if N % 2 == 0 else ("naive",):
            def run(N=N, variant=variant):
                return ring_dims(N, variant, QQ, max_degree, "H", budget)
            rec = timed("J_vs_H_dims", {"N": N, "variant": variant, "max_degree": max_degree},
                        ring_dims(N, variant, QQ, max_degree, "J", budget), run)
            out.append(rec)

            def mapped(N=N, variant=variant):
                from .rings import GradedRing, build_ideal, convert_J_to_H

                R = GradedRing(build_ideal(N, "H", variant, QQ), budget)
                return all(R.contains(convert_J_to_H(f, N)) for f in build_ideal(N, "J", variant, QQ).generators)
            out.append(timed("J_generators_map_into_H", {"N": N, "variant": variant}, True, mapped))
    return out


def suite_char_p(cases: Sequence[tuple[int, str, int]], primes: Sequence[int] = (3, 5, 7),
                 budget: Budget | None = None) -> list[Record]:
    """Q versus F_p dimensions, reported as findings: a difference does not fail the run."""
    from .rings import compare_char_p

    out = []
    for N, variant, dmax in cases:
        t0 = time.perf_counter()
        res = compare_char_p(N, variant, primes, dmax, budget=budget)
        ms = (time.perf_counter() - t0) * 1e3
        out.append(Record("char_p_comparison", {"N": N, "variant": variant, "max_degree": dmax,
                                                "primes": list(primes)},
                          res["dims"]["Q"], res["dims"], not res["differing"], ms, finding=True))
    return out


# representations


def suite_repn(Ns: Sequence[int], max_size: int = 4, lam: Sequence[int] | None = None,
               budget: Budget | None = None) -> list[Record]:
    from .repthy import check_canonical_identity, m_lambda_dim, o_lambda_dim

    out = []
    for N in Ns:
        shapes = [tuple(lam)] if lam is not None else [p for d in range(1, max_size + 1) for p in partitions_of(d)]
        for mu in shapes:
            l1 = len(mu)
            l2 = sum(1 for x in mu if x >= 2)
            if l1 + l2 > N:
                continue

            def run(mu=mu, N=N):
                return {"dim_M": m_lambda_dim(mu, N), "dim_O": o_lambda_dim(mu, N, budget=budget)}

            rec = timed("o_lambda_dim", {"N": N, "lambda": list(mu)}, None, run)
            rec.expected = {"dim_O": len(enumerate_on_standard(mu, N))}
            rec.passed = rec.actual["dim_O"] == rec.expected["dim_O"]
            out.append(rec)
    shapes = sorted({p for d in range(1, max_size + 1) for p in partitions_of(d)}) if lam is None else [tuple(lam)]
    for mu in shapes:
        out.append(timed("young_symmetrizer_canonical", {"lambda": list(mu)}, True,
                         lambda mu=mu: check_canonical_identity(mu)))
    return out


# local model chart


def suite_chart(cases: Sequence[tuple[int, int]], variants: Sequence[str] = ("naive", "plus", "minus"),
                field: ExactField = QQ) -> list[Record]:
    from .localmodel import (ChartConfig, build_chart_presentation, ceil_parity_guard, derive_lm2,
                             derive_lm3, verify_prop_sign, verify_prop_wedge, wedge_lattice_basis)

    out = [timed("ceil_parity_guard", {"max_n": 12}, True, ceil_parity_guard)]
    for n, i in cases:
        cfg = ChartConfig(n, i)
        p = {"n": n, "i": i}
        out.append(timed("lm2", p, True, lambda: derive_lm2(cfg, field).ok))
        lm3 = derive_lm3(cfg, field)
        out.append(timed("lm3", p, True, lambda: derive_lm3(cfg, field).ok))
        out.append(Record("lm3_printed_first_six_match_x", p, True, lm3.printed_six_match_x,
                          lm3.printed_six_match_x, 0.0, finding=True))
        if i >= 1:
            out.append(timed("prop_wedge", p, True, lambda: verify_prop_wedge(cfg)[0]))
            out.append(timed("prop_sign", p, True, lambda: verify_prop_sign(cfg)[0]))
            for v in variants:
                def pres(v=v):
                    P = build_chart_presentation(cfg, v, field)
                    return {"match": P.match and P.only_x_variables, "free_vars": P.free_vars}
                out.append(timed("chart_presentation", {**p, "variant": v},
                                 {"match": True, "free_vars": (n - 2 * i) * (n + 2 * i - 1) // 2}, pres))
        for s in (1, -1):
            out.append(timed("wedge_lattice_basis", {**p, "sign": s}, True,
                             lambda s=s: wedge_lattice_basis(cfg, s).ok))
    return out


# criterion 1 helper


def suite_n2_closed_forms(fields: Sequence[ExactField], max_degree: int = 5) -> list[Record]:
    out = []
    for F in fields:
        for v in ("plus", "minus"):
            out.extend(suite_ring_dims(2, v, F, max_degree))
    return out


PROFILES = ("smoke", "desk")


def profile_steps(profile: str, seed: int = 0, budget: Budget | None = None) -> list[Callable[[], list[Record]]]:
    """Suites of a profile as deferred steps; ``desk`` covers every acceptance criterion."""
    Q, F3, F5, F7 = QQ, prime_field(3), prime_field(5), prime_field(7)
    if profile == "smoke":
        return [
            lambda: suite_n2_closed_forms([Q, F3], 3),
            lambda: suite_sign_formula(4),
            lambda: suite_d_comparison(4),
            lambda: suite_tableaux(3, (1,)),
            lambda: suite_identities([Q, F5], 10, 4, seed),
            lambda: suite_standard_basis([(2, "naive", 3), (2, "plus", 3), (2, "minus", 3)], [Q], budget),
            lambda: suite_l_lemma((2,), 1, 2),
            lambda: suite_repn((2,), 2, budget=budget),
            lambda: suite_so_invariance((2,), [Q], 2, seed),
            lambda: suite_chart([(2, 1)]),
            lambda: suite_forms(4, 2, 2, budget),
        ]
    if profile == "desk":
        return [
            lambda: suite_n2_closed_forms([Q, F3, F5], 5),
            lambda: suite_sign_formula(6),
            lambda: suite_d_comparison(6),
            lambda: suite_identities([Q, F5, F7], 100, 6, seed),
            lambda: suite_standard_basis(BASIS_CASES, [Q, F3], budget),
            lambda: suite_l_lemma((2, 3, 4), 2, 4),
            lambda: suite_l_lemma_negative(),
            lambda: suite_repn((2, 3, 4), 4, budget=budget),
            lambda: suite_so_invariance((2, 4), [Q, F5], 20, seed),
            lambda: suite_nzd(3, Q, budget),
            lambda: suite_chart([(2, 1), (3, 1), (4, 1), (4, 2)]),
            lambda: suite_forms(6, 4, 3, budget),
            lambda: suite_char_p(BASIS_CASES, (3, 5, 7), budget),
        ]
    raise ValueError(f"unknown profile {profile!r}")


BASIS_CASES = [(2, "naive", 5), (2, "plus", 5), (2, "minus", 5), (3, "naive", 4),
               (4, "naive", 3), (4, "plus", 3), (4, "minus", 3)]


def run_profile(profile: str, seed: int = 0, budget: Budget | None = None) -> list[Record]:
    out: list[Record] = []
    for step in profile_steps(profile, seed, budget):
        out.extend(step())
    return out

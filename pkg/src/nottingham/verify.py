"""Oracle-agreement sweeps used by ``nottingham verify`` and the test suite.

Each suite returns a :class:`SuiteResult`; ``counterexample`` holds the
first failing case, if any.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from .criterion import (
    closed_form_b3,
    closed_form_polynomial,
    coefficient_vector,
    conjecture_harness,
    scalar_recurrence,
    verify_lemmas,
)
from .errors import BadPrime, InsufficientPrecision
from .field import FpElement, check_odd_prime
from .ramify import (
    b3_oracle_sweep,
    check_sen,
    numeric_b_ramified,
)
from .series import TruncSeries, delta_step, iterate


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    counterexample: Any = None

    def to_json(self) -> dict:
        ce = self.counterexample
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "counterexample": None if ce is None else repr(ce)}


def random_nottingham(p: int, N: int, rng: random.Random, first: int | None = None) -> TruncSeries:
    """X plus random terms; with ``first`` the lowest one is a nonzero multiple of X^first."""
    coeffs = [0, 1] + [rng.randrange(p) for _ in range(N - 1)]
    if first is not None:
        for k in range(2, first):
            coeffs[k] = 0
        coeffs[first] = rng.randrange(1, p)
    return TruncSeries(coeffs, p, N)


def suite_b3_exhaustive(p: int = 5, workers: int = 1, **_) -> SuiteResult:
    checked, bad = b3_oracle_sweep(p, workers=workers)
    return SuiteResult("b3-exhaustive", not bad, checked, bad[0] if bad else None)


def suite_pb_random(b: int = 2, p: int = 7, samples: int = 200, seed: int = 0, **_) -> SuiteResult:
    """Brute-force b-ramification against the nonvanishing of P_b mod p."""
    if p <= b + 1:
        raise BadPrime(f"need p > b + 1 = {b + 1}")
    poly = coefficient_vector(b, p).polynomial
    rng = random.Random(seed)
    for k in range(samples):
        a = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(b)]
        numeric = numeric_b_ramified(a, b, p)
        predicted = bool(poly.evaluate([FpElement(x, p) for x in a]))
        if numeric != predicted:
            return SuiteResult("pb-random", False, k + 1, (tuple(a), numeric, predicted))
    return SuiteResult("pb-random", True, samples)


def suite_delta(p: int = 5, samples: int = 50, seed: int = 0, trunc: int = 100, **_) -> SuiteResult:
    """p difference steps reproduce f^(p) - X."""
    check_odd_prime(p)
    rng = random.Random(seed)
    for k in range(samples):
        f = random_nottingham(p, trunc, rng)
        d = f - TruncSeries.identity(p, trunc)
        for _ in range(p - 1):
            d = delta_step(d, f)
        if d != iterate(f, p) - TruncSeries.identity(p, trunc):
            return SuiteResult("delta", False, k + 1, f)
    return SuiteResult("delta", True, samples)


def suite_sen(p: int = 5, samples: int = 100, seed: int = 0, n: int = 1, trunc: int | None = None,
              **_) -> SuiteResult:
    """i_n = i_{n-1} mod p^n on random series with small i(f)."""
    check_odd_prime(p)
    rng = random.Random(seed)
    for k in range(samples):
        i0 = rng.randrange(1, 4)
        N = trunc or i0 * (p ** (n + 1) - 1) // (p - 1) * p + 2
        base = random_nottingham(p, 4 * N, rng, first=i0 + 1)
        # raise the truncation until i_n is resolved
        while True:
            try:
                ok = check_sen(base.truncate(N), n)
                break
            except InsufficientPrecision:
                if N == base.N:
                    raise
                N = min(2 * N, base.N)
        if not ok:
            return SuiteResult("sen", False, k + 1, base.truncate(N))
    return SuiteResult("sen", True, samples)


def suite_lemmas(p: int = 7, **_) -> SuiteResult:
    report = verify_lemmas(p)
    failed = [name for name, ok in report.items() if not ok]
    return SuiteResult("lemmas", not failed, len(report), failed[0] if failed else None)


def suite_closed_form(p: int = 5, **_) -> SuiteResult:
    """The b = 3 constants and their agreement with the recurrence."""
    consts = closed_form_b3(p)
    if tuple(c.symmetric() for c in consts) != (2, -1, 2, -1):
        return SuiteResult("closed-form", False, 1, tuple(c.symmetric() for c in consts))
    if closed_form_polynomial(p) != coefficient_vector(3, p).normalized:
        return SuiteResult("closed-form", False, 2, "normalized recurrence output differs")
    return SuiteResult("closed-form", True, 2)


def suite_conjecture(b: int = 10, primes_per_b: int = 10, **_) -> SuiteResult:
    report = conjecture_harness(range(1, b + 1), primes_per_b)
    ce = report.counterexamples
    return SuiteResult("conjecture", not ce, len(report.checked), ce[0] if ce else None)


def suite_recurrence(b: int = 3, p: int = 7, samples: int = 20, seed: int = 0, **_) -> SuiteResult:
    """Symbolic recurrence, scalar recurrence and series composition agree."""
    raw = coefficient_vector(b, p, normalize=False).raw
    rng = random.Random(seed)
    N = b * p + b + 2
    for k in range(samples):
        a = [rng.randrange(p) for _ in range(b + 1)]
        point = [FpElement(x, p) for x in a]
        symbolic = [q.evaluate(point) for q in raw]
        scalar = scalar_recurrence(b, p, a)
        f = TruncSeries.from_normal_form(a, b, p, N)
        dp = iterate(f, p) - TruncSeries.identity(p, N)
        series = [FpElement(dp[b * p + n], p) for n in range(1, b + 2)]
        if not symbolic == scalar == series:
            return SuiteResult("recurrence", False, k + 1, (tuple(a), symbolic, scalar, series))
    return SuiteResult("recurrence", True, samples)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "b3-exhaustive": suite_b3_exhaustive,
    "pb-random": suite_pb_random,
    "delta": suite_delta,
    "sen": suite_sen,
    "lemmas": suite_lemmas,
    "closed-form": suite_closed_form,
    "conjecture": suite_conjecture,
    "recurrence": suite_recurrence,
}


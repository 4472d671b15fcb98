"""Ramification predicates and numeric checks of the classical theorems
(Sen, Keating, Laubie-Saine) on truncated series.

Precision bookkeeping
---------------------
If f is only known modulo X^(K+1) and i(f) = i <= K - 1, every series
agreeing with f to that order has the same f^(p) modulo X^(K + (p-1) i + 1).
(Write g = f + h; the difference of the m-th difference iterates of f and
g has valuation at least K + 1 + (m-1) i, by induction on m.)  Applied
repeatedly this certifies i_n(f) from finitely many known coefficients;
see :func:`certified_sequence`.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadPrime, InsufficientPrecision, NotApplicable, PrecisionOverflow
from .field import FpElement, check_odd_prime
from .series import (
    TruncatedZero,
    TruncSeries,
    Valuation,
    iterate,
    ramification,
    ramification_number,
    valuation,
)

log = logging.getLogger(__name__)

MAX_TRUNCATION = 1_000_000
DEEP_CHECK_CAP = 5000


def b_ramified_value(b: int, p: int, n: int) -> int:
    """b (1 + p + ... + p^n)."""
    return b * (p ** (n + 1) - 1) // (p - 1)


def required_precision(b: int, p: int, n_max: int) -> int:
    """Truncation that resolves i_0..i_{n_max} of a b-ramified series and
    separates i_{n_max} from any larger value."""
    if b < 1 or n_max < 0:
        raise ValueError("need b >= 1 and n_max >= 0")
    N = b_ramified_value(b, p, n_max) + b + 2
    if N > MAX_TRUNCATION:
        raise PrecisionOverflow(
            f"resolving i_{n_max} for b={b}, p={p} needs truncation {N} > {MAX_TRUNCATION}")
    return N


def is_b_ramified_numeric(f: TruncSeries, b: int, deep_check: bool = False,
                          cap: int = DEEP_CHECK_CAP) -> bool:
    """True iff i(f) = b, i_1(f) = b(1 + p) and p does not divide b.

    By the Laubie-Saine theorem these two values force the whole sequence
    i_n = b(1 + ... + p^n).  With ``deep_check`` the value of i_2 is also
    computed directly when that fits under ``cap`` coefficients.
    """
    p = f.p
    need = required_precision(b, p, 1)
    if f.N < need:
        raise InsufficientPrecision(f"need truncation >= {need}, series known to X^{f.N}")
    if b % p == 0:
        return False
    if ramification(f) != b:
        return False
    v = valuation(iterate(f, p) - TruncSeries.identity(p, f.N))
    if v is TruncatedZero or v - 1 != b * (1 + p):
        return False
    if deep_check:
        need2 = required_precision(b, p, 2)
        if need2 <= cap:
            if f.N < need2:
                raise InsufficientPrecision(f"deep check needs truncation >= {need2}")
            i2 = ramification_number(f.truncate(need2), 2)
            if i2 != b_ramified_value(b, p, 2):
                log.warning("i_2 = %d contradicts b-ramification (expected %d)",
                            i2, b_ramified_value(b, p, 2))
                return False
    return True


def criterion_b3(a1: FpElement, a2: FpElement, a3: FpElement, a4: FpElement) -> FpElement:
    """2 a1^4 - a2^3 + 2 a1 a2 a3 - a1^2 a4; nonzero (with a1 != 0) iff 3-ramified."""
    if a1.modulus <= 3:
        raise BadPrime("the b = 3 criterion needs p > 3")
    return 2 * a1**4 - a2**3 + 2 * a1 * a2 * a3 - a1**2 * a4


def laubie_saine_prediction(i0: int, i1: int, p: int, n: int) -> int | None:
    """i_n predicted from i_0, i_1, or None outside the theorem's hypotheses."""
    if i0 % p == 0:
        return p**n * i0
    if i1 < (p * p - p + 1) * i0:
        return i0 + (p**n - 1) // (p - 1) * (i1 - i0)
    return None


def check_sen(f: TruncSeries, n: int) -> bool:
    """i_n(f) = i_{n-1}(f) mod p^n."""
    if n < 1:
        raise ValueError("Sen's congruence is stated for n >= 1")
    hi = ramification_number(f, n)
    lo = ramification_number(f, n - 1)
    if hi == lo:
        log.warning("degenerate ramification numbers i_%d = i_%d = %d", n - 1, n, hi)
    return (hi - lo) % f.p**n == 0


def check_laubie_saine_divisible(f: TruncSeries) -> bool:
    """When p | i(f): i_1(f) = p i(f)."""
    i0 = ramification_number(f, 0)
    if i0 % f.p:
        raise NotApplicable(f"p = {f.p} does not divide i(f) = {i0}")
    return ramification_number(f, 1) == f.p * i0


def check_keating(f: TruncSeries) -> bool:
    """When i_0 = 1 and i_1 = 1 + b p with 1 <= b <= p - 2: i_2 = 1 + b p + b p^2."""
    p = f.p
    i0 = ramification_number(f, 0)
    if i0 != 1:
        raise NotApplicable(f"i_0 = {i0}, not 1")
    i1 = ramification_number(f, 1)
    b, r = divmod(i1 - 1, p)
    if r or not 1 <= b <= p - 2:
        raise NotApplicable(f"i_1 = {i1} is not 1 + b p with 1 <= b <= p - 2")
    return ramification_number(f, 2) == 1 + b * p + b * p * p


def certified_sequence(f: TruncSeries, n_max: int, known_order: int | None = None
                       ) -> tuple[list[Valuation], list[int | None]]:
    """Ramification numbers i_0..i_{n_max} that are determined by the
    coefficients of f through X^known_order.

    ``f`` may carry more (zero-padded) coefficients than are known; the
    computation is done at f's truncation and each value is kept only when
    the precision argument in the module docstring certifies it.  Returns
    (sequence, lower_bounds): undetermined entries are TruncatedZero, with
    a lower bound when one is available.
    """
    p = f.p
    K = f.N if known_order is None else min(known_order, f.N)
    seq: list[Valuation] = []
    bounds: list[int | None] = []
    F = f
    ident = TruncSeries.identity(p, f.N)
    for n in range(n_max + 1):
        if n:
            F = iterate(F, p)
        if K is None:
            seq.append(TruncatedZero)
            bounds.append(None)
            continue
        v = valuation(F - ident)
        if v is not TruncatedZero and v <= K:
            seq.append(v - 1)
            bounds.append(None)
            K = min(K + (p - 1) * (v - 1), f.N)
        else:
            seq.append(TruncatedZero)
            bounds.append(K)
            K = None
    return seq, bounds


@dataclass
class RamificationReport:
    p: int
    b: int
    sequence: list
    is_b_ramified: bool
    criterion_value: FpElement | None = None
    lower_bounds: list = field(default_factory=list)
    known_order: int | None = None
    trunc: int | None = None
    deep_check: bool | None = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "b": self.b,
            "sequence": [None if s is TruncatedZero else s for s in self.sequence],
            "lower_bounds": self.lower_bounds,
            "is_b_ramified": self.is_b_ramified,
            "criterion_value": None if self.criterion_value is None else self.criterion_value.value,
            "known_order": self.known_order,
            "trunc": self.trunc,
            "deep_check": self.deep_check,
        }


def ramification_report(f: TruncSeries, b: int, n_max: int = 1,
                        known_order: int | None = None, deep_check: bool = False,
                        cap: int = DEEP_CHECK_CAP) -> RamificationReport:
    """Sequence i_0..i_{n_max} plus the b-ramified verdict for f.

    The verdict needs i_0 and i_1 only; when those are not determined by
    the known coefficients, InsufficientPrecision is raised.  When p | b
    the sequence is still reported but the verdict is false: by the
    Laubie-Saine theorem i_n = p^n i(f) whenever p | i(f).
    """
    p = f.p
    if b < 1:
        raise ValueError("b must be positive")
    depth = max(n_max, 2 if deep_check else 1)
    seq, bounds = certified_sequence(f, depth, known_order)
    target1 = b_ramified_value(b, p, 1)
    if seq[0] is TruncatedZero:
        raise InsufficientPrecision(
            f"i(f) is not determined by coefficients through X^{bounds[0]}")
    if seq[0] != b or b % p == 0:
        verdict = False
    elif seq[1] is not TruncatedZero:
        verdict = seq[1] == target1
    elif bounds[1] is not None and bounds[1] > target1:
        verdict = False
    else:
        raise InsufficientPrecision(
            f"i_1(f) is not determined by the known coefficients (only i_1 >= {bounds[1]})")
    deep = None
    if deep_check and verdict:
        if required_precision(b, p, 2) > cap:
            deep = None
        elif seq[2] is TruncatedZero:
            deep = None
        else:
            deep = seq[2] == b_ramified_value(b, p, 2)
    criterion_value = None
    if b == 3 and p > 3:
        a = [f.coeffs[k] if k <= (known_order if known_order is not None else f.N) else None
             for k in range(4, 8)]
        if all(x is not None for x in a):
            criterion_value = criterion_b3(*(FpElement(x, p) for x in a))
    return RamificationReport(
        p=p, b=b, sequence=seq[: n_max + 1], lower_bounds=bounds[: n_max + 1],
        is_b_ramified=verdict, criterion_value=criterion_value,
        known_order=known_order, trunc=f.N, deep_check=deep)


def numeric_b_ramified(a: Sequence[int], b: int, p: int) -> bool:
    """Brute-force verdict for X + sum a_i X^(i+b) (a zero beyond len(a))."""
    N = required_precision(b, p, 1)
    return is_b_ramified_numeric(TruncSeries.from_normal_form(a, b, p, N), b)


def _b3_case(args):
    a, p = args
    numeric = numeric_b_ramified(a, 3, p)
    crit = criterion_b3(*(FpElement(x, p) for x in a))
    predicted = a[0] % p != 0 and bool(crit)
    return a, numeric, predicted


def b3_oracle_sweep(p: int, tuples: Iterable[Sequence[int]] | None = None,
                    workers: int = 1) -> tuple[int, list]:
    """Compare brute force with the b = 3 criterion; returns (checked, disagreements).

    ``tuples`` defaults to every (a1, a2, a3, a4) with a1 != 0.
    """
    check_odd_prime(p)
    if p <= 3:
        raise BadPrime("the b = 3 criterion needs p > 3")
    if tuples is None:
        tuples = ((a1, *rest) for a1 in range(1, p)
                  for rest in itertools.product(range(p), repeat=3))
    jobs = [(tuple(a), p) for a in tuples]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_b3_case, jobs, chunksize=32))
    else:
        results = [_b3_case(j) for j in jobs]
    bad = [(a, num, pred) for a, num, pred in results if num != pred]
    return len(results), bad

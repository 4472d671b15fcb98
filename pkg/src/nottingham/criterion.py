"""The matrix recurrence for the criterion polynomials and the closed-form
oracle for b = 3.

For f = X + a_1 X^(b+1) + a_2 X^(b+2) + ..., the coefficient of X^(bm+n)
in the m-th difference iterate, A_{n,m}, is a polynomial in a_1..a_{b+1}
for n <= b+1.  The vector (A_{1,m}, ..., A_{b+1,m}) evolves by a
lower-triangular matrix whose (i, j) entry is x_{i-j+1} (bm + j), except
for the corner (b+1, 1), which is x_1^2 C(bm+1, 2) + x_{b+1} (bm + 1).
Since Delta_p = f^(p) - X in characteristic p, A_{b+1,p} decides whether
i_1(f) = b(1 + p).
"""

from __future__ import annotations

import logging
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadPrime, TermCapExceeded
from .field import (
    FpElement,
    PValued,
    admissible_primes,
    check_odd_prime,
    falling_product,
    inverse_of_three,
    triple_factorial,
)
from .multipoly import Domain, MultiPoly, fermat_normalize

log = logging.getLogger(__name__)

DEFAULT_TERM_CAP = 10**7
# The normalized recurrence output is half of the integral polynomial P_b.
PUBLISHED_SCALE = 2


def _check_bp(b: int, p: int):
    if b < 1:
        raise ValueError("b must be positive")
    check_odd_prime(p)
    if b % p == 0:
        raise BadPrime(f"p = {p} divides b = {b}")


def _corner_scalars(b: int, m: int, p: int) -> tuple[int, int]:
    """(C(bm+1, 2), bm+1) mod p, the binomial via the inverse of 2."""
    k = b * m
    return (k + 1) * k % p * pow(2, -1, p) % p, (k + 1) % p


def _unit(k: int, nvars: int) -> tuple:
    e = [0] * nvars
    e[k] = 1
    return tuple(e)


def recurrence_matrix(b: int, m: int, p: int) -> list[list[MultiPoly]]:
    """The (b+1) x (b+1) step matrix for index m, entries over F_p."""
    _check_bp(b, p)
    if m < 1:
        raise ValueError("m must be at least 1")
    n = b + 1
    dom = Domain.fp(p)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j > i:
                row.append(MultiPoly.zero(n, dom))
            elif i == n and j == 1:
                binom, lin = _corner_scalars(b, m, p)
                sq = [0] * n
                sq[0] = 2
                row.append(MultiPoly({tuple(sq): binom, _unit(b, n): lin}, n, dom))
            else:
                row.append(MultiPoly({_unit(i - j, n): b * m + j}, n, dom))
        rows.append(row)
    return rows


def _step(state: list[MultiPoly], b: int, m: int, p: int, workers: int = 1) -> list[MultiPoly]:
    """One matrix-vector product, done as monomial shifts of the state entries."""
    n = b + 1
    binom, lin = _corner_scalars(b, m, p)
    sq = [0] * n
    sq[0] = 2
    sq = tuple(sq)

    def row(i: int) -> MultiPoly:
        # 0-based row i; entry (i, j) multiplies state[j]
        acc = MultiPoly.zero(n, state[0].domain)
        for j in range(i + 1):
            src = state[j]
            if not src:
                continue
            if i == b and j == 0:
                acc = acc + src.mul_monomial(sq, binom) + src.mul_monomial(_unit(b, n), lin)
            else:
                c = (b * m + j + 1) % p
                if c:
                    acc = acc + src.mul_monomial(_unit(i - j, n), c)
        return acc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, range(n)))
    return [row(i) for i in range(n)]


def run_recurrence(b: int, p: int, steps: int | None = None, workers: int = 1,
                   cap_terms: int = DEFAULT_TERM_CAP) -> list[MultiPoly]:
    """(A_{1,m}, ..., A_{b+1,m}) with m = steps + 1 (default m = p)."""
    _check_bp(b, p)
    n = b + 1
    dom = Domain.fp(p)
    state = [MultiPoly.variable(k, n, dom) for k in range(1, n + 1)]
    last = p - 1 if steps is None else steps
    for m in range(1, last + 1):
        state = _step(state, b, m, p, workers)
        size = sum(len(s) for s in state)
        if size > cap_terms:
            raise TermCapExceeded(f"{size} terms at step m={m} exceeds the cap {cap_terms}")
    return state


@dataclass
class CriterionResult:
    """Output of :func:`coefficient_vector`.

    ``normalized`` is the Fermat-normalized A_{b+1,p}; ``polynomial`` is
    that times 2, the integral form whose lift across primes gives P_b.
    Both are None when p is too small for the normalization.
    """

    b: int
    p: int
    leading_zero_check: list[bool]
    raw: list[MultiPoly]
    raw_last: MultiPoly
    normalized: MultiPoly | None
    polynomial: MultiPoly | None
    scale: int = PUBLISHED_SCALE

    @property
    def leading_zeros(self) -> bool:
        return all(self.leading_zero_check)

    def to_json(self) -> dict:
        out = self.polynomial.to_json() if self.polynomial is not None else {}
        out.update({
            "b": self.b,
            "p": self.p,
            "leading_zero_check": self.leading_zero_check,
            "scale": self.scale,
            "normalized": None if self.normalized is None else self.normalized.to_json(),
            "raw_last": self.raw_last.to_json(),
        })
        return out


def coefficient_vector(b: int, p: int, workers: int = 1, cap_terms: int = DEFAULT_TERM_CAP,
                       normalize: bool = True) -> CriterionResult:
    """Run the recurrence for m = 1..p-1 and normalize A_{b+1,p}.

    With ``normalize`` false only the raw vector is kept; normalizing
    raises ExponentOverflow when p is too small for b.
    """
    raw = run_recurrence(b, p, workers=workers, cap_terms=cap_terms)
    zero_check = [s.is_zero() for s in raw[:-1]]
    normalized = polynomial = None
    if normalize:
        normalized = fermat_normalize(raw[-1], p)
        polynomial = normalized.scale(PUBLISHED_SCALE)
    return CriterionResult(b=b, p=p, leading_zero_check=zero_check, raw=raw,
                           raw_last=raw[-1], normalized=normalized, polynomial=polynomial)


def scalar_recurrence(b: int, p: int, a: Sequence[int], m: int | None = None) -> list[FpElement]:
    """(A_{1,m}, ..., A_{b+1,m}) at the point a = (a_1..a_{b+1}), default m = p."""
    _check_bp(b, p)
    if len(a) != b + 1:
        raise ValueError(f"need {b + 1} coefficients, got {len(a)}")
    x = [v % p for v in a]
    v = list(x)
    end = p if m is None else m
    for k in range(1, end):
        binom, lin = _corner_scalars(b, k, p)
        new = []
        for i in range(b + 1):
            acc = 0
            for j in range(i + 1):
                if i == b and j == 0:
                    acc += (x[0] * x[0] * binom + x[b] * lin) * v[0]
                else:
                    acc += x[i - j] * (b * k + j + 1) * v[j]
            new.append(acc % p)
        v = new
    return [FpElement(c, p) for c in v]


# closed forms for b = 3
#
# Factorial ratios are evaluated as falling products so that factors of p
# shared by numerator and denominator never enter.  Three terms are fixed
# against exact integer runs of the recurrence: in C_m the leading a_3 term
# is (3m)!!!/3, in gamma the (3r+3)!!! term is (3r+3)!!!/3, and in delta the
# leading term is (3m+1)!!!/4.  ``uncorrected=True`` drops the divisors;
# the results still agree at m = p but not for general m.


def _tf(n: int, p: int) -> int:
    return triple_factorial(n, p).value


@lru_cache(maxsize=4096)
def _falling(n: int, p: int) -> dict[int, int]:
    """k -> n!!!/k!!! mod p for every k <= n with k = n mod 3, as falling products."""
    out = {n: 1}
    acc, k = 1, n
    while k > 2:
        acc = acc * k % p
        k -= 3
        out[k] = acc
    return out


def _ratio(n: int, k: int, p: int) -> int:
    """n!!!/k!!!, i.e. triple_ratio(n, k, p), from the cached table."""
    return _falling(n, p)[k]


def _ratio_skip(n: int, k: int, p: int) -> int:
    """n!!!/k for a factor k of n!!! (k = n mod 3), i.e. n!!! with k removed."""
    return _ratio(n, k, p) * _tf(k - 3, p) % p if k >= 3 else _ratio(n, k, p)


def closed_form_D(m: int, p: int, uncorrected: bool = False) -> tuple[FpElement, ...]:
    """(alpha(m), beta(m), gamma(m), delta(m)) mod p."""
    check_odd_prime(p)
    if p == 3:
        raise BadPrime("closed forms need p > 3")
    if m < 1:
        raise ValueError("m must be at least 1")
    half = pow(2, -1, p)
    tf = [_tf(3 * j + 1, p) for j in range(m + 1)]
    alpha = 0
    for r in range(1, m):
        alpha += 3 * r * half * _ratio_skip(3 * m + 1, 3 * r + 4, p)
    # S[n] = (3n+2)!!! + sum_j (3j+1)!!! (3n+2)!!!/(3j+2)!!!
    S = [0] * m
    for n in range(1, m):
        s = _tf(3 * n + 2, p)
        for j in range(1, n):
            s += tf[j] * _ratio(3 * n + 2, 3 * j + 2, p)
        S[n] = s % p
    beta = 0
    for r in range(1, m):
        inner = 0
        for n in range(1, r):
            inner += _ratio(3 * r + 3, 3 * n + 3, p) * S[n]
        beta += _ratio(3 * m + 1, 3 * r + 4, p) * inner
    gamma = 0
    for r in range(1, m):
        third = _tf(3 * r + 3, p) if uncorrected else _ratio(3 * r + 3, 3, p)
        s = _tf(3 * r + 2, p) + third
        for n in range(1, r):
            s += tf[n] * (_ratio(3 * r + 2, 3 * n + 2, p) + _ratio(3 * r + 3, 3 * n + 3, p))
        gamma += _ratio(3 * m + 1, 3 * r + 4, p) * s
    delta = _tf(3 * m + 1, p) if uncorrected else _ratio(3 * m + 1, 4, p)
    for r in range(1, m):
        delta += _ratio_skip(3 * m + 1, 3 * r + 4, p)
    return tuple(FpElement(v, p) for v in (alpha, beta, gamma, delta))


def closed_form_b3(p: int) -> tuple[FpElement, ...]:
    """(alpha(p), beta(p), gamma(p), delta(p)); equal to (2, -1, 2, -1)."""
    return closed_form_D(p, p)


def closed_form_Am_Bm_Cm(m: int, p: int, a1, a2, a3, uncorrected: bool = False
                         ) -> tuple[FpElement, FpElement, FpElement]:
    """A_m, B_m, C_m for b = 3 at the point (a1, a2, a3), by direct summation."""
    check_odd_prime(p)
    if not 1 <= m <= p:
        raise ValueError("need 1 <= m <= p")
    a1, a2, a3 = (FpElement(int(v), p) for v in (a1, a2, a3))
    A = a1**m * _tf(3 * m - 2, p)
    sb = _tf(3 * m - 1, p)
    for r in range(1, m):
        sb += _tf(3 * r + 1, p) * _ratio(3 * m - 1, 3 * r + 2, p)
    B = a2 * a1 ** (m - 1) * sb
    s3 = _tf(3 * m, p) if uncorrected else _ratio(3 * m, 3, p)
    s22 = 0
    for r in range(1, m):
        top = _ratio(3 * m, 3 * r + 3, p)
        s3 += top * _tf(3 * r + 1, p)
        s22 += top * _tf(3 * r + 2, p)
        for n in range(1, r):
            s22 += top * _tf(3 * n + 1, p) * _ratio(3 * r + 2, 3 * n + 2, p)
    C = a3 * a1 ** (m - 1) * s3
    if m >= 2:
        C = C + a2 * a2 * a1 ** (m - 2) * s22
    return A, B, C


def closed_form_state(m: int, p: int, a: Sequence[int]) -> list[FpElement]:
    """(A_m, B_m, C_m, D_m) from the closed forms; needs a_1 != 0 when m < 3."""
    A, B, C = closed_form_Am_Bm_Cm(m, p, *a[:3])
    al, be, ga, de = closed_form_D(m, p)
    x1, x2, x3, x4 = (FpElement(v, p) for v in a)
    D = al * x1 ** (m + 1) + be * x1 ** (m - 3) * x2**3 + ga * x1 ** (m - 2) * x2 * x3 \
        + de * x1 ** (m - 1) * x4
    return [A, B, C, D]


def closed_form_polynomial(p: int) -> MultiPoly:
    """alpha x1^4 + beta x2^3 + gamma x1 x2 x3 + delta x1^2 x4 over F_p."""
    al, be, ga, de = closed_form_b3(p)
    terms = {(4, 0, 0, 0): al.value, (0, 3, 0, 0): be.value,
             (1, 1, 1, 0): ga.value, (2, 0, 0, 1): de.value}
    return MultiPoly(terms, 4, Domain.fp(p))


# auxiliary identities used by the b = 3 proof


def verify_lemmas(p: int) -> dict[str, bool]:
    """Evaluate each auxiliary identity by direct summation; name -> holds."""
    check_odd_prime(p)
    if p == 3:
        raise BadPrime("the identities need p > 3")
    t = inverse_of_three(p).value
    report = {}

    # (3x + y)!!! = 3^x (x + y t)!/(y t)!
    ok = True
    for x in range(0, 3 * p):
        for y in range(3):
            lhs = _tf(3 * x + y, p)
            rhs = pow(3, x, p) * falling_product(y * t + 1, x + y * t, p) % p
            ok &= lhs == rhs
    report["triple_factorial"] = ok

    # (r+1)! (p-r-2)! = (-1)^r for 0 < r < p-1
    report["wilson"] = all(
        falling_product(1, r + 1, p) * falling_product(1, p - r - 2, p) % p == (-1) ** r % p
        for r in range(1, p - 1))

    # C(t, r) C(r+p+t-1, 2t) = C(p-t, r) C(p+t-1, 2t) for 0 < r < p
    def binom(n, k):
        c = PValued.binomial(n, k, p)
        return 0 if c is None else c.residue()

    report["binomial_swap"] = all(
        binom(t, r) * binom(r + p + t - 1, 2 * t) % p == binom(p - t, r) * binom(p + t - 1, 2 * t) % p
        for r in range(1, p))

    F = lambda n: PValued.factorial(n, p)  # noqa: E731
    total = 0
    for r in range(1, p):
        total += (F(p + t - 1) / F(r + t + 1) * F(r + 1)).residue()
    report["single_sum"] = total % p == 0

    c = PValued.binomial(t + p + 1, 2 * t, p)
    total = 0
    if c is not None:
        const = F(p - t) / F(p + t) * c
        for r in range(1, p):
            head = F(p + t) / F(r + t + 1) * F(r + 1)
            for n in range(1, r):
                total += (head / F(n + 1) * F(n + 2 * t) * const).residue()
    report["double_sum"] = total % p == 0
    return report


@dataclass
class ConjectureReport:
    checked: list[tuple[int, int]] = field(default_factory=list)
    counterexamples: list[tuple[int, int, list[bool]]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def conjecture_harness(bs: Iterable[int] = range(1, 11), primes_per_b: int = 10,
                       primes: Iterable[int] | None = None, workers: int = 1) -> ConjectureReport:
    """Check A_{1,p} = ... = A_{b,p} = 0 and log any (b, p) where it fails.

    By default each b uses its first ``primes_per_b`` admissible primes
    (odd p > b + 1); pass ``primes`` to use one explicit list for every b.
    """
    report = ConjectureReport()
    fixed = None if primes is None else list(primes)
    for b in bs:
        plist = fixed if fixed is not None else admissible_primes(b, primes_per_b)
        for p in plist:
            if b % p == 0:
                continue
            res = coefficient_vector(b, p, workers=workers, normalize=False)
            report.checked.append((b, p))
            if not res.leading_zeros:
                log.warning("leading entries nonzero for b=%d, p=%d: %s", b, p, res.leading_zero_check)
                report.counterexamples.append((b, p, res.leading_zero_check))
    return report


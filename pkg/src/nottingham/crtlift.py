"""Lift the per-prime criterion polynomials to integer coefficients by the
Chinese remainder theorem, taking symmetric representatives."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .criterion import coefficient_vector
from .errors import BadPrime, EmptyPrimeList
from .field import check_odd_prime, symmetric
from .multipoly import Domain, MultiPoly, canonical_key

log = logging.getLogger(__name__)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """x mod m1*m2 with x = r1 (mod m1), x = r2 (mod m2); coprime moduli."""
    k = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * k, m1 * m2


class CRTAccumulator:
    """Garner-style incremental CRT: residues can be fed one prime at a time."""

    def __init__(self):
        self.residue = 0
        self.modulus = 1

    def add(self, r: int, m: int) -> "CRTAccumulator":
        self.residue, self.modulus = crt_pair(self.residue, self.modulus, r % m, m)
        return self

    def symmetric(self) -> int:
        return symmetric(self.residue, self.modulus)


@dataclass
class LiftReport:
    b: int
    primes: list[int]
    modulus: int
    lifted: MultiPoly
    support_agreement: bool
    per_prime_residues: dict[int, MultiPoly]
    unstable: list[tuple] = field(default_factory=list)
    # monomial -> {p: residue} for monomials missing at some prime
    mismatches: dict[tuple, dict[int, int]] = field(default_factory=dict)

    @property
    def stable(self) -> bool:
        return not self.unstable

    def to_json(self) -> dict:
        out = self.lifted.to_json()
        out.update({
            "b": self.b,
            "primes": self.primes,
            "support_agreement": self.support_agreement,
            "unstable": [list(e) for e in self.unstable],
            "mismatches": [
                {"exponents": list(e), "residues": {str(p): str(r) for p, r in sorted(res.items())}}
                for e, res in sorted(self.mismatches.items(), key=lambda t: canonical_key(t[0]))
            ],
        })
        return out


def _validate(b: int, primes: list[int]):
    if not primes:
        raise EmptyPrimeList("at least one prime is needed")
    if len(set(primes)) != len(primes):
        raise BadPrime(f"primes must be distinct: {primes}")
    for p in primes:
        check_odd_prime(p)
        if b % p == 0:
            raise BadPrime(f"p = {p} divides b = {b}")
        if p <= b + 1:
            raise BadPrime(f"p = {p} must exceed b + 1 = {b + 1} for a stable normalization")


def lift_residues(per_prime: dict[int, MultiPoly]) -> tuple[MultiPoly, bool, dict]:
    """CRT-combine polynomials over different F_p, monomial by monomial.

    Absent monomials count as residue 0.  Returns (lifted, supports agree,
    mismatch report).
    """
    primes = list(per_prime)
    polys = [per_prime[p] for p in primes]
    nvars = polys[0].nvars
    supports = [q.support() for q in polys]
    union = frozenset().union(*supports)
    agree = all(s == supports[0] for s in supports)
    modulus = 1
    for p in primes:
        modulus *= p
    terms = {}
    mismatches = {}
    for e in union:
        acc = CRTAccumulator()
        for p, q in zip(primes, polys):
            acc.add(q.coefficient(e), p)
        terms[e] = acc.symmetric()
        if not agree and any(e not in s for s in supports):
            mismatches[e] = {p: q.coefficient(e) for p, q in zip(primes, polys)}
    return MultiPoly(terms, nvars, Domain.zz(modulus)), agree, mismatches


def lift_Pb(b: int, primes: Iterable[int], workers: int = 1) -> LiftReport:
    """Probable integer P_b from its reductions modulo ``primes``."""
    primes = list(primes)
    _validate(b, primes)

    def job(p):
        return coefficient_vector(b, p).polynomial

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            polys = list(pool.map(job, primes))
    else:
        polys = [job(p) for p in primes]
    per_prime = dict(zip(primes, polys))
    lifted, agree, mismatches = lift_residues(per_prime)
    M = lifted.domain.modulus
    # a symmetric lift is only trusted well inside (-M/2, M/2]
    unstable = [e for e, c in lifted.sorted_terms() if 2 * c * c > M]
    if unstable:
        log.warning("lift unstable for %d monomial(s); add primes", len(unstable))
    if not agree:
        log.warning("monomial supports differ across primes for b=%d", b)
    return LiftReport(b=b, primes=primes, modulus=M, lifted=lifted, support_agreement=agree,
                      per_prime_residues=per_prime, unstable=unstable, mismatches=mismatches)

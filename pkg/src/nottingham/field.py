"""Exact arithmetic in F_p and the combinatorial quantities used by the
closed-form computations (factorials, binomials, triple factorials).

Scalars inside the hot loops of :mod:`nottingham.series` and
:mod:`nottingham.multipoly` are plain ``int`` residues; :class:`FpElement`
is the value type exposed at API boundaries.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator

from .errors import BadPrime, ModulusMismatch, ZeroInverse


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise BadPrime(f"modulus must be an integer, got {p!r}")
    if p == 2 or not is_prime(p):
        raise BadPrime(f"{p} is not an odd prime")
    return p


def symmetric(value: int, modulus: int) -> int:
    """Representative of ``value`` mod ``modulus`` in (-modulus/2, modulus/2]."""
    value %= modulus
    return value - modulus if 2 * value > modulus else value


class FpElement:
    """A residue modulo an odd prime ``p``.

    Operands with different moduli raise :class:`ModulusMismatch`; plain
    integers are coerced into the field of the other operand.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        check_odd_prime(modulus)
        self.modulus = modulus
        self.value = int(value) % modulus

    @classmethod
    def _raw(cls, value: int, modulus: int) -> "FpElement":
        # skips the primality check for results of closed operations
        obj = object.__new__(cls)
        obj.modulus = modulus
        obj.value = value % modulus
        return obj

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"cannot combine residues mod {self.modulus} and mod {other.modulus}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement._raw(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement._raw(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement._raw(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement._raw(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElement._raw(o, self.modulus).inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement._raw(o, self.modulus) * self.inv()

    def __neg__(self):
        return FpElement._raw(-self.value, self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inv() ** (-exponent)
        return FpElement._raw(pow(self.value, exponent, self.modulus), self.modulus)

    def inv(self) -> "FpElement":
        if self.value == 0:
            raise ZeroInverse(f"0 has no inverse mod {self.modulus}")
        return FpElement._raw(pow(self.value, -1, self.modulus), self.modulus)

    def symmetric(self) -> int:
        return symmetric(self.value, self.modulus)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"FpElement({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


def inv(x: FpElement) -> FpElement:
    return x.inv()


def factorial_mod(n: int, p: int) -> FpElement:
    if n < 0:
        raise ValueError("factorial of a negative number")
    check_odd_prime(p)
    if n >= p:
        return FpElement._raw(0, p)
    r = 1
    for i in range(2, n + 1):
        r = r * i % p
    return FpElement._raw(r, p)


def binomial_mod(n: int, k: int, p: int) -> FpElement:
    """C(n, k) mod p, taken to be 0 when k < 0 or k > n."""
    check_odd_prime(p)
    if n < 0:
        raise ValueError("binomial with negative top index")
    if k < 0 or k > n:
        return FpElement._raw(0, p)
    return FpElement._raw(math.comb(n, k), p)


def triple_factorial(n: int, p: int) -> FpElement:
    """n!!! = n (n-3) (n-6) ... with 0!!! = 1!!! = 2!!! = 1, reduced mod p."""
    if n < 0:
        raise ValueError("triple factorial of a negative number")
    check_odd_prime(p)
    r = 1
    while n > 2:
        r = r * n % p
        n -= 3
    return FpElement._raw(r, p)


def falling_product(lo: int, hi: int, p: int) -> int:
    """Product of the integers lo..hi reduced mod p (1 for an empty range).

    Factorial ratios such as hi!/(lo-1)! are evaluated this way so that a
    factor of p present in both numerator and denominator never appears.
    """
    r = 1
    for i in range(lo, hi + 1):
        r = r * i % p
    return r


def triple_ratio(n: int, k: int, p: int) -> int:
    """n!!!/k!!! as the product n (n-3) ... (k+3) mod p; needs n >= k, n = k mod 3."""
    if n < k or (n - k) % 3:
        raise ValueError(f"{n}!!!/{k}!!! is not a falling product")
    r = 1
    while n > k and n > 2:
        r = r * n % p
        n -= 3
    return r


def inverse_of_three(p: int) -> FpElement:
    """3^{-1} mod p via the case split on p mod 3."""
    check_odd_prime(p)
    if p == 3:
        raise BadPrime("3 is not invertible mod 3")
    t = (2 * p + 1) // 3 if p % 3 == 1 else (p + 1) // 3
    return FpElement._raw(t, p)


def factorial_pval(n: int, p: int) -> tuple[int, int]:
    """Write n! = p^v * u with p not dividing u; returns (u mod p, v)."""
    unit, val = 1, 0
    for i in range(2, n + 1):
        while i % p == 0:
            i //= p
            val += 1
        unit = unit * i % p
    return unit, val


class PValued:
    """A nonzero element of Q_p known through its valuation and unit residue.

    Used to evaluate expressions that are p-integral as a whole although
    individual factorials in them are divisible by p.
    """

    __slots__ = ("unit", "val", "p")

    def __init__(self, unit: int, val: int, p: int):
        self.unit = unit % p
        self.val = val
        self.p = p

    @classmethod
    def of_int(cls, n: int, p: int) -> "PValued":
        if n == 0:
            raise ValueError("zero has no unit part")
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return cls(n, v, p)

    @classmethod
    def factorial(cls, n: int, p: int) -> "PValued":
        return cls(*factorial_pval(n, p), p)

    @classmethod
    def binomial(cls, n: int, k: int, p: int) -> "PValued | None":
        if k < 0 or k > n:
            return None
        return cls.factorial(n, p) / (cls.factorial(k, p) * cls.factorial(n - k, p))

    def __mul__(self, other: "PValued") -> "PValued":
        return PValued(self.unit * other.unit, self.val + other.val, self.p)

    def __truediv__(self, other: "PValued") -> "PValued":
        return PValued(self.unit * pow(other.unit, -1, self.p), self.val - other.val, self.p)

    def residue(self) -> int:
        """Reduction mod p; raises if the element is not p-integral."""
        if self.val < 0:
            raise ZeroInverse(f"value has p-adic valuation {self.val} < 0")
        return self.unit if self.val == 0 else 0


def primes_from(start: int) -> Iterator[int]:
    n = max(start, 3)
    while True:
        if n > 2 and is_prime(n):
            yield n
        n += 1


def admissible_primes(b: int, count: int, start: int = 3) -> list[int]:
    """The first ``count`` odd primes p >= start with p > b + 1.

    p > b + 1 makes the normalized criterion polynomial's degree smaller
    than p (so reduction mod p cannot merge its monomials) and implies p
    does not divide b.
    """
    out = []
    for q in primes_from(max(start, b + 2)):
        if len(out) == count:
            break
        out.append(q)
    return out


def primes_not_dividing(b: int, count: int, start: int = 3) -> list[int]:
    out = []
    for q in primes_from(start):
        if len(out) == count:
            break
        if b % q:
            out.append(q)
    return out

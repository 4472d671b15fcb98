"""Truncated power series over F_p: composition, iteration, valuation and
ramification numbers.

A :class:`TruncSeries` with truncation order ``N`` stands for a series
known modulo X^(N+1).  Coefficients are stored densely, index = degree.
"""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .errors import (
    InsufficientPrecision,
    ModulusMismatch,
    NonzeroConstantTerm,
    NotNottingham,
)
from .field import check_odd_prime


class _TruncatedZero:
    """Valuation of a series whose stored coefficients all vanish.

    The true valuation is either above the truncation order or infinite;
    callers that need a number must raise the precision and retry.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TruncatedZero"

    def __reduce__(self):
        return (_TruncatedZero, ())


TruncatedZero = _TruncatedZero()
Valuation = Union[int, _TruncatedZero]


def _dtype_for(n: int, p: int):
    # int64 convolution is exact while (n+1)(p-1)^2 stays below 2^63
    return np.int64 if (n + 1) * (p - 1) ** 2 < 2**62 else object


def _mul_trunc(a: np.ndarray, b: np.ndarray, n: int, p: int) -> np.ndarray:
    """(a*b) mod (X^(n+1), p) for coefficient arrays a, b."""
    if n < 0:
        return a[:0]
    prod = np.convolve(a[: n + 1], b[: n + 1])[: n + 1]
    return prod % p


class TruncSeries:
    """A power series over F_p known modulo X^(N+1)."""

    __slots__ = ("p", "N", "coeffs", "_arr")

    def __init__(self, coeffs: Sequence[int], p: int, N: int | None = None):
        check_odd_prime(p)
        coeffs = [int(c) % p for c in coeffs]
        if N is None:
            N = len(coeffs) - 1
        if N < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(coeffs) > N + 1:
            coeffs = coeffs[: N + 1]
        else:
            coeffs = coeffs + [0] * (N + 1 - len(coeffs))
        self.p = p
        self.N = N
        self.coeffs = tuple(coeffs)
        self._arr = None

    @classmethod
    def _from_array(cls, arr: np.ndarray, p: int) -> "TruncSeries":
        obj = object.__new__(cls)
        obj.p = p
        obj.N = len(arr) - 1
        obj.coeffs = tuple(int(c) for c in arr)
        obj._arr = None
        return obj

    @classmethod
    def identity(cls, p: int, N: int) -> "TruncSeries":
        return cls([0, 1], p, N)

    @classmethod
    def from_normal_form(cls, a: Sequence[int], b: int, p: int, N: int) -> "TruncSeries":
        """X + sum_i a_i X^(i+b), where ``a`` lists a_1, a_2, ...; terms past X^N drop."""
        if b < 1:
            raise ValueError("b must be positive")
        coeffs = [0, 1] + [0] * (b - 1) + list(a)
        return cls(coeffs, p, N)

    @property
    def trunc_order(self) -> int:
        return self.N

    def array(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.array(self.coeffs, dtype=_dtype_for(self.N, self.p))
        return self._arr

    def is_nottingham(self) -> bool:
        return self.N >= 1 and self.coeffs[0] == 0 and self.coeffs[1] == 1

    def _check_compatible(self, other: "TruncSeries"):
        if self.p != other.p:
            raise ModulusMismatch(f"series over F_{self.p} and F_{other.p}")

    def truncate(self, M: int) -> "TruncSeries":
        if M > self.N:
            raise ValueError(f"cannot extend a series known to X^{self.N} up to X^{M}")
        return TruncSeries(self.coeffs[: M + 1], self.p, M)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self):
        return self.N + 1

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compatible(other)
        n = min(self.N, other.N)
        return TruncSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], self.p, n)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compatible(other)
        n = min(self.N, other.N)
        return TruncSeries([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], self.p, n)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.p, self.N)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncSeries([c * other for c in self.coeffs], self.p, self.N)
        self._check_compatible(other)
        n = min(self.N, other.N)
        return TruncSeries._from_array(_mul_trunc(self.array(), other.array(), n, self.p), self.p)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.p == other.p and self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.N, self.coeffs))

    def __call__(self, inner: "TruncSeries") -> "TruncSeries":
        return compose(self, inner)

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)}, p={self.p}, N={self.N})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else ("X" if k == 1 else f"X^{k}")
            terms.append(mono if c == 1 and k else f"{c}*{mono}" if k else str(c))
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(X^{self.N + 1})"


def compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """outer(inner(X)) modulo X^(N+1), N = min of the two truncation orders.

    Horner's scheme; the k-th partial result only matters modulo
    X^(N-k+1) because it is later multiplied by inner^k.
    """
    outer._check_compatible(inner)
    if inner.coeffs[0] != 0:
        raise NonzeroConstantTerm("inner series must have zero constant term")
    p = outer.p
    N = min(outer.N, inner.N)
    g = inner.array()[: N + 1]
    c = outer.array()
    acc = c[N : N + 1].copy()
    for k in range(N - 1, -1, -1):
        acc = _mul_trunc(g, acc, N - k, p)
        acc[0] = (acc[0] + c[k]) % p
    return TruncSeries._from_array(acc, p)


def _require_nottingham(f: TruncSeries):
    if not f.is_nottingham():
        raise NotNottingham("expected a series of the form X + (higher terms)")


def iterate(f: TruncSeries, k: int, method: str = "binary") -> TruncSeries:
    """The k-fold composition f o f o ... o f.

    ``method="binary"`` squares and multiplies (valid because all the
    factors are powers of the same element and so commute);
    ``method="repeated"`` composes one factor at a time.
    """
    _require_nottingham(f)
    if k < 1:
        raise ValueError("iteration count must be positive")
    if method == "repeated":
        result = f
        for _ in range(k - 1):
            result = compose(result, f)
        return result
    if method != "binary":
        raise ValueError(f"unknown iteration method {method!r}")
    result = None
    base = f
    while True:
        if k & 1:
            result = base if result is None else compose(result, base)
        k >>= 1
        if not k:
            return result
        base = compose(base, base)


def valuation(f: TruncSeries) -> Valuation:
    for k, c in enumerate(f.coeffs):
        if c:
            return k
    return TruncatedZero


def ramification(f: TruncSeries) -> Valuation:
    """val(f - X) - 1, or TruncatedZero when f agrees with X to truncation."""
    _require_nottingham(f)
    v = valuation(f - TruncSeries.identity(f.p, f.N))
    return v if v is TruncatedZero else v - 1


def ramification_number(f: TruncSeries, n: int) -> int:
    """i_n(f) = i(f^(p^n)); raises InsufficientPrecision if truncation hides it."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    r = ramification(iterate(f, f.p**n) if n else f)
    if r is TruncatedZero:
        raise InsufficientPrecision(
            f"f^(p^{n}) - X vanishes through X^{f.N}; i_{n}(f) >= {f.N}")
    return r


def delta_step(delta: TruncSeries, f: TruncSeries) -> TruncSeries:
    """Next difference iterate: delta o f - delta."""
    if delta.N != f.N:
        raise ValueError("delta and f must share a truncation order")
    return compose(delta, f) - delta


def delta_iterates(f: TruncSeries, count: int) -> list[TruncSeries]:
    """[Delta_1, ..., Delta_count] with Delta_1 = f - X."""
    _require_nottingham(f)
    out = [f - TruncSeries.identity(f.p, f.N)]
    while len(out) < count:
        out.append(delta_step(out[-1], f))
    return out


def compositional_inverse(f: TruncSeries) -> TruncSeries:
    """g with f(g) = g(f) = X, solved one coefficient at a time."""
    _require_nottingham(f)
    p, N = f.p, f.N
    g = [0, 1] + [0] * (N - 1)
    for k in range(2, N + 1):
        # f(g + c X^k) = f(g) + c X^k + O(X^(k+1)) since f'(0) = 1
        h = compose(f.truncate(k), TruncSeries(g[: k + 1], p, k))
        g[k] = (g[k] - h.coeffs[k]) % p
    return TruncSeries(g, p, N)

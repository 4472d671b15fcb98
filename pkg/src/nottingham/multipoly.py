"""Sparse multivariate polynomials in x1..x_n over F_p or over the integers
(optionally modulo M, stored in the symmetric range).

Terms live in a dict mapping exponent tuples to nonzero coefficients.
Printing and serialization use the canonical order: higher total degree
first, ties broken by ascending exponent vector.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainMismatch, ExponentOverflow
from .field import FpElement, check_odd_prime, symmetric

Exponents = tuple


@dataclass(frozen=True)
class Domain:
    """Coefficient ring: ``kind`` is "Fp" (modulus = p) or "ZZ" (modulus = M or None)."""

    kind: str
    modulus: int | None = None

    @classmethod
    def fp(cls, p: int) -> "Domain":
        return cls("Fp", check_odd_prime(p))

    @classmethod
    def zz(cls, modulus: int | None = None) -> "Domain":
        if modulus is not None and modulus < 2:
            raise ValueError("integer modulus must be at least 2")
        return cls("ZZ", modulus)

    def reduce(self, c: int) -> int:
        if self.kind == "Fp":
            return c % self.modulus
        if self.modulus is None:
            return c
        return symmetric(c, self.modulus)

    def display(self, c: int) -> int:
        return symmetric(c, self.modulus) if self.kind == "Fp" else c

    def __str__(self):
        if self.kind == "Fp":
            return f"F_{self.modulus}"
        return "ZZ" if self.modulus is None else f"ZZ/{self.modulus}"


def canonical_key(exps: Exponents):
    return (-sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial; see the module docstring for the order."""

    __slots__ = ("nvars", "domain", "terms")

    def __init__(self, terms: Mapping[Sequence[int], int], nvars: int, domain: Domain):
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean: dict = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = int(c)
            clean[exps] = clean.get(exps, 0) + c
        self.nvars = nvars
        self.domain = domain
        self.terms = {e: r for e, c in clean.items() if (r := domain.reduce(c))}

    @classmethod
    def _make(cls, terms: dict, nvars: int, domain: Domain) -> "MultiPoly":
        # terms already reduced and pruned
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.domain = domain
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int, domain: Domain) -> "MultiPoly":
        return cls._make({}, nvars, domain)

    @classmethod
    def constant(cls, c: int, nvars: int, domain: Domain) -> "MultiPoly":
        return cls({(0,) * nvars: c}, nvars, domain)

    @classmethod
    def variable(cls, k: int, nvars: int, domain: Domain) -> "MultiPoly":
        """x_k, 1-based."""
        if not 1 <= k <= nvars:
            raise ValueError(f"no variable x{k} among {nvars}")
        e = [0] * nvars
        e[k - 1] = 1
        return cls._make({tuple(e): 1}, nvars, domain)

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int, domain: Domain) -> "MultiPoly":
        return cls({tuple(exps): c}, len(exps), domain)

    # ring operations

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars or self.domain != other.domain:
            raise DomainMismatch(
                f"cannot combine polynomials in {self.nvars} vars over {self.domain} "
                f"and {other.nvars} vars over {other.domain}")

    def _scalar(self, c) -> int | None:
        if isinstance(c, FpElement):
            if self.domain.kind != "Fp" or c.modulus != self.domain.modulus:
                raise DomainMismatch(f"residue mod {c.modulus} used over {self.domain}")
            return c.value
        if isinstance(c, int) and not isinstance(c, bool):
            return c
        return None

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            c = self._scalar(other)
            if c is None:
                return NotImplemented
            other = MultiPoly.constant(c, self.nvars, self.domain)
        self._check(other)
        red = self.domain.reduce
        out = dict(self.terms)
        for e, c in other.terms.items():
            r = red(out.get(e, 0) + c)
            if r:
                out[e] = r
            else:
                out.pop(e, None)
        return MultiPoly._make(out, self.nvars, self.domain)

    __radd__ = __add__

    def __neg__(self):
        red = self.domain.reduce
        return MultiPoly._make({e: red(-c) for e, c in self.terms.items()}, self.nvars, self.domain)

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            return self + (-other)
        c = self._scalar(other)
        return NotImplemented if c is None else self + (-c)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        k = self._scalar(c)
        if k is None:
            raise TypeError(f"cannot scale by {c!r}")
        red = self.domain.reduce
        out = {}
        for e, v in self.terms.items():
            r = red(v * k)
            if r:
                out[e] = r
        return MultiPoly._make(out, self.nvars, self.domain)

    def mul_monomial(self, exps: Sequence[int], c: int) -> "MultiPoly":
        """self * c * x^exps; the workhorse of the criterion recurrence."""
        red = self.domain.reduce
        out = {}
        for e, v in self.terms.items():
            r = red(v * c)
            if r:
                out[tuple(a + b for a, b in zip(e, exps))] = r
        return MultiPoly._make(out, self.nvars, self.domain)

    def mul(self, other: "MultiPoly", workers: int = 1) -> "MultiPoly":
        """Product; with workers > 1 the left factor's terms are split into
        chunks multiplied concurrently and merged in chunk order."""
        self._check(other)
        items = sorted(self.terms.items(), key=lambda t: canonical_key(t[0]))
        right = list(other.terms.items())

        def partial(chunk):
            acc: dict = {}
            for e1, c1 in chunk:
                for e2, c2 in right:
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc[e] = acc.get(e, 0) + c1 * c2
            return acc

        if workers > 1 and len(items) > 1:
            size = -(-len(items) // workers)
            chunks = [items[i : i + size] for i in range(0, len(items), size)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(partial, chunks))
        else:
            parts = [partial(items)]
        total: dict = {}
        for part in parts:
            for e, c in part.items():
                total[e] = total.get(e, 0) + c
        red = self.domain.reduce
        return MultiPoly._make({e: r for e, c in total.items() if (r := red(c))},
                               self.nvars, self.domain)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return self.mul(other)
        c = self._scalar(other)
        return NotImplemented if c is None else self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.nvars, self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # queries

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.nvars == other.nvars and self.domain == other.domain
                    and self.terms == other.terms)
        if isinstance(other, int) and not isinstance(other, bool):
            return self == MultiPoly.constant(other, self.nvars, self.domain)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, self.domain, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def total_degree(self) -> int:
        """-1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        return sorted(self.terms.items(), key=lambda t: canonical_key(t[0]))

    def evaluate(self, point: Sequence):
        """Value at ``point``; FpElement over F_p, int over ZZ."""
        if len(point) != self.nvars:
            raise DomainMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        vals = []
        for x in point:
            if isinstance(x, FpElement):
                if self.domain.kind != "Fp" or x.modulus != self.domain.modulus:
                    raise DomainMismatch(f"coordinate mod {x.modulus} for a polynomial over {self.domain}")
                x = x.value
            vals.append(int(x))
        M = self.domain.modulus
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= pow(x, k, M) if M else x**k
            total += t
        total = self.domain.reduce(total)
        return FpElement(total, M) if self.domain.kind == "Fp" else total

    def __call__(self, *point):
        return self.evaluate(point)

    def reduce_mod(self, p: int) -> "MultiPoly":
        """Image over F_p of an integer polynomial (or the identity over F_p)."""
        if self.domain.kind == "Fp" and self.domain.modulus != p:
            raise DomainMismatch(f"cannot reduce a polynomial over {self.domain} mod {p}")
        if self.domain.kind == "ZZ" and self.domain.modulus is not None and self.domain.modulus % p:
            raise DomainMismatch(f"{p} does not divide the modulus {self.domain.modulus}")
        return MultiPoly(self.terms, self.nvars, Domain.fp(p))

    def change_domain(self, domain: Domain) -> "MultiPoly":
        return MultiPoly(self.terms, self.nvars, domain)

    # text and JSON

    def variables(self) -> list[str]:
        return [f"x{k}" for k in range(1, self.nvars + 1)]

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.variables()
        out = []
        for exps, c in self.sorted_terms():
            c = self.domain.display(c)
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, exps) if k]
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, nvars={self.nvars}, domain={self.domain})"

    def to_json(self) -> dict:
        M = self.domain.modulus
        return {
            "variables": self.variables(),
            "modulus": None if M is None else str(M),
            "domain": self.domain.kind,
            "terms": [{"exponents": list(e), "coefficient": str(c)} for e, c in self.sorted_terms()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping | str) -> "MultiPoly":
        if isinstance(data, str):
            data = json.loads(data)
        nvars = len(data["variables"])
        M = None if data.get("modulus") is None else int(data["modulus"])
        kind = data.get("domain", "Fp" if M is not None else "ZZ")
        domain = Domain.fp(M) if kind == "Fp" else Domain.zz(M)
        terms = {tuple(t["exponents"]): int(t["coefficient"]) for t in data["terms"]}
        return cls(terms, nvars, domain)


def from_dict(terms: Mapping[Sequence[int], int], domain: Domain) -> MultiPoly:
    """Build from {exponents: coefficient}; the variable count is read off the keys."""
    keys = list(terms)
    if not keys:
        raise ValueError("cannot infer the variable count of an empty dict")
    return MultiPoly(terms, len(keys[0]), domain)


def fermat_normalize(poly: MultiPoly, p: int | None = None) -> MultiPoly:
    """Canonical representative of ``poly`` modulo x1^(p-1) = 1.

    Each candidate multiplies by x1^s (0 <= s <= p-2) and then divides by
    the largest power of x1^(p-1) dividing the product, so it agrees with
    x1^s * poly wherever x1 is a nonzero residue.  The winner has minimal
    total degree, then minimal largest x1-exponent, then the smallest
    term list in canonical order.
    """
    if p is None:
        if poly.domain.kind != "Fp":
            raise DomainMismatch("fermat_normalize needs p for integer polynomials")
        p = poly.domain.modulus
    check_odd_prime(p)
    for e in poly.terms:
        if any(k >= p for k in e[1:]):
            raise ExponentOverflow(
                f"exponent vector {e} has a non-x1 exponent >= p = {p}; p is too small")
    if not poly.terms:
        return poly
    best = None
    best_key = None
    for s in range(p - 1):
        low = min(e[0] for e in poly.terms) + s
        shift = s - (low // (p - 1)) * (p - 1)
        terms = {(e[0] + shift,) + e[1:]: c for e, c in poly.terms.items()}
        cand = MultiPoly._make(terms, poly.nvars, poly.domain)
        ordered = cand.sorted_terms()
        key = (cand.total_degree(), max(e[0] for e in terms),
               [(canonical_key(e), c) for e, c in ordered])
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best

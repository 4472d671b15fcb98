import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nottingham.errors import BadPrime, ModulusMismatch, ZeroInverse
from nottingham.field import (
    FpElement,
    PValued,
    admissible_primes,
    binomial_mod,
    check_odd_prime,
    factorial_mod,
    falling_product,
    inv,
    inverse_of_three,
    is_prime,
    primes_not_dividing,
    symmetric,
    triple_factorial,
    triple_ratio,
)
from oracles import triple_fact

PRIMES = [3, 5, 7, 11, 13, 101]
primes = st.sampled_from(PRIMES)


def test_inverse_examples():
    assert inv(FpElement(3, 7)) == FpElement(5, 7)
    assert inv(FpElement(1, 5)) == 1
    with pytest.raises(ZeroInverse):
        inv(FpElement(0, 5))


def test_bad_moduli():
    for m in (2, 4, 9, 1, 0, -3):
        with pytest.raises(BadPrime):
            FpElement(1, m)
    with pytest.raises(BadPrime):
        check_odd_prime(True)


def test_mixed_moduli_rejected():
    with pytest.raises(ModulusMismatch):
        FpElement(1, 5) + FpElement(1, 7)


def test_int_coercion_and_symmetric():
    x = FpElement(3, 5)
    assert x + 4 == 2 and 4 + x == 2 and 1 - x == 3 and x * 2 == 1
    assert 1 / x == FpElement(2, 5)
    assert x ** -1 == FpElement(2, 5)
    assert FpElement(4, 5).symmetric() == -1
    assert symmetric(5, 10) == 5 and symmetric(6, 10) == -4


@given(primes, st.integers(), st.integers())
def test_field_axioms(p, a, b):
    x, y = FpElement(a, p), FpElement(b, p)
    assert x + y == (a + b) % p
    assert x * y == (a * b) % p
    assert x - y + y == x
    if y:
        assert (x / y) * y == x
        assert y * y.inv() == 1


@given(primes, st.integers(min_value=1))
def test_fermat(p, a):
    x = FpElement(a, p)
    if x:
        assert x ** (p - 1) == 1


def test_factorials_and_binomials():
    assert factorial_mod(4, 7) == 24 % 7
    assert factorial_mod(7, 7) == 0
    assert binomial_mod(5, 2, 7) == 3
    assert binomial_mod(3, 5, 7) == 0 and binomial_mod(3, -1, 7) == 0


@given(st.integers(min_value=0, max_value=60), primes)
def test_triple_factorial(n, p):
    assert triple_factorial(n, p) == triple_fact(n) % p


def test_triple_factorial_base_cases():
    assert [triple_factorial(n, 101).value for n in range(8)] == [1, 1, 1, 3, 4, 5, 18, 28]


@given(st.integers(min_value=0, max_value=40), st.integers(min_value=0, max_value=40), primes)
def test_falling_products(lo, span, p):
    hi = lo + span
    assert falling_product(lo + 1, hi, p) == (math.factorial(hi) // math.factorial(lo)) % p
    k = hi - 3 * (span // 3)
    assert triple_ratio(hi, k, p) == (triple_fact(hi) // triple_fact(k)) % p


def test_triple_ratio_rejects_misaligned():
    with pytest.raises(ValueError):
        triple_ratio(10, 8, 7)


def test_inverse_of_three():
    for p in (5, 7, 11, 13, 199):
        assert inverse_of_three(p) * 3 == 1
    with pytest.raises(BadPrime):
        inverse_of_three(3)


def test_pvalued_cancels_factors_of_p():
    p = 5
    # 10!/(5! 5!) = 252, not divisible by 5
    c = PValued.binomial(10, 5, p)
    assert c.val == 0 and c.residue() == 252 % 5
    assert PValued.binomial(25, 5, p).residue() == math.comb(25, 5) % 5
    assert PValued.binomial(3, 4, p) is None
    with pytest.raises(ZeroInverse):
        (PValued.of_int(1, p) / PValued.of_int(5, p)).residue()


@given(st.integers(min_value=1, max_value=200), st.integers(min_value=0, max_value=200), primes)
def test_pvalued_binomial_matches_comb(n, k, p):
    c = PValued.binomial(n, k, p)
    if k > n:
        assert c is None
    else:
        assert (c.residue() if c.val >= 0 else None) == math.comb(n, k) % p


def test_prime_lists():
    assert admissible_primes(3, 4) == [5, 7, 11, 13]
    assert admissible_primes(1, 3) == [3, 5, 7]
    assert primes_not_dividing(6, 3) == [5, 7, 11]
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_is_prime_matches_sieve():
    limit = 5000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert all(is_prime(n) == sieve[n] for n in range(limit))
    assert is_prime((1 << 61) - 1) and not is_prime((1 << 61) + 1)

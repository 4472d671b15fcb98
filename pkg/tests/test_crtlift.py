import pytest
from hypothesis import given
from hypothesis import strategies as st

from nottingham.crtlift import CRTAccumulator, crt_pair, lift_Pb, lift_residues
from nottingham.errors import BadPrime, EmptyPrimeList
from nottingham.field import admissible_primes
from nottingham.multipoly import Domain, MultiPoly
from published import PUBLISHED, RECURRENCE, poly


@given(st.lists(st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23]), min_size=1, unique=True),
       st.integers(-10**9, 10**9))
def test_crt_recovers_integer(primes, x):
    acc = CRTAccumulator()
    for p in primes:
        acc.add(x % p, p)
    assert acc.residue == x % acc.modulus
    if 2 * abs(x) < acc.modulus:
        assert acc.symmetric() == x


def test_crt_pair():
    assert crt_pair(2, 5, 3, 7) == (17, 35)


def test_lift_examples():
    rep = lift_Pb(3, [5, 7, 11, 13])
    assert rep.modulus == 5005 and rep.lifted.terms == poly(PUBLISHED, 3).terms
    assert rep.support_agreement
    assert lift_Pb(1, [5, 7]).lifted.terms == poly(PUBLISHED, 1).terms
    rep = lift_Pb(2, [7])
    assert rep.lifted.terms == poly(PUBLISHED, 2).terms
    assert rep.unstable  # a single small prime cannot certify the coefficients


def test_lift_round_trip():
    rep = lift_Pb(4, [7, 11, 13, 17])
    for p, residue in rep.per_prime_residues.items():
        assert rep.lifted.reduce_mod(p) == residue


def test_lift_validation():
    with pytest.raises(EmptyPrimeList):
        lift_Pb(3, [])
    with pytest.raises(BadPrime):
        lift_Pb(3, [5, 5])
    with pytest.raises(BadPrime):
        lift_Pb(3, [5, 9])
    with pytest.raises(BadPrime):
        lift_Pb(5, [5, 7])
    with pytest.raises(BadPrime):
        lift_Pb(4, [5, 7])


def test_mismatched_supports_reported():
    a = MultiPoly({(1, 0): 1, (0, 1): 2}, 2, Domain.fp(5))
    b = MultiPoly({(1, 0): 1}, 2, Domain.fp(7))
    lifted, agree, mismatches = lift_residues({5: a, 7: b})
    assert not agree
    assert mismatches == {(0, 1): {5: 2, 7: 0}}
    assert lifted.coefficient((1, 0)) == 1


@pytest.mark.parametrize("b", range(1, 7))
def test_monotone_stability(b):
    primes = admissible_primes(b, 8, start=5)
    previous = None
    for k in range(1, len(primes) + 1):
        rep = lift_Pb(b, primes[:k])
        if previous is not None and previous.stable:
            assert rep.lifted.terms == previous.lifted.terms
        previous = rep
    assert previous.stable and previous.lifted.terms == poly(RECURRENCE, b).terms


def test_threaded_lift_matches_serial():
    primes = [11, 13, 17, 19]
    assert lift_Pb(6, primes, workers=3).to_json() == lift_Pb(6, primes).to_json()


def test_to_json_has_decimal_modulus():
    data = lift_Pb(3, [5, 7, 11, 13, 17, 19, 23]).to_json()
    assert data["modulus"] == str(5 * 7 * 11 * 13 * 17 * 19 * 23)
    assert data["support_agreement"] is True

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nottingham.errors import InsufficientPrecision, NotApplicable, PrecisionOverflow
from nottingham.field import FpElement
from nottingham.ramify import (
    b3_oracle_sweep,
    b_ramified_value,
    certified_sequence,
    check_keating,
    check_laubie_saine_divisible,
    check_sen,
    criterion_b3,
    is_b_ramified_numeric,
    laubie_saine_prediction,
    numeric_b_ramified,
    ramification_report,
    required_precision,
)
from nottingham.series import TruncatedZero, TruncSeries, ramification_number
from nottingham.verify import random_nottingham


def f_of(a, b, p, N):
    return TruncSeries.from_normal_form(a, b, p, N)


def test_required_precision():
    assert required_precision(3, 5, 1) == 18 + 5
    assert required_precision(1, 3, 2) == 13 + 3
    with pytest.raises(PrecisionOverflow):
        required_precision(50, 101, 3)


def test_b_ramified_examples():
    assert is_b_ramified_numeric(f_of([1], 3, 5, 23), 3)
    assert not is_b_ramified_numeric(f_of([0, 1], 3, 5, 23), 3)
    assert not is_b_ramified_numeric(f_of([1], 5, 5, 40), 5)
    with pytest.raises(InsufficientPrecision):
        is_b_ramified_numeric(f_of([1], 3, 5, 20), 3)


def test_deep_check():
    f = f_of([1], 3, 5, required_precision(3, 5, 2))
    assert is_b_ramified_numeric(f, 3, deep_check=True)
    assert ramification_number(f, 2) == b_ramified_value(3, 5, 2)
    with pytest.raises(InsufficientPrecision):
        is_b_ramified_numeric(f_of([1], 3, 5, 30), 3, deep_check=True)


def test_criterion_b3_examples():
    F = lambda *a: [FpElement(x, 5) for x in a]  # noqa: E731
    assert criterion_b3(*F(1, 0, 0, 0)) == 2
    assert criterion_b3(*F(1, 0, 0, 2)) == 0


def test_b3_criterion_exhaustive_p5():
    checked, bad = b3_oracle_sweep(5)
    assert checked == 500 and bad == []


def test_b3_sweep_worker_pool_agrees():
    tuples = [(a1, a2, 0, a4) for a1 in (1, 2) for a2 in range(7) for a4 in range(7)]
    assert b3_oracle_sweep(7, tuples, workers=2) == b3_oracle_sweep(7, tuples)


@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4),
       st.lists(st.integers(0, 4), max_size=20))
def test_higher_coefficients_do_not_matter_b3(a1, a2, a3, a4, tail):
    N = required_precision(3, 5, 1)
    base = numeric_b_ramified([a1, a2, a3, a4], 3, 5)
    assert is_b_ramified_numeric(f_of([a1, a2, a3, a4] + tail, 3, 5, N), 3) == base


def test_sen_examples():
    for p in (3, 5):
        rng = random.Random(p)
        for _ in range(10):
            f = random_nottingham(p, 60, rng, first=rng.randrange(2, 4))
            assert check_sen(f, 1)


def test_sen_divisible_case():
    f = TruncSeries([0, 1, 0, 0, 0, 0, 1], 5, 60)  # i(f) = 5, i_1 = 25
    assert check_sen(f, 1)
    with pytest.raises(ValueError):
        check_sen(f, 0)


def test_laubie_saine_divisible():
    for p in (5, 7):
        rng = random.Random(p)
        for _ in range(5):
            tail = [rng.randrange(p) for _ in range(p * p)]
            f = TruncSeries([0, 1] + [0] * (p - 1) + [1] + tail, p, p * p + 2)
            assert check_laubie_saine_divisible(f)
    with pytest.raises(NotApplicable):
        check_laubie_saine_divisible(f_of([1], 3, 5, 30))


def test_laubie_saine_prediction_matches_brute_force():
    f = f_of([1, 2], 1, 5, 200)
    i0, i1 = ramification_number(f, 0), ramification_number(f, 1)
    assert laubie_saine_prediction(i0, i1, 5, 2) == ramification_number(f, 2)
    assert laubie_saine_prediction(5, 0, 5, 2) == 125


def test_keating():
    # i_0 = 1 and i_1 = 1 + 5 b with 1 <= b <= 3
    rng = random.Random(3)
    seen = 0
    for _ in range(40):
        f = random_nottingham(5, 160, rng, first=2)
        try:
            assert check_keating(f)
            seen += 1
        except NotApplicable:
            pass
    assert seen > 0
    with pytest.raises(NotApplicable):
        check_keating(f_of([1], 2, 5, 40))


def test_certified_sequence():
    f = f_of([1, 0, 0, 0], 3, 5, 200)
    seq, bounds = certified_sequence(f, 2, known_order=7)
    assert seq[:2] == [3, 18] and seq[2] is TruncatedZero and bounds[2] == 7 + 12 + 72
    seq, _ = certified_sequence(f, 2)
    assert seq == [3, 18, 93]


@given(st.integers(1, 4), st.lists(st.integers(0, 4), min_size=1, max_size=6),
       st.lists(st.integers(0, 4), min_size=30, max_size=30))
def test_certified_values_do_not_depend_on_unknown_tail(a1, a, tail):
    # any value certified from the first coefficients is the true value for every extension
    b, p = 2, 5
    known = [a1] + a
    K = b + len(known)
    N = 100
    seq, _ = certified_sequence(f_of(known, b, p, N), 2, known_order=K)
    full = f_of(known + tail, b, p, N)
    for n, s in enumerate(seq):
        if s is not TruncatedZero:
            assert ramification_number(full, n) == s


def test_report_examples():
    rep = ramification_report(f_of([1, 0, 0, 0], 3, 5, 200), 3, 1, known_order=7)
    assert rep.sequence == [3, 18] and rep.is_b_ramified and rep.criterion_value == 2
    rep = ramification_report(f_of([0, 1], 3, 5, 200), 3, 1, known_order=5)
    assert not rep.is_b_ramified and rep.sequence[0] == 4
    rep = ramification_report(f_of([1], 5, 5, 200), 5, 1, known_order=6)
    assert rep.sequence == [5, 25] and not rep.is_b_ramified
    with pytest.raises(InsufficientPrecision):
        ramification_report(f_of([1], 3, 5, 200), 3, 1, known_order=4)
    data = rep.to_json()
    assert data["sequence"] == [5, 25] and data["is_b_ramified"] is False


def test_b_ramified_sequence_invariant():
    for a in itertools.product(range(1, 5), range(5)):
        rep = ramification_report(f_of(list(a) + [1, 0], 3, 5, 120), 3, 2)
        if rep.is_b_ramified:
            assert rep.sequence == [b_ramified_value(3, 5, n) for n in range(3)]

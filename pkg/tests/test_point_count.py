import pytest
from hypothesis import given, strategies as st

from extremal_primes.curves import CurveQ, ReducedCurve, reduce_mod_p
from extremal_primes.errors import BadReductionError, HasseViolationError, InvalidPrimeError
from extremal_primes.point_count import (
    FrobeniusTrace,
    count_points_naive,
    isqrt,
    trace_of_frobenius,
)
from extremal_primes.prime_scan import primes_in_range


def test_isqrt_values():
    assert isqrt(20) == 4
    assert isqrt(25) == 5
    assert isqrt(0) == 0


@given(st.integers(min_value=0, max_value=10**14))
def test_isqrt_is_floor_sqrt(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


def test_naive_counts():
    assert count_points_naive(reduce_mod_p(CurveQ(1, 1), 5)) == 9
    assert count_points_naive(reduce_mod_p(CurveQ(-1, 0), 7)) == 8
    assert count_points_naive(reduce_mod_p(CurveQ(0, 1), 5)) == 6


def test_naive_count_matches_bruteforce():
    # independent oracle: enumerate all (x, y) pairs directly
    for A, B, p in [(1, 1, 13), (2, 3, 17), (-1, 0, 29), (5, -2, 101)]:
        n = 1 + sum(
            1 for x in range(p) for y in range(p) if (y * y - (x**3 + A * x + B)) % p == 0
        )
        assert count_points_naive(ReducedCurve(p, A % p, B % p)) == n


def test_trace_examples():
    assert trace_of_frobenius(CurveQ(1, 1), 5).a_p == -3
    assert trace_of_frobenius(CurveQ(-1, 0), 7).a_p == 0
    # value frozen from the exhaustive oracle
    assert trace_of_frobenius(CurveQ(1, 1), 4999).a_p == -9
    assert trace_of_frobenius(CurveQ(1, 1), 4999, method="bsgs").a_p == -9


def test_trace_errors():
    with pytest.raises(ValueError):
        trace_of_frobenius(CurveQ(1, 1), 3)
    with pytest.raises(BadReductionError):
        trace_of_frobenius(CurveQ(1, 1), 31)
    with pytest.raises(InvalidPrimeError):
        trace_of_frobenius(CurveQ(1, 1), 91)
    with pytest.raises(ValueError):
        trace_of_frobenius(CurveQ(1, 1), 7, method="bogus")


def test_frobenius_trace_enforces_hasse():
    FrobeniusTrace(5, 4)
    with pytest.raises(HasseViolationError):
        FrobeniusTrace(5, 5)


@pytest.mark.parametrize("A,B", [(1, 1), (-1, 0), (3, 8)])
def test_bsgs_matches_naive_small(A, B):
    E = CurveQ(A, B)
    for p in primes_in_range(5, 600):
        if E.disc % p == 0:
            continue
        assert (
            trace_of_frobenius(E, p, method="bsgs").a_p
            == trace_of_frobenius(E, p, method="naive").a_p
        )


def test_bsgs_spot_checks_above_crossover():
    E = CurveQ(1, 1)
    for p in primes_in_range(1 << 14, (1 << 14) + 600):
        assert (
            trace_of_frobenius(E, p, method="bsgs").a_p
            == trace_of_frobenius(E, p, method="naive").a_p
        )


@given(
    A=st.integers(min_value=-50, max_value=50),
    B=st.integers(min_value=-50, max_value=50),
    p=st.sampled_from(primes_in_range(5, 2000)),
)
def test_hasse_bound_holds(A, B, p):
    if discriminant := -16 * (4 * A**3 + 27 * B**2):
        if discriminant % p == 0:
            return
        a_p = trace_of_frobenius(CurveQ(A, B), p).a_p
        assert a_p * a_p <= 4 * p


def test_four_p_never_a_square():
    for p in primes_in_range(2, 10**4):
        t = isqrt(4 * p)
        assert t * t != 4 * p

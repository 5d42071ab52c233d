import math
import threading

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cylwell.bessel import (
    BesselZeroTable,
    DomainError,
    ZeroCache,
    ZeroLimitError,
    bessel_j,
    bessel_j_array,
    bessel_j_prime,
    bessel_zero,
    zero_table,
    zeros_up_to,
)

import frozen
import oracles


# --- bessel_j -------------------------------------------------------------

def test_values_at_origin():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(2, 0.0) == 0.0


def test_first_zero_of_j0_is_a_root():
    assert abs(bessel_j(0, 2.404825557695773)) <= 1e-12


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 25, 50])
def test_against_series_oracle(n):
    rng = np.random.default_rng(100 + n)
    for x in rng.uniform(0.0, 40.0, 25):
        ref = float(oracles.series_j(n, float(x)))
        assert abs(bessel_j(n, float(x)) - ref) <= 1e-12


@pytest.mark.parametrize("n", [0, 1, 3, 17, 50])
def test_large_argument_against_mpmath(n):
    for x in (60.0, 123.456, 400.0, 777.7, 1000.0):
        ref = float(mpmath.besselj(n, mpmath.mpf(x)))
        assert abs(bessel_j(n, x) - ref) <= 1e-12


@pytest.mark.parametrize("bad", [-1e-9, -3.0, math.inf, math.nan])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        bessel_j(0, bad)
    with pytest.raises(DomainError):
        bessel_j_prime(1, bad)


def test_order_must_be_nonnegative_integer():
    with pytest.raises(DomainError):
        bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        bessel_j(1.5, 1.0)


def test_array_matches_scalar():
    x = np.linspace(0, 80, 301)
    np.testing.assert_allclose(bessel_j_array(3, x), [bessel_j(3, v) for v in x], rtol=0, atol=2e-15)
    with pytest.raises(DomainError):
        bessel_j_array(0, [1.0, -1.0])


# --- derivative -----------------------------------------------------------

def test_derivative_examples():
    assert bessel_j_prime(0, 0.0) == 0.0
    assert bessel_j_prime(0, 1.0) == -bessel_j(1, 1.0)
    assert abs(bessel_j_prime(1, 0.0) - float(oracles.series_j_prime(1, 0))) <= 1e-15


def test_derivative_against_series_derivative():
    for n in (0, 1, 2, 6):
        for x in (0.3, 2.0, 7.5, 15.0):
            assert abs(bessel_j_prime(n, x) - float(oracles.series_j_prime(n, x))) <= 1e-12


def test_j0_prime_identity():
    for x in np.linspace(0, 100, 401):
        assert abs(bessel_j_prime(0, x) + bessel_j(1, x)) <= 1e-12


def test_derivative_matches_central_difference():
    h = 1e-6
    for n in range(11):
        for x in np.linspace(0.1, 50.0, 60):
            fd = (bessel_j(n, x + h) - bessel_j(n, x - h)) / (2 * h)
            assert abs(bessel_j_prime(n, x) - fd) <= 1e-6


# --- zeros ----------------------------------------------------------------

def test_zero_examples():
    assert abs(bessel_zero(0, 1) - frozen.J01) <= 1e-10
    assert abs(bessel_zero(1, 1) - frozen.J11) <= 1e-10
    assert bessel_zero(0, 1) < bessel_zero(1, 1) < bessel_zero(0, 2)


@pytest.mark.parametrize("n,k", [(0, 2), (1, 2), (2, 1)])
def test_more_zeros_against_oracle(n, k):
    ref = {(0, 2): frozen.J02, (1, 2): frozen.J12, (2, 1): frozen.J21}[(n, k)]
    assert abs(bessel_zero(n, k) - ref) <= 1e-10


def test_zero_residuals():
    for n in range(11):
        for k in range(1, 21):
            assert abs(bessel_j(n, bessel_zero(n, k))) <= 1e-9


def test_zeros_against_mpmath_table():
    for n in (0, 3, 10, 30):
        for k in (1, 2, 5, 40):
            assert abs(bessel_zero(n, k) - float(mpmath.besseljzero(n, k))) <= 1e-10


def test_interlacing():
    for n in range(10):
        for k in range(1, 30):
            assert bessel_zero(n, k) < bessel_zero(n + 1, k) < bessel_zero(n, k + 1)


def test_spacing_tends_to_pi():
    for n in (0, 1, 4):
        gap = bessel_zero(n, 50) - bessel_zero(n, 49)
        assert abs(gap - math.pi) <= 1e-3


def test_zero_index_validation():
    with pytest.raises(DomainError):
        bessel_zero(0, 0)
    with pytest.raises(ZeroLimitError):
        bessel_zero(0, 1001)
    small = ZeroCache(max_zeros=5)
    assert small.zero(0, 5) > 0
    with pytest.raises(ZeroLimitError):
        small.zero(0, 6)
    with pytest.raises(ZeroLimitError):
        small.up_to(0, 100.0)


def test_zeros_up_to():
    assert zeros_up_to(0, 1.0) == []
    z = zeros_up_to(0, 6.0)
    assert len(z) == 2
    assert abs(z[1] - frozen.J02) <= 1e-10
    assert zeros_up_to(0, 2.404825557695773) == [bessel_zero(0, 1)]
    with pytest.raises(DomainError):
        zeros_up_to(0, 0.0)


def test_zero_table_snapshot():
    t = zero_table(2, 6)
    assert isinstance(t, BesselZeroTable)
    assert len(t) == 6 and t.order == 2
    assert t[1] == bessel_zero(2, 1)
    with pytest.raises(IndexError):
        t[0]
    with pytest.raises(ValueError):
        BesselZeroTable(order=0, zeros=(3.0, 2.0))


def test_cache_concurrent_readers_see_same_values():
    cache = ZeroCache()
    results = [None] * 8

    def work(i):
        results[i] = [cache.zero(i % 3, k) for k in range(1, 60)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for i, vals in enumerate(results):
        assert vals == [bessel_zero(i % 3, k) for k in range(1, 60)]


# --- properties -----------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(n=st.integers(1, 30), x=st.floats(1e-3, 100.0))
def test_recurrence_identity(n, x):
    res = bessel_j(n - 1, x) + bessel_j(n + 1, x) - (2 * n / x) * bessel_j(n, x)
    assert abs(res) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(n=st.integers(0, 50), x=st.floats(0.0, 1000.0))
def test_bounded_by_one(n, x):
    assert abs(bessel_j(n, x)) <= 1.0

"""Bessel functions of the first kind, integer order, and their positive zeros."""

import math
import threading
from dataclasses import dataclass

import numpy as np

from . import kernels

DEFAULT_MAX_ZEROS = 1000
ZERO_TOL = 1e-10

# Consecutive zeros of J_n (integer n) are never closer than j_{0,2} - j_{0,1} ~ 3.115.
_MIN_GAP = 2.5
_SCAN_STEP = 0.5


class DomainError(ValueError):
    """Argument outside the domain an operation is defined on."""


class ZeroLimitError(RuntimeError):
    """Requested zero index exceeds the configured table size."""


def _check_order(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"Bessel order must be a non-negative integer, got {n!r}")
    return int(n)


def _check_arg(x):
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"argument must be finite and >= 0, got {x!r}")
    return x


def bessel_j(n, x):
    """J_n(x) for integer n >= 0 and finite x >= 0.

    Absolute error is at the 1e-15 level for x <= 1000, n <= 50.
    """
    return kernels.jn(_check_order(n), _check_arg(x))


def bessel_j_array(n, x):
    """Vectorised :func:`bessel_j`; returns an array shaped like ``x``."""
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x < 0.0):
        raise DomainError("arguments must be finite and >= 0")
    return kernels.jn_array(n, x)


def bessel_j_prime(n, x):
    """dJ_n/dx, using J_0' = -J_1 and J_n' = (J_{n-1} - J_{n+1}) / 2."""
    n = _check_order(n)
    x = _check_arg(x)
    if n == 0:
        return -kernels.jn(1, x)
    return 0.5 * (kernels.jn(n - 1, x) - kernels.jn(n + 1, x))


@dataclass(frozen=True)
class BesselZeroTable:
    order: int
    zeros: tuple
    tolerance: float = ZERO_TOL

    def __post_init__(self):
        _check_order(self.order)
        if any(b <= a for a, b in zip(self.zeros, self.zeros[1:])):
            raise ValueError("zeros must be strictly increasing")

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, k):
        """1-based: ``table[1]`` is the first positive zero."""
        if k < 1:
            raise IndexError("zero index starts at 1")
        return self.zeros[k - 1]


def _refine(n, lo, hi):
    """Bisect the sign-change bracket [lo, hi] to 1e-6, then polish with Newton."""
    flo = kernels.jn(n, lo)
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        fmid = kernels.jn(n, mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0.0) == (flo < 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(20):
        f = kernels.jn(n, x)
        df = -kernels.jn(1, x) if n == 0 else 0.5 * (kernels.jn(n - 1, x) - kernels.jn(n + 1, x))
        step = f / df
        x_new = x - step
        if not lo - 1e-6 <= x_new <= hi + 1e-6:
            break
        x = x_new
        if abs(step) <= 4e-16 * x:
            break
    return x


class ZeroCache:
    """Grow-on-demand zero tables, one per order.

    Entries are appended under a lock and never modified afterwards, so a
    reader always sees a prefix of completed zeros.
    """

    def __init__(self, max_zeros=DEFAULT_MAX_ZEROS):
        self.max_zeros = int(max_zeros)
        self._tables = {}
        self._lock = threading.Lock()

    def _extend(self, n, zeros):
        if zeros:
            x = zeros[-1] + _MIN_GAP
        else:
            x = float(n) if n > 0 else _SCAN_STEP
        f = kernels.jn(n, x)
        while True:
            x_next = x + _SCAN_STEP
            f_next = kernels.jn(n, x_next)
            if f_next == 0.0:
                zeros.append(x_next)
                return
            if (f < 0.0) != (f_next < 0.0):
                zeros.append(_refine(n, x, x_next))
                return
            x, f = x_next, f_next

    def _ensure(self, n, predicate):
        with self._lock:
            zeros = self._tables.setdefault(n, [])
            while not predicate(zeros):
                if len(zeros) >= self.max_zeros:
                    raise ZeroLimitError(
                        f"zero table for order {n} is capped at {self.max_zeros} entries"
                    )
                self._extend(n, zeros)
            return tuple(zeros)

    def zero(self, n, k):
        n = _check_order(n)
        if isinstance(k, bool) or int(k) != k or k < 1:
            raise DomainError(f"zero index must be an integer >= 1, got {k!r}")
        k = int(k)
        if k > self.max_zeros:
            raise ZeroLimitError(f"zero index {k} exceeds the configured maximum {self.max_zeros}")
        with self._lock:
            zeros = self._tables.get(n)
            if zeros is not None and len(zeros) >= k:
                return zeros[k - 1]
        return self._ensure(n, lambda z: len(z) >= k)[k - 1]

    def up_to(self, n, x_max):
        n = _check_order(n)
        x_max = float(x_max)
        if not x_max > 0.0:
            raise DomainError(f"x_max must be > 0, got {x_max!r}")
        zeros = self._ensure(n, lambda z: bool(z) and z[-1] > x_max)
        return [z for z in zeros if z <= x_max]

    def table(self, n, count):
        self.zero(n, count)
        with self._lock:
            zeros = tuple(self._tables[_check_order(n)][:count])
        return BesselZeroTable(order=n, zeros=zeros)

    def clear(self):
        with self._lock:
            self._tables.clear()


default_cache = ZeroCache()


def bessel_zero(n, k, cache=None):
    """k-th positive zero j_{n,k} of J_n (k >= 1), accurate to ~1e-15 absolute."""
    return (cache or default_cache).zero(n, k)


def zeros_up_to(n, x_max, cache=None):
    """All zeros of J_n not exceeding ``x_max`` (inclusive), ascending."""
    return (cache or default_cache).up_to(n, x_max)


def zero_table(n, count, cache=None):
    return (cache or default_cache).table(n, count)

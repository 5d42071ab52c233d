"""Hot numeric kernels.

Each kernel has a numba-compiled scalar form and, where it is called on
arrays, a vectorised numpy form. The public dispatchers (``jn``,
``jn_array``, ``tridiag_lowest``) pick the path according to
:data:`cylwell._accel.USE_NUMBA`; the ``*_np`` functions are always
available so both paths can be compared directly.

Bessel J_n(x), integer n >= 0, x >= 0, evaluated in three regimes:

* ascending series    x <= SERIES_X, or x*x/4 <= n + 1 (terms decrease
                      monotonically, no cancellation)
* Miller recurrence   x < HANKEL_X, or n >= x (downward recurrence,
                      normalised with J_0 + 2 sum J_2k = 1)
* Hankel + upward     x >= HANKEL_X and n < x (asymptotic J_0, J_1 then
                      forward recurrence, stable while k < x)
"""

import math

import numpy as np

from ._accel import USE_NUMBA, njit

SERIES_X = 4.0
HANKEL_X = 25.0

_RESCALE = 1e200
_SQRT_HALF = math.sqrt(0.5)


# --------------------------------------------------------------------------
# scalar Bessel kernels
# --------------------------------------------------------------------------

@njit(cache=True)
def _use_series(n, x):
    return x <= SERIES_X or 0.25 * x * x <= n + 1.0


@njit(cache=True)
def _miller_start(n, x):
    m = max(float(n), x)
    start = int(m) + 30 + int(math.sqrt(60.0 * m))
    return start + (start & 1)


@njit(cache=True)
def jn_series(n, x):
    half = 0.5 * x
    term = 1.0
    for k in range(1, n + 1):
        term *= half / k
    if term == 0.0:
        return 0.0
    total = term
    q = -half * half
    for k in range(1, 400):
        term *= q / (k * (n + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


@njit(cache=True)
def jn_miller(n, x):
    start = _miller_start(n, x)
    jp1 = 0.0
    j = 1e-30
    norm = 0.0
    result = 0.0
    for k in range(start, 0, -1):
        jm1 = (2.0 * k / x) * j - jp1
        jp1 = j
        j = jm1
        # j now holds the (unnormalised) value at order k - 1
        if abs(j) > _RESCALE:
            j /= _RESCALE
            jp1 /= _RESCALE
            norm /= _RESCALE
            result /= _RESCALE
        if k - 1 == n:
            result = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
    norm += j
    return result / norm


@njit(cache=True)
def hankel_j01(x):
    """Return (J_0(x), J_1(x)) from the Hankel expansion; x >= ~20."""
    c = math.cos(x)
    s = math.sin(x)
    amp = math.sqrt(2.0 / (math.pi * x))
    out0 = 0.0
    out1 = 0.0
    for nu in range(2):
        mu = 4.0 * nu * nu
        p = 1.0
        q = 0.0
        a = 1.0
        prev = 1.0
        for k in range(1, 200):
            a *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x)
            t = abs(a)
            if t > prev:
                break
            r = k % 4
            if r == 1:
                q += a
            elif r == 2:
                p -= a
            elif r == 3:
                q -= a
            else:
                p += a
            prev = t
            if t < 1e-17:
                break
        if nu == 0:
            cw = _SQRT_HALF * (c + s)
            sw = _SQRT_HALF * (s - c)
            out0 = amp * (p * cw - q * sw)
        else:
            cw = _SQRT_HALF * (s - c)
            sw = -_SQRT_HALF * (s + c)
            out1 = amp * (p * cw - q * sw)
    return out0, out1


@njit(cache=True)
def jn_hankel_upward(n, x):
    j0, j1 = hankel_j01(x)
    if n == 0:
        return j0
    jm = j0
    j = j1
    for k in range(1, n):
        jp = (2.0 * k / x) * j - jm
        jm = j
        j = jp
    return j


@njit(cache=True)
def jn_kernel(n, x):
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if _use_series(n, x):
        return jn_series(n, x)
    if x < HANKEL_X or n >= x:
        return jn_miller(n, x)
    return jn_hankel_upward(n, x)


@njit(cache=True)
def _jn_array_nb(n, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = jn_kernel(n, x[i])
    return out


# --------------------------------------------------------------------------
# vectorised numpy Bessel path
# --------------------------------------------------------------------------

def _series_np(n, x):
    half = 0.5 * x
    term = np.ones_like(x)
    for k in range(1, n + 1):
        term = term * (half / k)
    total = term.copy()
    q = -half * half
    for k in range(1, 400):
        term = term * (q / (k * (n + k)))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _miller_np(n, x):
    start = _miller_start(n, float(x.max()))
    jp1 = np.zeros_like(x)
    j = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    result = np.zeros_like(x)
    for k in range(start, 0, -1):
        jm1 = (2.0 * k / x) * j - jp1
        jp1 = j
        j = jm1
        big = np.abs(j) > _RESCALE
        if big.any():
            scale = np.where(big, 1.0 / _RESCALE, 1.0)
            j = j * scale
            jp1 = jp1 * scale
            norm = norm * scale
            result = result * scale
        if k - 1 == n:
            result = j.copy()
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm = norm + 2.0 * j
    norm = norm + j
    return result / norm


def _hankel_j01_np(x):
    c = np.cos(x)
    s = np.sin(x)
    amp = np.sqrt(2.0 / (np.pi * x))
    out = []
    for nu in range(2):
        mu = 4.0 * nu * nu
        p = np.ones_like(x)
        q = np.zeros_like(x)
        a = np.ones_like(x)
        prev = np.ones_like(x)
        live = np.ones(x.shape, dtype=bool)
        for k in range(1, 200):
            a = a * ((mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x))
            t = np.abs(a)
            live &= t <= prev
            add = np.where(live, a, 0.0)
            r = k % 4
            if r == 1:
                q += add
            elif r == 2:
                p -= add
            elif r == 3:
                q -= add
            else:
                p += add
            prev = np.where(live, t, prev)
            live &= t >= 1e-17
            if not live.any():
                break
        if nu == 0:
            cw = _SQRT_HALF * (c + s)
            sw = _SQRT_HALF * (s - c)
        else:
            cw = _SQRT_HALF * (s - c)
            sw = -_SQRT_HALF * (s + c)
        out.append(amp * (p * cw - q * sw))
    return out[0], out[1]


def _hankel_upward_np(n, x):
    j0, j1 = _hankel_j01_np(x)
    if n == 0:
        return j0
    jm, j = j0, j1
    for k in range(1, n):
        jm, j = j, (2.0 * k / x) * j - jm
    return j


def jn_array_np(n, x):
    """Vectorised numpy evaluation of J_n over an array of x >= 0."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.empty_like(flat)
    zero = flat == 0.0
    series = ~zero & ((flat <= SERIES_X) | (0.25 * flat * flat <= n + 1.0))
    miller = ~zero & ~series & ((flat < HANKEL_X) | (n >= flat))
    hankel = ~zero & ~series & ~miller
    out[zero] = 1.0 if n == 0 else 0.0
    if series.any():
        out[series] = _series_np(n, flat[series])
    if miller.any():
        out[miller] = _miller_np(n, flat[miller])
    if hankel.any():
        out[hankel] = _hankel_upward_np(n, flat[hankel])
    return out.reshape(x.shape)


# --------------------------------------------------------------------------
# symmetric tridiagonal eigenvalues (Sturm count + bisection)
# --------------------------------------------------------------------------

@njit(cache=True)
def sturm_count(d, e2, shift):
    """Number of eigenvalues strictly below ``shift``; e2 holds squared off-diagonals."""
    count = 0
    q = d[0] - shift
    if q < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        if q == 0.0:
            q = 1e-300
        q = d[i] - shift - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _tridiag_lowest_nb(d, e, count, lo, hi, rtol):
    e2 = e * e
    out = np.empty(count)
    left = lo
    for k in range(count):
        a = left
        b = hi
        while b - a > rtol * max(abs(a), abs(b)) + 1e-300:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if sturm_count(d, e2, mid) > k:
                b = mid
            else:
                a = mid
        out[k] = 0.5 * (a + b)
        left = a
    return out


def _tridiag_lowest_np(d, e, count, lo, hi, rtol):
    """Simultaneous bisection for the ``count`` lowest eigenvalues, vectorised over k."""
    e2 = e * e
    ks = np.arange(count)
    a = np.full(count, lo)
    b = np.full(count, hi)
    with np.errstate(over="ignore", divide="ignore"):
        return _bisect_np(d, e2, ks, a, b, rtol)


def _bisect_np(d, e2, ks, a, b, rtol):
    count = ks.size
    for _ in range(2000):
        width = b - a
        if np.all(width <= rtol * np.maximum(np.abs(a), np.abs(b)) + 1e-300):
            break
        mid = 0.5 * (a + b)
        cnt = np.zeros(count, dtype=np.int64)
        q = d[0] - mid
        cnt += q < 0.0
        for i in range(1, d.shape[0]):
            q = np.where(q == 0.0, 1e-300, q)
            q = d[i] - mid - e2[i - 1] / q
            cnt += q < 0.0
        upper = cnt > ks
        b = np.where(upper, mid, b)
        a = np.where(upper, a, mid)
    return 0.5 * (a + b)


def gershgorin(d, e):
    pad = np.zeros(d.shape[0])
    pad[:-1] += np.abs(e)
    pad[1:] += np.abs(e)
    return float(np.min(d - pad)), float(np.max(d + pad))


# --------------------------------------------------------------------------
# dispatchers
# --------------------------------------------------------------------------

def jn(n, x):
    """Scalar J_n(x); no argument checking."""
    return float(jn_kernel(int(n), float(x)))


def jn_array(n, x):
    x = np.ascontiguousarray(x, dtype=float)
    if USE_NUMBA:
        return _jn_array_nb(int(n), x.ravel()).reshape(x.shape)
    return jn_array_np(int(n), x)


def tridiag_lowest(d, e, count, rtol=1e-14):
    """The ``count`` smallest eigenvalues of the symmetric tridiagonal (d, e), ascending."""
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    lo, hi = gershgorin(d, e)
    if USE_NUMBA:
        return _tridiag_lowest_nb(d, e, int(count), lo, hi, rtol)
    return _tridiag_lowest_np(d, e, int(count), lo, hi, rtol)

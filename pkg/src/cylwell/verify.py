"""Independent numerical checks of the closed-form results.

Quadrature of the normalisation and overlap integrals, a finite-difference
Sturm-Liouville solver for the radial equation, and residual audits of
Bessel identities and of the separation-constant relation
A1 + A2 = -2 m E / hbar^2.
"""

import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import kernels
from .bessel import bessel_j, bessel_j_array, bessel_zero
from .spectrum import (
    QuantumNumbers,
    WellGeometry,
    energy,
    enumerate_levels,
    level_count_check,
    lowest_levels,
    separation_constants,
)
from .wavefunction import angular_array, axial_array, psi_array, radial_array


# --------------------------------------------------------------------------
# quadrature
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple
    # highest polynomial degree integrated exactly (-1 when not polynomial-exact)
    degree: int = -1

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights differ in length")
        lo, hi = self.interval
        if np.any(self.nodes < lo) or np.any(self.nodes > hi):
            raise ValueError("nodes outside the interval")
        if np.any(self.weights <= 0.0):
            raise ValueError("weights must be positive")

    def __len__(self):
        return self.nodes.size

    def integrate(self, values):
        """Sum of weights * values; ``values`` sampled at ``nodes`` along the last axis."""
        return np.tensordot(np.asarray(values), self.weights, axes=([-1], [0]))


def gauss_legendre(lo, hi, order, segments=1):
    """Composite Gauss-Legendre rule: ``segments`` equal panels of ``order`` nodes."""
    x, w = np.polynomial.legendre.leggauss(int(order))
    edges = np.linspace(lo, hi, int(segments) + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return QuadratureRule(nodes, weights, (float(lo), float(hi)), 2 * int(order) - 1)


def periodic_rule(count):
    """Equal-weight rule on [0, 2 pi); exact for exp(i k phi) with |k| < count."""
    nodes = np.arange(int(count)) * (2.0 * math.pi / count)
    weights = np.full(int(count), 2.0 * math.pi / count)
    return QuadratureRule(nodes, weights, (0.0, 2.0 * math.pi), -1)


def default_radial_rule(a):
    return gauss_legendre(0.0, a, 20, segments=20)


# --------------------------------------------------------------------------
# normalisation integrals
# --------------------------------------------------------------------------

def radial_overlap(geom, n_r1, n_r2, n_phi, rule=None):
    rule = rule or default_radial_rule(geom.a)
    r = rule.nodes
    return float(rule.integrate(
        radial_array(geom, n_r1, n_phi, r) * radial_array(geom, n_r2, n_phi, r) * r
    ))


def radial_norm(geom, n_r, n_phi, rule=None):
    """Quadrature of int_0^a R(r)^2 r dr."""
    return radial_overlap(geom, n_r, n_r, n_phi, rule)


def bessel_square_integral(n, beta, a):
    """Closed form int_0^a J_n(beta r/a)^2 r dr = (a^2/2) J_{n+1}(beta)^2 at a zero beta of J_n."""
    return 0.5 * a * a * bessel_j(n + 1, beta) ** 2


def angular_overlap(p1, p2, count=64):
    rule = periodic_rule(count)
    return complex(rule.integrate(np.conj(angular_array(p1, rule.nodes)) * angular_array(p2, rule.nodes)))


def axial_overlap(geom, n_z1, n_z2, order=64):
    rule = gauss_legendre(0.0, geom.H, order)
    return float(rule.integrate(axial_array(geom, n_z1, rule.nodes) * axial_array(geom, n_z2, rule.nodes)))


def angular_axial_norms(geom, p, n_z):
    return angular_overlap(p, p).real, axial_overlap(geom, n_z, n_z)


def full_overlap(geom, qn1, qn2, resolution=64):
    """<psi_1 | psi_2> by a tensor-product rule over the whole cylinder."""
    if resolution < 50:
        raise ValueError("resolution must be >= 50 per axis")
    rr = gauss_legendre(0.0, geom.a, resolution)
    rp = periodic_rule(resolution)
    rz = gauss_legendre(0.0, geom.H, resolution)
    r = rr.nodes[:, None, None]
    phi = rp.nodes[None, :, None]
    z = rz.nodes[None, None, :]
    f = np.conj(psi_array(geom, qn1, r, phi, z)) * psi_array(geom, qn2, r, phi, z) * r
    w = rr.weights[:, None, None] * rp.weights[None, :, None] * rz.weights[None, None, :]
    return complex(np.sum(f * w))


def full_norm(geom, qn, resolution=64):
    return full_overlap(geom, qn, qn, resolution).real


def gram_matrix(geom, states, resolution=64):
    m = len(states)
    g = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for k in range(i, m):
            g[i, k] = full_overlap(geom, states[i], states[k], resolution)
            g[k, i] = np.conj(g[i, k])
    return g


def lowest_states(geom, count):
    """The ``count`` lowest states (p partners counted separately)."""
    out = []
    n_levels = count
    while len(out) < count:
        out = [s for level in lowest_levels(geom, n_levels) for s in level.states]
        n_levels += count
    return out[:count]


# --------------------------------------------------------------------------
# finite-difference radial eigenproblem
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FdEigenResult:
    eigenvalues: np.ndarray
    grid_points: int
    order: int


def radial_fd_matrix(n_phi, a, grid_points):
    """Symmetric tridiagonal (diag, offdiag) for -(1/r)(r R')' + n^2/r^2 R = lam R.

    Cell-centred grid r_i = (i - 1/2) h, h = a / (N + 1/2): the flux through
    r = 0 vanishes and R(a) = 0 sits half a cell past the last node. The
    generalised problem A R = lam diag(r) R is symmetrised with diag(r)^(-1/2).
    """
    N = int(grid_points)
    h = a / (N + 0.5)
    r = (np.arange(1, N + 1) - 0.5) * h
    r_out = r + 0.5 * h
    r_in = r - 0.5 * h
    diag = ((r_out + r_in) / (h * h) + n_phi * n_phi / r) / r
    off = -r_out[:-1] / (h * h) / np.sqrt(r[:-1] * r[1:])
    return diag, off


def fd_radial_eigenvalues(n_phi, a, grid_points, count):
    if grid_points < 100:
        raise ValueError("grid_points must be >= 100")
    if not 1 <= count <= 10:
        raise ValueError("count must be in 1..10")
    if n_phi < 0 or a <= 0.0:
        raise ValueError("need n_phi >= 0 and a > 0")
    d, e = radial_fd_matrix(n_phi, float(a), grid_points)
    lam = kernels.tridiag_lowest(d, e, count)
    return FdEigenResult(eigenvalues=np.asarray(lam), grid_points=int(grid_points), order=int(n_phi))


def fd_convergence(n_phi, a, k, grids=(250, 500, 1000, 2000)):
    """Relative errors of the k-th FD eigenvalue against (j_{n,k}/a)^2 and the
    observed order between successive grids."""
    exact = (bessel_zero(n_phi, k) / a) ** 2
    errors = np.array([
        abs(fd_radial_eigenvalues(n_phi, a, g, k).eigenvalues[k - 1] - exact) / exact for g in grids
    ])
    h = np.array([a / (g + 0.5) for g in grids])
    orders = np.log(errors[:-1] / errors[1:]) / np.log(h[:-1] / h[1:])
    return errors, orders


# --------------------------------------------------------------------------
# identity audits
# --------------------------------------------------------------------------

def recurrence_audit(max_n, x_grid):
    """max |J_{n-1}(x) + J_{n+1}(x) - (2n/x) J_n(x)| over 1 <= n <= max_n."""
    x = np.asarray(x_grid, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("x_grid must exclude 0")
    worst = 0.0
    prev = bessel_j_array(0, x)
    cur = bessel_j_array(1, x)
    for n in range(1, int(max_n) + 1):
        nxt = bessel_j_array(n + 1, x)
        worst = max(worst, float(np.max(np.abs(prev + nxt - (2.0 * n / x) * cur))))
        prev, cur = cur, nxt
    return worst


def normalization_constant_audit(n_phi, n_r, a, rule=None):
    """Relative gap between sqrt(2)/(a J_{n+1}(beta)) and 1/sqrt(int J_n(beta r/a)^2 r dr)."""
    rule = rule or default_radial_rule(a)
    beta = bessel_zero(n_phi, n_r)
    integral = float(rule.integrate(bessel_j_array(n_phi, beta * rule.nodes / a) ** 2 * rule.nodes))
    c_quad = 1.0 / math.sqrt(integral)
    c_closed = abs(math.sqrt(2.0) / (a * bessel_j(n_phi + 1, beta)))
    return abs(c_closed - c_quad) / c_quad


def separation_audit(geom, states):
    """max relative |A1 + A2 + 2 m E / hbar^2| over ``states``."""
    worst = 0.0
    for qn in states:
        sc = separation_constants(geom, qn)
        k2 = 2.0 * geom.m * energy(geom, qn) / geom.hbar ** 2
        worst = max(worst, abs(sc.A1 + sc.A2 + k2) / k2)
    return worst


# --------------------------------------------------------------------------
# report
# --------------------------------------------------------------------------

@dataclass
class Tolerances:
    zero: float = 1e-9
    recurrence: float = 1e-10
    radial_norm: float = 1e-8
    angular_norm: float = 1e-10
    axial_norm: float = 1e-10
    full_norm: float = 1e-6
    constant: float = 1e-8
    fd: float = 1e-4
    fd_order_lo: float = 1.8
    fd_order_hi: float = 2.2
    separation: float = 1e-12
    gram: float = 1e-6
    degeneracy_rtol: float = 1e-9

    def override(self, **values):
        known = {f.name for f in fields(self)}
        bad = set(values) - known
        if bad:
            raise KeyError(f"unknown tolerance(s): {', '.join(sorted(bad))}")
        return replace(self, **{k: float(v) for k, v in values.items()})


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: dict = field(default_factory=dict)

    @classmethod
    def at_most(cls, name, value, tolerance, **detail):
        value = float(value)
        return cls(name, value, float(tolerance), bool(value <= tolerance), detail)


SUITES = ("bessel", "spectrum", "norm", "fd", "ortho")


def _bessel_checks(tol, geom, grid):
    out = []
    worst = max(abs(bessel_j(n, bessel_zero(n, k))) for n in range(11) for k in range(1, 21))
    out.append(Check.at_most("bessel.zero_residual", worst, tol.zero))
    x = np.linspace(0.5, 50.0, 500)
    out.append(Check.at_most("bessel.recurrence", recurrence_audit(10, x), tol.recurrence))
    return out


def _spectrum_checks(tol, geom, grid):
    levels = lowest_levels(geom, 30, rtol=tol.degeneracy_rtol)
    states = [s for lv in levels for s in lv.states]
    out = [Check.at_most("spectrum.separation", separation_audit(geom, states), tol.separation)]
    bad = 0
    for lv in levels:
        for s in lv.states:
            want = 2 if s.n_phi > 0 else 1
            if lv.multiplicity != want and not lv.accidental:
                bad += 1
    out.append(Check.at_most("spectrum.degeneracy", bad, 0, levels=len(levels)))
    e_max = levels[-1].energy
    listed = sum(lv.multiplicity for lv in enumerate_levels(geom, e_max, tol.degeneracy_rtol))
    out.append(Check.at_most("spectrum.count", abs(listed - level_count_check(geom, e_max)), 0))
    return out


def _norm_checks(tol, geom, grid):
    rad = ang = ax = 0.0
    for n_phi in range(4):
        for n in range(1, 5):
            rad = max(rad, abs(radial_norm(geom, n, n_phi) - 1.0))
            a_norm, z_norm = angular_axial_norms(geom, n_phi, n)
            ang = max(ang, abs(a_norm - 1.0))
            ax = max(ax, abs(z_norm - 1.0))
    const = max(
        normalization_constant_audit(n_phi, n_r, geom.a)
        for n_phi in range(4) for n_r in range(1, 4)
    )
    full = max(abs(full_norm(geom, s) - 1.0) for s in lowest_states(geom, 6))
    return [
        Check.at_most("norm.radial", rad, tol.radial_norm),
        Check.at_most("norm.angular", ang, tol.angular_norm),
        Check.at_most("norm.axial", ax, tol.axial_norm),
        Check.at_most("norm.constant", const, tol.constant),
        Check.at_most("norm.full", full, tol.full_norm),
    ]


def _fd_checks(tol, geom, grid):
    out = []
    worst = 0.0
    for n_phi in range(3):
        res = fd_radial_eigenvalues(n_phi, geom.a, grid, 3)
        for k in range(1, 4):
            exact = (bessel_zero(n_phi, k) / geom.a) ** 2
            worst = max(worst, abs(res.eigenvalues[k - 1] - exact) / exact)
    out.append(Check.at_most("fd.eigenvalues", worst, tol.fd, grid=grid))
    base = max(grid // 8, 100)
    _, orders = fd_convergence(0, geom.a, 1, grids=(base, 2 * base, 4 * base, 8 * base))
    off = float(np.max(np.abs(orders - 0.5 * (tol.fd_order_lo + tol.fd_order_hi))))
    out.append(Check.at_most(
        "fd.order_deviation", off, 0.5 * (tol.fd_order_hi - tol.fd_order_lo), orders=orders.tolist()
    ))
    return out


def _ortho_checks(tol, geom, grid):
    g = gram_matrix(geom, lowest_states(geom, 6))
    return [Check.at_most("ortho.gram", np.max(np.abs(g - np.eye(len(g)))), tol.gram)]


_RUNNERS = {
    "bessel": _bessel_checks,
    "spectrum": _spectrum_checks,
    "norm": _norm_checks,
    "fd": _fd_checks,
    "ortho": _ortho_checks,
}


def run_checks(suites=SUITES, geom=None, tol=None, fd_grid=2000):
    geom = geom or WellGeometry()
    tol = tol or Tolerances()
    checks = []
    for name in suites:
        if name not in _RUNNERS:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        checks.extend(_RUNNERS[name](tol, geom, int(fd_grid)))
    return checks


__all__ = [
    "QuadratureRule", "gauss_legendre", "periodic_rule", "radial_norm", "radial_overlap",
    "bessel_square_integral", "angular_overlap", "axial_overlap", "angular_axial_norms",
    "full_overlap", "full_norm", "gram_matrix", "lowest_states", "FdEigenResult",
    "radial_fd_matrix", "fd_radial_eigenvalues", "fd_convergence", "recurrence_audit",
    "normalization_constant_audit", "separation_audit", "Tolerances", "Check",
    "run_checks", "SUITES", "QuantumNumbers",
]

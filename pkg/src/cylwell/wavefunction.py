"""Normalised eigenfunctions of the cylindrical well and their densities.

    psi(r, phi, z) = R(r) X(phi) Z(z)

    R(r)   = sqrt(2) / (a J_{n_phi+1}(j)) * J_{n_phi}(j r / a),  j = j_{n_phi,n_r}
    X(phi) = exp(i p phi) / sqrt(2 pi)
    Z(z)   = sqrt(2 / H) sin(n_z pi z / H)

The radial prefactor keeps the sign of J_{n_phi+1}(j), which alternates
with n_r; no sign normalisation is applied.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bessel import DomainError, bessel_j, bessel_j_array, bessel_zero

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class ComplexAmplitude:
    re: float
    im: float = 0.0

    def __mul__(self, other):
        if isinstance(other, ComplexAmplitude):
            return ComplexAmplitude(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return ComplexAmplitude(self.re * other, self.im * other)

    __rmul__ = __mul__

    def conjugate(self):
        return ComplexAmplitude(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(self.re, self.im)


@dataclass(frozen=True)
class CylPoint:
    r: float
    phi: float
    z: float

    def __post_init__(self):
        if self.r < 0.0:
            raise DomainError(f"r must be >= 0, got {self.r!r}")


@dataclass(frozen=True)
class GridSpec:
    """Uniform sampling of the well: r on [0, a], z on [0, H] (both inclusive),
    phi on [0, 2 pi) without the duplicate endpoint."""

    r_samples: int = 101
    phi_samples: int = 72
    z_samples: int = 101

    def __post_init__(self):
        if self.r_samples < 2 or self.z_samples < 2 or self.phi_samples < 1:
            raise ValueError("need r_samples >= 2, z_samples >= 2, phi_samples >= 1")

    def r_values(self, geom):
        return np.linspace(0.0, geom.a, self.r_samples)

    def z_values(self, geom):
        return np.linspace(0.0, geom.H, self.z_samples)

    def phi_values(self):
        return np.arange(self.phi_samples) * (2.0 * math.pi / self.phi_samples)


@dataclass(frozen=True)
class AxialSlice:
    """Plane z = z0; the slice matrix is indexed [r, phi]."""

    z0: float


@dataclass(frozen=True)
class MeridianSlice:
    """Half-plane phi = phi0; the slice matrix is indexed [r, z]."""

    phi0: float = 0.0


def _check_r(geom, r):
    if not 0.0 <= r <= geom.a:
        raise DomainError(f"r={r!r} outside [0, a={geom.a!r}]")


def _check_z(geom, z):
    if not 0.0 <= z <= geom.H:
        raise DomainError(f"z={z!r} outside [0, H={geom.H!r}]")


def radial_prefactor(geom, n_r, n_phi):
    """sqrt(2) / (a J_{n_phi+1}(j_{n_phi,n_r}))."""
    j = bessel_zero(n_phi, n_r)
    return math.sqrt(2.0) / (geom.a * bessel_j(n_phi + 1, j))


def radial(geom, n_r, n_phi, r):
    r = float(r)
    _check_r(geom, r)
    if r == geom.a:
        return 0.0
    j = bessel_zero(n_phi, n_r)
    return radial_prefactor(geom, n_r, n_phi) * bessel_j(n_phi, j * r / geom.a)


def radial_array(geom, n_r, n_phi, r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0) or np.any(r > geom.a):
        raise DomainError("r outside [0, a]")
    j = bessel_zero(n_phi, n_r)
    out = radial_prefactor(geom, n_r, n_phi) * bessel_j_array(n_phi, j * r / geom.a)
    return np.where(r == geom.a, 0.0, out)


def angular(p, phi):
    phi = float(phi)
    return ComplexAmplitude(_INV_SQRT_2PI * math.cos(p * phi), _INV_SQRT_2PI * math.sin(p * phi))


def angular_array(p, phi):
    return _INV_SQRT_2PI * np.exp(1j * p * np.asarray(phi, dtype=float))


def axial(geom, n_z, z):
    z = float(z)
    _check_z(geom, z)
    if z == 0.0 or z == geom.H:
        return 0.0
    return math.sqrt(2.0 / geom.H) * math.sin(n_z * math.pi * z / geom.H)


def axial_array(geom, n_z, z):
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0) or np.any(z > geom.H):
        raise DomainError("z outside [0, H]")
    out = math.sqrt(2.0 / geom.H) * np.sin(n_z * math.pi * z / geom.H)
    return np.where((z == 0.0) | (z == geom.H), 0.0, out)


def psi(geom, qn, pt):
    """Full eigenfunction at ``pt`` in the single-prefactor form
    sqrt(2 / (pi H a^2)) J_n(j r/a) sin(n_z pi z/H) exp(i p phi) / J_{n+1}(j)."""
    _check_r(geom, pt.r)
    _check_z(geom, pt.z)
    if pt.r == geom.a or pt.z == 0.0 or pt.z == geom.H:
        return ComplexAmplitude(0.0, 0.0)
    j = bessel_zero(qn.n_phi, qn.n_r)
    a, H = geom.a, geom.H
    amp = (
        math.sqrt(2.0 / (math.pi * H * a * a))
        / bessel_j(qn.n_phi + 1, j)
        * bessel_j(qn.n_phi, j * pt.r / a)
        * math.sin(qn.n_z * math.pi * pt.z / H)
    )
    return ComplexAmplitude(amp * math.cos(qn.p * pt.phi), amp * math.sin(qn.p * pt.phi))


def psi_array(geom, qn, r, phi, z):
    """Vectorised psi; r, phi, z broadcast against each other. Returns complex."""
    r, phi, z = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(phi, dtype=float), np.asarray(z, dtype=float)
    )
    return (
        radial_array(geom, qn.n_r, qn.n_phi, r)
        * axial_array(geom, qn.n_z, z)
        * angular_array(qn.p, phi)
    )


def density(geom, qn, pt):
    return psi(geom, qn, pt).abs2()


def density_array(geom, qn, r, z):
    """|psi|^2 on broadcast (r, z); the density does not depend on phi."""
    R = radial_array(geom, qn.n_r, qn.n_phi, r)
    Z = axial_array(geom, qn.n_z, z)
    return (R * R) * (Z * Z) / (2.0 * math.pi)


def sample_radial(geom, n_r, n_phi, count):
    """(r, R(r)) on ``count`` uniform points of [0, a], endpoints included."""
    if count < 2:
        raise ValueError("count must be >= 2")
    r = np.linspace(0.0, geom.a, int(count))
    return list(zip(r.tolist(), radial_array(geom, n_r, n_phi, r).tolist()))


def sample_density_slice(geom, qn, grid, plane):
    """Density on a slice.

    Returns ``(c1, c2, values)`` where c1 is the r grid, c2 is phi (axial
    slice) or z (meridian slice), and ``values[i, k]`` is the density at
    (c1[i], c2[k]).
    """
    r = grid.r_values(geom)
    if isinstance(plane, AxialSlice):
        _check_z(geom, float(plane.z0))
        c2 = grid.phi_values()
        col = density_array(geom, qn, r, np.array(float(plane.z0)))
        values = np.repeat(col[:, None], c2.size, axis=1)
    elif isinstance(plane, MeridianSlice):
        if not math.isfinite(plane.phi0):
            raise DomainError("phi0 must be finite")
        c2 = grid.z_values(geom)
        values = density_array(geom, qn, r[:, None], c2[None, :])
    else:
        raise TypeError(f"unknown slice {plane!r}")
    return r, c2, values

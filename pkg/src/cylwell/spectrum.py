"""Energy levels of a particle in an infinite cylindrical well.

    E(n_r, n_phi, n_z) = hbar^2 [ (n_z pi / H)^2 + (j_{n_phi,n_r} / a)^2 ] / (2 m)

with j_{n,k} the k-th positive zero of J_n. The signed azimuthal number
p = +-n_phi labels the eigenfunction but never enters the energy.
"""

import math
from dataclasses import dataclass, field

from .bessel import bessel_zero, zeros_up_to

HBAR_SI = 1.054571817e-34  # J s
ELECTRON_MASS_SI = 9.1093837015e-31  # kg

MERGE_RTOL = 1e-9


def _positive(name, value):
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class WellGeometry:
    """Radius ``a``, height ``H``, mass ``m`` and reduced Planck constant ``hbar``.

    Defaults are natural units (everything 1).
    """

    a: float = 1.0
    H: float = 1.0
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("a", "H", "m", "hbar"):
            object.__setattr__(self, name, _positive(name, getattr(self, name)))

    @classmethod
    def si(cls, a, H, m=ELECTRON_MASS_SI):
        """Geometry in SI units (metres, kilograms); energies come out in joules."""
        return cls(a=a, H=H, m=m, hbar=HBAR_SI)

    @property
    def energy_scale(self):
        """hbar^2 / (2 m)."""
        return self.hbar * self.hbar / (2.0 * self.m)


def _int_at_least(name, value, lo):
    if isinstance(value, bool) or int(value) != value or value < lo:
        raise ValueError(f"{name} must be an integer >= {lo}, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class QuantumNumbers:
    n_r: int
    n_phi: int
    n_z: int
    p: int = None

    def __post_init__(self):
        object.__setattr__(self, "n_r", _int_at_least("n_r", self.n_r, 1))
        object.__setattr__(self, "n_phi", _int_at_least("n_phi", self.n_phi, 0))
        object.__setattr__(self, "n_z", _int_at_least("n_z", self.n_z, 1))
        p = self.n_phi if self.p is None else self.p
        if isinstance(p, bool) or int(p) != p or abs(int(p)) != self.n_phi:
            raise ValueError(f"p must be +-n_phi = +-{self.n_phi}, got {p!r}")
        object.__setattr__(self, "p", int(p))

    @property
    def triple(self):
        return (self.n_r, self.n_phi, self.n_z)

    def partner(self):
        """The state with the opposite sign of p (itself when n_phi = 0)."""
        return QuantumNumbers(self.n_r, self.n_phi, self.n_z, -self.p)

    def as_tuple(self):
        return (self.n_r, self.n_phi, self.n_z, self.p)


@dataclass(frozen=True)
class SeparationConstants:
    A1: float
    A2: float
    B: float


@dataclass(frozen=True)
class EnergyLevel:
    energy: float
    states: tuple
    # True when the level merges states with different (n_r, n_phi, n_z).
    accidental: bool = field(default=False)

    @property
    def multiplicity(self):
        return len(self.states)


def separation_constants(geom, qn):
    j = bessel_zero(qn.n_phi, qn.n_r)
    return SeparationConstants(
        A1=-(j / geom.a) ** 2,
        A2=-(qn.n_z * math.pi / geom.H) ** 2,
        B=float(qn.n_phi * qn.n_phi),
    )


def _energy(geom, n_r, n_phi, n_z):
    j = bessel_zero(n_phi, n_r)
    a, H = geom.a, geom.H
    return (
        geom.hbar ** 2
        * ((n_z * a * math.pi) ** 2 + (j * H) ** 2)
        / (2.0 * geom.m * a * a * H * H)
    )


def energy(geom, qn):
    return _energy(geom, qn.n_r, qn.n_phi, qn.n_z)


def ground_energy(geom):
    return _energy(geom, 1, 0, 1)


def _states_for(n_r, n_phi, n_z):
    if n_phi == 0:
        return [QuantumNumbers(n_r, 0, n_z, 0)]
    return [QuantumNumbers(n_r, n_phi, n_z, n_phi), QuantumNumbers(n_r, n_phi, n_z, -n_phi)]


def _states_below(geom, e_max):
    """Every (energy, state) with energy <= e_max."""
    k2 = e_max / geom.energy_scale
    kz1 = (math.pi / geom.H) ** 2
    out = []
    n_phi = 0
    while _energy(geom, 1, n_phi, 1) <= e_max:
        x_max = geom.a * math.sqrt(max(k2 - kz1, 0.0))
        for n_r, _ in enumerate(zeros_up_to(n_phi, x_max * (1.0 + 1e-12)), start=1):
            n_z = 1
            while True:
                e = _energy(geom, n_r, n_phi, n_z)
                if e > e_max:
                    break
                out.extend((e, s) for s in _states_for(n_r, n_phi, n_z))
                n_z += 1
        n_phi += 1
    return out


def _group(pairs, rtol):
    pairs = sorted(pairs, key=lambda es: (es[0], es[1].n_phi, es[1].n_r, es[1].n_z, -es[1].p))
    levels = []
    current = []
    for e, s in pairs:
        if current and abs(e - current[0][0]) > rtol * current[0][0]:
            levels.append(current)
            current = []
        current.append((e, s))
    if current:
        levels.append(current)
    out = []
    for members in levels:
        states = tuple(s for _, s in members)
        out.append(
            EnergyLevel(
                energy=members[0][0],
                states=states,
                accidental=len({s.triple for s in states}) > 1,
            )
        )
    return out


def enumerate_levels(geom, e_max, rtol=MERGE_RTOL):
    """All levels with energy <= e_max, ascending, degenerate states merged.

    States whose energies agree to relative ``rtol`` share a level. A level
    holding more than one (n_r, n_phi, n_z) triple is marked ``accidental``.
    """
    e_max = float(e_max)
    e0 = ground_energy(geom)
    if not e_max >= e0:
        raise ValueError(f"e_max={e_max!r} is below the ground-state energy {e0!r}")
    return _group(_states_below(geom, e_max), rtol)


def lowest_levels(geom, count, rtol=MERGE_RTOL):
    """The ``count`` lowest levels, however the degeneracies fold."""
    count = _int_at_least("count", count, 1)
    e_max = 2.0 * ground_energy(geom)
    while True:
        levels = enumerate_levels(geom, e_max, rtol)
        # the level after `count` proves the first `count` are complete
        if len(levels) > count:
            return levels[:count]
        e_max *= 1.5


def level_count_check(geom, e_max):
    """Brute-force count of states with energy <= e_max (0 below the ground state)."""
    e_max = float(e_max)
    if e_max <= 0.0:
        return 0
    k = math.sqrt(2.0 * geom.m * e_max) / geom.hbar
    nz_max = int(math.floor(geom.H * k / math.pi))
    x_max = geom.a * k
    total = 0
    n_phi = 0
    while bessel_zero(n_phi, 1) <= x_max:
        n_r = 1
        while bessel_zero(n_phi, n_r) <= x_max:
            for n_z in range(1, nz_max + 1):
                if _energy(geom, n_r, n_phi, n_z) <= e_max:
                    total += 1 if n_phi == 0 else 2
            n_r += 1
        n_phi += 1
    return total

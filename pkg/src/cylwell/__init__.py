"""Particle in an infinite cylindrical well: spectrum, eigenfunctions and
numerical verification of the closed forms."""

from ._accel import USE_NUMBA, backend
from .bessel import (
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
from .spectrum import (
    EnergyLevel,
    QuantumNumbers,
    SeparationConstants,
    WellGeometry,
    energy,
    enumerate_levels,
    ground_energy,
    level_count_check,
    lowest_levels,
    separation_constants,
)
from .wavefunction import (
    AxialSlice,
    ComplexAmplitude,
    CylPoint,
    GridSpec,
    MeridianSlice,
    angular,
    axial,
    density,
    psi,
    radial,
    sample_density_slice,
    sample_radial,
)

__version__ = "0.1.0"

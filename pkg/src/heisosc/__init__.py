"""Spectral theory of the Heisenberg oscillator L + lambda2^2 (x^2 + y^2) on H1.

The oscillator is studied through the six-dimensional step-two group N, whose
representations rho_lambda and pi_lambda reduce it to two-dimensional harmonic
oscillators with closed-form eigensystems.
"""
from .eigensystem import (
    EigenPair,
    ModeIndex,
    eigenbasis,
    eigenfunction,
    eigenfunction_grid,
    eigenvalue,
    enumerate_spectrum,
    frequencies,
    resolvable_modes,
)
from .errors import (
    ConvergenceError,
    DomainError,
    HeisoscError,
    InvalidParameterError,
    NearDeltaError,
    ResamplingError,
    TruncationError,
    UnsupportedDegreeError,
)
from .grid import GridFunction
from .group import (
    H1Element,
    LinearForm,
    NElement,
    OrbitKind,
    classify_orbit,
    coadjoint_act,
    rep_pi,
    rep_rho,
)
from .hermite import gauss_hermite_nodes, hermite_function, hermite_functions, hermite_polynomial
from .kernels import heat_apply, kernel_kappa, kernel_q_rho, mehler_k, mehler_q
from .quadform import Lambda, diagonalize
from .spectral import coefficients, spectral_projection, spectrum_bottom
from .transforms import intertwiner_T, intertwiner_T_inverse, partial_fourier_central

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

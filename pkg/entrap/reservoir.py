"""
Reservoir spectral densities J(w) and their correlation kernels

    f(tau) = integral J(w) exp(i (w0 - w) tau) dw

for the Lorentzian (leaky cavity) and the Ohmic family (sub-Ohmic, Ohmic, super-Ohmic)
reservoirs. Frequencies and rates are in units of the qubit transition frequency w0.
"""
import abc
import cmath
import logging
import math
from enum import Enum

import numpy as np
from scipy import special

from entrap.numerics import (DEFAULT_ABS_TOL, DEFAULT_REL_TOL,
                             integrate_fourier, integrate_full_line)

DEFAULT_OMEGA0 = 1.0
# e**w E1(w) switches to its asymptotic series beyond this modulus
ASYMPTOTIC_THRESHOLD = 40.0
ASYMPTOTIC_TERMS = 30

logger = logging.getLogger(__name__)  # pylint: disable=invalid-name


class ReservoirError(Exception):
    """Base error class"""


class InvalidParameterError(ReservoirError):
    """Reservoir parameter or argument outside its domain"""


class ReservoirKind(Enum):
    """Supported spectral density families"""
    LORENTZIAN = 'lorentzian'
    OHMIC = 'ohmic'


def _positive(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError) as error:
        raise InvalidParameterError("{} must be a number, got {!r}".format(name, value)) from error
    if not (math.isfinite(value) and value > 0):
        raise InvalidParameterError("{} must be strictly positive, got {}".format(name, value))
    return value


def _unwrap(array):
    """0-d arrays go back to Python scalars"""
    if array.ndim == 0:
        return array.item()
    return array


def _scaled_exp1(w):
    """e**w * E1(w) for complex w off the negative real axis, without overflow for large |w|"""
    w = np.asarray(w, dtype=complex)
    result = np.empty_like(w)
    small = np.abs(w) <= ASYMPTOTIC_THRESHOLD
    result[small] = np.exp(w[small]) * special.exp1(w[small])

    large = w[~small]
    term = np.ones_like(large)
    total = np.ones_like(large)
    for k in range(1, ASYMPTOTIC_TERMS):
        term = -term * k / large
        total += term
    result[~small] = total / large
    return result


class ReservoirModel(abc.ABC):
    """
    Base class for zero-temperature bosonic reservoirs shared by all qubits.
    Subclasses are required to implement:
        - spectral_density(self, omega)
        - correlation_kernel(self, tau)
        - parameters(self)
    """
    kind = None

    def __init__(self, omega0=DEFAULT_OMEGA0):
        self.omega0 = _positive('omega0', omega0)

    @abc.abstractmethod
    def spectral_density(self, omega):
        """J(omega) for omega >= 0, vectorised over numpy arrays"""

    @abc.abstractmethod
    def correlation_kernel(self, tau):
        """f(tau) for tau >= 0, vectorised over numpy arrays"""

    @abc.abstractmethod
    def parameters(self):
        """Model parameters keyed by their conventional names"""

    @property
    def has_spectral_edge(self):
        """True when the kernel integrates J over [0, inf), so a bound state can form below the edge"""
        return True

    def __repr__(self):
        return "{}({})".format(type(self).__name__, ", ".join(
            "{}={!r}".format(key, value) for key, value in sorted(self.parameters().items())))


class LorentzianReservoir(ReservoirModel):
    """
    J(w) = (gamma0 / 2pi) * lam**2 / ((w - w0)**2 + lam**2), centred on the qubit frequency.

    By default the kernel extends J over the whole frequency line, which gives the pure exponential
    (gamma0 * lam / 2) * exp(-lam * tau). With half_line=True the kernel keeps the physical
    [0, inf) domain instead.
    """
    kind = ReservoirKind.LORENTZIAN

    def __init__(self, gamma0, lam, omega0=DEFAULT_OMEGA0, half_line=False):
        super().__init__(omega0)
        self.gamma0 = _positive('gamma0', gamma0)
        self.lam = _positive('lambda', lam)
        self.half_line = bool(half_line)

    def parameters(self):
        return {'gamma0': self.gamma0, 'lambda': self.lam, 'half_line': self.half_line}

    @property
    def has_spectral_edge(self):
        return self.half_line

    def spectral_density(self, omega):
        omega = np.asarray(omega, dtype=float)
        lam_sq = self.lam ** 2
        return _unwrap(self.gamma0 / (2 * math.pi) * lam_sq / ((omega - self.omega0) ** 2 + lam_sq))

    def correlation_kernel(self, tau):
        if self.half_line:
            return self.half_line_kernel(tau)
        return self.full_line_kernel(tau)

    def full_line_kernel(self, tau):
        """Kernel of J extended over (-inf, inf)"""
        tau = np.asarray(tau, dtype=float)
        return _unwrap((0.5 * self.gamma0 * self.lam * np.exp(-self.lam * tau)).astype(complex))

    def half_line_kernel(self, tau):
        """
        Kernel of J restricted to [0, inf): the full-line exponential minus the w < 0 tail.
        The tail is written with the complex exponential integral E1.
        """
        tau = np.asarray(tau, dtype=float)
        flat = np.atleast_1d(tau).ravel()
        lam = self.lam
        omega0 = self.omega0

        # integral_{w0}^{inf} lam**2 / (y**2 + lam**2) * exp(i y tau) dy
        tail = np.full(flat.shape, lam * (math.pi / 2 - math.atan(omega0 / lam)), dtype=complex)
        positive = flat > 0
        if np.any(positive):
            t = flat[positive]
            phase = np.exp(1j * t * omega0)

            def shifted_integral(shift):
                # integral_{w0}^{inf} exp(i t y) / (y + shift) dy
                return phase * _scaled_exp1(-1j * t * (omega0 + shift))

            tail[positive] = lam / 2j * (shifted_integral(-1j * lam) - shifted_integral(1j * lam))

        full = 0.5 * self.gamma0 * lam * np.exp(-lam * flat)
        kernel = full - self.gamma0 / (2 * math.pi) * tail
        return _unwrap(kernel.reshape(tau.shape))


class OhmicFamilyReservoir(ReservoirModel):
    """
    J(w) = (gamma / 2pi) * wc**(1-s) * w**s * exp(-w / wc)

    s < 1 is sub-Ohmic, s = 1 Ohmic and s > 1 super-Ohmic.
    """
    kind = ReservoirKind.OHMIC

    def __init__(self, s, gamma, omega_c, omega0=DEFAULT_OMEGA0):
        super().__init__(omega0)
        self.s = _positive('s', s)
        self.gamma = _positive('gamma', gamma)
        self.omega_c = _positive('omega_c', omega_c)

    def parameters(self):
        return {'s': self.s, 'gamma': self.gamma, 'omega_c': self.omega_c}

    @property
    def prefactor(self):
        """gamma * wc**(1-s) / 2pi"""
        return self.gamma * self.omega_c ** (1 - self.s) / (2 * math.pi)

    def spectral_density(self, omega):
        omega = np.asarray(omega, dtype=float)
        return _unwrap(self.prefactor * omega ** self.s * np.exp(-omega / self.omega_c))

    def correlation_kernel(self, tau):
        tau = np.asarray(tau, dtype=float)
        kernel = (self.prefactor * special.gamma(self.s + 1) * np.exp(1j * self.omega0 * tau) *
                  (1 / self.omega_c + 1j * tau) ** (-(self.s + 1)))
        return _unwrap(kernel)

    def inverse_moment(self):
        """integral_0^inf J(w) / w dw = gamma * Gamma(s) * wc / 2pi"""
        return self.gamma * special.gamma(self.s) * self.omega_c / (2 * math.pi)


RESERVOIR_TYPES = {
    'lorentzian': {
        'class': LorentzianReservoir,
        'params': ('gamma0', 'lam', 'omega0', 'half_line'),
    },
    'ohmic': {
        'class': OhmicFamilyReservoir,
        'params': ('s', 'gamma', 'omega_c', 'omega0'),
    },
}

# parameter sets of the two Lorentzian panels and the three Ohmic-family panels
PRESETS = {
    'lorentzian-markovian': ('lorentzian', {'gamma0': 0.2, 'lam': 15.0}),
    'lorentzian-non-markovian': ('lorentzian', {'gamma0': 1.0, 'lam': 0.5}),
    'sub-ohmic': ('ohmic', {'s': 0.5, 'gamma': 1.0, 'omega_c': 1.0}),
    'ohmic-s1': ('ohmic', {'s': 1.0, 'gamma': 1.0, 'omega_c': 1.0}),
    'super-ohmic': ('ohmic', {'s': 2.0, 'gamma': 1.0, 'omega_c': 1.0}),
}


def build_reservoir(name, **params):
    """
    Builds a reservoir from its family name ('lorentzian', 'ohmic') or a preset name.
    Preset parameters may be overridden through params; parameters the family does not take
    are ignored with a debug message.
    """
    if name not in RESERVOIR_TYPES and name in PRESETS:
        name, preset_params = PRESETS[name]
        params = dict(preset_params, **params)

    try:
        reservoir_type = RESERVOIR_TYPES[name]
    except KeyError:
        raise InvalidParameterError("Unknown reservoir {!r}, expected one of {}".format(
            name, sorted(set(RESERVOIR_TYPES) | set(PRESETS))))

    accepted = {}
    for key, value in params.items():
        if value is None:
            continue
        if key in reservoir_type['params']:
            accepted[key] = value
        else:
            logger.debug("Ignoring parameter %s for reservoir %s", key, name)

    try:
        return reservoir_type['class'](**accepted)
    except TypeError as error:
        raise InvalidParameterError("Missing parameters for reservoir {}: {}".format(name, error)) from error


def spectral_density(model, omega):
    """J(omega) of model; omega must be >= 0"""
    if np.any(np.asarray(omega) < 0):
        raise InvalidParameterError("Spectral density is defined for omega >= 0 only")
    return model.spectral_density(omega)


def correlation_kernel(model, tau):
    """f(tau) of model; tau must be >= 0"""
    if np.any(np.asarray(tau) < 0):
        raise InvalidParameterError("Correlation kernel is only needed for tau >= 0")
    return model.correlation_kernel(tau)


def kernel_by_quadrature(model, tau, full_line=False, abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL):
    """
    f(tau) by direct quadrature of J(w) exp(i (w0 - w) tau), over [0, inf) or, for the Lorentzian
    only, over the whole line. Slow; meant as a cross-check of the closed forms.
    """
    tau = float(tau)
    if tau < 0:
        raise InvalidParameterError("Correlation kernel is only needed for tau >= 0")

    if full_line:
        if model.kind is not ReservoirKind.LORENTZIAN:
            raise InvalidParameterError("Full-line kernels only exist for the Lorentzian reservoir")
        # J is centred on omega0, so the phase is exp(-i (w - w0) tau) around the centre
        return complex(integrate_full_line(model.spectral_density, center=model.omega0, frequency=tau,
                                           abs_tol=abs_tol, rel_tol=rel_tol).value)
    half_line = integrate_fourier(model.spectral_density, tau, 0.0, abs_tol=abs_tol, rel_tol=rel_tol)
    return complex(half_line.value) * cmath.exp(1j * model.omega0 * tau)

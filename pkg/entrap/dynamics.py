"""
Interaction-picture dynamics of the qubit amplitudes C_l(t) in the single-excitation subspace.

All qubits couple identically to the reservoir, so every C_l obeys the same equation

    dC_l/dt = -integral_0^t f(t - t') S(t') dt',   S = sum_l C_l

Summing over l gives a closed scalar equation for S, and each amplitude follows from
C_l(t) = C_l(0) + (S(t) - S(0)) / N. The reservoir amplitudes are integrated out into f.
"""
import logging
import math
from enum import Enum

import numpy as np

from entrap.numerics import solve_volterra_scalar
from entrap.reservoir import ReservoirKind

NORM_TOLERANCE = 1e-12
RENORMALISE_TOLERANCE = 1e-3

logger = logging.getLogger(__name__)  # pylint: disable=invalid-name


class DynamicsError(Exception):
    """Base error class"""


class InitialStateError(DynamicsError):
    """Invalid initial amplitudes"""


class ModelMismatchError(DynamicsError):
    """Propagation method not applicable to the reservoir model"""


class Regime(Enum):
    """Lorentzian dynamical regimes, split at gamma0 = lam / 2N"""
    MARKOVIAN = 'markovian'
    NON_MARKOVIAN = 'non-markovian'


class InitialState:
    """
    One excitation shared by N qubits, reservoir in its vacuum.

    amplitudes maps qubit indices 1..N to C_l(0); missing qubits start in the ground state.
    """
    def __init__(self, n_qubits, amplitudes):
        if int(n_qubits) != n_qubits or n_qubits < 2:
            raise InitialStateError("At least two qubits are required, got {!r}".format(n_qubits))
        self.n_qubits = int(n_qubits)

        vector = np.zeros(self.n_qubits, dtype=complex)
        for index, amplitude in amplitudes.items():
            if int(index) != index or not 1 <= index <= self.n_qubits:
                raise InitialStateError("Qubit index {!r} outside 1..{}".format(index, self.n_qubits))
            vector[int(index) - 1] = complex(amplitude)

        norm = float(np.sum(np.abs(vector) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InitialStateError("Initial amplitudes must be normalised, sum |C_l|^2 = {!r}".format(norm))
        self._vector = vector

    @classmethod
    def epr_pair(cls, n_qubits, pair=(1, 2), c_m=1 / math.sqrt(2), c_n=1 / math.sqrt(2)):
        """C_m(0)|e,g> + C_n(0)|g,e> on the qubit pair, all other qubits in |g>"""
        m, n = pair
        if m == n:
            raise InitialStateError("The entangled pair needs two distinct qubits")
        return cls(n_qubits, {m: c_m, n: c_n})

    @classmethod
    def parse(cls, n_qubits, text, renormalise_tolerance=RENORMALISE_TOLERANCE):
        """
        Builds a state from text like "1:0.7071+0i,2:0.7071+0i". Amplitudes whose norm is within
        renormalise_tolerance of 1 are rescaled to unit norm.
        """
        amplitudes = {}
        for item in text.split(','):
            item = item.strip()
            if not item:
                continue
            try:
                index, value = item.split(':')
                amplitudes[int(index)] = complex(value.strip().replace('i', 'j'))
            except ValueError as error:
                raise InitialStateError("Malformed amplitude {!r}, expected index:complex".format(item)) from error

        if not amplitudes:
            raise InitialStateError("No amplitudes given")

        norm = math.sqrt(sum(abs(value) ** 2 for value in amplitudes.values()))
        if abs(norm ** 2 - 1.0) > NORM_TOLERANCE:
            if abs(norm ** 2 - 1.0) > renormalise_tolerance:
                raise InitialStateError("Amplitudes {!r} are not normalised (norm^2 = {})".format(text, norm ** 2))
            logger.warning("Renormalising initial amplitudes %s (norm^2 = %.12g)", text, norm ** 2)
            amplitudes = {index: value / norm for index, value in amplitudes.items()}
        return cls(n_qubits, amplitudes)

    @property
    def vector(self):
        """C_l(0) as an array indexed from 0"""
        return self._vector.copy()

    @property
    def collective(self):
        """S(0) = sum_l C_l(0)"""
        return complex(np.sum(self._vector))

    def amplitude(self, qubit):
        """C_qubit(0), qubits indexed from 1"""
        return complex(self._vector[qubit - 1])

    def dark_components(self):
        """C_l(0) - S(0)/N: the part of every amplitude decoupled from the reservoir"""
        return self._vector - self.collective / self.n_qubits

    def to_dict(self):
        """Non-zero amplitudes as [re, im] pairs keyed by qubit index"""
        return {
            'n_qubits': self.n_qubits,
            'amplitudes': {str(index + 1): [value.real, value.imag]
                           for index, value in enumerate(self._vector) if value != 0},
        }


class Trajectory:
    """Qubit amplitudes C_l(t_i) (rows: time, columns: qubit) and the collective S(t_i)"""
    def __init__(self, t_grid, amplitudes, collective):
        self.t_grid = np.asarray(t_grid, dtype=float)
        self.amplitudes = np.asarray(amplitudes, dtype=complex)
        self.collective = np.asarray(collective, dtype=complex)

    @classmethod
    def initial(cls, init):
        """Single-point trajectory at t=0"""
        return cls([0.0], init.vector[np.newaxis, :], [init.collective])

    @property
    def n_qubits(self):
        """Number of qubits N"""
        return self.amplitudes.shape[1]

    def amplitude(self, qubit):
        """C_qubit(t_i), qubits indexed from 1"""
        return self.amplitudes[:, qubit - 1]

    def excited_population(self):
        """sum_l |C_l(t_i)|^2"""
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    def __len__(self):
        return self.t_grid.size


def _reconstruct(init, collective):
    """C_l(t) = C_l(0) + (S(t) - S(0)) / N"""
    shift = (collective - init.collective) / init.n_qubits
    return init.vector[np.newaxis, :] + shift[:, np.newaxis]


def _require_lorentzian(model):
    if model.kind is not ReservoirKind.LORENTZIAN:
        raise ModelMismatchError("{!r} is not a Lorentzian reservoir".format(model))


def classify_regime(model, n_qubits):
    """
    Returns (regime, on_boundary). gamma0 < lam/2N is Markovian; the critically damped
    boundary gamma0 = lam/2N is reported as non-Markovian with on_boundary=True.
    """
    _require_lorentzian(model)
    threshold = model.lam / (2 * n_qubits)
    if model.gamma0 < threshold:
        return Regime.MARKOVIAN, False
    return Regime.NON_MARKOVIAN, model.gamma0 == threshold


def lorentzian_response(model, n_qubits, t):
    """
    G(t) = exp(-lam t/2) [cosh(Dt/2) + (lam/D) sinh(Dt/2)],  D = sqrt(lam^2 - 2 gamma0 lam N)

    so that S(t) = G(t) S(0) for the exponential kernel. D is taken complex, which turns the
    hyperbolic functions into oscillations in the non-Markovian regime.
    """
    _require_lorentzian(model)
    t = np.asarray(t, dtype=float)
    lam = model.lam
    d_sq = lam ** 2 - 2 * model.gamma0 * lam * n_qubits

    if d_sq == 0:
        response = np.exp(-lam * t / 2) * (1 + lam * t / 2)
    else:
        d = np.sqrt(complex(d_sq))
        # exponential form of cosh + (lam/D) sinh, no overflow for large t
        response = 0.5 * ((1 + lam / d) * np.exp((d - lam) * t / 2) +
                          (1 - lam / d) * np.exp(-(d + lam) * t / 2))
        response = response.real

    response = np.where(t == 0, 1.0, response)
    if response.ndim == 0:
        return float(response)
    return response


def propagate_lorentzian_analytic(model, init, t_grid):
    """Closed-form amplitudes for the exponential (full-line) Lorentzian kernel"""
    _require_lorentzian(model)
    if model.half_line:
        raise ModelMismatchError("The closed form is exact for the full-line kernel only, use propagate_volterra")

    t_grid = np.asarray(t_grid, dtype=float)
    response = np.atleast_1d(lorentzian_response(model, init.n_qubits, t_grid))
    collective = response * init.collective
    return Trajectory(t_grid, _reconstruct(init, collective), collective)


def propagate_volterra(model, init, opts, kernel=None):
    """
    Numerical amplitudes for any reservoir: solves the scalar memory equation for S and
    reconstructs every C_l. kernel overrides model.correlation_kernel.
    """
    if kernel is None:
        kernel = model.correlation_kernel
    logger.debug("Propagating %r with N=%d, %r", model, init.n_qubits, opts)
    collective = solve_volterra_scalar(kernel, init.n_qubits, init.collective, opts)
    return Trajectory(opts.time_grid(), _reconstruct(init, collective), collective)

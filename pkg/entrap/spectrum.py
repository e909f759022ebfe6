"""
Single-excitation spectrum of N identical qubits in a common reservoir.

The eigenvalue condition is E = y(E) with

    y(E) = w0 - N * integral_0^inf J(w) / (w - E) dw

y decreases monotonically on E < 0 towards w0 as E -> -inf, so an isolated root below the
continuum (the system-reservoir bound state) exists iff y drops below E before reaching the edge.
"""
import logging
import math

import numpy as np

from entrap.numerics import (DEFAULT_ABS_TOL, DEFAULT_G_TOL, DEFAULT_REL_TOL,
                             DEFAULT_X_TOL, find_root_bracketed,
                             integrate_semi_infinite)
from entrap.reservoir import ReservoirKind

DEFAULT_PROBE_EPSILON = 1e-6
# a Lorentzian root closer to the edge than this per-qubit weight is an artefact of J(0) > 0
DEFAULT_MIN_WEIGHT = 1e-3
# energy at which the analytic Ohmic-family y(0) is cross-checked against quadrature
ANALYTIC_CHECK_ENERGY = -1e-8
MAX_BRACKET_ENERGY = 1e6  # units of omega0

logger = logging.getLogger(__name__)  # pylint: disable=invalid-name


class SpectrumError(Exception):
    """Base error class"""


class SearchDomainError(SpectrumError):
    """Energy outside the bound-state search domain E < 0"""


class BracketExpansionError(SpectrumError):
    """No sign change of y(E) - E found down to -MAX_BRACKET_ENERGY"""


class SpectrumTolerances:
    """Quadrature and root tolerances plus the thresholds that define bound-state existence"""
    def __init__(self, abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL, x_tol=DEFAULT_X_TOL, g_tol=DEFAULT_G_TOL,
                 probe_epsilon=DEFAULT_PROBE_EPSILON, min_weight=DEFAULT_MIN_WEIGHT):
        self.abs_tol = abs_tol
        self.rel_tol = rel_tol
        self.x_tol = x_tol
        self.g_tol = g_tol
        self.probe_epsilon = probe_epsilon
        self.min_weight = min_weight

        if not probe_epsilon > 0:
            raise SpectrumError("probe_epsilon must be positive, got {}".format(probe_epsilon))
        if not 0 <= min_weight < 1:
            raise SpectrumError("min_weight must lie in [0, 1), got {}".format(min_weight))


DEFAULT_TOLERANCES = SpectrumTolerances()


class BoundStateReport:
    """
    Outcome of the bound-state search for one (model, N) pair.

    e_bs and beta_sq hold the root of E = y(E) below -probe_epsilon and its per-qubit weight
    whenever one was found, even if the weight threshold then rejected it (exists=False).
    y_at_zero is the analytic y(0) for the Ohmic family and y(-probe_epsilon) otherwise.
    residual is |y(e_bs) - e_bs|; it exceeds g_tol only when the root finder stopped on the
    bracket width.
    """
    def __init__(self, *, exists, e_bs, beta_sq, y_at_zero,  # pylint: disable=too-many-arguments
                 probe_epsilon, n_qubits, min_weight, residual=None):
        self.exists = exists
        self.e_bs = e_bs
        self.beta_sq = beta_sq
        self.y_at_zero = y_at_zero
        self.probe_epsilon = probe_epsilon
        self.n_qubits = n_qubits
        self.min_weight = min_weight
        self.residual = residual

    def to_dict(self):
        """Field names match the attribute names"""
        return {
            'exists': self.exists,
            'e_bs': self.e_bs,
            'beta_sq': self.beta_sq,
            'y_at_zero': self.y_at_zero,
            'probe_epsilon': self.probe_epsilon,
            'n_qubits': self.n_qubits,
            'min_weight': self.min_weight,
            'residual': self.residual,
        }

    def __repr__(self):
        return "BoundStateReport({})".format(", ".join(
            "{}={!r}".format(key, value) for key, value in self.to_dict().items()))


def _check_qubits(n_qubits):
    if int(n_qubits) != n_qubits or n_qubits < 1:
        raise SpectrumError("n_qubits must be a positive integer, got {!r}".format(n_qubits))
    return int(n_qubits)


def y_of(model, n_qubits, e, tols=DEFAULT_TOLERANCES):
    """y(E) = w0 - N * integral_0^inf J(w)/(w - E) dw for E < 0"""
    n_qubits = _check_qubits(n_qubits)
    e = float(e)
    if not e < 0:
        raise SearchDomainError("y(E) is only evaluated for E < 0, got {}".format(e))

    result = integrate_semi_infinite(lambda omega: model.spectral_density(omega) / (omega - e), 0.0,
                                     abs_tol=tols.abs_tol, rel_tol=tols.rel_tol)
    return model.omega0 - n_qubits * result.value


def y_curve(model, n_qubits, energies, tols=DEFAULT_TOLERANCES):
    """y(E) over an array of negative energies"""
    return np.array([y_of(model, n_qubits, e, tols) for e in np.asarray(energies, dtype=float)])


def analytic_y_at_zero(model, n_qubits):
    """y(0) = w0 - N * gamma * Gamma(s) * wc / 2pi, finite for the Ohmic family only"""
    if model.kind is not ReservoirKind.OHMIC:
        raise SpectrumError("y(0) diverges for reservoirs with J(0) > 0")
    return model.omega0 - _check_qubits(n_qubits) * model.inverse_moment()


def bound_state_weight(model, n_qubits, e_bs, tols=DEFAULT_TOLERANCES):
    """
    beta**2 = 1 / (N + N**2 K) with K = integral_0^inf J(w)/(w - E_bs)**2 dw.

    This is the squared amplitude of every qubit in the normalised bound eigenstate, whose
    field amplitudes are g_k * sum_l C_l / (E_bs - w_k).
    """
    n_qubits = _check_qubits(n_qubits)
    e_bs = float(e_bs)
    if not e_bs < 0:
        raise SearchDomainError("Bound-state energies are negative, got {}".format(e_bs))

    overlap = integrate_semi_infinite(lambda omega: model.spectral_density(omega) / (omega - e_bs) ** 2, 0.0,
                                      abs_tol=tols.abs_tol, rel_tol=tols.rel_tol)
    return 1.0 / (n_qubits + n_qubits ** 2 * overlap.value)


def bound_state_exists(model, n_qubits, tols=DEFAULT_TOLERANCES):
    """
    Returns (exists, y_diagnostic).

    Ohmic family: exists iff the analytic y(0) < 0; quadrature at E = -1e-8 is used as a
    cross-check. Other reservoirs (J(0) > 0, y(0) = -inf): exists iff a root lies at or below
    -probe_epsilon and carries a weight of at least min_weight.
    """
    if model.kind is ReservoirKind.OHMIC:
        y_zero = analytic_y_at_zero(model, n_qubits)
        y_near_zero = y_of(model, n_qubits, ANALYTIC_CHECK_ENERGY, tols)
        logger.debug("N=%d: analytic y(0)=%.12g, quadrature y(%g)=%.12g", n_qubits, y_zero,
                     ANALYTIC_CHECK_ENERGY, y_near_zero)
        if np.sign(y_zero) != np.sign(y_near_zero):
            logger.warning("Analytic y(0)=%g and quadrature y(%g)=%g disagree in sign for %r, N=%d",
                           y_zero, ANALYTIC_CHECK_ENERGY, y_near_zero, model, n_qubits)
        return bool(y_zero < 0), float(y_zero)

    report = find_bound_state(model, n_qubits, tols)
    return report.exists, report.y_at_zero


def find_bound_state(model, n_qubits, tols=DEFAULT_TOLERANCES):
    """
    Locates the isolated root of g(E) = y(E) - E in E <= -probe_epsilon.

    The bracket starts at [-w0, -probe_epsilon] and its lower end doubles until g > 0 there.
    """
    n_qubits = _check_qubits(n_qubits)
    epsilon = tols.probe_epsilon

    def report(exists, e_bs=None, beta_sq=None, y_diagnostic=None, residual=None):
        return BoundStateReport(exists=exists, e_bs=e_bs, beta_sq=beta_sq, y_at_zero=y_diagnostic,
                                probe_epsilon=epsilon, n_qubits=n_qubits, min_weight=tols.min_weight,
                                residual=residual)

    def excess(e):
        return y_of(model, n_qubits, e, tols) - e

    is_ohmic = model.kind is ReservoirKind.OHMIC
    if is_ohmic:
        exists, y_diagnostic = bound_state_exists(model, n_qubits, tols)
        if not exists:
            logger.debug("No bound state for %r, N=%d: y(0)=%g", model, n_qubits, y_diagnostic)
            return report(False, y_diagnostic=y_diagnostic)

    excess_edge = excess(-epsilon)
    if not is_ohmic:
        y_diagnostic = excess_edge - epsilon

    if excess_edge > 0:
        if is_ohmic:
            logger.warning("y(0) < 0 but the root lies above -%g for %r, N=%d", epsilon, model, n_qubits)
        return report(False, y_diagnostic=y_diagnostic)

    e_low = min(-model.omega0, -2 * epsilon)
    while excess(e_low) <= 0:
        e_low *= 2
        logger.debug("Expanding bound-state bracket down to %g", e_low)
        if abs(e_low) > MAX_BRACKET_ENERGY * model.omega0:
            raise BracketExpansionError("No sign change of y(E) - E above E={} for {!r}, N={}".format(
                e_low, model, n_qubits))

    e_bs = find_root_bracketed(excess, e_low, -epsilon, tols.x_tol, tols.g_tol)
    residual = abs(excess(e_bs))
    if residual > tols.g_tol:
        logger.warning("Bound-state residual |y(E)-E|=%g above tolerance %g at E=%r", residual, tols.g_tol, e_bs)

    beta_sq = bound_state_weight(model, n_qubits, e_bs, tols)
    exists = True
    if not is_ohmic and beta_sq < tols.min_weight:
        logger.info("Rejecting bound-state candidate E=%g for %r, N=%d: weight %g below %g", e_bs, model,
                    n_qubits, beta_sq, tols.min_weight)
        exists = False

    logger.debug("N=%d: E_bs=%r beta^2=%r exists=%s", n_qubits, e_bs, beta_sq, exists)
    if exists and not 0 < beta_sq < 1.0 / n_qubits:
        raise SpectrumError("Bound-state weight {} outside (0, 1/N)".format(beta_sq))
    return report(exists, e_bs, beta_sq, y_diagnostic, residual)


def degree_of_boundedness(report):
    """Distance of the bound-state energy below the continuum edge, 0 without a bound state"""
    if not report.exists:
        return 0.0
    return -report.e_bs if math.isfinite(report.e_bs) else 0.0

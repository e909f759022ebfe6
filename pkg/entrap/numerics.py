"""
Numerical kernels shared by the physics modules: adaptive quadrature on semi-infinite
intervals (plain and Fourier-weighted), a bracketed bisection/secant root finder and a trapezoidal predictor-corrector
solver for the scalar Volterra integro-differential equation

    dS/dt = -N * integral_0^t f(t - t') S(t') dt'

Every function here is a pure function of its arguments.
"""
import cmath
import logging
import math
import warnings

import numpy as np
from scipy import integrate

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-10
DEFAULT_X_TOL = 1e-10
DEFAULT_G_TOL = 1e-10
DEFAULT_SUBDIVISION_LIMIT = 200
DEFAULT_GRADING_DECADES = 12
DEFAULT_MAX_ITERATIONS = 200
DEFAULT_DT = 1e-3
DEFAULT_T_MAX = 50.0
DEFAULT_CORRECTOR_ITERATIONS = 2

logger = logging.getLogger(__name__)  # pylint: disable=invalid-name


class NumericsError(Exception):
    """Base error class"""


class InvalidOptionsError(NumericsError):
    """Solver options violate their invariants"""


class QuadratureError(NumericsError):
    """Quadrature did not reach the requested tolerance"""
    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class BracketError(NumericsError):
    """The function has the same sign on both ends of the bracket"""
    def __init__(self, a, b, g_a, g_b):
        super().__init__("Invalid bracket [{}, {}]: g(a)={!r} and g(b)={!r} have the same sign".format(
            a, b, g_a, g_b))
        self.g_a = g_a
        self.g_b = g_b


class RootNotFoundError(NumericsError):
    """Root finder exhausted its iteration budget"""


class VolterraError(NumericsError):
    """Non-finite value produced while stepping the Volterra equation"""
    def __init__(self, step, value):
        super().__init__("Non-finite value {!r} at step {} (dt too large or singular kernel?)".format(value, step))
        self.step = step


class QuadResult:
    """Value of an integral together with its absolute error estimate"""
    def __init__(self, value, abs_error_estimate):
        self.value = value
        self.abs_error_estimate = abs_error_estimate

    def __repr__(self):
        return "QuadResult(value={!r}, abs_error_estimate={!r})".format(self.value, self.abs_error_estimate)


class VolterraOptions:
    """Discretisation of the memory equation: uniform step dt up to t_max (units of 1/omega0)"""
    def __init__(self, dt=DEFAULT_DT, t_max=DEFAULT_T_MAX, corrector_iterations=DEFAULT_CORRECTOR_ITERATIONS):
        try:
            dt = float(dt)
            t_max = float(t_max)
            corrector_iterations = int(corrector_iterations)
        except (TypeError, ValueError) as error:
            raise InvalidOptionsError(str(error)) from error

        if not (math.isfinite(dt) and dt > 0):
            raise InvalidOptionsError("dt must be positive, got {}".format(dt))
        if not math.isfinite(t_max) or t_max < dt:
            raise InvalidOptionsError("t_max ({}) must be at least dt ({})".format(t_max, dt))
        if corrector_iterations < 1:
            raise InvalidOptionsError("corrector_iterations must be a positive integer")

        self.dt = dt
        self.t_max = t_max
        self.corrector_iterations = corrector_iterations

    @property
    def size(self):
        """Number of grid points M = floor(t_max/dt) + 1"""
        # absorb the rounding of t_max/dt when t_max is a multiple of dt
        return int(math.floor(self.t_max / self.dt * (1.0 + 1e-12))) + 1

    def time_grid(self):
        """Uniform time grid t_i = i*dt"""
        return self.dt * np.arange(self.size, dtype=float)

    def __repr__(self):
        return "VolterraOptions(dt={!r}, t_max={!r}, corrector_iterations={!r})".format(
            self.dt, self.t_max, self.corrector_iterations)


def _quad_real(func, a, b, abs_tol, rel_tol, limit, weight=None, wvar=None):
    """QUADPACK on a real integrand. Returns (value, error, converged)"""
    options = {}
    if weight is not None:
        options = {'weight': weight, 'wvar': wvar}
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', integrate.IntegrationWarning)
        result = integrate.quad(func, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=limit, full_output=1, **options)
    # quad only appends a message to its output when ier != 0
    return result[0], result[1], len(result) == 3


def _checked_result(value, error, converged, abs_tol, rel_tol):
    if not (np.isfinite(value) and math.isfinite(error)):
        raise QuadratureError("Quadrature produced a non-finite value", value, error)

    bound = max(abs_tol, rel_tol * abs(value))
    if not converged and error > bound:
        raise QuadratureError("Quadrature did not converge: estimate {!r} +/- {:g} exceeds tolerance {:g}".format(
            value, error, bound), value, error)

    return QuadResult(value, error)


def _integrate_pieces(pieces, abs_tol, rel_tol, limit, is_complex):
    value = 0j
    error = 0.0
    converged = True
    piece_abs_tol = abs_tol / len(pieces)
    for piece_func, a, b in pieces:
        parts = [(1.0, lambda x, piece_func=piece_func: piece_func(x).real)]
        if is_complex:
            parts.append((1j, lambda x, piece_func=piece_func: piece_func(x).imag))
        for unit, part in parts:
            part_value, part_error, part_converged = _quad_real(part, a, b, piece_abs_tol, rel_tol, limit)
            value += unit * part_value
            error += part_error
            if not part_converged:
                logger.debug("Subinterval [%g, %g] did not converge (error estimate %g)", a, b, part_error)
                converged = False

    if not is_complex:
        value = value.real
    return _checked_result(value, error, converged, abs_tol, rel_tol)


def integrate_semi_infinite(func, lower=0.0, abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL,
                            limit=DEFAULT_SUBDIVISION_LIMIT, decades=DEFAULT_GRADING_DECADES):
    """
    Integrates func over [lower, inf).

    [lower, lower + 1] is split into subintervals graded geometrically towards lower (one per decade),
    so integrable endpoint singularities like w**(s-1) are resolved by the adaptive rule on each
    piece. The tail [lower + 1, inf) is mapped onto [0, 1) with w = lower + 1 + u/(1-u).
    func may return real or complex values; the result has the same kind.
    """
    lower = float(lower)
    head = lower + 1.0
    edges = [lower]
    for exponent in range(decades, -1, -1):
        edge = lower + 10.0 ** -exponent
        if edge > edges[-1]:
            edges.append(edge)

    def tail(u):
        if u >= 1.0:
            return 0.0
        return func(head + u / (1.0 - u)) / (1.0 - u) ** 2

    pieces = [(func, a, b) for a, b in zip(edges[:-1], edges[1:])]
    pieces.append((tail, 0.0, 1.0))
    is_complex = np.iscomplexobj(func(head))
    return _integrate_pieces(pieces, abs_tol, rel_tol, limit, is_complex)


def integrate_fourier(func, frequency, lower=0.0, abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL,
                      limit=DEFAULT_SUBDIVISION_LIMIT):
    """
    Integrates func(x) * exp(-i frequency (x - lower)) over [lower, inf) for a real func that
    decays at infinity.

    The cosine and sine parts go to QUADPACK's Fourier-integral routine (quad with weight
    'cos'/'sin' and an infinite upper limit), which integrates one cycle at a time and
    extrapolates the sum. A zero frequency is a plain integrate_semi_infinite.
    """
    lower = float(lower)
    frequency = float(frequency)

    def shifted(y):
        return func(lower + y)

    if frequency == 0:
        return integrate_semi_infinite(shifted, 0.0, abs_tol, rel_tol, limit)

    omega = abs(frequency)
    cos_value, cos_error, cos_converged = _quad_real(shifted, 0.0, np.inf, abs_tol / 2, rel_tol, limit, 'cos', omega)
    sin_value, sin_error, sin_converged = _quad_real(shifted, 0.0, np.inf, abs_tol / 2, rel_tol, limit, 'sin', omega)
    if not (cos_converged and sin_converged):
        logger.debug("Fourier integral at frequency %g did not converge (error estimates %g, %g)", frequency,
                     cos_error, sin_error)

    # sin(frequency y) = sign(frequency) sin(omega y)
    value = complex(cos_value, -math.copysign(1.0, frequency) * sin_value)
    return _checked_result(value, cos_error + sin_error, cos_converged and sin_converged, abs_tol, rel_tol)


def integrate_full_line(func, center=0.0, frequency=0.0, abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL,
                        limit=DEFAULT_SUBDIVISION_LIMIT):
    """
    Integrates func(x) * exp(-i frequency (x - center)) over (-inf, inf) as two semi-infinite
    halves meeting at center. func is real whenever frequency is not zero.
    """
    right = integrate_fourier(func, frequency, center, abs_tol / 2, rel_tol, limit)
    left = integrate_fourier(lambda y: func(2 * center - y), -frequency, center, abs_tol / 2, rel_tol, limit)
    return QuadResult(right.value + left.value, right.abs_error_estimate + left.abs_error_estimate)


def find_root_bracketed(g, a, b, x_tol=DEFAULT_X_TOL, g_tol=DEFAULT_G_TOL, max_iterations=DEFAULT_MAX_ITERATIONS):
    """
    Finds a root of g inside [a, b], which must satisfy g(a)*g(b) <= 0.

    Secant steps through the bracket endpoints are taken while they shrink the bracket at least
    by half; otherwise the next step is a bisection. Candidates never leave the bracket.
    Returns as soon as |g(x)| <= g_tol, or the endpoint with the smaller |g| once the bracket
    is narrower than x_tol.
    """
    a, b = float(min(a, b)), float(max(a, b))
    g_a, g_b = g(a), g(b)
    if g_a * g_b > 0:
        raise BracketError(a, b, g_a, g_b)
    if abs(g_a) <= g_tol:
        return a
    if abs(g_b) <= g_tol:
        return b

    bisect_next = False
    for iteration in range(max_iterations):
        width = b - a
        if width <= x_tol:
            logger.debug("Bracket narrower than %g after %d iterations", x_tol, iteration)
            return a if abs(g_a) < abs(g_b) else b

        candidate = None
        if not bisect_next:
            candidate = b - g_b * (b - a) / (g_b - g_a)
            if not a < candidate < b:
                candidate = None
        if candidate is None:
            candidate = 0.5 * (a + b)

        g_c = g(candidate)
        if abs(g_c) <= g_tol:
            logger.debug("Root %r found after %d iterations", candidate, iteration + 1)
            return candidate

        if (g_c < 0) == (g_a < 0):
            a, g_a = candidate, g_c
        else:
            b, g_b = candidate, g_c
        bisect_next = (b - a) > 0.5 * width

    raise RootNotFoundError("No root within tolerance after {} iterations, bracket [{}, {}]".format(
        max_iterations, a, b))


def solve_volterra_scalar(kernel, multiplier, s0, opts):
    """
    Solves dS/dt = -multiplier * integral_0^t kernel(t - t') S(t') dt' with S(0) = s0 on
    opts.time_grid().

    The memory integral uses the trapezoidal rule on the grid and each step is a PECE cycle:
    explicit Euler predictor followed by opts.corrector_iterations trapezoidal corrections.
    kernel is called once with the whole grid and may return an array or a scalar constant.
    Cost is O(M**2) in the number of grid points M.
    """
    grid = opts.time_grid()
    size = grid.size
    dt = opts.dt
    half = 0.5 * dt
    kernel_values = np.broadcast_to(np.asarray(kernel(grid), dtype=complex), grid.shape)
    # kernel_reversed[size-i:size-1] == kernel_values[i-1:0:-1]
    kernel_reversed = np.ascontiguousarray(kernel_values[::-1])
    kernel_origin = kernel_values[0]

    series = np.empty(size, dtype=complex)
    series[0] = s0
    rate_prev = 0j  # the memory integral vanishes at t=0
    report_every = max(size // 10, 1)

    for step in range(1, size):
        history = half * kernel_values[step] * series[0]
        if step > 1:
            history += dt * np.dot(kernel_reversed[size - step:size - 1], series[1:step])

        previous = series[step - 1]
        estimate = previous + dt * rate_prev
        for _ in range(opts.corrector_iterations):
            rate = -multiplier * (history + half * kernel_origin * estimate)
            estimate = previous + half * (rate_prev + rate)

        if not cmath.isfinite(estimate):
            raise VolterraError(step, estimate)

        series[step] = estimate
        rate_prev = -multiplier * (history + half * kernel_origin * estimate)
        if step % report_every == 0:
            logger.debug("Volterra step %d/%d, |S|=%g", step, size - 1, abs(estimate))

    return series

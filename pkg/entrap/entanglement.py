"""
Two-qubit entanglement of a pair (m, n) taken out of the N-qubit single-excitation state.

The reduced state of the pair is an X state, whose concurrence reduces to 2|C_m C_n|. The
general Wootters formula is kept alongside as an independent check.
"""
import logging

import numpy as np

logger = logging.getLogger(__name__)  # pylint: disable=invalid-name

BASIS = ('ee', 'eg', 'ge', 'gg')
AMPLITUDE_TOLERANCE = 1e-6
HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
EIGENVALUE_TOLERANCE = 1e-10
# populations below this are treated as exact zeros by the Wootters decomposition
POPULATION_CUTOFF = 1e-14

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


class EntanglementError(Exception):
    """Base error class"""


class NonPhysicalStateError(EntanglementError):
    """Amplitudes or density matrix outside the physical domain"""


def _check_amplitudes(c_m, c_n):
    weight = np.abs(c_m) ** 2 + np.abs(c_n) ** 2
    if np.any(weight > 1 + AMPLITUDE_TOLERANCE):
        raise NonPhysicalStateError("|c_m|^2 + |c_n|^2 = {} exceeds 1".format(np.max(weight)))
    return weight


def concurrence_from_amplitudes(c_m, c_n):
    """C = 2|c_m c_n|, elementwise over arrays"""
    _check_amplitudes(c_m, c_n)
    concurrence = np.clip(2 * np.abs(np.asarray(c_m) * np.asarray(c_n)), 0.0, 1.0)
    if concurrence.ndim == 0:
        return float(concurrence)
    return concurrence


class TwoQubitState:
    """Two-qubit density matrix in the ordered basis |ee>, |eg>, |ge>, |gg>"""
    def __init__(self, matrix):
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (4, 4):
            raise NonPhysicalStateError("Expected a 4x4 matrix, got shape {}".format(matrix.shape))
        if np.max(np.abs(matrix - matrix.conj().T)) > HERMITIAN_TOLERANCE:
            raise NonPhysicalStateError("Density matrix is not Hermitian")
        if abs(np.trace(matrix) - 1) > TRACE_TOLERANCE:
            raise NonPhysicalStateError("Density matrix trace is {}".format(np.trace(matrix)))
        if np.min(np.linalg.eigvalsh(matrix)) < -EIGENVALUE_TOLERANCE:
            raise NonPhysicalStateError("Density matrix is not positive semi-definite")
        self.matrix = matrix

    def flipped(self):
        """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)"""
        return SPIN_FLIP @ self.matrix.conj() @ SPIN_FLIP


def reduced_density_matrix(c_m, c_n):
    """
    State of the pair after tracing out the reservoir and the other N-2 qubits: |c_m|^2 on |eg>,
    |c_n|^2 on |ge>, coherence c_m c_n* between them and the remaining weight on |gg>.
    """
    weight = float(_check_amplitudes(c_m, c_n))
    if weight > 1:
        # within tolerance; rescale so the |gg> population stays non-negative
        c_m, c_n = c_m / np.sqrt(weight), c_n / np.sqrt(weight)
        weight = 1.0

    matrix = np.zeros((4, 4), dtype=complex)
    matrix[1, 1] = abs(c_m) ** 2
    matrix[2, 2] = abs(c_n) ** 2
    matrix[1, 2] = c_m * np.conj(c_n)
    matrix[2, 1] = np.conj(matrix[1, 2])
    matrix[3, 3] = 1 - matrix[1, 1].real - matrix[2, 2].real
    return TwoQubitState(matrix)


def wootters_concurrence(rho):
    """
    max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)} with l_i the decreasing eigenvalues of
    rho * rho_tilde.

    The sqrt(l_i) are obtained directly as the singular values of w^T (sigma_y x sigma_y) w,
    where the columns of w are the subnormalised eigenvectors of rho, which keeps zero
    eigenvalues from turning into O(1e-8) square roots of rounding noise.
    """
    products = np.linalg.eigvals(rho.matrix @ rho.flipped()).real
    if np.min(products) < -EIGENVALUE_TOLERANCE:
        raise NonPhysicalStateError("rho * rho_tilde has eigenvalue {}".format(np.min(products)))

    populations, vectors = np.linalg.eigh(rho.matrix)
    kept = populations > POPULATION_CUTOFF
    if not np.any(kept):
        return 0.0
    subnormalised = vectors[:, kept] * np.sqrt(populations[kept])
    roots = np.linalg.svd(subnormalised.T @ SPIN_FLIP @ subnormalised, compute_uv=False)
    concurrence = roots[0] - np.sum(roots[1:])
    return float(min(max(concurrence, 0.0), 1.0))


class ConcurrenceSeries:
    """Concurrence of the qubit pair over a time grid"""
    def __init__(self, t_grid, values, pair):
        self.t_grid = np.asarray(t_grid, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.pair = tuple(pair)

    @property
    def final(self):
        """Concurrence at the last grid point"""
        return float(self.values[-1])

    def time_average(self, t_start, t_end):
        """Mean concurrence over the grid points with t_start <= t <= t_end"""
        window = (self.t_grid >= t_start) & (self.t_grid <= t_end)
        if not np.any(window):
            raise EntanglementError("No grid points in [{}, {}]".format(t_start, t_end))
        return float(np.mean(self.values[window]))


def concurrence_series(trajectory, m, n):
    """2|C_m(t) C_n(t)| along a trajectory"""
    return ConcurrenceSeries(trajectory.t_grid,
                             concurrence_from_amplitudes(trajectory.amplitude(m), trajectory.amplitude(n)),
                             (m, n))


class SteadyPrediction:
    """
    Long-time band of the pair concurrence. The dark components persist; a bound state adds a
    term of modulus bs_weight to both amplitudes which keeps rotating against them.
    """
    def __init__(self, *, dark_m, dark_n, bs_weight, concurrence_min, concurrence_max):
        self.dark_m = dark_m
        self.dark_n = dark_n
        self.bs_weight = bs_weight
        self.concurrence_min = concurrence_min
        self.concurrence_max = concurrence_max

    @property
    def concurrence_mean(self):
        """Midpoint of the band"""
        return 0.5 * (self.concurrence_min + self.concurrence_max)

    def to_dict(self):
        """Complex amplitudes as [re, im] pairs"""
        return {
            'dark_m': [self.dark_m.real, self.dark_m.imag],
            'dark_n': [self.dark_n.real, self.dark_n.imag],
            'bs_weight': self.bs_weight,
            'concurrence_min': self.concurrence_min,
            'concurrence_max': self.concurrence_max,
            'concurrence_mean': self.concurrence_mean,
        }


def predict_steady(model, init, pair, report):
    """
    Steady concurrence band of the pair (m, n).

    Every amplitude keeps its dark component d_l = C_l(0) - S(0)/N. When report describes a
    bound state and the reservoir has a spectral edge, each amplitude also carries
    beta^2 S(0) exp(-i(E_bs - w0)t), so the concurrence oscillates within
    [2 prod(|d_l| - beta^2|S(0)|)_+, 2 prod(|d_l| + beta^2|S(0)|)].
    """
    m, n = pair
    dark = init.dark_components()
    dark_m, dark_n = complex(dark[m - 1]), complex(dark[n - 1])

    bs_weight = 0.0
    if report is not None and report.exists:
        if model.has_spectral_edge:
            bs_weight = report.beta_sq * abs(init.collective)
        else:
            logger.debug("Kernel of %r has no spectral edge, ignoring the bound state at E=%g", model, report.e_bs)

    low = 2 * max(abs(dark_m) - bs_weight, 0.0) * max(abs(dark_n) - bs_weight, 0.0)
    high = 2 * (abs(dark_m) + bs_weight) * (abs(dark_n) + bs_weight)
    return SteadyPrediction(dark_m=dark_m, dark_n=dark_n, bs_weight=bs_weight,
                            concurrence_min=min(low, 1.0), concurrence_max=min(high, 1.0))

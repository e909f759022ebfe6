import math
import unittest
from unittest import mock

import numpy as np
from scipy import special

from entrap.numerics import (BracketError, InvalidOptionsError, QuadratureError,
                             RootNotFoundError, VolterraError,
                             VolterraOptions, find_root_bracketed,
                             integrate_fourier, integrate_full_line,
                             integrate_semi_infinite, solve_volterra_scalar)
from entrap.reservoir import OhmicFamilyReservoir
from entrap.spectrum import y_of

LAMBDA = 15.0
GAMMA0 = 0.2


def exponential_kernel(tau):
    return 0.5 * GAMMA0 * LAMBDA * np.exp(-LAMBDA * tau)


def exponential_response(t, n_qubits):
    d = np.sqrt(complex(LAMBDA ** 2 - 2 * GAMMA0 * LAMBDA * n_qubits))
    return (np.exp(-LAMBDA * t / 2) * (np.cosh(d * t / 2) + LAMBDA / d * np.sinh(d * t / 2))).real


class QuadratureTest(unittest.TestCase):
    def test_exponential(self):
        result = integrate_semi_infinite(lambda omega: math.exp(-omega))
        self.assertAlmostEqual(result.value, 1.0, delta=1e-9)
        self.assertLess(result.abs_error_estimate, 1e-8)

    def test_exponential_integral_identity(self):
        expected = 1 - 0.2 * math.exp(0.2) * special.exp1(0.2)
        result = integrate_semi_infinite(lambda omega: omega * math.exp(-omega) / (omega + 0.2))
        self.assertAlmostEqual(result.value, expected, delta=1e-9)
        self.assertAlmostEqual(result.value, 0.70134, delta=5e-5)

    def test_endpoint_singularity(self):
        result = integrate_semi_infinite(lambda omega: omega ** -0.5 if omega <= 1 else 0.0)
        self.assertAlmostEqual(result.value, 2.0, delta=1e-8)

    def test_shifted_lower_bound(self):
        result = integrate_semi_infinite(lambda omega: math.exp(-omega), lower=2.0)
        self.assertAlmostEqual(result.value, math.exp(-2.0), delta=1e-10)

    def test_complex_integrand(self):
        # integral_0^inf exp(-w) exp(i w) dw = 1 / (1 - i)
        result = integrate_semi_infinite(lambda omega: math.exp(-omega) * complex(math.cos(omega), math.sin(omega)))
        self.assertIsInstance(result.value, complex)
        self.assertAlmostEqual(abs(result.value - 1 / (1 - 1j)), 0.0, delta=1e-9)

    def test_full_line(self):
        gaussian = integrate_full_line(lambda x: math.exp(-(x - 1.0) ** 2), center=1.0)
        self.assertAlmostEqual(gaussian.value, math.sqrt(math.pi), delta=1e-9)

    def test_full_line_with_frequency(self):
        # integral exp(-y**2) exp(-i w y) dy = sqrt(pi) exp(-w**2 / 4)
        for frequency in (0.5, 1.5, 6.0):
            with self.subTest(frequency=frequency):
                result = integrate_full_line(lambda x: math.exp(-(x - 1.0) ** 2), center=1.0, frequency=frequency)
                expected = math.sqrt(math.pi) * math.exp(-frequency ** 2 / 4)
                self.assertAlmostEqual(abs(result.value - expected), 0.0, delta=1e-9)

    def test_fourier(self):
        result = integrate_fourier(lambda x: math.exp(-x), 2.0)
        self.assertIsInstance(result.value, complex)
        self.assertAlmostEqual(abs(result.value - 1 / (1 + 2j)), 0.0, delta=1e-9)

    def test_fourier_negative_frequency(self):
        result = integrate_fourier(lambda x: math.exp(-x), -2.0)
        self.assertAlmostEqual(abs(result.value - 1 / (1 - 2j)), 0.0, delta=1e-9)

    def test_fourier_shifted_lower_bound(self):
        # the phase is measured from the lower bound
        result = integrate_fourier(lambda x: math.exp(-x), 2.0, lower=1.0)
        self.assertAlmostEqual(abs(result.value - math.exp(-1.0) / (1 + 2j)), 0.0, delta=1e-9)

    def test_fourier_zero_frequency(self):
        result = integrate_fourier(lambda x: math.exp(-x), 0.0, lower=1.0)
        self.assertAlmostEqual(result.value, math.exp(-1.0), delta=1e-10)

    def test_fourier_slow_oscillation_long_tail(self):
        # integral_0^inf cos(x) / (1 + x**2) dx = pi / (2e)
        result = integrate_fourier(lambda x: 1.0 / (1.0 + x ** 2), 1.0)
        self.assertAlmostEqual(result.value.real, math.pi / (2 * math.e), delta=1e-8)

    def test_error_estimate_bounds_error(self):
        cases = [
            (integrate_semi_infinite(lambda omega: math.exp(-omega)), 1.0),
            (integrate_semi_infinite(lambda omega: omega * math.exp(-omega) / (omega + 0.2)),
             1 - 0.2 * math.exp(0.2) * special.exp1(0.2)),
            (integrate_semi_infinite(lambda omega: omega ** -0.5 * math.exp(-omega)), math.sqrt(math.pi)),
            (integrate_semi_infinite(lambda omega: omega ** 2 * math.exp(-omega)), 2.0),
            (integrate_fourier(lambda x: math.exp(-x), 2.0), 1 / (1 + 2j)),
            (integrate_full_line(lambda x: math.exp(-x ** 2), frequency=1.0), math.sqrt(math.pi) * math.exp(-0.25)),
        ]
        for index, (result, exact) in enumerate(cases):
            with self.subTest(case=index):
                self.assertLessEqual(abs(result.value - exact), max(10 * result.abs_error_estimate, 1e-13))

    def test_non_convergence(self):
        failed = (0.5, 1e-2, {}, 'The maximum number of subdivisions has been achieved.')
        with mock.patch('scipy.integrate.quad', return_value=failed):
            with self.assertRaises(QuadratureError) as context:
                integrate_semi_infinite(lambda x: x, decades=0)
        # two pieces: [0, 1] and the mapped tail
        self.assertEqual(context.exception.estimate, 1.0)
        self.assertAlmostEqual(context.exception.error, 2e-2, delta=1e-15)

    def test_non_convergence_within_tolerance(self):
        failed = (0.5, 1e-14, {}, 'Roundoff error is detected.')
        with mock.patch('scipy.integrate.quad', return_value=failed):
            self.assertEqual(integrate_semi_infinite(lambda x: x, decades=0).value, 1.0)

    def test_fourier_non_convergence(self):
        failed = (0.5, 1e-2, {}, 'The maximum number of cycles allowed has been achieved.', [])
        with mock.patch('scipy.integrate.quad', return_value=failed):
            with self.assertLogs('entrap.numerics', level='DEBUG'):
                with self.assertRaises(QuadratureError):
                    integrate_fourier(math.exp, 1.0)

    def test_non_finite(self):
        with mock.patch('scipy.integrate.quad', return_value=(float('nan'), 0.0, {})):
            with self.assertRaises(QuadratureError):
                integrate_semi_infinite(lambda x: x, decades=0)


class RootFindingTest(unittest.TestCase):
    def test_linear(self):
        self.assertAlmostEqual(find_root_bracketed(lambda e: e + 1, -2.0, 0.0), -1.0, delta=1e-10)

    def test_quadratic(self):
        root = find_root_bracketed(lambda x: x ** 2 - 2, 0.0, 2.0)
        self.assertAlmostEqual(root, math.sqrt(2), delta=1e-10)

    def test_reversed_bracket(self):
        root = find_root_bracketed(lambda x: x ** 2 - 2, 2.0, 0.0)
        self.assertAlmostEqual(root, math.sqrt(2), delta=1e-10)

    def test_root_on_endpoint(self):
        self.assertEqual(find_root_bracketed(lambda x: x - 1.0, 1.0, 3.0), 1.0)

    def test_invalid_bracket(self):
        with self.assertRaises(BracketError) as context:
            find_root_bracketed(lambda x: x ** 2 + 1, -1.0, 1.0)
        self.assertEqual(context.exception.g_a, 2.0)
        self.assertEqual(context.exception.g_b, 2.0)
        self.assertIn('2.0', str(context.exception))

    def test_bracket_width_termination(self):
        # g never gets within g_tol of zero: a jump at x=0.3
        root = find_root_bracketed(lambda x: -1.0 if x < 0.3 else 1.0, 0.0, 1.0, x_tol=1e-12, g_tol=1e-3)
        self.assertAlmostEqual(root, 0.3, delta=1e-11)

    def test_iteration_budget(self):
        with self.assertRaises(RootNotFoundError):
            find_root_bracketed(lambda x: -1.0 if x < 0.3 else 1.0, 0.0, 1.0, x_tol=0.0, g_tol=1e-3,
                                max_iterations=10)

    def test_ohmic_bound_state_equation(self):
        model = OhmicFamilyReservoir(s=1.0, gamma=1.0, omega_c=1.0)
        root = find_root_bracketed(lambda e: y_of(model, 8, e) - e, -1.0, -1e-6)
        self.assertAlmostEqual(root, -0.070, delta=0.01)
        self.assertLessEqual(abs(y_of(model, 8, root) - root), 1e-10)


class VolterraOptionsTest(unittest.TestCase):
    def test_grid(self):
        opts = VolterraOptions(dt=0.1, t_max=1.0)
        self.assertEqual(opts.size, 11)
        np.testing.assert_allclose(opts.time_grid(), np.linspace(0.0, 1.0, 11))

    def test_grid_truncates(self):
        self.assertEqual(VolterraOptions(dt=0.3, t_max=1.0).size, 4)

    def test_invalid(self):
        for kwargs in ({'dt': 0.0}, {'dt': -1e-3}, {'dt': 1.0, 't_max': 0.5}, {'corrector_iterations': 0},
                       {'dt': 'fast'}, {'t_max': float('inf')}):
            with self.subTest(kwargs=kwargs):
                with self.assertRaises(InvalidOptionsError):
                    VolterraOptions(**kwargs)


class VolterraSolverTest(unittest.TestCase):
    def test_zero_kernel(self):
        series = solve_volterra_scalar(lambda tau: 0.0, 2, 1.0, VolterraOptions(dt=0.01, t_max=1.0))
        np.testing.assert_array_equal(series, np.ones(101, dtype=complex))

    def test_exponential_kernel(self):
        opts = VolterraOptions(dt=1e-3, t_max=5.0)
        series = solve_volterra_scalar(exponential_kernel, 2, math.sqrt(2), opts)
        expected = exponential_response(opts.time_grid(), 2) * math.sqrt(2)
        self.assertLess(np.max(np.abs(series - expected)), 1e-3)

    def test_second_order_convergence(self):
        errors = []
        for dt in (1e-2, 5e-3):
            opts = VolterraOptions(dt=dt, t_max=5.0)
            series = solve_volterra_scalar(exponential_kernel, 2, math.sqrt(2), opts)
            errors.append(np.max(np.abs(series - exponential_response(opts.time_grid(), 2) * math.sqrt(2))))
        self.assertAlmostEqual(errors[0] / errors[1], 4.0, delta=0.8)

    def test_non_finite_step(self):
        with self.assertRaises(VolterraError) as context:
            solve_volterra_scalar(lambda tau: np.full(np.shape(tau), np.nan), 2, 1.0,
                                  VolterraOptions(dt=0.1, t_max=1.0))
        self.assertEqual(context.exception.step, 1)
        self.assertIn('step 1', str(context.exception))

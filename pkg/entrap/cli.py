# Common reservoir bound states and two-qubit entanglement
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Command line front end of entrap.

Each subcommand builds a reservoir model from its options, runs the spectrum, dynamics or
steady-state computation for every requested qubit count N and writes plot-ready CSV files
and JSON reports to the output directory. `reproduce` runs the complete parameter grids of the
Lorentzian (fig1) and Ohmic-family (fig2) studies.
"""
import argparse
import copy
import csv
import json
import logging
import logging.config
import math
import os
import re
import sys

import numpy as np
import yaml

from entrap.dynamics import (DynamicsError, InitialState, InitialStateError,
                             Trajectory, classify_regime,
                             propagate_lorentzian_analytic, propagate_volterra)
from entrap.entanglement import (EntanglementError, concurrence_series,
                                 predict_steady)
from entrap.numerics import (InvalidOptionsError, NumericsError,
                             VolterraError, VolterraOptions)
from entrap.reservoir import (PRESETS, RESERVOIR_TYPES, InvalidParameterError,
                              ReservoirError, ReservoirKind, build_reservoir)
from entrap.spectrum import (SearchDomainError, SpectrumError,
                             SpectrumTolerances, degree_of_boundedness,
                             find_bound_state, y_curve)

logger = logging.getLogger(__name__)  # pylint: disable=invalid-name

LOGGING_CONFIG = {
    'disable_existing_loggers': False,
    'version': 1,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',  # diagnostics go to stderr, never mixed with the artifacts
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
            'level': 'INFO',
        },
    },
    'loggers': {
        'entrap': {
            'handlers': ['console'],
            'level': 'INFO',
        },
    }
}

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

OUTPUT_FORMATS = ('csv', 'json', 'both')
CSV_FLOAT_FORMAT = '{:.17g}'
DYNAMICS_HEADER = ('t', 're_S', 'im_S', 're_Cm', 'im_Cm', 're_Cn', 'im_Cn', 'concurrence')
STEADY_HEADER = ('N', 'exists', 'bs_weight', 'concurrence_min', 'concurrence_mean', 'concurrence_max')

# negative numbers in exponent notation, which argparse takes for option flags
NEGATIVE_NUMBER = re.compile(r'^-(\d|\.\d)')

FIGURES = {
    'fig1': {
        'panels': (('markovian', 'lorentzian-markovian'), ('non-markovian', 'lorentzian-non-markovian')),
        'n': [2, 8, 12],
    },
    'fig2': {
        'panels': (('sub-ohmic', 'sub-ohmic'), ('ohmic', 'ohmic-s1'), ('super-ohmic', 'super-ohmic')),
        'n': [2, 8, 12],
    },
}

DEFAULTS = {
    'reservoir': 'ohmic',
    's': 1.0,
    'gamma': 1.0,
    'omega_c': 1.0,
    'lambda': 15.0,
    'gamma0': 0.2,
    'omega0': 1.0,
    'half_line': False,
    'n': [2, 8, 12],
    'pair': [1, 2],
    'init': None,
    'dt': 1e-3,
    't_max': 50.0,
    'corrector_iterations': 2,
    'e_min': -1.0,
    'e_max': -1e-6,
    'points': 400,
    'probe_epsilon': 1e-6,
    'min_weight': 1e-3,
    'out': '.',
    'format': 'both',
    'force_volterra': False,
}


class ConfigError(Exception):
    """Invalid command line option or config file entry"""


class OutputError(Exception):
    """Non-finite values reached an output file"""


def _to_bool(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ('1', 'true', 'yes', 'on'):
        return True
    if text in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError("expected a boolean, got {!r}".format(value))


def _to_int_list(value):
    if isinstance(value, (list, tuple)):
        items = value
    else:
        items = str(value).split(',')
    return [int(str(item).strip()) for item in items if str(item).strip()]


def _to_pair(value):
    pair = _to_int_list(value)
    if len(pair) != 2:
        raise ValueError("expected two qubit indices m,n, got {!r}".format(value))
    return pair


def _to_text(value):
    return str(value).strip()


OPTION_CONVERTERS = {
    'reservoir': _to_text,
    's': float,
    'gamma': float,
    'omega_c': float,
    'lambda': float,
    'gamma0': float,
    'omega0': float,
    'half_line': _to_bool,
    'n': _to_int_list,
    'pair': _to_pair,
    'init': _to_text,
    'dt': float,
    't_max': float,
    'corrector_iterations': int,
    'e_min': float,
    'e_max': float,
    'points': int,
    'probe_epsilon': float,
    'min_weight': float,
    'out': _to_text,
    'format': _to_text,
    'force_volterra': _to_bool,
}


def _convert(name, value):
    try:
        return OPTION_CONVERTERS[name](value)
    except (TypeError, ValueError) as error:
        raise ConfigError("Invalid value {!r} for {}: {}".format(value, name, error)) from error


class RunConfig:  # pylint: disable=too-many-instance-attributes
    """
    Options of one run. Frequencies, energies and times are given in the user's units, in which
    the qubit frequency is omega0; the physics modules work in units of omega0 and the conversion
    happens here on the way in and in the writers on the way out.
    """
    def __init__(self, command, **options):
        unknown = set(options) - set(DEFAULTS)
        if unknown:
            raise ConfigError("Unknown options: {}".format(", ".join(sorted(unknown))))
        self.options = dict(DEFAULTS)
        self.options.update(options)
        self.command = command

        self.reservoir = self.options['reservoir']
        self.s = self.options['s']  # pylint: disable=invalid-name
        self.gamma = self.options['gamma']
        self.omega_c = self.options['omega_c']
        self.lam = self.options['lambda']
        self.gamma0 = self.options['gamma0']
        self.omega0 = self.options['omega0']
        self.half_line = self.options['half_line']
        self.n_list = list(self.options['n'])
        self.pair = tuple(self.options['pair'])
        self.init = self.options['init']
        self.dt = self.options['dt']  # pylint: disable=invalid-name
        self.t_max = self.options['t_max']
        self.corrector_iterations = self.options['corrector_iterations']
        self.e_min = self.options['e_min']
        self.e_max = self.options['e_max']
        self.points = self.options['points']
        self.probe_epsilon = self.options['probe_epsilon']
        self.min_weight = self.options['min_weight']
        self.out = self.options['out']
        self.output_format = self.options['format']
        self.force_volterra = self.options['force_volterra']
        self._validate()

    def _validate(self):  # pylint: disable=too-many-branches
        if self.reservoir not in RESERVOIR_TYPES:
            raise ConfigError("Unknown reservoir {!r}, expected one of {}".format(
                self.reservoir, ", ".join(sorted(RESERVOIR_TYPES))))
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError("Unknown format {!r}, expected one of {}".format(
                self.output_format, ", ".join(OUTPUT_FORMATS)))
        if not self.n_list:
            raise ConfigError("At least one qubit count is required")
        if min(self.n_list) < 2:
            raise ConfigError("Qubit counts must be at least 2, got {}".format(self.n_list))
        m, n = self.pair
        if m == n:
            raise ConfigError("The qubit pair needs two distinct qubits, got {},{}".format(m, n))
        if min(m, n) < 1 or max(m, n) > min(self.n_list):
            raise ConfigError("Qubit pair {},{} outside 1..{}".format(m, n, min(self.n_list)))
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise ConfigError("omega0 must be positive, got {}".format(self.omega0))
        if not (math.isfinite(self.t_max) and self.t_max >= 0):
            raise ConfigError("t_max must be non-negative, got {}".format(self.t_max))
        if self.points < 2:
            raise ConfigError("points must be at least 2, got {}".format(self.points))
        if not self.probe_epsilon > 0:
            raise ConfigError("probe_epsilon must be positive, got {}".format(self.probe_epsilon))
        if not 0 <= self.min_weight < 1:
            raise ConfigError("min_weight must lie in [0, 1), got {}".format(self.min_weight))

    @staticmethod
    def load(file_name):
        """
        Load options from file_name: a YAML mapping for .yaml/.yml files, key=value lines with
        # comments otherwise. Keys are the long option names with '-' or '_'.
        """
        logger.debug("Loading config file: %s", file_name)
        try:
            with open(file_name, encoding='utf-8') as config_file:
                if file_name.endswith(('.yaml', '.yml')):
                    raw = yaml.safe_load(config_file) or {}
                else:
                    raw = RunConfig._parse_key_values(config_file)
        except OSError as error:
            raise ConfigError("Unable to read config file {}: {}".format(file_name, error)) from error
        except yaml.YAMLError as error:
            raise ConfigError("Invalid YAML in {}: {}".format(file_name, error)) from error

        if not isinstance(raw, dict):
            raise ConfigError("Config file {} must hold a mapping of options".format(file_name))

        options = {}
        for key, value in raw.items():
            name = str(key).strip().replace('-', '_')
            if name not in OPTION_CONVERTERS:
                logger.warning("Ignoring unknown config key %s in %s", key, file_name)
                continue
            options[name] = _convert(name, value)
        return options

    @staticmethod
    def _parse_key_values(config_file):
        raw = {}
        for line_number, line in enumerate(config_file, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ConfigError("Line {}: expected key=value, got {!r}".format(line_number, line))
            key, value = line.split('=', 1)
            raw[key.strip()] = value.strip()
        return raw

    @staticmethod
    def from_args(args):
        """Defaults, overridden by the config file, overridden by command line flags"""
        options = {}
        if args.config:
            options.update(RunConfig.load(args.config))
        for name in OPTION_CONVERTERS:
            value = getattr(args, name, None)
            if value is not None:
                options[name] = _convert(name, value)
        return RunConfig(args.command, **options)

    def derive(self, **overrides):
        """Copy of this config with some options replaced"""
        options = dict(self.options)
        options.update(overrides)
        return RunConfig(self.command, **options)

    def for_preset(self, preset, **overrides):
        """Copy of this config running one of the reservoir.PRESETS"""
        family, params = PRESETS[preset]
        options = {'reservoir': family}
        for key, value in params.items():
            options['lambda' if key == 'lam' else key] = value
        options.update(overrides)
        return self.derive(**options)

    @property
    def write_csv(self):
        """CSV artifacts requested"""
        return self.output_format in ('csv', 'both')

    @property
    def write_json(self):
        """JSON artifacts requested"""
        return self.output_format in ('json', 'both')

    def model_parameters(self):
        """Reservoir options in the user's units"""
        data = {'reservoir': self.reservoir, 'omega0': self.omega0}
        if self.reservoir == ReservoirKind.LORENTZIAN.value:
            data.update({'gamma0': self.gamma0, 'lambda': self.lam, 'half_line': self.half_line})
        else:
            data.update({'s': self.s, 'gamma': self.gamma, 'omega_c': self.omega_c})
        return data

    def reservoir_model(self):
        """Reservoir in units of omega0"""
        scale = self.omega0
        return build_reservoir(self.reservoir, gamma0=self.gamma0 / scale, lam=self.lam / scale,
                               half_line=self.half_line, s=self.s, gamma=self.gamma,
                               omega_c=self.omega_c / scale, omega0=1.0)

    def tolerances(self):
        return SpectrumTolerances(probe_epsilon=self.probe_epsilon / self.omega0, min_weight=self.min_weight)

    def energy_grid(self):
        return np.linspace(self.e_min / self.omega0, self.e_max / self.omega0, self.points)

    def volterra_options(self):
        return VolterraOptions(self.dt * self.omega0, self.t_max * self.omega0, self.corrector_iterations)

    def time_grid(self):
        """Dimensionless grid; a t_max below one step gives the t=0 snapshot"""
        if not self.dt > 0:
            raise ConfigError("dt must be positive, got {}".format(self.dt))
        if self.t_max < self.dt:
            return np.zeros(1)
        return self.volterra_options().time_grid()

    def initial_state(self, n_qubits):
        """--init amplitudes, or the symmetric EPR pair on the selected qubits"""
        if self.init is None:
            return InitialState.epr_pair(n_qubits, self.pair)
        return InitialState.parse(n_qubits, self.init)


def _output_path(config, prefix, file_name):
    return os.path.join(config.out, prefix + file_name)


def _manifest_entry(path, kind, parameters):
    return {'file': os.path.basename(path), 'kind': kind, 'parameters': parameters}


def _write_csv(path, header, columns):
    columns = [np.asarray(column, dtype=float) for column in columns]
    for name, column in zip(header, columns):
        if not np.all(np.isfinite(column)):
            raise OutputError("Non-finite values in column {} of {}".format(name, path))

    logger.debug("Writing %s", path)
    with open(path, 'w', encoding='utf-8', newline='') as csv_file:
        writer = csv.writer(csv_file, lineterminator='\n')
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([CSV_FLOAT_FORMAT.format(value) for value in row])


def _write_json(path, data):
    try:
        payload = json.dumps(data, indent=2, sort_keys=True, allow_nan=False)
    except ValueError as error:
        raise OutputError("Non-finite values in {}: {}".format(path, error)) from error

    logger.debug("Writing %s", path)
    with open(path, 'w', encoding='utf-8', newline='') as json_file:
        json_file.write(payload + '\n')


def _report_dict(report, scale):
    """BoundStateReport with energies converted back to the user's units"""
    data = report.to_dict()
    for key in ('e_bs', 'y_at_zero', 'probe_epsilon', 'residual'):
        if data[key] is not None:
            data[key] *= scale
    data['degree_of_boundedness'] = degree_of_boundedness(report) * scale
    return data


def cmd_spectrum(config, prefix=''):
    """y_N(E) curves over [e_min, e_max] and the bound-state report of every N"""
    if not config.e_min < config.e_max < 0:
        raise ConfigError("The energy range needs e_min < e_max < 0, got [{}, {}]".format(
            config.e_min, config.e_max))

    model = config.reservoir_model()
    tols = config.tolerances()
    energies = config.energy_grid()
    scale = config.omega0
    parameters = dict(config.model_parameters(), n=config.n_list, e_min=config.e_min, e_max=config.e_max,
                      points=config.points)

    curves = []
    reports = {}
    for n_qubits in config.n_list:
        logger.info("Spectrum of %r for N=%d", model, n_qubits)
        curves.append(y_curve(model, n_qubits, energies, tols) * scale)
        reports[str(n_qubits)] = _report_dict(find_bound_state(model, n_qubits, tols), scale)

    written = []
    if config.write_csv:
        path = _output_path(config, prefix, 'spectrum.csv')
        header = ['E'] + ['y_N{}'.format(n_qubits) for n_qubits in config.n_list] + ['diagonal']
        _write_csv(path, header, [energies * scale] + curves + [energies * scale])
        written.append(_manifest_entry(path, 'spectrum', parameters))
    if config.write_json:
        path = _output_path(config, prefix, 'boundstates.json')
        _write_json(path, reports)
        written.append(_manifest_entry(path, 'boundstates', parameters))
    return written


def _propagate(config, model, init):
    """Returns the trajectory and the name of the solver path"""
    t_grid = config.time_grid()
    if model.kind is ReservoirKind.LORENTZIAN and not model.half_line and not config.force_volterra:
        return propagate_lorentzian_analytic(model, init, t_grid), 'analytic'
    if t_grid.size == 1:
        return Trajectory.initial(init), 'initial'
    return propagate_volterra(model, init, config.volterra_options()), 'volterra'


def cmd_dynamics(config, prefix=''):
    """Amplitudes and pair concurrence over time, one CSV per N"""
    model = config.reservoir_model()
    m, n = config.pair
    scale = config.omega0
    parameters = dict(config.model_parameters(), pair=list(config.pair), dt=config.dt, t_max=config.t_max)

    written = []
    summary = {}
    for n_qubits in config.n_list:
        init = config.initial_state(n_qubits)
        trajectory, method = _propagate(config, model, init)
        series = concurrence_series(trajectory, m, n)
        logger.info("N=%d (%s): final concurrence %.6f", n_qubits, method, series.final)

        entry = {
            'method': method,
            'initial_state': init.to_dict()['amplitudes'],
            'regime': None,
            't_final': float(trajectory.t_grid[-1]) / scale,
            'final_concurrence': series.final,
            'final_population': float(trajectory.excited_population()[-1]),
        }
        if model.kind is ReservoirKind.LORENTZIAN:
            regime, on_boundary = classify_regime(model, n_qubits)
            entry.update({'regime': regime.value, 'on_boundary': on_boundary})
        summary[str(n_qubits)] = entry

        if config.write_csv:
            path = _output_path(config, prefix, 'dynamics_N{}.csv'.format(n_qubits))
            collective, c_m, c_n = trajectory.collective, trajectory.amplitude(m), trajectory.amplitude(n)
            _write_csv(path, DYNAMICS_HEADER, [trajectory.t_grid / scale, collective.real, collective.imag,
                                               c_m.real, c_m.imag, c_n.real, c_n.imag, series.values])
            written.append(_manifest_entry(path, 'dynamics', dict(parameters, n=n_qubits)))

    if config.write_json:
        path = _output_path(config, prefix, 'dynamics.json')
        _write_json(path, summary)
        written.append(_manifest_entry(path, 'dynamics-summary', dict(parameters, n=config.n_list)))
    return written


def cmd_steady(config, prefix=''):
    """Predicted long-time concurrence band of the pair for every N"""
    model = config.reservoir_model()
    tols = config.tolerances()
    parameters = dict(config.model_parameters(), n=config.n_list, pair=list(config.pair))

    results = {}
    rows = []
    for n_qubits in config.n_list:
        report = find_bound_state(model, n_qubits, tols)
        prediction = predict_steady(model, config.initial_state(n_qubits), config.pair, report)
        results[str(n_qubits)] = {
            'prediction': prediction.to_dict(),
            'bound_state': _report_dict(report, config.omega0),
        }
        rows.append((n_qubits, float(report.exists), prediction.bs_weight, prediction.concurrence_min,
                     prediction.concurrence_mean, prediction.concurrence_max))

    written = []
    if config.write_json:
        path = _output_path(config, prefix, 'steady.json')
        _write_json(path, results)
        written.append(_manifest_entry(path, 'steady', parameters))
    if config.write_csv:
        path = _output_path(config, prefix, 'steady.csv')
        _write_csv(path, STEADY_HEADER, list(zip(*rows)))
        written.append(_manifest_entry(path, 'steady', parameters))
    return written


def cmd_reproduce(config, figure):
    """
    Every spectrum and dynamics artifact of one parameter study. Panels use the reservoir presets
    in units of omega0 and always write both formats; manifest.json comes last.
    """
    try:
        study = FIGURES[figure]
    except KeyError as error:
        raise ConfigError("Unknown figure {!r}, expected one of {}".format(
            figure, ", ".join(sorted(FIGURES)))) from error

    written = []
    for panel, preset in study['panels']:
        logger.info("Reproducing %s panel %s", figure, panel)
        panel_config = config.for_preset(preset, n=study['n'], omega0=1.0, format='both')
        prefix = '{}_{}_'.format(figure, panel)
        written.extend(cmd_spectrum(panel_config, prefix))
        written.extend(cmd_dynamics(panel_config, prefix))

    path = _output_path(config, '', 'manifest.json')
    _write_json(path, {'figure': figure, 'files': written})
    written.append(_manifest_entry(path, 'manifest', {'figure': figure}))
    return written


COMMANDS = {
    'spectrum': cmd_spectrum,
    'dynamics': cmd_dynamics,
    'steady': cmd_steady,
}

USAGE_ERRORS = (ConfigError, InvalidParameterError, InitialStateError, SearchDomainError, InvalidOptionsError,
                OSError)
NUMERICAL_ERRORS = (NumericsError, ReservoirError, SpectrumError, DynamicsError, EntanglementError, OutputError)


def _attach_negative_values(argv):
    """Joins '--e-max -1e-6' into '--e-max=-1e-6'"""
    joined = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if (token.startswith('--') and '=' not in token and index + 1 < len(argv) and
                NEGATIVE_NUMBER.match(argv[index + 1])):
            joined.append('{}={}'.format(token, argv[index + 1]))
            index += 2
        else:
            joined.append(token)
            index += 1
    return joined


def _build_parser():
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument('--config', help="key=value or YAML file with default options")
    options.add_argument('--out', help="output directory (default: .)")
    options.add_argument('--format', help="artifacts to write: csv, json or both")
    options.add_argument('--verbose', action='store_true', help="debug logging")

    model = options.add_argument_group('reservoir')
    model.add_argument('--reservoir', help="lorentzian or ohmic")
    model.add_argument('--lambda', dest='lambda', help="Lorentzian width")
    model.add_argument('--gamma0', help="Lorentzian coupling strength")
    model.add_argument('--half-line', action='store_true', default=None,
                       help="Lorentzian kernel over omega >= 0 only")
    model.add_argument('--s', help="Ohmic-family exponent")
    model.add_argument('--gamma', help="Ohmic-family coupling strength")
    model.add_argument('--omega-c', help="Ohmic-family cutoff frequency")
    model.add_argument('--omega0', help="qubit frequency, the unit of all other frequencies (default: 1)")

    system = options.add_argument_group('qubits')
    system.add_argument('--n', help="comma separated qubit counts")
    system.add_argument('--pair', help="qubit pair m,n whose entanglement is tracked")
    system.add_argument('--init', help='initial amplitudes, e.g. "1:0.7071+0i,2:0.7071+0i"')

    grid = options.add_argument_group('grids and tolerances')
    grid.add_argument('--dt', help="time step")
    grid.add_argument('--t-max', help="final time")
    grid.add_argument('--corrector-iterations', help="trapezoidal corrections per Volterra step")
    grid.add_argument('--force-volterra', action='store_true', default=None,
                      help="integrate Lorentzian dynamics numerically")
    grid.add_argument('--e-min', help="lowest energy of the spectrum grid")
    grid.add_argument('--e-max', help="highest energy of the spectrum grid, below 0")
    grid.add_argument('--points', help="number of spectrum grid points")
    grid.add_argument('--probe-epsilon', help="bound states must lie below -probe_epsilon")
    grid.add_argument('--min-weight', help="smallest per-qubit bound-state weight counted as a bound state")

    parser = argparse.ArgumentParser(description="""Bound states and two-qubit entanglement of N qubits
    in a common zero-temperature reservoir.""")
    parser.add_argument('--version', action='version', version='0.1')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    subparsers.add_parser('spectrum', parents=[options], help="y_N(E) curves and bound-state reports")
    subparsers.add_parser('dynamics', parents=[options], help="amplitude and concurrence dynamics")
    subparsers.add_parser('steady', parents=[options], help="long-time concurrence prediction")
    reproduce = subparsers.add_parser('reproduce', parents=[options], help="complete parameter study")
    reproduce.add_argument('figure', help=", ".join(sorted(FIGURES)))
    return parser


def _configure_logging(verbose):
    logging_config = copy.deepcopy(LOGGING_CONFIG)
    if verbose:
        logging_config['handlers']['console']['level'] = 'DEBUG'
        logging_config['loggers']['entrap']['level'] = 'DEBUG'
    logging.config.dictConfig(logging_config)


def main(argv=None):
    """
    Command line entry point. Returns the exit code: 0 once every artifact has been written,
    2 for usage and configuration errors and 3 for numerical failures.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(_attach_negative_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exit_request:
        return exit_request.code or EXIT_OK

    _configure_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        os.makedirs(config.out, exist_ok=True)
        if args.command == 'reproduce':
            written = cmd_reproduce(config, args.figure)
        else:
            written = COMMANDS[args.command](config)
    except USAGE_ERRORS as error:
        logger.error("%s", error)
        return EXIT_USAGE
    except VolterraError as error:
        logger.error("Volterra solver failed at step %d: %s", error.step, error)
        return EXIT_NUMERICAL
    except NUMERICAL_ERRORS as error:
        logger.error("Numerical failure: %s", error)
        return EXIT_NUMERICAL

    for entry in written:
        logger.info("Wrote %s", os.path.join(config.out, entry['file']))
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())

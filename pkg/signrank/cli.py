"""
The ``signrank`` command line.

    signrank scores --n 4 --phi vdw --flavor approx
    signrank test nonserial --input series.csv --phi vdw --flavor exact
    signrank test serial --stat lvdw --input series.csv
    signrank power --density a --stats all --seed 7 --out curves.csv
    signrank plot --input curves.csv --out curves.svg

Errors are reported on stderr and mapped to the exit status of their
category (1 usage, 2 data, 3 numeric).
"""
import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import distributions, utils, plotting, version
from .errors import CommandLineError, exit_code_for
from .nonserial import RegressionDesign, nonserial_test
from .scores import BUILTIN_NAMES, build_score_table, builtin_scores
from .simulation.power import (
    STATISTICS, DEFAULT_N, DEFAULT_REPLICATIONS, FAST_REPLICATIONS,
    parse_statistics
)
from .sync import PowerStudy
from .testing import DEFAULT_ALPHA, two_sided_test

_log = logging.getLogger(__name__)

_LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'


class _ArgumentParser(argparse.ArgumentParser):
    # Status 2 is reserved for data errors.
    def error(self, message):
        raise CommandLineError('{}: {}'.format(self.prog, message))


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, parsed from the command line."""
    command: str
    test_kind: Optional[str] = None
    density: Optional[str] = None
    statistics: str = 'all'
    phi: str = 'vdw'
    flavor: str = 'approximate'
    n: Optional[int] = None
    replications: int = DEFAULT_REPLICATIONS
    alpha: float = DEFAULT_ALPHA
    seed: int = 0
    input: Optional[str] = None
    design: Optional[str] = None
    out: Optional[str] = None
    svg: Optional[str] = None
    format: str = 'csv'
    crn: bool = False
    workers: int = 1
    verbose: int = 0

    @classmethod
    def from_args(cls, args):
        fields = cls.__dataclass_fields__
        values = {k: v for k, v in vars(args).items()
                  if k in fields and v is not None}
        if getattr(args, 'fast', False):
            values['replications'] = FAST_REPLICATIONS
        return cls(**values)


def _build_parser():
    parser = _ArgumentParser(
        prog='signrank',
        description='Sign-and-rank statistics and randomness tests.')
    parser.add_argument('-V', '--version', action='version',
                        version='%(prog)s ' + version.__version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress (-vv for debug output)')
    commands = parser.add_subparsers(dest='command', required=True,
                                     parser_class=_ArgumentParser)

    scores = commands.add_parser('scores', help='tabulate the scores')
    scores.add_argument('--n', type=int, required=True)
    scores.add_argument('--phi', default='vdw', choices=BUILTIN_NAMES)
    scores.add_argument('--flavor', default='approximate')
    scores.add_argument('--out', help='output file (default: stdout)')

    test = commands.add_parser('test', help='test a series for randomness')
    kinds = test.add_subparsers(dest='test_kind', required=True,
                                parser_class=_ArgumentParser)

    nonserial = kinds.add_parser('nonserial', help='nonserial statistic')
    nonserial.add_argument('--input', required=True,
                           help='CSV file, one series per column')
    nonserial.add_argument('--design',
                           help='CSV file with the regression constants '
                                '(default: location statistic)')
    nonserial.add_argument('--phi', default='vdw', choices=BUILTIN_NAMES)
    nonserial.add_argument('--flavor', default='approximate')
    nonserial.add_argument('--alpha', type=float, default=DEFAULT_ALPHA)
    nonserial.add_argument('--format', choices=('csv', 'json'), default='csv')
    nonserial.add_argument('--out')

    serial = kinds.add_parser('serial', help='lag-one autocorrelation test')
    serial.add_argument('--stat', dest='statistics', required=True,
                        choices=tuple(STATISTICS))
    serial.add_argument('--input', required=True,
                        help='CSV file, one series per column')
    serial.add_argument('--alpha', type=float, default=DEFAULT_ALPHA)
    serial.add_argument('--format', choices=('csv', 'json'), default='csv')
    serial.add_argument('--out')

    power = commands.add_parser('power', help='Monte Carlo power study')
    power.add_argument('--density', required=True,
                       help='a letter a-f or a spec such as skew-normal:-10')
    power.add_argument('--stats', dest='statistics', default='all')
    power.add_argument('--n', type=int, default=DEFAULT_N)
    power.add_argument('--reps', dest='replications', type=int,
                       default=DEFAULT_REPLICATIONS)
    power.add_argument('--fast', action='store_true',
                       help='use {} replications'.format(FAST_REPLICATIONS))
    power.add_argument('--alpha', type=float, default=DEFAULT_ALPHA)
    power.add_argument('--seed', type=int, default=0)
    power.add_argument('--crn', action='store_true',
                       help='reuse innovations across values of theta')
    power.add_argument('--workers', type=int, default=1)
    power.add_argument('--out', help='curves CSV (default: stdout)')
    power.add_argument('--svg', help='also render the curves as SVG')

    plot = commands.add_parser('plot', help='render a curves CSV as SVG')
    plot.add_argument('--input', required=True)
    plot.add_argument('--out', dest='svg', required=True)

    return parser


def _configure_logging(verbose, stream):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    root = logging.getLogger('signrank')
    handler = next((h for h in root.handlers
                    if getattr(h, '_signrank_cli', False)), None)
    if handler is None:
        handler = logging.StreamHandler(stream)
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        handler._signrank_cli = True
        root.addHandler(handler)
    else:
        handler.setStream(stream)
    root.setLevel(level)


def _report(error, stream):
    prefix = 'error:'
    if 'NO_COLOR' not in os.environ and stream.isatty():
        prefix = '\x1b[31merror:\x1b[0m'
    print(prefix, error, file=stream)


# region Commands


def _output(config, stdout):
    return config.out or stdout


def _scores(config, stdout):
    table = build_score_table(config.n, builtin_scores(config.phi),
                              config.flavor)
    utils.write_score_table_csv(table, _output(config, stdout))


def _test_nonserial(config, stdout):
    series = utils.read_series_csv(config.input)
    phi = builtin_scores(config.phi)
    constants = (utils.read_design_csv(config.design)
                 if config.design else None)

    results = []
    for name, z in series.items():
        if constants is None:
            design = RegressionDesign.location(z.size)
        else:
            design = RegressionDesign.from_constants(constants)
        table = build_score_table(z.size, phi, config.flavor)
        statistic, result = nonserial_test(z, design, table, config.alpha,
                                           name=name)
        if statistic.noether_ratio is not None:
            _log.info('%s: Noether ratio %.4g', name,
                      statistic.noether_ratio)
        results.append(result)

    utils.write_results(results, _output(config, stdout), config.format)


def _test_serial(config, stdout):
    series = utils.read_series_csv(config.input)
    compute = STATISTICS[config.statistics].compute
    results = [two_sided_test(compute(z), config.alpha, name=name)
               for name, z in series.items()]
    utils.write_results(results, _output(config, stdout), config.format)


def _power(config, stdout):
    density = distributions.parse_density_spec(config.density)
    study = PowerStudy(
        density, parse_statistics(config.statistics),
        n=DEFAULT_N if config.n is None else config.n,
        replications=config.replications, alpha=config.alpha,
        seed=config.seed, common_random_numbers=config.crn,
        workers=config.workers)

    curves = study.run()
    utils.write_curves_csv(curves, _output(config, stdout))
    if config.svg:
        plotting.render_svg(curves, config.svg)


def _plot(config, stdout):
    curves = utils.read_curves_csv(config.input)
    plotting.render_svg(curves, config.svg)


_COMMANDS = {
    ('scores', None): _scores,
    ('test', 'nonserial'): _test_nonserial,
    ('test', 'serial'): _test_serial,
    ('power', None): _power,
    ('plot', None): _plot,
}


# endregion


def run(argv=None, stdout=None, stderr=None):
    """
    Runs the command line with ``argv`` (``sys.argv[1:]`` by default)
    and returns the exit status.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        config = RunConfig.from_args(_build_parser().parse_args(argv))
    except SystemExit as e:
        # --help and --version
        return e.code or 0
    except Exception as e:
        _report(e, stderr)
        return exit_code_for(e)

    _configure_logging(config.verbose, stderr)
    try:
        _COMMANDS[config.command, config.test_kind](config, stdout)
    except Exception as e:
        _log.debug('Command failed', exc_info=True)
        _report(e, stderr)
        return exit_code_for(e)
    return 0


def main():
    sys.exit(run())

#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Module that contains the command line app.

Why does this file exist, and why not put this in __main__?
  You might be tempted to import things from __main__ later, but that will
  cause problems: the code will get executed twice:
  - When you run `python -m loopsoup` python will execute
    ``__main__.py`` as a script. That means there won't be any
    ``loopsoup.__main__`` in ``sys.modules``.
  - When you import __main__ it will get executed again (as a module) because
    there's no ``loopsoup.__main__`` in ``sys.modules``.
  Also see (1) from http://click.pocoo.org/5/setuptools/#setuptools-integration
"""

import argparse
import io
import json
import logging
import sys

import numpy as np

import loopsoup
from loopsoup import current_field, enumeration, gff, sampler, weights
from loopsoup.exceptions import LoopSoupError, OptionError, ParseError
from loopsoup.loops import Current
from loopsoup.options import OUTPUT_FORMATS, validate_options
from loopsoup.output import get_output
from loopsoup.suites import SUITE_NAMES, build_suite_stack

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _common_options():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        '--input',
        metavar='PATH',
        required=True,
        help='weight matrix file (JSON)')

    group = parser.add_argument_group('Numeric Options')
    group.add_argument('--max-total', dest='max_total', type=int,
                       help='largest total current mass kept in series')
    group.add_argument('--quad', dest='quad_points', type=int,
                       help='torus nodes per angle (defaults to 64)')
    group.add_argument('--samples', type=int,
                       help='Monte Carlo sample count')
    group.add_argument('--seed', type=int, help='random seed')
    group.add_argument('--tol', type=float,
                       help='absolute tolerance for verification')
    group.add_argument(
        '--grid',
        metavar='SPEC',
        help='occupation points, e.g. "0.5,1,2" for every coordinate or '
             '"0.5,1;1,2" per coordinate')
    group.add_argument('--max-mass', dest='max_mass', type=int,
                       help='largest current mass checked by the oracles')
    group.add_argument('--max-len', dest='max_len', type=int,
                       help='loop length cutoff for the log-Green sum')
    group.add_argument('--workers', type=int,
                       help='processes used for sampling')

    group = parser.add_argument_group('Output Options')
    group.add_argument(
        '--format',
        dest='output_format',
        choices=OUTPUT_FORMATS,
        help='output format, "text" (default) or "json"')
    group.add_argument(
        '--out',
        metavar='PATH',
        help='write sample records to PATH')
    return parser


def create_parser():
    parser = argparse.ArgumentParser(
        prog='loopsoup',
        description='Exact and Monte Carlo computations for loop soups with '
                    'complex edge weights.',
    )
    parser.add_argument(
        '--version',
        action='version',
        version=loopsoup.__version__)
    parser.add_argument(
        '-v', '--verbose',
        action='count',
        default=0,
        help='log progress (-v) or debugging detail (-vv) to stderr')

    common = _common_options()
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    commands.add_parser(
        'validate', parents=[common],
        help='report size, spectral radius and flags of the matrix')

    cmd = commands.add_parser(
        'current', parents=[common],
        help='current field at a current given as u,v,count triplets')
    cmd.add_argument('triplets', nargs='*', metavar='TRIPLET')
    cmd.add_argument('--oracles', action='store_true', default=False,
                     help='also evaluate both enumeration oracles')

    cmd = commands.add_parser(
        'density', parents=[common],
        help='occupation density at one point, one value per vertex')
    cmd.add_argument('point', nargs='+', type=float, metavar='T')

    cmd = commands.add_parser(
        'verify', parents=[common], help='run a verification suite')
    cmd.add_argument('suite', choices=SUITE_NAMES)

    commands.add_parser(
        'sample', parents=[common],
        help='draw bubble soups and occupation points')
    return parser


def _error(msg, code=EXIT_FAILED):
    """Print msg and return the exit code."""
    sys.stderr.write(u'[ERROR] {0}\n'.format(msg))
    return code


def parse_triplets(n, items):
    """``"u,v,count"`` strings into a :class:`Current`."""
    triplets = []
    for item in items:
        try:
            u, v, count = (int(x) for x in item.split(','))
        except ValueError:
            raise OptionError('Invalid triplet: {0!r}'.format(item))
        if count < 0:
            raise OptionError('Invalid triplet: {0!r}'.format(item))
        triplets.append((u, v, count))
    return Current.from_triplets(n, triplets)


def cmd_validate(Q, config):
    rho = weights.spectral_radius_abs(Q)
    return {
        'n': Q.n,
        'rho': rho,
        'integrable': rho < 1,
        'hermitian': weights.is_hermitian(Q),
        'nonnegative': Q.is_nonnegative(),
        'row_sums': [complex(x) for x in Q.row_sums()],
        'samplable': weights.is_samplable(Q),
    }


def cmd_current(Q, config, current):
    record = {'current': current, 'nu_c': current_field.nu_c(Q, current)}
    if config.oracles:
        record['oracle_bubble'] = enumeration.nu_c_oracle_bubble(
            Q, current, config.budget)
        record['oracle_loopsoup'] = enumeration.nu_c_oracle_loopsoup(
            Q, current, config.budget)
    return record


def cmd_density(Q, config, point):
    if len(point) != Q.n:
        raise OptionError('density needs {0} coordinates, got {1}'.format(
            Q.n, len(point)))
    series = current_field.occupation_density_series(
        Q, point, config.max_total, config.quad_points)
    record = {
        'point': list(series.point),
        'series': {'value': series.value, 'max_total': series.max_total,
                   'tail_bound': series.tail_bound},
    }
    if weights.is_hermitian(Q):
        density = gff.density_f_absZ2(Q, point, config.quad_points)
        record['quadrature'] = {'value': density.value,
                                'error': density.error,
                                'points': density.points}
        record['discrepancy'] = abs(series.value - density.value)
    return record


def cmd_verify(Q, config, suite):
    return list(build_suite_stack(suite).run(Q, config))


def cmd_sample(Q, config, stream):
    """Write one JSON record per sample to ``stream`` and return the
    summary."""
    count = config.samples
    samples = []
    total = np.zeros(Q.n)
    for index, sample, t in sampler.iter_bubble_samples(
            Q, count, config.seed, config.workers):
        samples.append(sample)
        total += t
        if stream is not None:
            stream.write(json.dumps(sampler.sample_record(index, sample, t)))
            stream.write('\n')
    G = weights.green(Q)
    test = sampler.current_chi_square(Q, samples)
    histogram = sampler.current_histogram(samples)
    return {
        'samples': count,
        'seed': config.seed,
        'mean_occupation': [float(x) for x in total / max(count, 1)],
        'green_diagonal': [float(x) for x in np.diag(G.entries).real],
        'zero_current_fraction':
            histogram[Current.zero(Q.n)] / max(count, 1),
        'current_chi_square_pvalue': test.pvalue,
    }


def _configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def main(args=None):
    parser = create_parser()
    args = parser.parse_args(args)
    _configure_logging(args.verbose)

    try:
        config = validate_options(vars(args))
    except OptionError as e:
        return _error(u'Invalid options: {0}'.format(e), EXIT_USAGE)

    try:
        Q = weights.load_weights(args.input)
    except (IOError, OSError) as e:
        return _error(u'Failed to read {0}: {1}'.format(args.input, e),
                      EXIT_USAGE)
    except ParseError as e:
        return _error(u'Failed to parse {0}: {1}'.format(args.input, e),
                      EXIT_USAGE)

    output = get_output(config.output_format)
    out = sys.stdout
    code = EXIT_OK
    try:
        if args.command == 'validate':
            records = [cmd_validate(Q, config)]
        elif args.command == 'current':
            current = parse_triplets(Q.n, args.triplets)
            records = [cmd_current(Q, config, current)]
        elif args.command == 'density':
            records = [cmd_density(Q, config, args.point)]
        elif args.command == 'verify':
            records = cmd_verify(Q, config, args.suite)
            if not all(r.passed for r in records):
                code = EXIT_FAILED
        else:
            if config.out:
                try:
                    stream = io.open(config.out, 'w', encoding='utf-8')
                except IOError as e:
                    return _error(u'Failed to open {0}: {1}'.format(
                        config.out, e), EXIT_USAGE)
                with stream:
                    records = [cmd_sample(Q, config, stream)]
            else:
                records = [cmd_sample(Q, config, None)]
    except OptionError as e:
        return _error(u'Invalid options: {0}'.format(e), EXIT_USAGE)
    except LoopSoupError as e:
        return _error(u'{0}: {1}'.format(type(e).__name__, e))

    for record in records:
        out.write(output.process(record))
        out.write('\n')
    out.flush()
    return code

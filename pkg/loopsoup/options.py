# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Run options shared by the command line and the verification suites."""

from dataclasses import dataclass, field

from loopsoup.current_field import DEFAULT_MAX_TOTAL
from loopsoup.enumeration import DEFAULT_BUDGET
from loopsoup.exceptions import OptionError
from loopsoup.gff import DEFAULT_TOL
from loopsoup.sampler import DEFAULT_SAMPLES, DEFAULT_SEED
from loopsoup.torus import DEFAULT_QUAD_POINTS

DEFAULT_GRID = (0.5, 1.0, 2.0)
DEFAULT_MAX_MASS = 4
DEFAULT_MAX_LEN = 12
OUTPUT_FORMATS = ('text', 'json')


@dataclass
class RunConfig(object):
    input: str = None
    command: str = None
    max_total: int = DEFAULT_MAX_TOTAL
    quad_points: int = DEFAULT_QUAD_POINTS
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    grid: list = field(default_factory=lambda: [list(DEFAULT_GRID)])
    output_format: str = 'text'
    out: str = None
    workers: int = 1
    max_mass: int = DEFAULT_MAX_MASS
    max_len: int = DEFAULT_MAX_LEN
    budget: int = DEFAULT_BUDGET
    oracles: bool = False

    def grid_for(self, n):
        """One list of coordinates per vertex; a single list is shared."""
        if len(self.grid) == 1:
            return [list(self.grid[0]) for _ in range(n)]
        if len(self.grid) != n:
            raise OptionError('grid has {0} coordinate lists for {1} '
                              'vertices'.format(len(self.grid), n))
        return [list(g) for g in self.grid]


def _positive_int(options, name, default):
    value = options.get(name)
    if value is None:
        return default
    bad = OptionError('Invalid value for {0}: {1!r}'.format(name, value))
    if isinstance(value, bool) or isinstance(value, float) and value % 1:
        raise bad
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise bad
    if number < 1:
        raise bad
    return number


def parse_grid(spec):
    """``"0.5,1,2"`` or ``"0.5,1;1,2"`` into a list of coordinate lists."""
    if isinstance(spec, str):
        lists = [part.split(',') for part in spec.split(';')]
    elif spec and all(isinstance(g, (list, tuple)) for g in spec):
        lists = spec
    else:
        lists = [spec]
    grid = []
    for part in lists:
        try:
            values = [float(x) for x in part if str(x).strip()]
        except ValueError:
            raise OptionError('Invalid value for grid: {0!r}'.format(spec))
        if not values or any(not x >= 0 for x in values):
            raise OptionError('Invalid value for grid: {0!r}'.format(spec))
        grid.append(values)
    return grid


def validate_options(options):
    """Check options one by one and build a :class:`RunConfig`.

    :raises OptionError: naming the first offending option.
    """
    config = RunConfig(input=options.get('input'),
                       command=options.get('command'),
                       out=options.get('out'))

    for name in ('max_total', 'quad_points', 'samples', 'workers',
                 'max_mass', 'max_len', 'budget'):
        setattr(config, name,
                _positive_int(options, name, getattr(config, name)))

    seed = options.get('seed')
    if seed is not None:
        try:
            seed = int(seed)
        except (TypeError, ValueError):
            raise OptionError('Invalid value for seed: {0!r}'.format(seed))
        if seed < 0:
            raise OptionError('Invalid value for seed: {0!r}'.format(seed))
        config.seed = seed

    tol = options.get('tol')
    if tol is not None:
        try:
            tol = float(tol)
        except (TypeError, ValueError):
            raise OptionError('Invalid value for tol: {0!r}'.format(tol))
        if not 0 < tol < 1:
            raise OptionError('Invalid value for tol: {0!r}'.format(tol))
        config.tol = tol

    ofrmt = options.get('output_format')
    if ofrmt is not None:
        if ofrmt not in OUTPUT_FORMATS:
            raise OptionError('Unknown output format: {0!r}'.format(ofrmt))
        config.output_format = ofrmt

    oracles = options.get('oracles', False)
    if oracles not in [True, False]:
        raise OptionError('Invalid value for oracles: '
                          '{0!r}'.format(oracles))
    config.oracles = oracles

    grid = options.get('grid')
    if grid is not None:
        config.grid = parse_grid(grid)

    return config

# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Loop soups, currents and occupation fields for complex edge weights."""

import os

# Setup namespace
from loopsoup import weights
from loopsoup import loops
from loopsoup import enumeration
from loopsoup import current_field
from loopsoup import gff
from loopsoup import sampler
from loopsoup import cli

from loopsoup.weights import WeightMatrix, green, load_weights
from loopsoup.loops import Current

__version__ = '0.1.0'
__all__ = [
    'weights', 'loops', 'enumeration', 'current_field', 'gff', 'sampler',
    'cli', 'WeightMatrix', 'Current', 'green', 'load_weights',
    'example_path', 'load_example',
]

EXAMPLES = ('singleton', 'zero', 'hermitian2', 'substochastic3')


def example_path(name):
    """Path of a bundled example matrix.

    :param name: one of ``singleton``, ``zero``, ``hermitian2`` and
        ``substochastic3``.
    """
    if name not in EXAMPLES:
        raise ValueError('unknown example {0!r}'.format(name))
    return os.path.join(os.path.dirname(__file__), 'data', name + '.json')


def load_example(name):
    """Load a bundled example matrix by name."""
    return load_weights(example_path(name))

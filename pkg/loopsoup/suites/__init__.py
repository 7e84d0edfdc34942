# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

from loopsoup.exceptions import OptionError

from loopsoup.suites.exact import Suite
from loopsoup.suites.exact import PropositionSuite
from loopsoup.suites.exact import LemmaSuite
from loopsoup.suites.exact import IdentitiesSuite
from loopsoup.suites.exact import GreenSuite

from loopsoup.suites.fields import IsomorphismSuite
from loopsoup.suites.fields import MomentSuite
from loopsoup.suites.fields import TorusSuite

from loopsoup.suites.sampling import SamplingSuite

from loopsoup.suites.stack import SuiteStack

SUITES = (
    PropositionSuite,
    LemmaSuite,
    IdentitiesSuite,
    GreenSuite,
    IsomorphismSuite,
    MomentSuite,
    TorusSuite,
    SamplingSuite,
)

SUITE_NAMES = tuple(s.name for s in SUITES) + ('all',)


def build_suite_stack(name):
    """Set up a :class:`SuiteStack` for ``name`` or for every suite when
    ``name`` is ``'all'``."""
    stack = SuiteStack()
    if name not in SUITE_NAMES:
        raise OptionError('Unknown suite: {0!r}'.format(name))
    for suite in SUITES:
        if name in ('all', suite.name):
            stack.append(suite())
    return stack


__all__ = [
    'Suite',
    'PropositionSuite',
    'LemmaSuite',
    'IdentitiesSuite',
    'GreenSuite',

    'IsomorphismSuite',
    'MomentSuite',
    'TorusSuite',

    'SamplingSuite',

    'SuiteStack',
    'SUITE_NAMES',
    'build_suite_stack',
]

# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Verification reports and the JSON-ready encoding of results."""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from loopsoup.loops import Current, LocalTime, Path, UnrootedLoop

PASS = 'PASS'
FAIL = 'FAIL'
SKIP = 'SKIP'

# Larger integers do not survive a round trip through a double.
_SAFE_INT = 2 ** 53


@dataclass
class VerificationReport(object):
    """Outcome of comparing two computations of the same quantity.

    ``discrepancy`` is the largest deviation seen over ``rows``; the report
    passes when it is within ``tolerance`` (and whatever per-row bounds the
    producer checked).
    """

    name: str
    status: str
    quantity_a: str = ''
    quantity_b: str = ''
    discrepancy: float = 0.0
    tolerance: float = 0.0
    parameters: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    message: str = ''

    @property
    def passed(self):
        return self.status in (PASS, SKIP)

    @classmethod
    def skipped(cls, name, reason, **parameters):
        return cls(name=name, status=SKIP, message=reason,
                   parameters=parameters)

    @classmethod
    def judge(cls, name, rows, ok, tolerance, **kwargs):
        """Build a report from per-case ``rows`` (dicts with a
        ``discrepancy`` key); ``ok`` is the producer's verdict."""
        worst = max((r.get('discrepancy', 0.0) for r in rows), default=0.0)
        return cls(name=name, status=PASS if ok else FAIL, rows=rows,
                   discrepancy=float(worst), tolerance=tolerance, **kwargs)

    def to_dict(self):
        return {
            'name': self.name,
            'status': self.status,
            'quantity_a': self.quantity_a,
            'quantity_b': self.quantity_b,
            'discrepancy': encode(self.discrepancy),
            'tolerance': encode(self.tolerance),
            'parameters': encode(self.parameters),
            'rows': encode(self.rows),
            'message': self.message,
        }


def encode(value):
    """Turn a result into JSON-ready data.

    Complex numbers become ``[re, im]``. Fractions and integers beyond
    double precision become decimal strings. Loops become 1-based vertex
    lists and currents 1-based ``[u, v, count]`` triplets.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, int) and abs(value) < _SAFE_INT:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Current):
        return value.triplets()
    if isinstance(value, UnrootedLoop):
        value = value.representative
    if isinstance(value, Path):
        return [v + 1 for v in value.vertices]
    if isinstance(value, LocalTime):
        return list(value)
    if isinstance(value, np.ndarray):
        return [encode(x) for x in value.tolist()]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(x) for x in value]
    raise TypeError('cannot encode {0!r}'.format(value))

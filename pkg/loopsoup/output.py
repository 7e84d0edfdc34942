# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

import json

from loopsoup.report import VerificationReport, encode


class OutputFilter(object):
    """Serialize result records; ``count`` tracks how many were written."""

    def __init__(self):
        self.count = 0

    def _process(self, data):
        raise NotImplementedError

    def process(self, record):
        self.count += 1
        if isinstance(record, VerificationReport):
            record = record.to_dict()
        return self._process(encode(record))


class JSONOutput(OutputFilter):
    def _process(self, data):
        return json.dumps(data)


class TextOutput(OutputFilter):
    """``key: value`` lines; nested records are indented and floats are
    written with ``repr`` so they match the JSON output digit for digit."""

    indent = '  '

    def _process(self, data):
        lines = []
        if self.count > 1:
            lines.append('')
        self._emit(data, 0, lines)
        return '\n'.join(lines)

    def _emit(self, data, depth, lines):
        pad = self.indent * depth
        if isinstance(data, dict):
            for key, value in data.items():
                if _is_scalar(value):
                    lines.append('{0}{1}: {2}'.format(pad, key,
                                                      _scalar(value)))
                else:
                    lines.append('{0}{1}:'.format(pad, key))
                    self._emit(value, depth + 1, lines)
        elif isinstance(data, list) and not _is_scalar(data):
            for item in data:
                if isinstance(item, dict):
                    lines.append('{0}-'.format(pad))
                    self._emit(item, depth + 1, lines)
                else:
                    lines.append('{0}- {1}'.format(pad, _scalar(item)))
        else:
            lines.append(pad + _scalar(data))


def _is_scalar(value):
    if isinstance(value, list):
        return all(not isinstance(x, (list, dict)) for x in value) \
            or all(isinstance(x, list) and _is_scalar(x) for x in value) \
            and len(value) <= 8
    return not isinstance(value, dict)


def _scalar(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return 'null'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return '[{0}]'.format(', '.join(_scalar(x) for x in value))
    return str(value)


def get_output(output_format):
    if output_format == 'json':
        return JSONOutput()
    return TextOutput()

#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Entrypoint module for `python -m loopsoup`.

Why does this file exist, and why __main__? For more info, read:
- https://www.python.org/dev/peps/pep-0338/
- https://docs.python.org/3/using/cmdline.html#cmdoption-m
"""

import sys

from loopsoup.cli import main

if __name__ == '__main__':
    sys.exit(main())

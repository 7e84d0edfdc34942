#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This setup script is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

import re

from setuptools import setup, find_packages


def get_version():
    """Parse __init__.py for version number instead of importing the file."""
    VERSIONFILE = 'loopsoup/__init__.py'
    VSRE = r'^__version__ = [\'"]([^\'"]*)[\'"]'
    with open(VERSIONFILE) as f:
        verstrline = f.read()
    mo = re.search(VSRE, verstrline, re.M)
    if mo:
        return mo.group(1)
    raise RuntimeError('Unable to find version in {fn}'.format(fn=VERSIONFILE))


LONG_DESCRIPTION = """
``loopsoup`` computes the current field, the occupation fields and the
bubble soup of a loop soup on a finite complete digraph with complex edge
weights, and checks them against exhaustive oracles and the complex Gaussian
free field.

**Example Usage**


Current field of a bundled matrix::

   >>> import loopsoup
   >>> from loopsoup.current_field import nu_c
   >>> Q = loopsoup.load_example('hermitian2')
   >>> C = loopsoup.Current.from_triplets(2, [(1, 2, 1), (2, 1, 1)])
   >>> nu_c(Q, C)
   (0.1875+0j)


Command line::

   $ loopsoup validate --input hermitian2.json
   $ loopsoup current --input hermitian2.json 1,2,1 2,1,1 --oracles
   $ loopsoup verify isomorphism --input hermitian2.json --format json

"""

setup(
    name='loopsoup',
    version=get_version(),
    description='Complex-weighted loop soups, currents and occupation fields',
    long_description=LONG_DESCRIPTION,
    license='BSD',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
    ],
    packages=find_packages(exclude=('tests',)),
    package_data={'loopsoup': ['data/*.json']},
    entry_points={
        'console_scripts': [
            'loopsoup = loopsoup.__main__:main',
        ]
    },
)

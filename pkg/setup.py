#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SpherePack is a generator of random polydisperse sphere packings with a
# discrete thermal sintering model for powder bed fusion.
#
# Copyright (C) 2024 The SpherePack Development Team
#
# This file is part of SpherePack.
#
# SpherePack is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 3
# of the License, or (at your option) any later version.
#
# SpherePack is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program; if not, see <http://www.gnu.org/licenses/>
#
# --
# pragma pylint: disable=superfluous-parens

from setuptools import setup, find_packages

setup(
    name='spherepack',
    version='0.1.0',
    description='Random Polydisperse Sphere Packings and Discrete Thermal Bonding Simulation',
    author='SpherePack Dev Team',
    package_dir={'spherepack': 'spherepack'},
    packages=find_packages(),
    package_data={'spherepack.data.examples': ['*.cfg']},
    entry_points={
        'console_scripts': ['spherepack = spherepack.scripts.main:main'],
    },
    classifiers=[
        'Environment :: Console', 'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics'
    ],
    python_requires='>=3.6',
    install_requires=[
        'numpy>=1.17', 'matplotlib', 'scipy',
        'importlib_resources; python_version < "3.7"',
    ],
    extras_require={
        'test': [
            'pytest',
            'hypothesis',
            'sympy',
        ],
        'doc': [
            'sphinx',
            'sphinx_rtd_theme',
        ],
        'dev': [
            'pylint',
            'pycodestyle',
            'pydocstyle',
            'coverage',
        ]
    }
)

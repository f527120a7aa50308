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
# pragma pylint: disable=invalid-name
"""Test spherepack.utils.config."""


import os
import shutil
import tempfile
import warnings
from contextlib import contextmanager

import numpy as np

from numpy.testing import assert_raises, assert_equal, assert_allclose

from spherepack.distributions.radius import WeibullDistribution
from spherepack.bonding.thermal import PhysicalConstants
from spherepack.utils.config import ConfigError, RunConfig, parse_config, load_config
try:
    from importlib_resources import path
except ImportError:
    from importlib.resources import path


EXAMPLE_1A = """
[run]
method = m1
seed = 0

[distribution]
kind = weibull
scale = 15.7
shape = 3.55

[packing]
brick_side_lengths = [1, 1, 1]
std_length_mean_radii = 15
brick_numbers = [2, 2, 1]
face_goal = 0.8
body_goal = 0.55
contact_parameter = 0.2
parent_parameter = 0.5
"""


@contextmanager
def tmpdir(name):
    """Create temporary directory that gets deleted after accessing it."""
    dn = tempfile.mkdtemp(name)
    try:
        yield dn
    finally:
        shutil.rmtree(dn)


def raises_config_error(text, key=None, line=None, overrides=None):
    """Assert ``text`` fails to parse, optionally at ``key`` and ``line``."""
    try:
        parse_config(text, overrides)
    except ConfigError as error:
        if key is not None:
            assert_equal(error.key, key)
        if line is not None:
            assert_equal(error.line, line)
        return error
    raise AssertionError("Configuration should not parse:\n{0}".format(text))


def test_parse_example_1a():
    config = parse_config(EXAMPLE_1A)
    assert isinstance(config, RunConfig)
    mean = WeibullDistribution(15.7, 3.55).mean
    spec = config.spec
    assert_equal(config.method, 'm1')
    assert_equal(config.seed, 0)
    assert_allclose(spec.brick_side_lengths, [15. * mean] * 3)
    assert_equal(spec.brick_numbers, [2, 2, 1])
    assert_equal((spec.face_goal, spec.body_goal), (0.8, 0.55))
    assert_equal((spec.contact.epsilon, spec.contact.delta), (0.2, 0.5))
    assert_allclose(spec.contact.mean_radius, mean)
    assert_equal(config.distribution.kind, 'weibull')
    assert config.hemisphere is None
    assert config.simulation is None
    assert not config.allow_partial
    assert_equal(config.output, 'spherepack-out')
    echo = config.as_dict()
    assert_equal(echo['method'], 'm1')
    assert_equal(echo['brick_numbers'], [2, 2, 1])
    # the echo stays the same wherever the run writes
    assert 'output' not in echo


def test_parse_defaults():
    config = parse_config("[distribution]\nkind = gamma\nscale = 7\nshape = 2\n"
                          "[packing]\nstd_length = 200\n")
    spec = config.spec
    assert_equal(config.method, 'm1')
    assert_allclose(spec.brick_side_lengths, [200.] * 3)
    assert_equal(spec.brick_numbers, [1, 1, 1])
    assert_equal((spec.face_goal, spec.body_goal), (0.8, 0.55))
    assert_equal((spec.contact.epsilon, spec.contact.delta), (0.2, 0.5))
    assert_equal((spec.max_failures, spec.max_triplets, spec.prune_after), (2000, 500, 200))
    assert_allclose(spec.distribution.mean, 14.)


def test_parse_raises():
    raises_config_error("", key='distribution')
    raises_config_error("# only a comment\n", key='distribution')
    raises_config_error("[distribution]\nkind = weibull\nscale = 15.7\n",
                        key='distribution.shape')
    text = EXAMPLE_1A.replace("parent_parameter = 0.5", "parent_parameter = 0.5\ncolor = red")
    raises_config_error(text, key='packing.color', line=19)
    raises_config_error(EXAMPLE_1A + "\n[output]\nformat = csv\n", key='output', line=20)
    raises_config_error(EXAMPLE_1A.replace("seed = 0", "seed = zero"), key='run.seed', line=4)
    raises_config_error(EXAMPLE_1A.replace("seed = 0", "seed = -1"), key='run.seed', line=4)
    raises_config_error(EXAMPLE_1A.replace("method = m1", "method = m3"), key='run.method',
                        line=3)
    raises_config_error(EXAMPLE_1A.replace("[2, 2, 1]", "[2, 2"), key='packing.brick_numbers',
                        line=14)
    raises_config_error(EXAMPLE_1A.replace("kind = weibull", "kind = normal"),
                        key='distribution.kind', line=7)
    # a value outside its range names the key and its line
    raises_config_error(EXAMPLE_1A.replace("body_goal = 0.55", "body_goal = 1.5"),
                        key='packing.body_goal', line=16)
    raises_config_error(EXAMPLE_1A.replace("contact_parameter = 0.2", "contact_parameter = 2"),
                        key='packing.contact_parameter', line=17)
    raises_config_error(EXAMPLE_1A.replace("std_length_mean_radii = 15",
                                           "std_length_mean_radii = 15\nstd_length = 200"),
                        key='packing.std_length_mean_radii')
    raises_config_error(EXAMPLE_1A.replace("std_length_mean_radii = 15",
                                           "std_length_mean_radii = 3"),
                        key='packing.brick_side_lengths')
    raises_config_error(EXAMPLE_1A + "hemisphere_radii = [0.2, 0.2]\n",
                        key='packing.hemisphere_radii')
    raises_config_error("[run]\n[distribution]\n[distribution]\n")


def test_parse_hemisphere():
    text = EXAMPLE_1A.replace("method = m1", "method = hemisphere").replace(
        "brick_numbers = [2, 2, 1]", "brick_numbers = [1, 1, 1]\nhemisphere_radii = [0.2, 0.4]")
    config = parse_config(text)
    mean = WeibullDistribution(15.7, 3.55).mean
    assert_allclose(config.hemisphere.hemisphere_radii, [3. * mean, 6. * mean])
    assert_allclose(config.as_dict()['hemisphere_radii'], [3. * mean, 6. * mean])
    # tiling is not available for carved bricks
    raises_config_error(text.replace("brick_numbers = [1, 1, 1]", "brick_numbers = [2, 1, 1]"),
                        key='packing.brick_numbers')
    raises_config_error(text.replace("hemisphere_radii = [0.2, 0.4]", ""),
                        key='packing.hemisphere_radii')
    raises_config_error(text.replace("[0.2, 0.4]", "[0.2, 0.6]"), key='packing.hemisphere_radii')


def test_parse_overrides():
    config = parse_config(EXAMPLE_1A, {('run', 'seed'): 42, ('run', 'method'): 'm2',
                                       ('run', 'output'): 'elsewhere'})
    assert_equal(config.seed, 42)
    assert_equal(config.method, 'm2')
    assert_equal(config.output, 'elsewhere')
    raises_config_error(EXAMPLE_1A, key='run.color', overrides={('run', 'color'): 'red'})


def test_parse_simulation():
    text = EXAMPLE_1A + """
[simulation]
power = 50
dt = 1e-7
sweep = linear
laser_depth = 30
path = [[0, 0, 1e-5], [100, 0, 1e-5]]
snapshot_times = [5e-6, 1e-5]
"""
    simulation = parse_config(text).simulation
    assert_equal(simulation.constants.power, 50.)
    assert_equal(simulation.constants.k_t, PhysicalConstants().k_t)
    assert_equal(simulation.dt, 1e-7)
    assert_equal(simulation.laser_depth, 30.)
    assert_equal(simulation.path.sweep, 'linear')
    assert_equal(simulation.path.segments, [[0., 0., 1e-5], [100., 0., 1e-5]])
    assert_equal(simulation.snapshot_times, (5e-6, 1e-5))
    raises_config_error(text.replace("dt = 1e-7", "dt = 0"), key='simulation.dt')
    raises_config_error(text.replace("power = 50", "power = -50"), key='simulation.power')
    raises_config_error(text.replace("[100, 0, 1e-5]]", "[100, 0]]"), key='simulation.path')
    raises_config_error(text.replace("power = 50", "formula_constants = yes\nk_b = 1e-6"),
                        key='simulation.formula_constants')
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        formula = parse_config(text.replace("power = 50", "formula_constants = yes")).simulation
    mean = WeibullDistribution(15.7, 3.55).mean
    assert_allclose(formula.constants.k_t, np.pi * 15. * mean * 1e-6 / 2.)


def test_load_shipped_examples():
    expected = {'example1a.cfg': ('m1', [2, 2, 1]), 'example1b.cfg': ('m1', [2, 2, 1]),
                'example1c.cfg': ('m1', [4, 4, 2]), 'example2.cfg': ('m2', [2, 2, 1]),
                'example2b.cfg': ('m2', [2, 2, 1]),
                'example3a.cfg': ('hemisphere', [1, 1, 1]),
                'example3b.cfg': ('hemisphere', [1, 1, 1]),
                'print_bed.cfg': ('m2', [6, 6, 1])}
    for name, (method, numbers) in expected.items():
        with path('spherepack.data.examples', name) as fname:
            config = load_config(str(fname))
        assert_equal(config.method, method)
        assert_equal(config.spec.brick_numbers, numbers)
    with path('spherepack.data.examples', 'example1c.cfg') as fname:
        config = load_config(str(fname))
    mean = WeibullDistribution(15.7, 3.55).mean
    assert_allclose(config.spec.brick_side_lengths, [18. * mean, 25.5 * mean, 15. * mean])
    with path('spherepack.data.examples', 'example2.cfg') as fname:
        config = load_config(str(fname))
    assert_equal(config.distribution.kind, 'gamma')
    assert not config.allow_partial
    with path('spherepack.data.examples', 'print_bed.cfg') as fname:
        config = load_config(str(fname))
    assert not config.allow_partial
    assert_allclose(config.simulation.dt, 1e-8)
    # a bed height of 0.12 of the side is below four mean radii
    with path('spherepack.data.examples', 'print_bed.cfg') as fname:
        with open(str(fname)) as handle:
            text = handle.read()
    assert_raises(ConfigError, parse_config, text.replace('[1, 1, 0.15]', '[1, 1, 0.12]'))
    assert_equal(len(config.simulation.path), 21)
    assert_equal(config.simulation.path.sweep, 'linear')


def test_load_config_file():
    with tmpdir('spherepack_config') as dn:
        fname = os.path.join(dn, 'run.cfg')
        with open(fname, 'w') as handle:
            handle.write(EXAMPLE_1A)
        config = load_config(fname, {('run', 'seed'): 9})
        assert_equal(config.seed, 9)
        assert_raises(IOError, load_config, os.path.join(dn, 'missing.cfg'))

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
"""Simulated print over the shipped powder bed; runs only when SPHEREPACK_SLOW is set."""


import os

import numpy as np
import pytest

from numpy.testing import assert_allclose

from spherepack.bonding.thermal import BondingSimulation, LaserPath, stable_time_step
from spherepack.distributions.radius import make_rng
from spherepack.packing.method2 import fill_unit_brick_m2, tile_by_copy
from spherepack.utils.config import load_config
try:
    from importlib_resources import path
except ImportError:
    from importlib.resources import path


def distance_to_polyline(points, vertices):
    """Horizontal distance of every point to the polyline through ``vertices``."""
    best = np.linalg.norm(points - vertices[0], axis=1)
    for start, end in zip(vertices[:-1], vertices[1:]):
        direction = end - start
        length = np.dot(direction, direction)
        t = np.zeros(len(points)) if length == 0. else np.clip(
            np.dot(points - start, direction) / length, 0., 1.)
        nearest = start + t[:, None] * direction
        best = np.minimum(best, np.linalg.norm(points - nearest, axis=1))
    return best


def test_distance_to_polyline():
    vertices = np.array([[0., 0.], [10., 0.], [10., 10.]])
    points = np.array([[5., 3.], [-4., 0.], [13., 5.], [10., 14.]])
    assert_allclose(distance_to_polyline(points, vertices), [3., 4., 3., 4.])


@pytest.mark.skipif(not os.environ.get('SPHEREPACK_SLOW'),
                    reason="the print over a full powder bed runs only with SPHEREPACK_SLOW set")
def test_bonds_stay_under_the_laser_path():
    with path('spherepack.data.examples', 'print_bed.cfg') as fname:
        config = load_config(str(fname))
    spec = config.spec
    brick = fill_unit_brick_m2(spec, make_rng(spec.seed))
    bed = tile_by_copy(brick, spec.brick_numbers, spec.contact)
    simulation = config.simulation
    constants = simulation.constants
    # the first lap around the square
    segments = simulation.path.segments[:5]
    dt = min(simulation.dt, stable_time_step(bed, constants, margin=0.45))
    sim = BondingSimulation(bed, constants, dt, simulation.laser_depth)
    state, _ = sim.run(LaserPath(segments, simulation.path.sweep))
    assert len(state.bonds) > 0
    bonded = np.unique(np.array(list(state.bonds), dtype=int))
    distance = distance_to_polyline(bed.centers[bonded, :2], segments[:, :2])
    assert np.all(distance <= 3. * constants.laser_radius), distance.max()
    # particles far from the path stay cold
    far = distance_to_polyline(bed.centers[:, :2], segments[:, :2]) > 3. * constants.laser_radius
    assert np.all(state.temperatures[far] < constants.sintering_temperature)

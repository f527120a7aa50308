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
"""Common utility for scripts."""


import logging

import numpy as np

from spherepack.distributions.radius import make_distribution, make_rng
from spherepack.packing.base import GoalUnreachableError
from spherepack.packing.method1 import fill_unit_brick_m1, tile_by_reflection
from spherepack.packing.method2 import fill_unit_brick_m2, tile_by_copy
from spherepack.packing.hemisphere import fill_hemisphere_domain
from spherepack.utils.config import load_config


help_config = """
run configuration file with [run], [distribution], [packing] and [simulation] sections.
"""


def load_run_config(fname, seed=None, method=None, output=None):
    """Return the run configuration in ``fname`` with command-line overrides applied.

    Parameters
    ----------
    fname : str
        Path to the configuration file.
    seed : int, optional
        Seed replacing the configured one.
    method : str, optional
        Packing method replacing the configured one.
    output : str, optional
        Output directory replacing the configured one.

    """
    overrides = {}
    for key, value in (('seed', seed), ('method', method), ('output', output)):
        if value is not None:
            overrides[('run', key)] = value
    return load_config(fname, overrides)


def make_packing(config):
    """Fill and tile the domain described by ``config``.

    Returns
    -------
    packing : Packing
        Packing of the total domain.
    complete : bool
        False when the fill goals were missed and ``config.allow_partial`` let the
        partially filled brick through; it is tiled like a complete one.

    Raises
    ------
    GoalUnreachableError
        If the fill goals are missed and partial packings are not allowed.
    """
    spec = config.spec
    rng = make_rng(spec.seed)
    complete = True
    try:
        if config.method == 'hemisphere':
            contact = spec.contact
            return fill_hemisphere_domain(
                config.hemisphere, spec.distribution, (spec.face_goal, spec.body_goal),
                contact.epsilon, rng, contact.delta, spec.seed, spec.max_failures,
                spec.max_triplets, spec.prune_after), True
        if config.method == 'm1':
            brick = fill_unit_brick_m1(spec, rng)
        else:
            brick = fill_unit_brick_m2(spec, rng)
    except GoalUnreachableError as error:
        if not config.allow_partial:
            raise
        logging.warning("Continuing with a partially filled domain: {0}".format(error))
        if config.method == 'hemisphere':
            return error.packing, False
        brick, complete = error.packing, False
    if np.all(spec.brick_numbers == 1):
        return brick, complete
    tile = tile_by_reflection if config.method == 'm1' else tile_by_copy
    return tile(brick, spec.brick_numbers, spec.contact), complete


def packing_distribution(packing):
    """Return the radius distribution recorded in the metadata of ``packing``."""
    echo = packing.metadata.get('spec', {}).get('distribution')
    if echo is None:
        raise ValueError("Packing metadata does not record its radius distribution!")
    return make_distribution(echo['kind'], echo['scale'], echo['shape'])

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
"""Method 1: Tangent Boundary Spheres and Reflection Tiling.

The unit brick is filled corners first, then the twelve edges, the six faces and the
volume; every sphere stays inside the brick and boundary spheres touch their faces.
The total domain is assembled by mirroring the brick so that boundary spheres meet
their mirror images.
"""


import itertools
import logging

import numpy as np

from spherepack.packing.base import (Packing, achieved_face_fractions, cross_brick_contacts,
                                     face_axis)
from spherepack.packing.filler import BrickFiller
from spherepack.utils.utils import FACES


__all__ = ['Method1Filler', 'fill_unit_brick_m1', 'tile_by_reflection', 'edge_stepper']


def edge_stepper(lengths, axis, bits, direction=1):
    """Return a chain step for an edge whose spheres touch its two incident faces.

    Parameters
    ----------
    lengths : np.ndarray, shape=(3,)
        Brick side lengths.
    axis : int
        Axis along the edge.
    bits : sequence of int
        For each axis, 0 when the edge lies on the lower face and 1 on the upper face;
        the entry of ``axis`` is ignored.
    direction : int, optional
        +1 to walk towards increasing coordinates, -1 otherwise.
    """
    perps = [k for k in range(3) if k != axis]

    def next_center(radius, prev_center, prev_radius):
        center = np.empty(3)
        for k in perps:
            center[k] = lengths[k] - radius if bits[k] else radius
        disc = (radius + prev_radius) ** 2 - np.sum((center[perps] - prev_center[perps]) ** 2)
        if disc < 0.:
            return None
        center[axis] = prev_center[axis] + direction * np.sqrt(disc)
        return center

    return next_center


class Method1Filler(BrickFiller):
    """Unit brick filler with boundary spheres tangent to the brick faces."""

    method = 'm1'

    def __init__(self, spec, rng, voids=()):
        super(Method1Filler, self).__init__(spec, rng, periodic=False, voids=voids)
        self._corners = {}

    def place_corners(self):
        """Place a mean-radius sphere touching the three faces of every corner."""
        for bits in itertools.product((0, 1), repeat=3):
            center = np.where(bits, self._lengths - self._rbar, self._rbar)
            if self.outside_voids(center, self._rbar)[0]:
                self._corners[bits] = self.add(center, self._rbar)
        logging.info("Corners: {0} spheres".format(len(self._corners)))

    def fill_edges(self, backward=False):
        """Grow one chain per edge from its lower corner, optionally also from its upper one."""
        for axis in range(3):
            perps = [k for k in range(3) if k != axis]
            for fixed in itertools.product((0, 1), repeat=2):
                bits = [0, 0, 0]
                for k, bit in zip(perps, fixed):
                    bits[k] = bit
                start = tuple(bits)
                bits[axis] = 1
                end = tuple(bits)
                if start in self._corners:
                    self.walk_chain(self._corners[start], edge_stepper(self._lengths, axis, end))
                if backward and end in self._corners:
                    self.walk_chain(self._corners[end],
                                    edge_stepper(self._lengths, axis, end, direction=-1))
        logging.info("Edges: {0} spheres in total".format(self.nspheres))

    def face_level(self, face):
        """Return the plane coordinate of a sphere of a given radius touching ``face``."""
        axis, upper = face_axis(face)
        length = self._lengths[axis]
        if upper:
            return lambda radius: length - radius
        return lambda radius: radius

    def fill_faces(self, faces=FACES):
        """Cover ``faces`` with spheres touching them."""
        for face in faces:
            self.fill_face(face, self.face_level(face))

    def fill(self):
        """Run all fill phases and return the brick packing."""
        self.place_corners()
        self.fill_edges()
        self.fill_faces()
        self.fill_body()
        return self.finish()


def fill_unit_brick_m1(spec, rng):
    """Fill one unit brick with Method 1.

    Parameters
    ----------
    spec : DomainSpec
        Specification of the run.
    rng : np.random.Generator
        Random number generator.

    Returns
    -------
    packing : Packing
        Packing of one brick with contacts and tangent boundary lists.

    Raises
    ------
    GoalUnreachableError
        If a goal is not met when the failure cap ends a phase.
    """
    return Method1Filler(spec, rng).fill()


def _check_numbers(brick_numbers):
    numbers = np.asarray(brick_numbers)
    if numbers.shape != (3,) or not np.issubdtype(numbers.dtype, np.integer) or np.any(numbers < 1):
        raise ValueError("Argument brick_numbers should be 3 positive integers! "
                         "Given brick_numbers={0}".format(brick_numbers))
    return numbers.astype(int)


def _tolerance(brick, contact):
    params = brick.contact_params if contact is None else contact
    if params is None:
        raise ValueError("Contact tolerances are neither given nor recorded in the packing!")
    return params.contact_tolerance


def _outer_lists(brick, blocks, numbers, index_of, mirrored):
    """Boundary lists of the tiled domain from the brick lists of the outer bricks."""
    lists = {}
    for face in FACES:
        axis, upper = face_axis(face)
        target = numbers[axis] - 1 if upper else 0
        ids = []
        for block, idx in enumerate(blocks):
            if idx[axis] != target:
                continue
            source = face
            if mirrored and idx[axis] % 2 == 1:
                source = face[0] + ('min' if upper else 'max')
            ids.extend(index_of(block, brick.boundary_lists[source]))
        lists[face] = np.unique(np.array(ids, dtype=int))
    return lists


def tile_by_reflection(brick, brick_numbers, contact=None):
    """Assemble the total domain by mirroring a Method 1 brick.

    Brick ``(a, b, c)`` is the source brick mirrored along every axis whose index is
    odd, so that a sphere at ``x`` maps to ``2L - x`` in brick ``a = 1``.

    Parameters
    ----------
    brick : Packing
        Unit brick packing with boundary lists.
    brick_numbers : sequence of int
        Number of bricks along each axis.
    contact : ContactParams, optional
        Contact tolerances; default to those recorded in ``brick``.

    Returns
    -------
    packing : Packing
        Packing of the total domain.
    """
    numbers = _check_numbers(brick_numbers)
    tol = _tolerance(brick, contact)
    lengths = brick.upper - brick.lower
    local = brick.centers - brick.lower
    n = brick.nspheres
    blocks = [np.array(idx) for idx in itertools.product(*[range(k) for k in numbers])]

    centers = np.concatenate([brick.lower + idx * lengths
                              + np.where(idx % 2 == 1, lengths - local, local)
                              for idx in blocks])
    radii = np.tile(brick.radii, len(blocks))
    contacts = np.concatenate([brick.contacts + block * n for block in range(len(blocks))])
    contacts = cross_brick_contacts(centers, radii, brick.lower, lengths, numbers, tol, contacts)
    lists = None
    if brick.boundary_lists is not None:
        lists = _outer_lists(brick, blocks, numbers, lambda b, ids: ids + b * n, mirrored=True)

    upper = brick.lower + lengths * numbers
    metadata = dict(brick.metadata)
    metadata.update({'brick_numbers': numbers.tolist(), 'tiling': 'reflection',
                     'domain_volume': brick.domain_volume * len(blocks)})
    packing = Packing(centers, radii, contacts, lists, unit_brick_count=n, lower=brick.lower,
                      upper=upper, metadata=metadata)
    if lists is not None:
        packing.metadata['face_fractions'] = achieved_face_fractions(packing)
    logging.info("Reflection tiling {0}: {1} spheres, {2} contacts".format(
        numbers.tolist(), packing.nspheres, len(packing.contacts)))
    return packing

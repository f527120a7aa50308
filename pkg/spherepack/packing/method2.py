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
"""Method 2: Face-Centered Boundary Spheres and Copy Tiling.

Boundary spheres are centered on the brick faces and opposite faces carry identical
sphere patterns, so bricks tile by plain translation. Spheres shared by adjacent bricks
are merged into one.
"""


import itertools
import logging

import numpy as np

from scipy.spatial import cKDTree

from spherepack.packing.base import (Packing, achieved_face_fractions, cross_brick_contacts,
                                     normalize_contacts)
from spherepack.packing.filler import BrickFiller
from spherepack.packing.method1 import _check_numbers, _tolerance, _outer_lists
from spherepack.utils.utils import FACES, doc_inherit


__all__ = ['TilingError', 'Method2Filler', 'fill_unit_brick_m2', 'tile_by_copy',
           'MERGE_TOLERANCE']


# largest center distance of two face spheres considered the same sphere
MERGE_TOLERANCE = 1e-6


class TilingError(ValueError):
    """Raised when a brick cannot be tiled by translation."""


class Method2Filler(BrickFiller):
    r"""Unit brick filler with boundary spheres centered on the brick faces.

    Overlaps are checked against periodic images of the brick so that translated
    copies fit together. Face-centered spheres cover their faces and fill the brick
    more densely than tangent ones, so the goals are fractions of the goal references:
    a face goal of 1 asks for a covered fraction of :math:`\pi/4` and a body goal of 1
    for a filled fraction of :math:`\pi/6`.
    """

    method = 'm2'
    boundary_mode = 'centered'
    relative_goals = True

    def __init__(self, spec, rng):
        super(Method2Filler, self).__init__(spec, rng, periodic=True)
        self._origin = None

    @doc_inherit(BrickFiller)
    def _on_face(self, center, radius, face):
        axis, level = self._face_level(face)
        return center[axis] == level

    def _face_cover_area(self, center, radius, face):
        return np.pi * radius ** 2

    def _translations(self, axes):
        """Nonzero lattice translations spanned by the side lengths of ``axes``."""
        shifts = []
        for picks in itertools.product((0, 1), repeat=len(axes)):
            shift = np.zeros(3)
            for axis, pick in zip(axes, picks):
                shift[axis] = pick * self._lengths[axis]
            if any(picks):
                shifts.append(shift)
        return shifts

    def place_corners(self):
        """Center a mean-radius sphere on each of the eight corners."""
        self._origin = self.add(np.zeros(3), self._rbar)
        for shift in self._translations([0, 1, 2]):
            self.add(shift, self._rbar)

    def fill_edges(self):
        """Fill one edge per axis with centered spheres and copy it to the parallel edges."""
        for axis in range(3):
            perps = [k for k in range(3) if k != axis]
            length = self._lengths[axis]

            def next_center(radius, prev_center, prev_radius, axis=axis):
                center = prev_center.copy()
                center[axis] += prev_radius + radius
                return center

            def on_edge(points, radius, axis=axis, length=length):
                return (points[:, axis] >= 0.) & (points[:, axis] <= length)

            self.walk_chain(self._origin, next_center, on_edge, self._translations(perps))
        logging.info("Edges: {0} spheres in total".format(self.nspheres))

    def fill_faces(self):
        """Fill one face per plane with centered spheres and copy it to the opposite face."""
        for face in ('xmin', 'ymin', 'zmin'):
            axis = 'xyz'.index(face[0])
            others = [k for k in range(3) if k != axis]
            lengths = self._lengths[others]

            def on_face(points, radius, others=others, lengths=lengths):
                inner = points[:, others]
                return np.all((inner >= 0.) & (inner <= lengths), axis=1)

            self.fill_face(face, lambda radius: 0., on_face, self._translations([axis]))

    def fill(self):
        """Run all fill phases and return the brick packing."""
        self.place_corners()
        self.fill_edges()
        self.fill_faces()
        self.fill_body()
        return self.finish()


def fill_unit_brick_m2(spec, rng):
    """Fill one unit brick with Method 2.

    Parameters
    ----------
    spec : DomainSpec
        Specification of the run.
    rng : np.random.Generator
        Random number generator.

    Returns
    -------
    packing : Packing
        Packing of one brick whose opposite faces carry translated sphere patterns.

    Raises
    ------
    GoalUnreachableError
        If a goal is not met when the failure cap ends a phase.
    """
    return Method2Filler(spec, rng).fill()


def _check_face_symmetry(brick, lengths):
    for axis, name in enumerate('xyz'):
        low = brick.boundary_lists[name + 'min']
        high = brick.boundary_lists[name + 'max']
        if len(low) != len(high):
            raise TilingError("Faces {0}min and {0}max hold {1} and {2} spheres".format(
                name, len(low), len(high)))
        if len(low) == 0:
            continue
        shift = np.zeros(3)
        shift[axis] = lengths[axis]
        dist, match = cKDTree(brick.centers[high]).query(brick.centers[low] + shift)
        radii_low, radii_high = brick.radii[low], brick.radii[high][match]
        if (np.any(dist > MERGE_TOLERANCE) or len(set(match.tolist())) != len(match)
                or not np.allclose(radii_low, radii_high, rtol=1e-9, atol=0.)):
            raise TilingError("Face {0}min translated by {1} does not reproduce face "
                              "{0}max".format(name, lengths[axis]))


def _merge(centers, radii):
    """Map every sphere to the lowest index of the spheres coinciding with it."""
    root = np.arange(len(radii))

    def find(i):
        while root[i] != i:
            root[i] = root[root[i]]
            i = root[i]
        return i

    for i, j in sorted(cKDTree(centers).query_pairs(MERGE_TOLERANCE)):
        if not np.isclose(radii[i], radii[j], rtol=1e-9, atol=0.):
            raise TilingError("Coincident spheres {0} and {1} have different radii".format(i, j))
        a, b = find(i), find(j)
        root[max(a, b)] = min(a, b)
    return np.array([find(i) for i in range(len(radii))])


def tile_by_copy(brick, brick_numbers, contact=None):
    """Assemble the total domain by translating a Method 2 brick.

    Spheres centered on a shared internal face appear in both adjacent bricks and are
    merged into one.

    Parameters
    ----------
    brick : Packing
        Unit brick packing with identical opposite faces.
    brick_numbers : sequence of int
        Number of bricks along each axis.
    contact : ContactParams, optional
        Contact tolerances; default to those recorded in ``brick``.

    Returns
    -------
    packing : Packing
        Packing of the total domain.

    Raises
    ------
    TilingError
        If translated opposite faces of the brick do not coincide.
    """
    numbers = _check_numbers(brick_numbers)
    tol = _tolerance(brick, contact)
    lengths = brick.upper - brick.lower
    if brick.boundary_lists is None:
        raise TilingError("Copy tiling needs the boundary lists of the brick")
    _check_face_symmetry(brick, lengths)
    n = brick.nspheres
    blocks = [np.array(idx) for idx in itertools.product(*[range(k) for k in numbers])]

    centers = np.concatenate([brick.centers + idx * lengths for idx in blocks])
    radii = np.tile(brick.radii, len(blocks))
    root = _merge(centers, radii)
    keep = np.unique(root)
    compact = np.full(len(root), -1)
    compact[keep] = np.arange(len(keep))
    mapping = compact[root]

    contacts = np.concatenate([brick.contacts + block * n for block in range(len(blocks))])
    contacts = normalize_contacts(mapping[contacts]) if len(contacts) else contacts
    centers, radii = centers[keep], radii[keep]
    contacts = cross_brick_contacts(centers, radii, brick.lower, lengths, numbers, tol, contacts)
    lists = _outer_lists(brick, blocks, numbers, lambda b, ids: mapping[ids + b * n],
                         mirrored=False)

    metadata = dict(brick.metadata)
    metadata.update({'brick_numbers': numbers.tolist(), 'tiling': 'copy',
                     'domain_volume': brick.domain_volume * len(blocks)})
    packing = Packing(centers, radii, contacts, lists, unit_brick_count=n, lower=brick.lower,
                      upper=brick.lower + lengths * numbers, metadata=metadata)
    packing.metadata['face_fractions'] = achieved_face_fractions(packing)
    logging.info("Copy tiling {0}: {1} spheres ({2} merged), {3} contacts".format(
        numbers.tolist(), packing.nspheres, len(root) - len(keep), len(packing.contacts)))
    return packing

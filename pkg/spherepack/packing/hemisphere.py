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
"""Brick Minus Two Hemispheres Module.

A single brick is carved by two hemispherical voids centered on the midpoints of its
faces normal to x, and filled with spheres that stay inside the brick and outside both
voids. Carved domains are not tiled.
"""


import logging

import numpy as np

from spherepack.geometry.sphere import ContactParams
from spherepack.packing.base import DomainSpec
from spherepack.packing.method1 import Method1Filler


__all__ = ['HemisphereDomain', 'HemisphereFiller', 'fill_hemisphere_domain']


class HemisphereDomain(object):
    """Brick with hemispherical voids centered on its x = 0 and x = L_x faces."""

    def __init__(self, brick_side_lengths, hemisphere_radii):
        """Initialize class.

        Parameters
        ----------
        brick_side_lengths : sequence of float
            Side lengths of the brick in micrometers.
        hemisphere_radii : sequence of float
            Radii of the voids on the x = 0 and x = L_x faces; each at most half of the
            smallest side length.
        """
        sides = np.asarray(brick_side_lengths, dtype=float)
        radii = np.asarray(hemisphere_radii, dtype=float)
        if sides.shape != (3,) or np.any(sides <= 0.):
            raise ValueError("Argument brick_side_lengths should be 3 positive lengths! "
                             "Given brick_side_lengths={0}".format(brick_side_lengths))
        if radii.shape != (2,) or np.any(radii < 0.):
            raise ValueError("Argument hemisphere_radii should be 2 non-negative lengths! "
                             "Given hemisphere_radii={0}".format(hemisphere_radii))
        if np.any(radii > 0.5 * sides.min()):
            raise ValueError("Argument hemisphere_radii should not exceed half the smallest "
                             "side ({0})! Given hemisphere_radii={1}".format(0.5 * sides.min(),
                                                                             radii))
        self._sides = sides
        self._radii = radii

    @property
    def brick_side_lengths(self):
        """Side lengths of the brick."""
        return self._sides

    @property
    def hemisphere_radii(self):
        """Radii of the two voids."""
        return self._radii

    @property
    def voids(self):
        """Center and radius of each void."""
        middle = 0.5 * self._sides
        return [(np.array([0., middle[1], middle[2]]), float(self._radii[0])),
                (np.array([self._sides[0], middle[1], middle[2]]), float(self._radii[1]))]

    @property
    def carved_volume(self):
        r"""Brick volume minus :math:`\frac{2\pi}{3}(H_1^3 + H_2^3)`."""
        return float(np.prod(self._sides) - 2. / 3. * np.pi * np.sum(self._radii ** 3))


class HemisphereFiller(Method1Filler):
    """Method 1 style filler excluding the hemispherical voids."""

    method = 'hemisphere'

    def __init__(self, spec, rng, domain):
        super(HemisphereFiller, self).__init__(spec, rng, voids=domain.voids)
        self._domain = domain

    def fill_void_rings(self):
        """Grow a layer of spheres touching each void, seeded by the carved-face spheres."""
        cap = max(1, self._spec.max_failures // 10)
        for center, radius in self._voids:
            placed, failures = 0, 0
            while failures < cap:
                size, wait = self.draw()
                index = self.place_by_triplets(size, anchors=[(center, radius)])
                if index is None:
                    self.defer(size, wait)
                    failures += 1
                else:
                    placed += 1
                    failures = 0
            logging.info("Void at {0}: {1} spheres touching its surface".format(
                center.tolist(), placed))

    def fill(self):
        """Run all fill phases and return the packing, which has no boundary lists."""
        self.place_corners()
        self.fill_edges(backward=True)
        self.fill_faces(('ymin', 'ymax', 'zmin', 'zmax', 'xmin', 'xmax'))
        self.fill_void_rings()
        self.fill_body()
        return self.finish(with_boundary_lists=False)


def fill_hemisphere_domain(domain, dist, goals, epsilon, rng, delta=0.5, seed=0,
                           max_failures=2000, max_triplets=500, prune_after=200):
    """Fill a brick carved by two hemispheres.

    Parameters
    ----------
    domain : HemisphereDomain
        Carved brick.
    dist : BaseRadiusDistribution
        Radius distribution.
    goals : tuple of float
        Face goal and body goal; the body goal refers to the carved volume and the face
        goal of carved faces to the face area outside the void disk.
    epsilon : float
        Contact parameter.
    rng : np.random.Generator
        Random number generator.
    delta : float, optional
        Parent parameter.
    seed : int, optional
        Seed recorded in the metadata.
    max_failures, max_triplets, prune_after : int, optional
        Caps of the fill phases.

    Returns
    -------
    packing : Packing
        Packing without boundary lists; the voids are recorded in its metadata.

    Raises
    ------
    GoalUnreachableError
        If a goal is not met when the failure cap ends a phase.
    """
    face_goal, body_goal = goals
    contact = ContactParams(epsilon, delta, dist.mean)
    spec = DomainSpec(domain.brick_side_lengths, [1, 1, 1], face_goal, body_goal, contact, dist,
                      seed, max_failures, max_triplets, prune_after)
    return HemisphereFiller(spec, rng, domain).fill()

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
"""Sphere and Contact Predicates Module."""


import numpy as np


__all__ = ['Sphere', 'ContactParams', 'gap', 'in_contact']


class Sphere(object):
    """Sphere given by its center, radius and index within a packing."""

    def __init__(self, center, radius, index=None):
        """Initialize class.

        Parameters
        ----------
        center : np.ndarray, shape=(3,)
            Cartesian coordinates of the center in micrometers.
        radius : float
            Radius in micrometers.
        index : int, optional
            Index of the sphere within its packing.
        """
        center = np.asarray(center, dtype=float)
        if center.shape != (3,):
            raise ValueError("Argument center should be a 3-vector! "
                             "Given center.shape={0}".format(center.shape))
        if not radius > 0.:
            raise ValueError("Argument radius should be positive! Given radius={0}".format(radius))
        self._center = center
        self._radius = float(radius)
        self._index = index

    def __repr__(self):
        return "Sphere(center={0}, radius={1!r}, index={2})".format(
            self._center.tolist(), self._radius, self._index)

    @property
    def center(self):
        """Cartesian coordinates of the center."""
        return self._center

    @property
    def radius(self):
        """Radius of the sphere."""
        return self._radius

    @property
    def index(self):
        """Index of the sphere within its packing."""
        return self._index

    @property
    def volume(self):
        """Volume of the sphere."""
        return 4. / 3. * np.pi * self._radius ** 3


class ContactParams(object):
    r"""Tolerances deciding contact and parent candidacy.

    Two spheres are in contact when :math:`|g| \leq \epsilon \bar{r}` and a sphere is a
    parent candidate when some other sphere lies within :math:`\delta \bar{r}` of it.
    """

    def __init__(self, epsilon, delta, mean_radius):
        """Initialize class.

        Parameters
        ----------
        epsilon : float
            Dimensionless contact parameter in [0, 1].
        delta : float
            Dimensionless parent parameter in [epsilon, 1].
        mean_radius : float
            Mean radius of the distribution in micrometers.
        """
        if not 0. <= epsilon <= 1.:
            raise ValueError("Argument epsilon should be in [0, 1]! Given epsilon={0}".format(
                epsilon))
        if not epsilon <= delta <= 1.:
            raise ValueError("Argument delta should be in [epsilon, 1]! Given delta={0}, "
                             "epsilon={1}".format(delta, epsilon))
        if not mean_radius > 0.:
            raise ValueError("Argument mean_radius should be positive! "
                             "Given mean_radius={0}".format(mean_radius))
        self._epsilon = float(epsilon)
        self._delta = float(delta)
        self._mean_radius = float(mean_radius)

    def __repr__(self):
        return "ContactParams(epsilon={0!r}, delta={1!r}, mean_radius={2!r})".format(
            self._epsilon, self._delta, self._mean_radius)

    @property
    def epsilon(self):
        """Dimensionless contact parameter."""
        return self._epsilon

    @property
    def delta(self):
        """Dimensionless parent parameter."""
        return self._delta

    @property
    def mean_radius(self):
        """Mean radius in micrometers."""
        return self._mean_radius

    @property
    def contact_tolerance(self):
        r"""Absolute contact tolerance :math:`\epsilon \bar{r}`."""
        return self._epsilon * self._mean_radius

    @property
    def parent_tolerance(self):
        r"""Absolute parent tolerance :math:`\delta \bar{r}`."""
        return self._delta * self._mean_radius


def gap(a, b):
    """Return the center distance of two spheres minus their radii sum.

    Negative values mean overlap and zero means tangency.
    """
    return float(np.linalg.norm(a.center - b.center)) - (a.radius + b.radius)


def in_contact(a, b, params):
    """Return True when the gap of two spheres is within the contact tolerance."""
    return abs(gap(a, b)) <= params.contact_tolerance

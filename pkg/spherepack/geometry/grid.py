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
"""Uniform Spatial Grid Module."""


import itertools

from collections import defaultdict

import numpy as np


__all__ = ['GridBoundsError', 'SpatialGrid', 'grid_insert', 'grid_query']


class GridBoundsError(ValueError):
    """Raised when a sphere center falls outside the grid bounds."""


class SpatialGrid(object):
    """Uniform grid of cubic cells mapping integer cell keys to sphere indices.

    A sphere is registered in every cell overlapped by its bounding box, so a query
    scanning the cells of an expanded box never misses a neighbor.
    """

    def __init__(self, cell_size, lower, upper):
        """Initialize class.

        Parameters
        ----------
        cell_size : float
            Edge length of the cubic cells.
        lower : np.ndarray, shape=(3,)
            Lower corner of the bounding box accepting sphere centers.
        upper : np.ndarray, shape=(3,)
            Upper corner of the bounding box accepting sphere centers.
        """
        if not cell_size > 0.:
            raise ValueError("Argument cell_size should be positive! Given cell_size={0}".format(
                cell_size))
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if lower.shape != (3,) or upper.shape != (3,) or np.any(upper <= lower):
            raise ValueError("Arguments lower and upper should be 3-vectors with lower < upper! "
                             "Given lower={0}, upper={1}".format(lower, upper))
        self._cell_size = float(cell_size)
        self._lower = lower
        self._upper = upper
        self._cells = defaultdict(list)
        self._count = 0

    @classmethod
    def from_distribution(cls, dist, lower, upper):
        """Initialize a grid whose cells are twice the 99.9th-percentile radius of ``dist``."""
        return cls(2. * dist.quantile(0.999), lower, upper)

    @property
    def cell_size(self):
        """Edge length of a cell."""
        return self._cell_size

    @property
    def bounds(self):
        """Lower and upper corners of the accepted region."""
        return self._lower, self._upper

    @property
    def nspheres(self):
        """Number of inserted spheres."""
        return self._count

    def _check_bounds(self, center):
        if np.any(center < self._lower) or np.any(center > self._upper):
            raise GridBoundsError("Sphere center {0} is outside grid bounds [{1}, {2}]".format(
                center.tolist(), self._lower.tolist(), self._upper.tolist()))

    def _keys(self, low, high):
        first = np.floor((low - self._lower) / self._cell_size).astype(int)
        last = np.floor((high - self._lower) / self._cell_size).astype(int)
        return itertools.product(*[range(a, b + 1) for a, b in zip(first, last)])

    def insert(self, index, center, radius):
        """Register sphere ``index`` in every cell its bounding box overlaps."""
        center = np.asarray(center, dtype=float)
        self._check_bounds(center)
        for key in self._keys(center - radius, center + radius):
            self._cells[key].append(index)
        self._count += 1

    def query(self, center, radius, margin=0., outside=False):
        """Return sorted indices of every stored sphere possibly within ``margin`` gap.

        Parameters
        ----------
        center : np.ndarray, shape=(3,)
            Center of the probe sphere.
        radius : float
            Radius of the probe sphere.
        margin : float, optional
            Largest gap of interest.
        outside : bool, optional
            Allow probe centers outside the grid bounds, as for periodic images.

        Returns
        -------
        indices : np.ndarray
            Sorted candidate indices, a superset of the true neighbors.
        """
        center = np.asarray(center, dtype=float)
        if not outside:
            self._check_bounds(center)
        reach = radius + max(margin, 0.)
        found = set()
        for key in self._keys(center - reach, center + reach):
            cell = self._cells.get(key)
            if cell:
                found.update(cell)
        return np.array(sorted(found), dtype=int)


def grid_insert(grid, sphere):
    """Insert a :class:`Sphere` carrying an index into ``grid`` and return the grid."""
    if sphere.index is None:
        raise ValueError("Argument sphere should carry an index!")
    grid.insert(sphere.index, sphere.center, sphere.radius)
    return grid


def grid_query(grid, sphere, margin=0.):
    """Return the indices of stored spheres possibly within ``margin`` gap of ``sphere``."""
    return grid.query(sphere.center, sphere.radius, margin)

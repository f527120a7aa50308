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
"""Clipped Disk Area and Clipped Sphere Volume Module.

Both quantities are obtained by signed inclusion-exclusion over the corners of the
clipping box, using the area (volume) of the disk (ball) inside one positive quadrant
(octant) anchored at its center.
"""


import itertools

import numpy as np

from scipy.integrate import quad


__all__ = ['disk_rectangle_area', 'sphere_box_volume', 'cap_volume']


def _quadrant_area(a, b, r):
    """Area of the disk of radius r centered at the origin inside [0, a] x [0, b]."""
    if r <= 0.:
        return 0.
    a, b = min(a, r), min(b, r)
    if a * a + b * b <= r * r:
        return a * b

    def primitive(x):
        return 0.5 * (x * np.sqrt(max(r * r - x * x, 0.)) + r * r * np.arcsin(min(x / r, 1.)))

    xs = np.sqrt(r * r - b * b)
    return b * xs + primitive(a) - primitive(xs)


def _octant_volume(a, b, c, r):
    """Volume of the ball of radius r centered at the origin inside [0, a] x [0, b] x [0, c]."""
    c = min(c, r)
    if c <= 0. or a <= 0. or b <= 0.:
        return 0.
    # the integrand changes form where the slice radius crosses a, b and hypot(a, b)
    kinks = [np.sqrt(r * r - t * t) for t in (a, b) if t < r]
    if a * a + b * b < r * r:
        kinks.append(np.sqrt(r * r - a * a - b * b))
    kinks = [z for z in kinks if 0. < z < c]
    value, _ = quad(lambda z: _quadrant_area(a, b, np.sqrt(max(r * r - z * z, 0.))), 0., c,
                    points=kinks or None, epsabs=1e-13 * r ** 3, epsrel=1e-12, limit=200)
    return value


def disk_rectangle_area(center, radius, lower, upper):
    """Return the area of a disk clipped to an axis-aligned rectangle.

    Parameters
    ----------
    center : np.ndarray, shape=(2,)
        Center of the disk.
    radius : float
        Radius of the disk.
    lower, upper : np.ndarray, shape=(2,)
        Corners of the rectangle.
    """
    low = np.asarray(lower, dtype=float) - center
    high = np.asarray(upper, dtype=float) - center
    area = 0.
    for picks in itertools.product((0, 1), repeat=2):
        corner = [high[k] if p else low[k] for k, p in enumerate(picks)]
        sign = (-1) ** (2 - sum(picks))
        signs = np.sign(corner[0]) * np.sign(corner[1])
        area += sign * signs * _quadrant_area(abs(corner[0]), abs(corner[1]), radius)
    return max(area, 0.)


def cap_volume(radius, height):
    r"""Volume of a spherical cap, :math:`\pi h^2 (3r - h) / 3`."""
    height = min(max(height, 0.), 2. * radius)
    return np.pi * height ** 2 * (3. * radius - height) / 3.


def sphere_box_volume(center, radius, lower, upper):
    """Return the volume of a sphere clipped to an axis-aligned box.

    A sphere protruding through a single face loses exactly one spherical cap; any other
    protrusion is handled by octant decomposition.

    Parameters
    ----------
    center : np.ndarray, shape=(3,)
        Center of the sphere.
    radius : float
        Radius of the sphere.
    lower, upper : np.ndarray, shape=(3,)
        Corners of the box.
    """
    center = np.asarray(center, dtype=float)
    low = np.asarray(lower, dtype=float) - center
    high = np.asarray(upper, dtype=float) - center
    if np.any(low >= radius) or np.any(high <= -radius):
        return 0.
    protrusions = np.concatenate([radius + low, radius - high])
    outside = protrusions > 0.
    full = 4. / 3. * np.pi * radius ** 3
    if not np.any(outside):
        return full
    if np.sum(outside) == 1:
        return full - cap_volume(radius, float(protrusions[outside][0]))
    volume = 0.
    for picks in itertools.product((0, 1), repeat=3):
        corner = [high[k] if p else low[k] for k, p in enumerate(picks)]
        sign = (-1) ** (3 - sum(picks))
        signs = np.prod(np.sign(corner))
        volume += sign * signs * _octant_volume(abs(corner[0]), abs(corner[1]),
                                                abs(corner[2]), radius)
    return min(max(volume, 0.), full)

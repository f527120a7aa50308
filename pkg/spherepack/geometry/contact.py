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
"""Contact Position Solvers Module.

A new sphere of radius :math:`R_n` is placed in contact with parent spheres by solving

.. math::
   \\lVert \\mathbf{x}_n - \\mathbf{x}_i \\rVert = R_n + R_i \\qquad i = 1, 2, 3

in a local orthonormal frame where the first parent sits at the origin, the second on
the x-axis and the third in the xy-plane. The same system with one equation replaced by
a plane constraint places spheres on a face.
"""


import numpy as np


__all__ = ['DegenerateConfigurationError', 'trilaterate', 'solve_contact_position',
           'plane_contact_positions']


# relative size below which parent separations count as degenerate
_DEGENERATE = 1e-10
# relative size of a discriminant treated as exact tangency
_TANGENT = 1e-9


class DegenerateConfigurationError(ValueError):
    """Raised when parent centers are coincident or collinear."""


def _rows(array, width):
    array = np.asarray(array, dtype=float)
    return array.reshape(-1, width) if width else array.reshape(-1)


def trilaterate(p1, p2, p3, d1, d2, d3):
    """Solve for points at prescribed distances from three centers.

    All arguments are batched; row ``m`` describes one independent problem.

    Parameters
    ----------
    p1, p2, p3 : np.ndarray, shape=(M, 3)
        Centers of the three parents.
    d1, d2, d3 : np.ndarray, shape=(M,)
        Required distances from the three centers.

    Returns
    -------
    points : np.ndarray, shape=(M, 2, 3)
        Candidate points. Slot 0 lies on the positive side of the parents' plane
        (direction :math:`\\hat{e}_x \\times \\hat{e}_y` of the local frame), slot 1 is
        its mirror image. At tangency only slot 0 is meaningful.
    count : np.ndarray, shape=(M,)
        Number of real solutions, 0, 1 or 2.
    degenerate : np.ndarray, shape=(M,)
        True where parents are coincident or collinear; those rows have count 0.
    """
    p1, p2, p3 = _rows(p1, 3), _rows(p2, 3), _rows(p3, 3)
    d1, d2, d3 = _rows(d1, 0), _rows(d2, 0), _rows(d3, 0)

    e21 = p2 - p1
    e31 = p3 - p1
    d = np.linalg.norm(e21, axis=1)
    scale = np.maximum(np.maximum(d, np.linalg.norm(e31, axis=1)), d1)
    degenerate = d <= _DEGENERATE * scale
    ex = e21 / np.where(degenerate, 1., d)[:, None]
    i = np.einsum('ij,ij->i', ex, e31)
    perp = e31 - i[:, None] * ex
    j = np.linalg.norm(perp, axis=1)
    degenerate |= j <= _DEGENERATE * scale
    safe_d = np.where(degenerate, 1., d)
    safe_j = np.where(degenerate, 1., j)
    ey = perp / safe_j[:, None]
    ez = np.cross(ex, ey)

    x = (d1 ** 2 - d2 ** 2 + safe_d ** 2) / (2. * safe_d)
    y = (d1 ** 2 - d3 ** 2 + i ** 2 + safe_j ** 2) / (2. * safe_j) - i / safe_j * x
    z2 = d1 ** 2 - x ** 2 - y ** 2

    tangent = np.abs(z2) <= _TANGENT * scale ** 2
    count = np.where(tangent, 1, np.where(z2 > 0., 2, 0))
    count[degenerate] = 0
    z = np.where(tangent | (z2 < 0.), 0., np.sqrt(np.abs(z2)))

    base = p1 + x[:, None] * ex + y[:, None] * ey
    points = np.empty((len(p1), 2, 3))
    points[:, 0] = base + z[:, None] * ez
    points[:, 1] = base - z[:, None] * ez
    return points, count, degenerate


def solve_contact_position(parents, new_radius):
    """Return the centers of a sphere touching three parent spheres.

    Parameters
    ----------
    parents : sequence of Sphere
        Exactly three parent spheres.
    new_radius : float
        Radius of the new sphere.

    Returns
    -------
    candidates : list of np.ndarray
        Zero, one or two centers, positive side of the parents' plane first.

    Raises
    ------
    DegenerateConfigurationError
        If the parent centers are coincident or collinear.
    """
    if len(parents) != 3:
        raise ValueError("Argument parents should have 3 spheres! Given len(parents)={0}".format(
            len(parents)))
    if not new_radius > 0.:
        raise ValueError("Argument new_radius should be positive! Given new_radius={0}".format(
            new_radius))
    centers = [sphere.center for sphere in parents]
    distances = [sphere.radius + new_radius for sphere in parents]
    points, count, degenerate = trilaterate(*(centers + distances))
    if degenerate[0]:
        raise DegenerateConfigurationError(
            "Parent centers are coincident or collinear: {0}".format(
                [c.tolist() for c in centers]))
    return [points[0, k].copy() for k in range(count[0])]


def plane_contact_positions(p1, p2, d1, d2, axis, level):
    """Solve for points on an axis-aligned plane at prescribed distances from two centers.

    Parameters
    ----------
    p1, p2 : np.ndarray, shape=(M, 3)
        Centers of the two parents.
    d1, d2 : np.ndarray, shape=(M,)
        Required distances from the two centers.
    axis : int
        Axis normal to the plane.
    level : float
        Coordinate of the plane along ``axis``; written exactly into the result.

    Returns
    -------
    points : np.ndarray, shape=(M, 2, 3)
        Candidate points, slot 1 being the mirror of slot 0 across the parents' line.
    count : np.ndarray, shape=(M,)
        Number of real solutions, 0, 1 or 2.
    """
    p1, p2 = _rows(p1, 3), _rows(p2, 3)
    d1, d2 = _rows(d1, 0), _rows(d2, 0)
    others = [k for k in range(3) if k != axis]

    scale = np.maximum(d1, d2)
    rho1 = d1 ** 2 - (p1[:, axis] - level) ** 2
    rho2 = d2 ** 2 - (p2[:, axis] - level) ** 2
    reachable = (rho1 >= -_TANGENT * scale ** 2) & (rho2 >= -_TANGENT * scale ** 2)
    rho1 = np.maximum(rho1, 0.)
    rho2 = np.maximum(rho2, 0.)

    q1, q2 = p1[:, others], p2[:, others]
    e = q2 - q1
    dist = np.linalg.norm(e, axis=1)
    degenerate = dist <= _DEGENERATE * scale
    safe = np.where(degenerate, 1., dist)
    e = e / safe[:, None]
    along = (rho1 - rho2 + safe ** 2) / (2. * safe)
    h2 = rho1 - along ** 2

    tangent = np.abs(h2) <= _TANGENT * scale ** 2
    count = np.where(tangent, 1, np.where(h2 > 0., 2, 0))
    count[degenerate | ~reachable] = 0
    h = np.where(tangent | (h2 < 0.), 0., np.sqrt(np.abs(h2)))

    normal = np.column_stack([-e[:, 1], e[:, 0]])
    base = q1 + along[:, None] * e
    points = np.empty((len(p1), 2, 3))
    points[:, :, axis] = level
    points[:, 0, others[0]] = base[:, 0] + h * normal[:, 0]
    points[:, 0, others[1]] = base[:, 1] + h * normal[:, 1]
    points[:, 1, others[0]] = base[:, 0] - h * normal[:, 0]
    points[:, 1, others[1]] = base[:, 1] - h * normal[:, 1]
    return points, count

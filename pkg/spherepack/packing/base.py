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
"""Shared Packing Vocabulary Module.

Domain specification, the packing container and fill-goal accounting common to every
packing method.
"""


import numpy as np

from spherepack.geometry.sphere import Sphere, ContactParams
from spherepack.geometry.clip import disk_rectangle_area, sphere_box_volume
from spherepack.geometry.grid import SpatialGrid
from spherepack.distributions.radius import BaseRadiusDistribution
from spherepack.utils.utils import FACES


__all__ = ['DomainSpec', 'Packing', 'GoalUnreachableError', 'face_goal_reference',
           'body_goal_reference', 'achieved_body_fraction', 'achieved_face_fractions',
           'normalize_contacts', 'face_axis', 'face_area',
           'cross_brick_contacts']


def face_axis(face):
    """Return the normal axis of ``face`` and whether it is the upper face."""
    if face not in FACES:
        raise ValueError("Argument face should be one of {0}! Given face={1}".format(FACES, face))
    return 'xyz'.index(face[0]), face.endswith('max')


def normalize_contacts(pairs):
    """Return contact pairs as a sorted, duplicate-free (M, 2) array with i < j.

    Raises
    ------
    ValueError
        If a pair joins a sphere with itself.
    """
    pairs = np.asarray(pairs, dtype=int).reshape(-1, 2)
    if np.any(pairs[:, 0] == pairs[:, 1]):
        raise ValueError("Contacts should not contain self-pairs! Given {0}".format(
            pairs[pairs[:, 0] == pairs[:, 1]].tolist()))
    pairs = np.sort(pairs, axis=1)
    if len(pairs) == 0:
        return pairs
    return np.unique(pairs, axis=0)


class GoalUnreachableError(RuntimeError):
    """Raised when a fill phase hits its consecutive-failure cap before meeting its goal.

    The partially filled packing and the achieved fractions are kept on the exception.
    """

    def __init__(self, message, packing, face_fractions, body_fraction):
        super(GoalUnreachableError, self).__init__(message)
        self.packing = packing
        self.face_fractions = face_fractions
        self.body_fraction = body_fraction


class DomainSpec(object):
    """Brick geometry, tiling, fill goals and tolerances of a packing run."""

    def __init__(self, brick_side_lengths, brick_numbers, face_goal, body_goal, contact,
                 distribution, seed=0, max_failures=2000, max_triplets=500, prune_after=200):
        """Initialize class.

        Parameters
        ----------
        brick_side_lengths : sequence of float
            Side lengths of the unit brick in micrometers.
        brick_numbers : sequence of int
            Number of unit bricks along each axis.
        face_goal : float
            Target fraction of each face covered by sphere projections, in (0, 1]. Method 2
            reads it as a fraction of pi/4.
        body_goal : float
            Target fraction of the brick volume filled by spheres, in (0, 1]. Method 2
            reads it as a fraction of pi/6.
        contact : ContactParams
            Contact and parent tolerances.
        distribution : BaseRadiusDistribution
            Radius distribution.
        seed : int, optional
            Seed of the random number generator.
        max_failures : int, optional
            Consecutive rejected radii ending a fill phase.
        max_triplets : int, optional
            Parent triplets tried per radius.
        prune_after : int, optional
            Consecutive failed triplets after which a parent candidate is dropped.
        """
        if not isinstance(contact, ContactParams):
            raise TypeError("Argument contact should be a ContactParams! Given type={0}".format(
                type(contact)))
        if not isinstance(distribution, BaseRadiusDistribution):
            raise TypeError("Argument distribution should be a radius distribution! "
                            "Given type={0}".format(type(distribution)))
        sides = np.asarray(brick_side_lengths, dtype=float)
        numbers = np.asarray(brick_numbers)
        if sides.shape != (3,) or numbers.shape != (3,):
            raise ValueError("Arguments brick_side_lengths and brick_numbers should have 3 "
                             "entries! Given {0} and {1}".format(sides, numbers))
        if np.any(sides <= 4. * distribution.mean):
            raise ValueError("Argument brick_side_lengths should exceed 4 mean radii ({0})! "
                             "Given brick_side_lengths={1}".format(4. * distribution.mean, sides))
        if not np.issubdtype(numbers.dtype, np.integer) or np.any(numbers < 1):
            raise ValueError("Argument brick_numbers should be positive integers! "
                             "Given brick_numbers={0}".format(numbers))
        for name, goal in (('face_goal', face_goal), ('body_goal', body_goal)):
            if not 0. < goal <= 1.:
                raise ValueError("Argument {0} should be in (0, 1]! Given {0}={1}".format(
                    name, goal))
        for name, value in (('max_failures', max_failures), ('max_triplets', max_triplets),
                            ('prune_after', prune_after)):
            if int(value) != value or value < 1:
                raise ValueError("Argument {0} should be a positive integer! Given {0}={1}".format(
                    name, value))
        self._sides = sides
        self._numbers = numbers.astype(int)
        self._face_goal = float(face_goal)
        self._body_goal = float(body_goal)
        self._contact = contact
        self._distribution = distribution
        self._seed = seed
        self._max_failures = int(max_failures)
        self._max_triplets = int(max_triplets)
        self._prune_after = int(prune_after)

    @property
    def brick_side_lengths(self):
        """Side lengths of the unit brick."""
        return self._sides

    @property
    def brick_numbers(self):
        """Number of unit bricks along each axis."""
        return self._numbers

    @property
    def total_lengths(self):
        """Side lengths of the total domain, brick side times brick number per axis."""
        return self._sides * self._numbers

    @property
    def brick_volume(self):
        """Volume of one unit brick."""
        return float(np.prod(self._sides))

    @property
    def face_goal(self):
        """Target covered fraction of each face."""
        return self._face_goal

    @property
    def body_goal(self):
        """Target filled fraction of the brick volume."""
        return self._body_goal

    @property
    def contact(self):
        """Contact and parent tolerances."""
        return self._contact

    @property
    def distribution(self):
        """Radius distribution."""
        return self._distribution

    @property
    def seed(self):
        """Seed of the random number generator."""
        return self._seed

    @property
    def max_failures(self):
        """Consecutive rejected radii ending a fill phase."""
        return self._max_failures

    @property
    def max_triplets(self):
        """Parent triplets tried per radius."""
        return self._max_triplets

    @property
    def prune_after(self):
        """Consecutive failed triplets after which a parent candidate is dropped."""
        return self._prune_after

    def as_dict(self):
        """Return a JSON-serializable echo of the specification."""
        dist = self._distribution
        return {'brick_side_lengths': self._sides.tolist(),
                'brick_numbers': self._numbers.tolist(),
                'face_goal': self._face_goal,
                'body_goal': self._body_goal,
                'contact_parameter': self._contact.epsilon,
                'parent_parameter': self._contact.delta,
                'mean_radius': self._contact.mean_radius,
                'distribution': {'kind': dist.kind, 'scale': dist.scale, 'shape': dist.shape},
                'seed': self._seed,
                'max_failures': self._max_failures,
                'max_triplets': self._max_triplets,
                'prune_after': self._prune_after}


class Packing(object):
    """Sphere centers and radii with their contact graph and boundary index lists."""

    def __init__(self, centers, radii, contacts=None, boundary_lists=None,
                 unit_brick_count=None, lower=None, upper=None, metadata=None):
        """Initialize class.

        Parameters
        ----------
        centers : np.ndarray, shape=(N, 3)
            Sphere centers.
        radii : np.ndarray, shape=(N,)
            Sphere radii.
        contacts : np.ndarray, shape=(M, 2), optional
            Index pairs of spheres in contact.
        boundary_lists : dict, optional
            Face name to sorted index array, for the six faces. None when the domain
            has no boundary lists.
        unit_brick_count : int, optional
            Number of spheres of the unit brick the packing was built from.
        lower, upper : np.ndarray, shape=(3,), optional
            Corners of the packed domain; default to the bounding box of the spheres.
        metadata : dict, optional
            Provenance: specification echo, achieved fractions and method details.
        """
        centers = np.asarray(centers, dtype=float).reshape(-1, 3)
        radii = np.asarray(radii, dtype=float).reshape(-1)
        if len(centers) != len(radii):
            raise ValueError("Arguments centers and radii should have the same length! "
                             "Given {0} and {1}".format(len(centers), len(radii)))
        if np.any(radii <= 0.):
            raise ValueError("Argument radii should be positive!")
        contacts = normalize_contacts([] if contacts is None else contacts)
        if len(contacts) and (contacts.min() < 0 or contacts.max() >= len(radii)):
            raise ValueError("Contacts reference spheres outside the packing!")
        if boundary_lists is not None:
            if set(boundary_lists) != set(FACES):
                raise ValueError("Argument boundary_lists should have the keys {0}! "
                                 "Given {1}".format(FACES, sorted(boundary_lists)))
            boundary_lists = dict((face, np.unique(np.asarray(boundary_lists[face], dtype=int)))
                                  for face in FACES)
        if lower is None:
            lower = (centers - radii[:, None]).min(axis=0) if len(radii) else np.zeros(3)
        if upper is None:
            upper = (centers + radii[:, None]).max(axis=0) if len(radii) else np.ones(3)
        self._centers = centers
        self._radii = radii
        self._contacts = contacts
        self._boundary_lists = boundary_lists
        self._unit_brick_count = len(radii) if unit_brick_count is None else int(unit_brick_count)
        self._lower = np.asarray(lower, dtype=float)
        self._upper = np.asarray(upper, dtype=float)
        self._metadata = {} if metadata is None else dict(metadata)

    def __len__(self):
        return len(self._radii)

    @property
    def nspheres(self):
        """Number of spheres."""
        return len(self._radii)

    @property
    def centers(self):
        """Sphere centers."""
        return self._centers

    @property
    def radii(self):
        """Sphere radii."""
        return self._radii

    @property
    def contacts(self):
        """Sorted index pairs (i < j) of spheres in contact."""
        return self._contacts

    @property
    def boundary_lists(self):
        """Face name to index array, or None for domains without boundary lists."""
        return self._boundary_lists

    @property
    def unit_brick_count(self):
        """Number of spheres of the unit brick."""
        return self._unit_brick_count

    @property
    def lower(self):
        """Lower corner of the packed domain."""
        return self._lower

    @property
    def upper(self):
        """Upper corner of the packed domain."""
        return self._upper

    @property
    def metadata(self):
        """Provenance dictionary."""
        return self._metadata

    @property
    def spheres(self):
        """List of :class:`Sphere` objects."""
        return [Sphere(c, r, i) for i, (c, r) in enumerate(zip(self._centers, self._radii))]

    @property
    def domain_volume(self):
        """Volume used as the body-fraction denominator."""
        if 'domain_volume' in self._metadata:
            return self._metadata['domain_volume']
        return float(np.prod(self._upper - self._lower))

    @property
    def contact_params(self):
        """Contact tolerances recorded in the metadata, or None."""
        spec = self._metadata.get('spec')
        if not spec:
            return None
        return ContactParams(spec['contact_parameter'], spec['parent_parameter'],
                             spec['mean_radius'])


def face_goal_reference():
    r"""Projected area ratio of a sphere in its circumscribed cube, :math:`\pi / 4`."""
    return np.pi / 4.


def body_goal_reference():
    r"""Volume ratio of a sphere in its circumscribed cube, :math:`\pi / 6`."""
    return np.pi / 6.


def achieved_body_fraction(packing, domain_volume=None):
    """Return the fraction of the domain volume filled by spheres.

    Spheres protruding past the domain box only contribute their part inside the box.

    Parameters
    ----------
    packing : Packing
        Non-empty packing; its box is the measured region.
    domain_volume : float, optional
        Denominator; defaults to :attr:`Packing.domain_volume`.
    """
    if packing.nspheres == 0:
        raise ValueError("Argument packing should not be empty!")
    if domain_volume is None:
        domain_volume = packing.domain_volume
    if not domain_volume > 0.:
        raise ValueError("Argument domain_volume should be positive! "
                         "Given domain_volume={0}".format(domain_volume))
    lower, upper = packing.lower, packing.upper
    inside = np.all((packing.centers >= lower) & (packing.centers <= upper), axis=1)
    volume = sum(sphere_box_volume(c, r, lower, upper)
                 for c, r in zip(packing.centers[inside], packing.radii[inside]))
    return volume / domain_volume


def face_area(lower, upper, face, voids=()):
    """Return the area of ``face`` of the box minus the disks cut by ``voids`` on it."""
    axis, _ = face_axis(face)
    others = [k for k in range(3) if k != axis]
    area = float(np.prod((upper - lower)[others]))
    for center, radius in voids:
        level = upper[axis] if face.endswith('max') else lower[axis]
        if radius > 0. and np.isclose(center[axis], level):
            area -= np.pi * radius ** 2
    return area


def achieved_face_fractions(packing, voids=()):
    """Return the covered fraction of each of the six faces of the packing box.

    Spheres in a face's boundary list contribute their projected disk, clipped to the
    face rectangle when the boundary mode is 'tangent' and whole when it is 'centered'.
    Packings without boundary lists use the spheres within the contact tolerance of
    each face.
    """
    lower, upper = packing.lower, packing.upper
    mode = packing.metadata.get('boundary_mode', 'tangent')
    lists = packing.boundary_lists
    if lists is None:
        params = packing.contact_params
        tol = params.contact_tolerance if params is not None else 0.
        lists = {}
        for face in FACES:
            axis, upper_face = face_axis(face)
            level = upper[axis] if upper_face else lower[axis]
            distance = np.abs(packing.centers[:, axis] - level) - packing.radii
            lists[face] = np.where(np.abs(distance) <= tol)[0]
    fractions = {}
    for face in FACES:
        axis, _ = face_axis(face)
        others = [k for k in range(3) if k != axis]
        ids = lists[face]
        if mode == 'centered':
            covered = float(np.sum(np.pi * packing.radii[ids] ** 2))
        else:
            covered = sum(disk_rectangle_area(packing.centers[i, others], packing.radii[i],
                                              lower[others], upper[others]) for i in ids)
        fractions[face] = covered / face_area(lower, upper, face, voids)
    return fractions


def cross_brick_contacts(centers, radii, lower, brick_lengths, brick_numbers, tolerance,
                         contacts):
    """Complete a tiled contact list with pairs straddling internal brick faces.

    Only spheres in slabs around the internal faces are examined; a pair is added when
    its gap is within ``tolerance`` and it is not yet listed.

    Returns
    -------
    contacts : np.ndarray, shape=(M, 2)
        Normalized union of the given and the new contact pairs.
    """
    contacts = normalize_contacts(contacts)
    if len(radii) == 0:
        return contacts
    reach = 2. * radii.max() + tolerance
    near = np.zeros(len(radii), dtype=bool)
    for axis in range(3):
        for k in range(1, int(brick_numbers[axis])):
            plane = lower[axis] + k * brick_lengths[axis]
            near |= np.abs(centers[:, axis] - plane) <= reach
    ids = np.where(near)[0]
    if len(ids) < 2:
        return contacts
    grid = SpatialGrid(reach, centers[ids].min(axis=0) - 1., centers[ids].max(axis=0) + 1.)
    for i in ids:
        grid.insert(i, centers[i], radii[i])
    existing = set(map(tuple, contacts.tolist()))
    new = []
    for i in ids:
        found = grid.query(centers[i], radii[i], tolerance)
        found = found[found > i]
        if len(found) == 0:
            continue
        gaps = np.linalg.norm(centers[found] - centers[i], axis=1) - (radii[i] + radii[found])
        for j in found[np.abs(gaps) <= tolerance]:
            if (i, int(j)) not in existing:
                new.append((i, int(j)))
    if not new:
        return contacts
    return normalize_contacts(np.concatenate([contacts, np.array(new, dtype=int)]))

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
# pragma pylint: disable=too-many-instance-attributes,too-many-arguments
"""Brick Filling Machinery Module.

The :class:`BrickFiller` holds a growing set of spheres in a single brick together with
its spatial grid, contact graph and parent candidates, and implements the placement
steps shared by all methods: chains along edges, two-parent placements on faces and
three-parent placements in the volume.
"""


import itertools
import logging
import warnings

from collections import Counter

import numpy as np

from spherepack.geometry.contact import trilaterate, plane_contact_positions
from spherepack.geometry.clip import disk_rectangle_area, sphere_box_volume
from spherepack.geometry.grid import SpatialGrid
from spherepack.packing.base import (Packing, GoalUnreachableError, face_axis, face_area,
                                     normalize_contacts, face_goal_reference,
                                     body_goal_reference)
from spherepack.distributions.radius import radius_statistics
from spherepack.utils.utils import FACES


__all__ = ['ParentSet', 'BrickFiller', 'place_interior_sphere']


class ParentSet(object):
    """Parent candidates ordered by recency of placement with per-sphere neighbor lists."""

    def __init__(self, prune_after):
        """Initialize class.

        Parameters
        ----------
        prune_after : int
            Consecutive failed placements after which a candidate is dropped for good.
        """
        if prune_after < 1:
            raise ValueError("Argument prune_after should be positive! "
                             "Given prune_after={0}".format(prune_after))
        self._prune_after = prune_after
        self._members = set()
        self._pruned = set()
        self._failures = {}
        self._neighbors = {}

    def __len__(self):
        return len(self._members)

    def __contains__(self, index):
        return index in self._members

    @property
    def neighbors(self):
        """Sphere index to the set of indices within the parent tolerance."""
        return self._neighbors

    def link(self, i, j):
        """Record ``i`` and ``j`` as parent neighbors and admit both as candidates."""
        self._neighbors.setdefault(i, set()).add(j)
        self._neighbors.setdefault(j, set()).add(i)
        self.add(i)
        self.add(j)

    def add(self, index):
        """Admit ``index`` unless it was pruned before."""
        if index not in self._pruned and index not in self._members:
            self._members.add(index)
            self._failures[index] = 0

    def ordered(self):
        """Return candidates, most recently placed first."""
        return sorted(self._members, reverse=True)

    def record(self, failed, succeeded=()):
        """Count failed placements per member and reset the members of a success.

        Parameters
        ----------
        failed : iterable of int
            Member indices of failed triplets (or pairs); repeated indices count repeatedly.
        succeeded : iterable of int, optional
            Member indices of the accepted triplet.
        """
        for index, count in Counter(failed).items():
            if index in self._members:
                self._failures[index] += count
        for index in succeeded:
            if index in self._members:
                self._failures[index] = 0
        for index in [i for i in self._members if self._failures[i] >= self._prune_after]:
            self._members.discard(index)
            self._pruned.add(index)


class BrickFiller(object):
    """Incremental sphere placement inside one brick.

    Parameters of the run come from a :class:`DomainSpec`. Subclasses decide the fill
    order, which spheres count as boundary spheres, and how faces are covered.

    A radius that fits nowhere on a face or in the volume is not thrown away. It is
    deferred and offered again, before any fresh draw, once the packing has grown by a
    number of spheres that doubles with every rejection of that radius. Large radii,
    which are rejected most often, therefore still end up in the packing and the
    realized radii follow the input distribution.
    """

    # how boundary spheres relate to their face, 'tangent' or 'centered'
    boundary_mode = 'tangent'
    method = None
    # goals are fractions of the goal references instead of raw fractions
    relative_goals = False
    # largest number of deferred radii; the oldest is dropped beyond it
    max_deferred = 256

    def __init__(self, spec, rng, periodic=False, voids=()):
        """Initialize class.

        Parameters
        ----------
        spec : DomainSpec
            Specification of the run.
        rng : np.random.Generator
            Random number generator, advanced by every radius draw.
        periodic : bool, optional
            Check overlaps against periodic images across the brick faces.
        voids : sequence of (np.ndarray, float), optional
            Spherical regions no sphere may penetrate, given by center and radius.
        """
        self._spec = spec
        self._rng = rng
        self._dist = spec.distribution
        self._rbar = spec.contact.mean_radius
        self._tol = spec.contact.contact_tolerance
        self._ptol = spec.contact.parent_tolerance
        self._lengths = np.array(spec.brick_side_lengths, dtype=float)
        self._periodic = periodic
        self._voids = [(np.asarray(c, dtype=float), float(h)) for c, h in voids if h > 0.]
        self._grid = SpatialGrid.from_distribution(self._dist, np.zeros(3), self._lengths)
        self._centers = np.empty((256, 3))
        self._radii = np.empty(256)
        self._count = 0
        self._rmax = 0.
        self._contacts = []
        self._parents = ParentSet(spec.prune_after)
        self._face_members = dict((face, []) for face in FACES)
        self._face_cover = dict((face, 0.) for face in FACES)
        self._face_area = dict((face, face_area(np.zeros(3), self._lengths, face, self._voids))
                               for face in FACES)
        self._body_volume = 0.
        # (radius, sphere count at which it is due, wait after its next rejection)
        self._deferred = []
        self._dropped = 0
        self._log_init()

    def _log_init(self):
        """Log an overview of the filler's parameters."""
        logging.basicConfig(level=logging.INFO, format='%(levelname)s: %(message)s')
        logging.info("Initialized {0} filler: brick={1}, mean radius={2:.4f}, "
                     "epsilon={3}, delta={4}".format(self.method, self._lengths.tolist(),
                                                     self._rbar, self._spec.contact.epsilon,
                                                     self._spec.contact.delta))
        logging.info("Goals: face={0}, body={1} ({2}); caps: failures={3}, triplets={4}, "
                     "prune={5}".format(self._spec.face_goal, self._spec.body_goal,
                                        self.goal_basis, self._spec.max_failures,
                                        self._spec.max_triplets, self._spec.prune_after))

    @property
    def nspheres(self):
        """Number of placed spheres."""
        return self._count

    @property
    def centers(self):
        """Centers of the placed spheres."""
        return self._centers[:self._count]

    @property
    def radii(self):
        """Radii of the placed spheres."""
        return self._radii[:self._count]

    @property
    def parents(self):
        """Parent candidates of the volume fill."""
        return self._parents

    @property
    def body_fraction(self):
        """Fraction of the brick (or carved) volume filled so far."""
        return self._body_volume / self.domain_volume

    @property
    def domain_volume(self):
        """Volume of the fill region."""
        volume = float(np.prod(self._lengths))
        return volume - sum(2. / 3. * np.pi * h ** 3 for _, h in self._voids)

    def face_fraction(self, face):
        """Fraction of ``face`` covered by the projections of its boundary spheres."""
        return self._face_cover[face] / self._face_area[face]

    def face_fractions(self):
        """Covered fraction of all six faces."""
        return dict((face, self.face_fraction(face)) for face in FACES)

    @property
    def goal_basis(self):
        """'reference' when goals scale the goal references, 'absolute' otherwise."""
        return 'reference' if self.relative_goals else 'absolute'

    @property
    def face_target(self):
        """Covered face fraction meeting the face goal."""
        scale = face_goal_reference() if self.relative_goals else 1.
        return self._spec.face_goal * scale

    @property
    def body_target(self):
        """Filled volume fraction meeting the body goal."""
        scale = body_goal_reference() if self.relative_goals else 1.
        return self._spec.body_goal * scale

    @property
    def deferred(self):
        """Rejected radii waiting for another try, oldest first."""
        return [radius for radius, _, _ in self._deferred]

    def draw(self):
        """Return the next radius to place and the growth to wait for if it is rejected.

        The oldest deferred radius whose wait is over comes first; otherwise a fresh
        radius is drawn from the distribution.

        Returns
        -------
        radius : float
            Radius of the next sphere.
        wait : int
            Number of spheres the packing has to grow by before the radius is offered
            again, to be passed to :meth:`defer` on rejection.
        """
        for k, (radius, due, wait) in enumerate(self._deferred):
            if due <= self._count:
                del self._deferred[k]
                return radius, wait
        return self._dist.sample(self._rng), 1

    def defer(self, radius, wait=1):
        """Keep a rejected ``radius`` until the packing has grown by ``wait`` spheres."""
        self._deferred.append((radius, self._count + wait, 2 * wait))
        if len(self._deferred) > self.max_deferred:
            self._deferred.pop(0)
            self._dropped += 1

    # -- geometry of the brick ------------------------------------------------------------

    def _face_level(self, face):
        axis, upper = face_axis(face)
        return axis, (self._lengths[axis] if upper else 0.)

    def _on_face(self, center, radius, face):
        """Whether a sphere belongs to the boundary list of ``face``."""
        axis, level = self._face_level(face)
        return abs(abs(center[axis] - level) - radius) <= self._tol

    def _face_cover_area(self, center, radius, face):
        axis, _ = face_axis(face)
        others = [k for k in range(3) if k != axis]
        return disk_rectangle_area(center[others], radius, np.zeros(2), self._lengths[others])

    def inside(self, points, radius):
        """Mask of centers whose sphere lies in the brick and outside every void."""
        points = np.atleast_2d(points)
        slack = 1e-9 * self._rbar
        mask = np.all((points >= radius - slack) & (points <= self._lengths - radius + slack),
                      axis=1)
        return mask & self.outside_voids(points, radius)

    def outside_voids(self, points, radius):
        """Mask of centers whose sphere does not penetrate a void beyond the tolerance."""
        points = np.atleast_2d(points)
        mask = np.ones(len(points), dtype=bool)
        for center, h in self._voids:
            mask &= np.linalg.norm(points - center, axis=1) >= h + radius - self._tol
        return mask

    # -- neighborhoods and acceptance -----------------------------------------------------

    def _shifts(self, point, reach):
        """Lattice translations whose images may lie within ``reach`` of ``point``."""
        options = []
        for axis in range(3):
            choice = [0.]
            if point[axis] - reach < 0.:
                choice.append(self._lengths[axis])
            if point[axis] + reach > self._lengths[axis]:
                choice.append(-self._lengths[axis])
            options.append(choice)
        return [np.array(s) for s in itertools.product(*options) if any(s)]

    def neighborhood(self, point, radius, margin, images=True):
        """Return indices, positions and radii of spheres possibly within ``margin`` gap.

        With periodic checks enabled, images of stored spheres across the brick faces are
        appended with their translated positions.
        """
        ids = self._grid.query(point, radius, margin, outside=True)
        positions = self._centers[ids]
        radii = self._radii[ids]
        if not (self._periodic and images):
            return ids, positions, radii
        all_ids, all_pos, all_rad = [ids], [positions], [radii]
        for shift in self._shifts(point, radius + margin + self._rmax):
            found = self._grid.query(point + shift, radius, margin, outside=True)
            all_ids.append(found)
            all_pos.append(self._centers[found] - shift)
            all_rad.append(self._radii[found])
        return np.concatenate(all_ids), np.concatenate(all_pos), np.concatenate(all_rad)

    def _first_free(self, points, valid, radius, positions, radii):
        """Index of the first valid point whose sphere overlaps nothing beyond the tolerance."""
        candidates = np.where(valid)[0]
        if len(candidates) == 0:
            return None
        if len(radii) == 0:
            return int(candidates[0])
        diff = points[candidates, None, :] - positions[None, :, :]
        gaps = np.sqrt(np.einsum('ijk,ijk->ij', diff, diff)) - (radius + radii)
        free = np.all(gaps >= -self._tol, axis=1)
        if not np.any(free):
            return None
        return int(candidates[np.argmax(free)])

    def accepts(self, point, radius, region=None):
        """Whether a sphere at ``point`` lies in ``region`` and overlaps nothing."""
        region = self.inside if region is None else region
        point = np.asarray(point, dtype=float)
        if not region(point[None], radius)[0]:
            return False
        _, positions, radii = self.neighborhood(point, radius, 0.)
        return self._first_free(point[None], np.array([True]), radius, positions, radii) == 0

    # -- bookkeeping ----------------------------------------------------------------------

    def add(self, center, radius):
        """Store a sphere, record its contacts, parent links and goal contributions.

        Returns
        -------
        index : int
            Index of the new sphere.
        """
        center = np.asarray(center, dtype=float)
        if self._count == len(self._radii):
            self._centers = np.concatenate([self._centers, np.empty_like(self._centers)])
            self._radii = np.concatenate([self._radii, np.empty_like(self._radii)])
        index = self._count
        ids, positions, radii = self.neighborhood(center, radius, self._ptol, images=False)
        self._grid.insert(index, center, radius)
        self._centers[index] = center
        self._radii[index] = radius
        self._count += 1
        self._rmax = max(self._rmax, radius)
        if len(ids):
            gaps = np.linalg.norm(positions - center, axis=1) - (radius + radii)
            for j in ids[np.abs(gaps) <= self._tol]:
                self._contacts.append((int(j), index))
            for j in ids[gaps <= self._ptol]:
                self._parents.link(int(j), index)
        for face in FACES:
            if self._on_face(center, radius, face):
                self._face_members[face].append(index)
                self._face_cover[face] += self._face_cover_area(center, radius, face)
        self._body_volume += sphere_box_volume(center, radius, np.zeros(3), self._lengths)
        return index

    # -- placement steps ------------------------------------------------------------------

    def walk_chain(self, start, next_center, region=None, copies=()):
        """Grow a chain of spheres, each placed by ``next_center`` from its predecessor.

        Parameters
        ----------
        start : int
            Index of the sphere the chain starts from.
        next_center : callable
            ``next_center(radius, prev_center, prev_radius)`` returning a center or None.
        region : callable, optional
            Admissible region, defaults to :meth:`inside`.
        copies : sequence of np.ndarray, optional
            Translations at which every accepted sphere is replicated.

        Returns
        -------
        placed : list of int
            Indices of the chain spheres in placement order, copies excluded.
        """
        placed, prev, failures = [], start, 0
        while failures < self._spec.max_failures:
            # edge chains discard rejected radii
            radius = self._dist.sample(self._rng)
            center = next_center(radius, self._centers[prev], self._radii[prev])
            if center is None or not self.accepts(center, radius, region):
                failures += 1
                continue
            prev = self.add(center, radius)
            placed.append(prev)
            for shift in copies:
                self.add(center + shift, radius)
            failures = 0
        return placed

    def place_on_face(self, face, radius, level, candidates, region=None, copies=()):
        """Place a sphere on a plane in contact with two face spheres.

        Parameters
        ----------
        face : str
            Face whose boundary spheres serve as parents.
        radius : float
            Radius of the new sphere.
        level : float
            Coordinate of the plane holding the new center.
        candidates : ParentSet
            Parent candidates of this face, pruned as placements fail.
        region : callable, optional
            Admissible region, defaults to :meth:`inside`.
        copies : sequence of np.ndarray, optional
            Translations at which an accepted sphere is replicated.

        Returns
        -------
        index : int or None
            Index of the new sphere, or None when every pair failed.
        """
        region = self.inside if region is None else region
        axis, _ = face_axis(face)
        budget = self._spec.max_triplets
        for anchor in candidates.ordered():
            if budget <= 0:
                break
            center_a, radius_a = self._centers[anchor], self._radii[anchor]
            ids, positions, radii = self.neighborhood(center_a, radius_a, 2. * radius + self._tol)
            partners = np.array(sorted(set(int(i) for i in ids if i < anchor and i in candidates),
                                       reverse=True), dtype=int)
            if len(partners):
                dist = np.linalg.norm(self._centers[partners] - center_a, axis=1)
                partners = partners[dist <= radius_a + self._radii[partners] + 2. * radius]
            partners = partners[:budget]
            if len(partners) == 0:
                candidates.record([anchor])
                continue
            budget -= len(partners)
            points, count = plane_contact_positions(
                np.repeat(center_a[None], len(partners), axis=0), self._centers[partners],
                np.full(len(partners), radius_a + radius), self._radii[partners] + radius,
                axis, level)
            points = points.reshape(-1, 3)
            valid = np.column_stack([count >= 1, count == 2]).reshape(-1)
            valid[valid] = region(points[valid], radius)
            hit = self._first_free(points, valid, radius, positions, radii)
            if hit is None:
                candidates.record([anchor] * len(partners) + partners.tolist())
                continue
            pair = hit // 2
            candidates.record([anchor] * pair + partners[:pair].tolist(),
                              [anchor, int(partners[pair])])
            index = self.add(points[hit], radius)
            for shift in copies:
                self.add(points[hit] + shift, radius)
            return index
        return None

    def place_by_triplets(self, radius, parents=None, region=None, anchors=None):
        """Place a sphere in contact with three parents.

        Anchors are visited most recent first; each anchor is combined with pairs of
        older parent candidates near it, most recent pairs first, and the two mirror
        solutions are tried positive side first. The first candidate inside ``region``
        that overlaps nothing is accepted.

        Parameters
        ----------
        radius : float
            Radius of the new sphere.
        parents : ParentSet, optional
            Parent candidates, defaults to the filler's own.
        region : callable, optional
            Admissible region, defaults to :meth:`inside`.
        anchors : sequence of (np.ndarray, float), optional
            Fixed anchor spheres (such as voids) replacing the candidate anchors; every
            stored sphere near them may then act as a partner.

        Returns
        -------
        index : int or None
            Index of the new sphere, or None after the triplet budget is exhausted.
        """
        parents = self._parents if parents is None else parents
        region = self.inside if region is None else region
        budget = self._spec.max_triplets
        if anchors is None:
            visits = [(self._centers[a], self._radii[a], a) for a in parents.ordered()]
        else:
            visits = [(c, h, None) for c, h in anchors]
        for center_a, radius_a, anchor in visits:
            if budget <= 0:
                break
            ids, positions, radii = self.neighborhood(center_a, radius_a, 2. * radius + self._tol)
            if anchor is None:
                partners = sorted(set(int(i) for i in ids), reverse=True)
            else:
                partners = sorted(set(int(i) for i in ids if i < anchor and i in parents),
                                  reverse=True)
            partners = np.array(partners, dtype=int)
            if len(partners):
                dist = np.linalg.norm(self._centers[partners] - center_a, axis=1)
                partners = partners[dist <= radius_a + self._radii[partners] + 2. * radius]
            if len(partners) < 2:
                if anchor is not None:
                    parents.record([anchor])
                continue
            first, second = np.triu_indices(len(partners), 1)
            b, c = partners[first], partners[second]
            reach = np.linalg.norm(self._centers[b] - self._centers[c], axis=1)
            close = reach <= self._radii[b] + self._radii[c] + 2. * radius
            b, c = b[close][:budget], c[close][:budget]
            if len(b) == 0:
                if anchor is not None:
                    parents.record([anchor])
                continue
            budget -= len(b)
            points, count, _ = trilaterate(
                np.repeat(np.asarray(center_a)[None], len(b), axis=0),
                self._centers[b], self._centers[c], np.full(len(b), radius_a + radius),
                self._radii[b] + radius, self._radii[c] + radius)
            points = points.reshape(-1, 3)
            valid = np.column_stack([count >= 1, count == 2]).reshape(-1)
            valid[valid] = region(points[valid], radius)
            hit = self._first_free(points, valid, radius, positions, radii)
            lead = [] if anchor is None else [anchor]
            if hit is None:
                parents.record(lead * len(b) + b.tolist() + c.tolist())
                continue
            t = hit // 2
            parents.record(lead * t + b[:t].tolist() + c[:t].tolist(),
                           lead + [int(b[t]), int(c[t])])
            return self.add(points[hit], radius)
        return None

    # -- phases ---------------------------------------------------------------------------

    def fill_face(self, face, level_of, region=None, copies=()):
        """Cover ``face`` with two-parent placements until the face goal or failure cap.

        Parameters
        ----------
        face : str
            Face to cover.
        level_of : callable
            ``level_of(radius)`` giving the plane coordinate of a new center.
        region : callable, optional
            Admissible region.
        copies : sequence of np.ndarray, optional
            Translations replicating each accepted sphere.
        """
        candidates = ParentSet(self._spec.prune_after)
        for index in self._face_members[face]:
            candidates.add(index)
        failures = 0
        while (self.face_fraction(face) < self.face_target
               and failures < self._spec.max_failures):
            radius, wait = self.draw()
            index = self.place_on_face(face, radius, level_of(radius), candidates, region, copies)
            if index is None:
                self.defer(radius, wait)
                failures += 1
            else:
                candidates.add(index)
                failures = 0
        logging.info("Face {0}: {1} spheres, covered fraction {2:.4f}".format(
            face, len(self._face_members[face]), self.face_fraction(face)))

    def fill_body(self, region=None):
        """Fill the volume with three-parent placements until the body goal or failure cap."""
        failures = 0
        while self.body_fraction < self.body_target and failures < self._spec.max_failures:
            radius, wait = self.draw()
            index = None
            if len(self._parents) >= 3:
                index = self.place_by_triplets(radius, region=region)
            if index is None:
                self.defer(radius, wait)
                failures += 1
            else:
                failures = 0
        logging.info("Body: {0} spheres, filled fraction {1:.4f}, {2} parent candidates, "
                     "{3} radii deferred".format(self._count, self.body_fraction,
                                                 len(self._parents), len(self._deferred)))

    # -- results --------------------------------------------------------------------------

    def boundary_lists(self):
        """Face name to the indices of its boundary spheres."""
        return dict((face, np.array(sorted(self._face_members[face]), dtype=int))
                    for face in FACES)

    def goals_met(self, faces=FACES):
        """Whether the body goal and the face goal of ``faces`` are reached."""
        return (self.body_fraction >= self.body_target
                and all(self.face_fraction(f) >= self.face_target for f in faces))

    def to_packing(self, with_boundary_lists=True, extra=None):
        """Return the current spheres as a :class:`Packing` with provenance metadata."""
        metadata = {'method': self.method,
                    'boundary_mode': self.boundary_mode,
                    'spec': self._spec.as_dict(),
                    'goal_basis': self.goal_basis,
                    'face_target': self.face_target,
                    'body_target': self.body_target,
                    'unplaced_radii': len(self._deferred) + self._dropped,
                    'face_fractions': self.face_fractions(),
                    'body_fraction': self.body_fraction,
                    'domain_volume': self.domain_volume,
                    'voids': [[c.tolist(), h] for c, h in self._voids]}
        if self._count:
            metadata['radius_statistics'] = radius_statistics(self.radii, self._dist)
        metadata.update(extra or {})
        return Packing(self.centers.copy(), self.radii.copy(), normalize_contacts(self._contacts),
                       self.boundary_lists() if with_boundary_lists else None,
                       unit_brick_count=self._count, lower=np.zeros(3),
                       upper=self._lengths.copy(), metadata=metadata)

    def finish(self, faces=FACES, with_boundary_lists=True):
        """Return the packing, raising :class:`GoalUnreachableError` when a goal is unmet."""
        packing = self.to_packing(with_boundary_lists)
        stats = packing.metadata.get('radius_statistics')
        if stats is not None:
            logging.info("Realized radii: N={0}, mean={1:.4f} ({2:.3f} of mean), KS={3:.4f}, "
                         "{4} radii left unplaced".format(
                             stats['count'], stats['mean'], stats['mean_ratio'],
                             stats['ks_statistic'], len(self._deferred) + self._dropped))
            if stats['mean_ratio'] < 0.85:
                warnings.warn("Realized mean radius is {0:.3f} of the distribution mean".format(
                    stats['mean_ratio']), RuntimeWarning)
        if not self.goals_met(faces):
            fractions = dict((f, self.face_fraction(f)) for f in faces)
            raise GoalUnreachableError(
                "Fill goals not reached after {0} consecutive failures: face fractions {1}, "
                "body fraction {2:.4f}".format(self._spec.max_failures, fractions,
                                               self.body_fraction),
                packing, fractions, self.body_fraction)
        return packing


def place_interior_sphere(filler, radius, parents=None):
    """Place one sphere of ``radius`` in contact with three parents of ``filler``.

    Returns the index of the new sphere, or None when the placement is rejected.
    """
    return filler.place_by_triplets(radius, parents)

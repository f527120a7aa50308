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
# pragma pylint: disable=invalid-name
"""Test spherepack.packing.method1 and the shared filler."""


import itertools

import numpy as np

from numpy.testing import assert_raises, assert_equal, assert_allclose

from spherepack.distributions.radius import WeibullDistribution, make_rng
from spherepack.geometry.sphere import ContactParams
from spherepack.packing.base import DomainSpec, GoalUnreachableError, achieved_body_fraction
from spherepack.packing.filler import ParentSet, place_interior_sphere
from spherepack.packing.method1 import (Method1Filler, fill_unit_brick_m1, tile_by_reflection,
                                        edge_stepper)
from spherepack.packing.validate import validate_packing


def smoke_spec(sides=(8., 8., 8.), numbers=(1, 1, 1), face_goal=0.3, body_goal=0.2, seed=7,
               max_failures=100):
    """Small Method 1 run with the Weibull radii of the powder."""
    dist = WeibullDistribution(15.7, 3.55)
    contact = ContactParams(0.2, 0.5, dist.mean)
    return DomainSpec(np.array(sides) * dist.mean, numbers, face_goal, body_goal, contact, dist,
                      seed=seed, max_failures=max_failures, max_triplets=200, prune_after=50)


def test_parent_set():
    assert_raises(ValueError, ParentSet, 0)
    parents = ParentSet(2)
    parents.link(0, 1)
    parents.link(2, 1)
    assert_equal(len(parents), 3)
    assert_equal(parents.ordered(), [2, 1, 0])
    assert_equal(parents.neighbors[1], {0, 2})
    parents.record([0, 1])
    parents.record([0], succeeded=[1])
    # 0 failed twice in a row and is gone for good
    assert 0 not in parents
    assert 1 in parents
    parents.add(0)
    assert 0 not in parents


def test_edge_stepper():
    lengths = np.full(3, 10.)
    step = edge_stepper(lengths, 0, [0, 0, 0])
    assert_allclose(step(1., np.array([1., 1., 1.]), 1.), [3., 1., 1.])
    # a larger sphere keeps touching both faces and its predecessor
    center = step(2., np.array([1., 1., 1.]), 1.)
    assert_allclose(center[1:], [2., 2.])
    assert_allclose(np.linalg.norm(center - [1., 1., 1.]), 3.)
    # upper y face, walking backwards from the far corner
    step = edge_stepper(lengths, 0, [1, 1, 0], direction=-1)
    assert_allclose(step(1., np.array([9., 9., 1.]), 1.), [7., 9., 1.])
    # radius too small to reach the predecessor while touching both faces
    step = edge_stepper(lengths, 2, [0, 0, 1])
    assert step(0.1, np.array([5., 5., 1.]), 1.) is None


def test_place_interior_sphere_three_tangent_parents():
    spec = smoke_spec(sides=(20., 20., 20.))
    filler = Method1Filler(spec, make_rng(0))
    r = 10.
    c = 0.5 * spec.brick_side_lengths
    for center in (c, c + [2. * r, 0., 0.], c + [r, np.sqrt(3.) * r, 0.]):
        filler.add(center, r)
    assert_equal(len(filler.parents), 3)
    index = place_interior_sphere(filler, r)
    assert_equal(index, 3)
    new = filler.centers[3]
    assert_allclose(np.linalg.norm(filler.centers[:3] - new, axis=1), 2. * r, atol=1e-9)
    assert_allclose(abs(new[2] - c[2]), 2. * r * np.sqrt(2. / 3.), atol=1e-9)
    packing = filler.to_packing()
    assert_equal(packing.contacts, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])


def test_place_interior_sphere_skips_blocked_candidate():
    spec = smoke_spec(sides=(20., 20., 20.))
    filler = Method1Filler(spec, make_rng(0))
    r = 10.
    c = 0.5 * spec.brick_side_lengths
    for center in (c, c + [2. * r, 0., 0.], c + [r, np.sqrt(3.) * r, 0.]):
        filler.add(center, r)
    # block the upper mirror position
    apex = c + [r, r / np.sqrt(3.), 2. * r * np.sqrt(2. / 3.)]
    filler.add(apex, r)
    index = place_interior_sphere(filler, r)
    assert index is not None
    gaps = np.linalg.norm(filler.centers[:index] - filler.centers[index], axis=1) - 2. * r
    assert np.all(gaps >= -spec.contact.contact_tolerance)
    assert validate_packing(filler.to_packing(), spec).is_empty


def test_rejected_radius_is_offered_again():
    spec = smoke_spec(sides=(20., 20., 20.))
    filler = Method1Filler(spec, make_rng(3))
    reference = make_rng(3)
    radius, wait = filler.draw()
    assert_equal((radius, wait), (spec.distribution.sample(reference), 1))
    filler.defer(radius, wait)
    assert_equal(filler.deferred, [radius])
    # due only after the packing has grown by one sphere
    fresh, _ = filler.draw()
    assert_equal(fresh, spec.distribution.sample(reference))
    filler.add(0.5 * spec.brick_side_lengths, spec.contact.mean_radius)
    again, wait = filler.draw()
    assert_equal((again, wait), (radius, 2))
    assert_equal(filler.deferred, [])
    # a second rejection doubles the wait
    filler.defer(again, wait)
    filler.add(0.5 * spec.brick_side_lengths + [4. * spec.contact.mean_radius, 0., 0.],
               spec.contact.mean_radius)
    assert_equal(filler.draw()[0], spec.distribution.sample(reference))
    filler.add(0.5 * spec.brick_side_lengths - [4. * spec.contact.mean_radius, 0., 0.],
               spec.contact.mean_radius)
    assert_equal(filler.draw(), (radius, 4))


def test_deferred_radii_are_capped():
    spec = smoke_spec(sides=(20., 20., 20.))
    filler = Method1Filler(spec, make_rng(0))
    filler.max_deferred = 3
    for radius in (1., 2., 3., 4., 5.):
        filler.defer(radius)
    assert_equal(filler.deferred, [3., 4., 5.])
    metadata = filler.to_packing().metadata
    assert_equal(metadata['unplaced_radii'], 5)
    assert_equal(metadata['goal_basis'], 'absolute')
    assert_equal((metadata['face_target'], metadata['body_target']),
                 (spec.face_goal, spec.body_goal))


def test_fill_unit_brick_m1_smoke():
    spec = smoke_spec()
    packing = fill_unit_brick_m1(spec, make_rng(spec.seed))
    lengths = spec.brick_side_lengths
    rbar = spec.contact.mean_radius
    # corner spheres come first, touching their three faces exactly
    for index, bits in enumerate(itertools.product((0, 1), repeat=3)):
        assert_equal(packing.radii[index], rbar)
        assert_equal(packing.centers[index], np.where(bits, lengths - rbar, rbar))
    # everything inside the brick
    assert np.all(packing.centers - packing.radii[:, None] >= -1e-9)
    assert np.all(packing.centers + packing.radii[:, None] <= lengths + 1e-9)
    # goals reached
    assert achieved_body_fraction(packing) >= spec.body_goal
    assert_allclose(achieved_body_fraction(packing), packing.metadata['body_fraction'])
    assert min(packing.metadata['face_fractions'].values()) >= spec.face_goal
    report = validate_packing(packing, spec)
    assert report.is_empty, str(report)
    assert_equal(packing.metadata['method'], 'm1')
    assert_equal(packing.metadata['spec']['seed'], spec.seed)


def test_fill_unit_brick_m1_deterministic():
    spec = smoke_spec(seed=11)
    one = fill_unit_brick_m1(spec, make_rng(spec.seed))
    two = fill_unit_brick_m1(spec, make_rng(spec.seed))
    assert_equal(one.centers, two.centers)
    assert_equal(one.radii, two.radii)
    assert_equal(one.contacts, two.contacts)
    other = fill_unit_brick_m1(spec, make_rng(12))
    assert one.nspheres != other.nspheres or np.any(one.radii != other.radii)


def test_fill_unit_brick_m1_non_cubic():
    spec = smoke_spec(sides=(1.2 * 8., 1.7 * 8., 8.))
    packing = fill_unit_brick_m1(spec, make_rng(spec.seed))
    assert packing.nspheres > 8
    assert validate_packing(packing, spec).is_empty


def test_fill_unit_brick_m1_saturated():
    spec = smoke_spec(body_goal=1., max_failures=20)
    try:
        fill_unit_brick_m1(spec, make_rng(spec.seed))
    except GoalUnreachableError as error:
        assert error.body_fraction < 1.
        assert error.packing.nspheres > 8
        assert validate_packing(error.packing, spec).is_empty
    else:
        raise AssertionError("A body goal of 1 should not be reachable!")


def test_tile_by_reflection_identity():
    spec = smoke_spec()
    brick = fill_unit_brick_m1(spec, make_rng(spec.seed))
    packing = tile_by_reflection(brick, [1, 1, 1])
    assert_equal(packing.centers, brick.centers)
    assert_equal(packing.radii, brick.radii)
    assert_equal(packing.contacts, brick.contacts)
    for face in brick.boundary_lists:
        assert_equal(packing.boundary_lists[face], brick.boundary_lists[face])
    assert_raises(ValueError, tile_by_reflection, brick, [0, 1, 1])


def test_tile_by_reflection_2x2x1():
    spec = smoke_spec()
    brick = fill_unit_brick_m1(spec, make_rng(spec.seed))
    n = brick.nspheres
    lengths = spec.brick_side_lengths
    packing = tile_by_reflection(brick, [2, 2, 1], spec.contact)
    assert_equal(packing.nspheres, 4 * n)
    assert_equal(packing.unit_brick_count, n)
    assert_allclose(packing.upper, [2. * lengths[0], 2. * lengths[1], lengths[2]])
    assert_equal(np.sort(packing.radii), np.sort(np.tile(brick.radii, 4)))
    # blocks are (0,0,0), (0,1,0), (1,0,0), (1,1,0); block 2 mirrors x
    mirrored = packing.centers[2 * n:3 * n]
    assert_allclose(mirrored[:, 0], 2. * lengths[0] - brick.centers[:, 0], rtol=0., atol=1e-9)
    assert_equal(mirrored[:, 1:], brick.centers[:, 1:])
    # intra-brick gaps survive the isometry
    for block in range(4):
        source = brick.contacts
        image = packing.centers[source + block * n]
        original = brick.centers[source]
        assert_allclose(np.linalg.norm(image[:, 0] - image[:, 1], axis=1),
                        np.linalg.norm(original[:, 0] - original[:, 1], axis=1), atol=1e-9)
    # spheres within half the contact tolerance of a shared face touch their mirror image
    contacts = set(map(tuple, packing.contacts.tolist()))
    tol = spec.contact.contact_tolerance
    for axis, face, block in ((0, 'xmax', 2), (1, 'ymax', 1)):
        ids = brick.boundary_lists[face]
        gaps = lengths[axis] - brick.centers[ids, axis] - brick.radii[ids]
        near = ids[np.abs(2. * gaps) <= tol - 1e-9]
        assert len(near) > 0
        for i in near:
            mirror = int(i) + block * n
            expected = brick.centers[i].copy()
            expected[axis] = 2. * lengths[axis] - expected[axis]
            assert_allclose(packing.centers[mirror], expected, rtol=0., atol=1e-9)
            assert_equal(packing.radii[mirror], brick.radii[i])
            assert (int(i), mirror) in contacts
    # internal faces are not domain boundaries
    assert np.all(packing.centers[packing.boundary_lists['xmax'], 0] > lengths[0])
    report = validate_packing(packing, spec)
    assert report.is_empty, str(report)

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
"""Test spherepack.packing.validate."""


import numpy as np

from numpy.testing import assert_raises, assert_equal

from spherepack.geometry.sphere import ContactParams
from spherepack.packing.base import Packing
from spherepack.packing.validate import ValidationReport, validate_packing


PARAMS = ContactParams(0.1, 0.5, 1.)


def make_packing(centers=None, contacts=((0, 1), (0, 2)), **changes):
    """Three unit spheres in a 4 x 4 x 2 box, A touching B along x and C along y."""
    if centers is None:
        centers = [[1., 1., 1.], [3., 1., 1.], [1., 3., 1.]]
    lists = {'xmin': [0, 2], 'xmax': [1], 'ymin': [0, 1], 'ymax': [2],
             'zmin': [0, 1, 2], 'zmax': [0, 1, 2]}
    lists.update(changes)
    return Packing(np.array(centers), np.ones(3), list(contacts), lists, lower=np.zeros(3),
                   upper=[4., 4., 2.])


def test_validation_report():
    report = ValidationReport()
    assert report.is_empty
    assert_equal(str(report), "no violations")
    report.add('overlap', "(0, 1)")
    report.add('void', "sphere 3")
    assert_equal(len(report), 2)
    assert_equal(report.lines(), ["overlap: (0, 1)", "void: sphere 3"])
    assert_raises(ValueError, report.add, 'unknown', "x")


def test_validate_clean_packing():
    report = validate_packing(make_packing(), PARAMS)
    assert report.is_empty, str(report)
    assert_raises(ValueError, validate_packing, make_packing())


def test_validate_missing_contact():
    report = validate_packing(make_packing(contacts=[(0, 1)]), PARAMS)
    assert_equal(len(report), 1)
    assert_equal(len(report.missing_contacts), 1)
    assert "(0, 2)" in report.missing_contacts[0]


def test_validate_bad_contact():
    report = validate_packing(make_packing(contacts=[(0, 1), (0, 2), (1, 2)]), PARAMS)
    assert_equal(len(report), 1)
    assert_equal(len(report.bad_contacts), 1)


def test_validate_overlap():
    # C moved 1 um into A
    report = validate_packing(make_packing([[1., 1., 1.], [3., 1., 1.], [1., 2., 1.]]), PARAMS)
    assert_equal(len(report.overlaps), 1)
    assert "(0, 2)" in report.overlaps[0]


def test_validate_boundary_lists():
    report = validate_packing(make_packing(xmax=[]), PARAMS)
    assert_equal(len(report), 1)
    assert_equal(len(report.boundary_errors), 1)
    assert "not listed" in report.boundary_errors[0]
    report = validate_packing(make_packing(xmax=[0, 1]), PARAMS)
    assert_equal(len(report.boundary_errors), 1)
    assert "listed on xmax but not on it" in report.boundary_errors[0]
    # within the contact tolerance of the face still counts as touching it
    report = validate_packing(make_packing([[1.05, 1., 1.], [3.05, 1., 1.], [1.05, 3., 1.]]),
                              PARAMS)
    assert report.is_empty, str(report)


def test_validate_centered_boundary_lists():
    centers = [[0., 0., 0.], [2., 0., 0.]]
    lists = {'xmin': [0], 'xmax': [1], 'ymin': [0, 1], 'ymax': [], 'zmin': [0, 1], 'zmax': []}
    packing = Packing(np.array(centers), np.ones(2), [(0, 1)], lists, lower=np.zeros(3),
                      upper=[2., 4., 4.], metadata={'boundary_mode': 'centered'})
    assert validate_packing(packing, PARAMS).is_empty
    lists['ymin'] = [0]
    packing = Packing(np.array(centers), np.ones(2), [(0, 1)], lists, lower=np.zeros(3),
                      upper=[2., 4., 4.], metadata={'boundary_mode': 'centered'})
    assert_equal(len(validate_packing(packing, PARAMS).boundary_errors), 1)


def test_validate_void():
    packing = make_packing()
    packing.metadata['voids'] = [[[0., 2., 1.], 0.5]]
    assert validate_packing(packing, PARAMS).is_empty
    packing.metadata['voids'] = [[[0., 2., 1.], 1.]]
    assert_equal(len(validate_packing(packing, PARAMS).void_violations), 2)

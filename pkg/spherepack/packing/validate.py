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
"""Independent Packing Validation Module.

Every check is a direct all-pairs (or all-spheres) computation that shares nothing with
the placement code of the packers.
"""


import numpy as np

from spherepack.geometry.sphere import ContactParams
from spherepack.packing.base import DomainSpec, face_axis
from spherepack.utils.utils import FACES


__all__ = ['ValidationReport', 'validate_packing']


class ValidationReport(object):
    """Findings of :func:`validate_packing`, grouped by kind."""

    kinds = ('overlap', 'bad_contact', 'missing_contact', 'boundary', 'void')

    def __init__(self):
        self._findings = dict((kind, []) for kind in self.kinds)

    def __len__(self):
        return sum(len(items) for items in self._findings.values())

    def __str__(self):
        return "\n".join(self.lines()) if len(self) else "no violations"

    def add(self, kind, message):
        """Record one finding of ``kind``."""
        if kind not in self._findings:
            raise ValueError("Argument kind should be one of {0}! Given kind={1}".format(
                self.kinds, kind))
        self._findings[kind].append(message)

    def findings(self, kind):
        """Messages recorded for ``kind``."""
        return list(self._findings[kind])

    @property
    def is_empty(self):
        """Whether no violation was found."""
        return len(self) == 0

    @property
    def overlaps(self):
        """Pairs overlapping deeper than the contact tolerance."""
        return self.findings('overlap')

    @property
    def bad_contacts(self):
        """Recorded contacts whose gap exceeds the contact tolerance."""
        return self.findings('bad_contact')

    @property
    def missing_contacts(self):
        """Pairs within the contact tolerance missing from the contact list."""
        return self.findings('missing_contact')

    @property
    def boundary_errors(self):
        """Wrongly listed or missing boundary spheres."""
        return self.findings('boundary')

    @property
    def void_violations(self):
        """Spheres penetrating a void beyond the contact tolerance."""
        return self.findings('void')

    def lines(self):
        """Return one line per finding, prefixed by its kind."""
        return ["{0}: {1}".format(kind, message) for kind in self.kinds
                for message in self._findings[kind]]


def _params(packing, spec):
    if isinstance(spec, DomainSpec):
        return spec.contact
    if isinstance(spec, ContactParams):
        return spec
    params = packing.contact_params
    if params is None:
        raise ValueError("Contact tolerances are neither given nor recorded in the packing!")
    return params


def validate_packing(packing, spec=None, slack=1e-9):
    """Check a packing against the contact, overlap, boundary and void rules.

    Parameters
    ----------
    packing : Packing
        Packing to check.
    spec : DomainSpec or ContactParams, optional
        Source of the contact tolerance; defaults to the one recorded in the packing.
    slack : float, optional
        Band, in units of the mean radius, around each threshold where a pair counts
        neither as violating nor as qualifying; absorbs rounding of coordinate
        transformations.

    Returns
    -------
    report : ValidationReport
        Findings; empty for a valid packing.
    """
    params = _params(packing, spec)
    tol = params.contact_tolerance
    band = slack * params.mean_radius
    centers, radii = packing.centers, packing.radii
    report = ValidationReport()

    recorded = set()
    for i, j in packing.contacts.tolist():
        recorded.add((i, j))
        g = np.sqrt(np.sum((centers[i] - centers[j]) ** 2)) - (radii[i] + radii[j])
        if abs(g) > tol + band:
            report.add('bad_contact', "({0}, {1}) gap {2:.6g} exceeds {3:.6g}".format(i, j, g, tol))

    for i in range(len(radii) - 1):
        diff = centers[i + 1:] - centers[i]
        gaps = np.sqrt(np.sum(diff * diff, axis=1)) - (radii[i] + radii[i + 1:])
        for k in np.where(gaps < -tol - band)[0]:
            report.add('overlap', "({0}, {1}) gap {2:.6g} below {3:.6g}".format(
                i, i + 1 + k, gaps[k], -tol))
        for k in np.where(np.abs(gaps) <= tol - band)[0]:
            if (i, i + 1 + k) not in recorded:
                report.add('missing_contact', "({0}, {1}) gap {2:.6g}".format(
                    i, i + 1 + k, gaps[k]))

    lists = packing.boundary_lists
    if lists is not None:
        centered = packing.metadata.get('boundary_mode') == 'centered'
        for face in FACES:
            axis, upper = face_axis(face)
            level = packing.upper[axis] if upper else packing.lower[axis]
            offset = np.abs(centers[:, axis] - level)
            if centered:
                listed_bad = offset > band
                qualifying = offset <= band
            else:
                distance = np.abs(offset - radii)
                listed_bad = distance > tol + band
                qualifying = distance <= tol - band
            listed = np.zeros(len(radii), dtype=bool)
            listed[lists[face]] = True
            for i in np.where(listed & listed_bad)[0]:
                report.add('boundary', "sphere {0} listed on {1} but not on it".format(i, face))
            for i in np.where(qualifying & ~listed)[0]:
                report.add('boundary', "sphere {0} on {1} but not listed".format(i, face))

    for center, h in packing.metadata.get('voids', []):
        distance = np.sqrt(np.sum((centers - np.asarray(center)) ** 2, axis=1))
        for i in np.where(distance < h + radii - tol - band)[0]:
            report.add('void', "sphere {0} penetrates the void at {1} by {2:.6g}".format(
                i, list(center), h + radii[i] - distance[i]))
    return report

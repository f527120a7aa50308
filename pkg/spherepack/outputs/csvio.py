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
"""Packing and Simulation Output Module.

Packings are stored as a directory of CSV tables plus a JSON metadata file:

- ``spheres.csv``: ``id,x,y,z,r`` with shortest round-trip float representations.
- ``contacts.csv``: ``i,j`` pairs with ``i < j`` in sorted order.
- ``boundary_<face>.csv``: ``id`` of the spheres on each of the six faces.
- ``meta.json``: sphere counts, domain corners, achieved fractions and provenance.
"""


import csv
import json
import os

import numpy as np

from spherepack.packing.base import Packing
from spherepack.utils.utils import FACES


__all__ = ['write_packing', 'read_packing', 'radius_histogram', 'write_histogram',
           'write_snapshot', 'write_bonds', 'write_temperatures']


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError("Object of type {0} is not JSON serializable".format(type(value)))


def _write_rows(filename, header, rows):
    with open(filename, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)


def _read_rows(filename, header):
    with open(filename, 'r', newline='') as handle:
        reader = csv.reader(handle)
        found = next(reader, None)
        if found != list(header):
            raise ValueError("File {0} should start with the header {1}! Given {2}".format(
                filename, ','.join(header), found))
        return [row for row in reader if row]


def write_packing(packing, dirname, extra=None):
    """Write ``packing`` to the directory ``dirname``, creating it when needed.

    Parameters
    ----------
    packing : Packing
        The packing.
    dirname : str
        Output directory.
    extra : dict, optional
        Additional JSON-serializable entries of ``meta.json``, such as the run configuration.
    """
    if not os.path.isdir(dirname):
        os.makedirs(dirname)
    _write_rows(os.path.join(dirname, 'spheres.csv'), ('id', 'x', 'y', 'z', 'r'),
                ((i, repr(float(x)), repr(float(y)), repr(float(z)), repr(float(r)))
                 for i, ((x, y, z), r) in enumerate(zip(packing.centers, packing.radii))))
    _write_rows(os.path.join(dirname, 'contacts.csv'), ('i', 'j'),
                ((int(i), int(j)) for i, j in packing.contacts))
    for face in FACES:
        filename = os.path.join(dirname, 'boundary_{0}.csv'.format(face))
        if packing.boundary_lists is None:
            if os.path.exists(filename):
                os.remove(filename)
            continue
        _write_rows(filename, ('id',), ((int(i),) for i in packing.boundary_lists[face]))
    meta = {'FinalNSpheres': packing.nspheres,
            'UnitBrickNSpheres': packing.unit_brick_count,
            'lower': packing.lower.tolist(),
            'upper': packing.upper.tolist(),
            'face_fractions': packing.metadata.get('face_fractions'),
            'body_fraction': packing.metadata.get('body_fraction'),
            'metadata': packing.metadata}
    meta.update(extra or {})
    with open(os.path.join(dirname, 'meta.json'), 'w') as handle:
        json.dump(meta, handle, indent=2, sort_keys=True, default=_jsonable)
        handle.write('\n')


def read_packing(dirname):
    """Read the packing written by :func:`write_packing` to ``dirname``.

    Raises
    ------
    ValueError
        If a file is missing its header or the boundary lists are incomplete.
    """
    if not os.path.isdir(dirname):
        raise ValueError("Directory {0} does not exist!".format(dirname))
    rows = _read_rows(os.path.join(dirname, 'spheres.csv'), ('id', 'x', 'y', 'z', 'r'))
    ids = [int(row[0]) for row in rows]
    if ids != list(range(len(ids))):
        raise ValueError("Sphere ids in {0} should be 0, 1, ..., N-1!".format(dirname))
    table = np.array([[float(value) for value in row[1:]] for row in rows]).reshape(-1, 4)
    contacts = [(int(i), int(j)) for i, j in
                _read_rows(os.path.join(dirname, 'contacts.csv'), ('i', 'j'))]
    files = dict((face, os.path.join(dirname, 'boundary_{0}.csv'.format(face))) for face in FACES)
    present = [face for face in FACES if os.path.exists(files[face])]
    boundary_lists = None
    if present:
        if len(present) != len(FACES):
            raise ValueError("Boundary lists in {0} are incomplete! Found {1}".format(
                dirname, present))
        boundary_lists = dict((face, [int(row[0]) for row in _read_rows(files[face], ('id',))])
                              for face in FACES)
    with open(os.path.join(dirname, 'meta.json'), 'r') as handle:
        meta = json.load(handle)
    return Packing(table[:, :3], table[:, 3], contacts, boundary_lists,
                   unit_brick_count=meta.get('UnitBrickNSpheres'), lower=meta.get('lower'),
                   upper=meta.get('upper'), metadata=meta.get('metadata'))


def radius_histogram(radii, dist, bins=20):
    """Return the histogram of realized radii next to the analytic density.

    Parameters
    ----------
    radii : np.ndarray
        Realized radii.
    dist : BaseRadiusDistribution
        Distribution the radii were drawn from.
    bins : int or sequence of float, optional
        Number of bins or bin edges.

    Returns
    -------
    edges : np.ndarray, shape=(B+1,)
        Bin edges.
    counts : np.ndarray, shape=(B,)
        Number of radii per bin.
    density : np.ndarray, shape=(B,)
        Normalized histogram.
    pdf : np.ndarray, shape=(B,)
        Analytic density at the bin centers.
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0:
        raise ValueError("Argument radii should not be empty!")
    counts, edges = np.histogram(radii, bins=bins)
    widths = np.diff(edges)
    density = counts / (counts.sum() * widths)
    pdf = dist.pdf(0.5 * (edges[1:] + edges[:-1]))
    return edges, counts, density, pdf


def write_histogram(radii, dist, filename, bins=20):
    """Write ``radii_hist.csv`` style rows ``lower,upper,count,density,pdf`` to ``filename``."""
    edges, counts, density, pdf = radius_histogram(radii, dist, bins)
    _write_rows(filename, ('lower', 'upper', 'count', 'density', 'pdf'),
                ((repr(float(lo)), repr(float(hi)), int(n), repr(float(d)), repr(float(p)))
                 for lo, hi, n, d, p in zip(edges[:-1], edges[1:], counts, density, pdf)))


def write_snapshot(packing, temperatures, filename):
    """Write rows ``id,x,y,z,r,T`` of a temperature snapshot to ``filename``."""
    temperatures = np.asarray(temperatures, dtype=float)
    if temperatures.shape != (packing.nspheres,):
        raise ValueError("Argument temperatures should have one entry per sphere! "
                         "Given shape={0}".format(temperatures.shape))
    _write_rows(filename, ('id', 'x', 'y', 'z', 'r', 'T'),
                ((i, repr(float(c[0])), repr(float(c[1])), repr(float(c[2])), repr(float(r)),
                  repr(float(t)))
                 for i, (c, r, t) in enumerate(zip(packing.centers, packing.radii, temperatures))))


def write_bonds(bonds, filename):
    """Write ``(i, j, t_bonded)`` rows, sorted by pair, to ``filename``."""
    _write_rows(filename, ('i', 'j', 't_bonded'),
                ((int(i), int(j), repr(float(t))) for i, j, t in sorted(bonds)))


def write_temperatures(temperatures, filename):
    """Write rows ``id,T`` of the final temperatures to ``filename``."""
    _write_rows(filename, ('id', 'T'),
                ((i, repr(float(t))) for i, t in enumerate(np.asarray(temperatures, dtype=float))))

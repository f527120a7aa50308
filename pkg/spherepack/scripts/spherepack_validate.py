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
"""Packing Validation Script."""


from spherepack.outputs.csvio import read_packing
from spherepack.packing.validate import validate_packing
from spherepack.scripts.common import load_run_config


description_validate = """
Check a written packing by brute force: overlaps deeper than the contact tolerance,
recorded and missing contacts, boundary lists and hemisphere voids.

The report is printed to standard output; the exit status is 1 when it is not empty.
"""


def parse_args_validate(subparser):
    """Parse command-line arguments for validating a packing."""
    # required arguments
    subparser.add_argument(
        "dirname",
        help="directory of the packing written by the pack command.")

    # optional arguments
    subparser.add_argument(
        "--config",
        default=None,
        type=str,
        metavar="",
        help="run configuration providing the tolerances. By default, those recorded in "
             "meta.json are used.")


def main_validate(args):
    """Validate a packing and print the report."""
    packing = read_packing(args.dirname)
    spec = None
    if args.config is not None:
        spec = load_run_config(args.config).spec
    report = validate_packing(packing, spec)
    if report.is_empty:
        print("{0}: {1} spheres, {2} contacts, no violations".format(
            args.dirname, packing.nspheres, len(packing.contacts)))
        return 0
    print(report)
    return 1

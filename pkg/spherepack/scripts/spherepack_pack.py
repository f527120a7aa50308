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
"""Packing Generation Script."""


import logging

from spherepack.outputs.csvio import write_packing
from spherepack.scripts.common import help_config, load_run_config, make_packing


description_pack = """
Generate a random polydisperse sphere packing with Method 1, Method 2 or the
hemisphere-carved brick, as selected in the run configuration.

The generated files include:
  spheres.csv          Sphere ids, centers and radii.
  contacts.csv         Pairs of spheres in contact.
  boundary_<face>.csv  Spheres on each face of the domain (not for hemisphere runs).
  meta.json            Counts, achieved fractions and the configuration echo.
"""


def parse_args_pack(subparser):
    """Parse command-line arguments for generating a packing."""
    # required arguments
    subparser.add_argument(
        "--config",
        required=True,
        type=str,
        metavar="CONFIG",
        help=help_config)

    # optional arguments
    subparser.add_argument(
        "--out",
        default=None,
        type=str,
        metavar="",
        help="output directory. By default, the configured [run] output.")

    subparser.add_argument(
        "--seed",
        default=None,
        type=int,
        metavar="",
        help="seed of the random number generator overriding the configured one.")

    subparser.add_argument(
        "--method",
        default=None,
        choices=["m1", "m2", "hemisphere"],
        type=str,
        help="packing method overriding the configured one.")


def main_pack(args):
    """Generate a packing and write its artifacts."""
    config = load_run_config(args.config, args.seed, args.method, args.out)
    packing, complete = make_packing(config)
    write_packing(packing, config.output, extra={'config': config.as_dict(),
                                                 'complete': complete})
    logging.info("Wrote {0} spheres and {1} contacts to {2}".format(
        packing.nspheres, len(packing.contacts), config.output))
    return 0

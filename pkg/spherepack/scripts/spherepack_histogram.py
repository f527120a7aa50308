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
"""Radius Histogram Script."""


import os

from spherepack.outputs.csvio import read_packing, write_histogram
from spherepack.outputs.plot import plot_radius_histogram
from spherepack.scripts.common import load_run_config, packing_distribution


description_histogram = """
Bin the realized sphere radii of a written packing next to the analytic density of
the distribution they were drawn from.

The generated files include:
  radii_hist.csv       Bin edges, counts, normalized density and analytic density.
  radii_hist.png       Histogram plot, with --plot.
"""


def parse_args_histogram(subparser):
    """Parse command-line arguments for the radius histogram."""
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
        help="run configuration providing the distribution. By default, the distribution "
             "recorded in meta.json is used.")

    subparser.add_argument(
        "--out",
        default=None,
        type=str,
        metavar="",
        help="output directory. By default, the packing directory.")

    subparser.add_argument(
        "-b", "--bins",
        default=20,
        type=int,
        metavar="",
        help="number of histogram bins. [default=%(default)s]")

    subparser.add_argument(
        "--plot",
        action="store_true",
        help="also plot the histogram against the analytic density.")


def main_histogram(args):
    """Write the radius histogram of a packing."""
    packing = read_packing(args.dirname)
    if args.config is not None:
        dist = load_run_config(args.config).distribution
    else:
        dist = packing_distribution(packing)
    output = args.dirname if args.out is None else args.out
    if not os.path.isdir(output):
        os.makedirs(output)
    write_histogram(packing.radii, dist, os.path.join(output, 'radii_hist.csv'), args.bins)
    if args.plot:
        plot_radius_histogram(packing.radii, dist, os.path.join(output, 'radii_hist.png'),
                              args.bins)
    return 0

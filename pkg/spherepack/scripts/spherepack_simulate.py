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
"""Thermal Bonding Simulation Script."""


import logging
import os

from spherepack.bonding.thermal import PhysicalConstants, run_print
from spherepack.outputs.csvio import read_packing, write_bonds, write_snapshot, write_temperatures
from spherepack.scripts.common import load_run_config
from spherepack.utils.config import SimulationConfig


description_simulate = """
Simulate a laser print over a written packing: particles heat under the beam, cool
to the air and exchange heat with their contacts; contacting particles above the
sintering temperature bond.

The generated files include:
  bonds.csv            Bonded pairs and the time they bonded.
  snapshot_<k>.csv     Temperature field at the k-th configured snapshot time.
  temperatures.csv     Final temperature of every particle.
"""


def parse_args_simulate(subparser):
    """Parse command-line arguments for simulating a print."""
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
        help="run configuration whose [simulation] section sets the constants, time step, "
             "laser path and snapshot times. By default, no laser path is followed.")

    subparser.add_argument(
        "--out",
        default=None,
        type=str,
        metavar="",
        help="output directory. By default, the packing directory.")


def main_simulate(args):
    """Run the bonding simulation and write bonds and temperatures."""
    packing = read_packing(args.dirname)
    simulation = None
    if args.config is not None:
        simulation = load_run_config(args.config).simulation
    if simulation is None:
        simulation = SimulationConfig(PhysicalConstants())
    state, snapshots = run_print(packing, simulation.path, simulation.dt, simulation.constants,
                                 simulation.snapshot_times, simulation.laser_depth)

    output = args.dirname if args.out is None else args.out
    if not os.path.isdir(output):
        os.makedirs(output)
    write_bonds(state.bond_table(), os.path.join(output, 'bonds.csv'))
    for k, (_, temperatures) in enumerate(snapshots):
        write_snapshot(packing, temperatures, os.path.join(output, 'snapshot_{0}.csv'.format(k)))
    write_temperatures(state.temperatures, os.path.join(output, 'temperatures.csv'))
    logging.info("Wrote {0} bonds and {1} snapshots to {2}".format(
        len(state.bonds), len(snapshots), output))
    return 0

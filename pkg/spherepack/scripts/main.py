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
"""Entry Point of the SpherePack Command-Line Tools."""


import argparse
import sys

from spherepack import __version__
from spherepack.bonding.thermal import StabilityError
from spherepack.geometry.contact import DegenerateConfigurationError
from spherepack.geometry.grid import GridBoundsError
from spherepack.packing.base import GoalUnreachableError
from spherepack.packing.method2 import TilingError
from spherepack.utils.config import ConfigError
from spherepack.scripts.spherepack_pack import main_pack, parse_args_pack, description_pack
from spherepack.scripts.spherepack_validate import (
    main_validate,
    parse_args_validate,
    description_validate,
)
from spherepack.scripts.spherepack_simulate import (
    main_simulate,
    parse_args_simulate,
    description_simulate,
)
from spherepack.scripts.spherepack_histogram import (
    main_histogram,
    parse_args_histogram,
    description_histogram,
)

from argparse import RawDescriptionHelpFormatter


__all__ = ["main"]


# basic switch dictionary for storing all main callable function and subparser
SCRIPT_MAIN = {
    "pack": main_pack,
    "validate": main_validate,
    "simulate": main_simulate,
    "histogram": main_histogram,
}

# errors reported as a message with exit status 2 instead of a traceback
TYPED_ERRORS = (
    ConfigError,
    GoalUnreachableError,
    TilingError,
    StabilityError,
    DegenerateConfigurationError,
    GridBoundsError,
    ValueError,
    IOError,
)


def parse_args_spherepack(argv=None):
    """Parse entry points arguments for spherepack functionality."""
    description = """SpherePack command-line tools"""
    parser = argparse.ArgumentParser(prog="spherepack", description=description)

    # main parser to handle basic command and help function
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version="{} (SpherePack version {})".format(parser.prog, __version__),
    )

    # command parser, stored in parser.command
    subparser = parser.add_subparsers(
        metavar="<Commands>", help="<Functions>", dest="command"
    )
    subparser.required = True

    parser_pack = subparser.add_parser(
        "pack",
        help="Generate a sphere packing.",
        description=description_pack,
        formatter_class=RawDescriptionHelpFormatter,
    )
    parse_args_pack(parser_pack)

    parser_validate = subparser.add_parser(
        "validate",
        help="Validate a sphere packing by brute force.",
        description=description_validate,
        formatter_class=RawDescriptionHelpFormatter,
    )
    parse_args_validate(parser_validate)

    parser_simulate = subparser.add_parser(
        "simulate",
        help="Simulate thermal bonding along a laser path.",
        description=description_simulate,
        formatter_class=RawDescriptionHelpFormatter,
    )
    parse_args_simulate(parser_simulate)

    parser_histogram = subparser.add_parser(
        "histogram",
        help="Histogram of the realized sphere radii.",
        description=description_histogram,
        formatter_class=RawDescriptionHelpFormatter,
    )
    parse_args_histogram(parser_histogram)

    return parser.parse_args(argv)


def main(argv=None):
    """Entry point function for SpherePack; return the exit status."""
    args = parse_args_spherepack(argv)  # parse all variables for each functions
    main_fun = SCRIPT_MAIN[args.command]  # call the main executable function
    try:
        return main_fun(args)
    except TYPED_ERRORS as error:
        sys.stderr.write("error: {0}: {1}\n".format(type(error).__name__, error))
        return 2


if __name__ == "__main__":
    sys.exit(main())

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
# pragma pylint: disable=wildcard-import
"""SpherePack: random polydisperse sphere packings and thermal bonding simulation."""


from spherepack.distributions import *
from spherepack.geometry import *
from spherepack.packing import *
from spherepack.bonding import *
from spherepack.utils import *
from spherepack.utils.config import *
from spherepack.outputs import *


__version__ = '0.1.0'

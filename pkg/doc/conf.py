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
"""Sphinx configuration of the SpherePack documentation."""

import sys
import os

sys.path.insert(0, os.path.abspath('..'))

from spherepack import __version__  # noqa: E402

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosummary',
]

source_suffix = '.rst'
master_doc = 'index'

project = u'SpherePack'
copyright = u'2024, SpherePack Dev Team'
author = u'SpherePack Dev Team'
version = __version__
release = __version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_show_sourcelink = False
htmlhelp_basename = 'SpherePackdoc'

autodoc_member_order = 'bysource'
napoleon_numpy_docstring = True
napoleon_google_docstring = False

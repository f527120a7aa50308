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
"""Simple Plotting Module."""


import numpy as np

import matplotlib
matplotlib.use('agg')
import matplotlib.pyplot as plt

from matplotlib import rcParams

from spherepack.outputs.csvio import radius_histogram


__all__ = ['plot_radius_histogram']


def plot_radius_histogram(radii, dist, fname, bins=20, color='b', xlabel='Radius',
                          ylabel='Probability density'):
    r"""Plot the histogram of realized radii against the analytic probability density.

    Parameters
    ----------
    radii : 1-D array or sequence.
        Realized sphere radii.
    dist : BaseRadiusDistribution
        Distribution the radii were drawn from.
    fname : str
        A string representing the path to a filename for storing the plot.
        If the given filename does not have a proper extension, the 'png' format is used
        by default, i.e. plot is saved as filename.png.
    bins : int, optional
        Number of histogram bins.
    color : str, optional
        Color of the histogram bars.
    xlabel : str, optional
        The x axis label.
    ylabel : str, optional
        The y axis label.

    """
    edges, _, density, _ = radius_histogram(radii, dist, bins)
    # set font
    rcParams['font.family'] = 'serif'
    rcParams['mathtext.fontset'] = 'stix'
    # create figure
    fig = plt.figure()
    ax = fig.add_subplot(1, 1, 1)
    ax.bar(edges[:-1], density, width=np.diff(edges), align='edge', color=color, alpha=0.5,
           edgecolor='k', label='realized')
    grid = np.linspace(edges[0], edges[-1], 200)
    ax.plot(grid, dist.pdf(grid), color='k', label='{0} pdf'.format(dist.kind))
    ax.set_xlabel(xlabel, fontsize=12, fontweight='bold')
    ax.set_ylabel(ylabel, fontsize=12, fontweight='bold')
    ax.legend(frameon=False)
    # hide the right and top spines
    ax.spines['right'].set_visible(False)
    ax.spines['top'].set_visible(False)
    ax.xaxis.tick_bottom()
    ax.yaxis.tick_left()
    fig.savefig(fname, dpi=200)
    plt.close(fig)

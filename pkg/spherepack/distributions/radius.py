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
"""Radius Probability Distribution Module.

Every packer draws sphere radii from one of the distributions defined here. A
distribution supplies random samples, its probability density and cumulative
distribution, and a closed-form mean radius.
"""


import numpy as np

from scipy import stats
from scipy.special import gamma as gamma_function

from spherepack.utils.utils import doc_inherit


__all__ = ['BaseRadiusDistribution', 'WeibullDistribution', 'GammaDistribution',
           'LognormalDistribution', 'FrozenRadiusDistribution', 'make_distribution',
           'make_rng', 'sample_radius', 'pdf', 'mean_radius', 'radius_statistics']


class BaseRadiusDistribution(object):
    """Base class of sphere radius distributions.

    Subclasses implement :meth:`_draw` and :attr:`mean`, and expose the matching
    ``scipy.stats`` frozen distribution through :attr:`frozen`.
    """

    kind = None

    def __init__(self, scale, shape):
        """Initialize class.

        Parameters
        ----------
        scale : float
            Scale parameter of the distribution in micrometers.
        shape : float
            Dimensionless shape parameter of the distribution.
        """
        if not np.isfinite(scale) or scale <= 0.:
            raise ValueError("Argument scale should be positive! Given scale={0}".format(scale))
        if not np.isfinite(shape) or shape <= 0.:
            raise ValueError("Argument shape should be positive! Given shape={0}".format(shape))
        self._scale = float(scale)
        self._shape = float(shape)

    def __repr__(self):
        return "{0}(scale={1!r}, shape={2!r})".format(
            self.__class__.__name__, self._scale, self._shape)

    @property
    def scale(self):
        """Scale parameter in micrometers."""
        return self._scale

    @property
    def shape(self):
        """Dimensionless shape parameter."""
        return self._shape

    @property
    def frozen(self):
        """The equivalent frozen ``scipy.stats`` distribution."""
        raise NotImplementedError

    @property
    def mean(self):
        """Analytic mean radius in micrometers."""
        raise NotImplementedError

    def _draw(self, rng, size):
        raise NotImplementedError

    def sample(self, rng, size=None):
        """Draw strictly positive radii.

        Parameters
        ----------
        rng : np.random.Generator
            Random number generator, advanced by the call.
        size : int, optional
            Number of radii. If None, a single float is returned.

        Returns
        -------
        radii : float or np.ndarray
            Sampled radii in micrometers.
        """
        if size is None:
            value = float(self._draw(rng, None))
            while value <= 0.:
                value = float(self._draw(rng, None))
            return value
        values = np.asarray(self._draw(rng, size), dtype=float)
        # zero draws are replaced so that every radius stays strictly positive
        bad = values <= 0.
        while np.any(bad):
            values[bad] = self._draw(rng, int(np.sum(bad)))
            bad = values <= 0.
        return values

    def pdf(self, r):
        """Evaluate the probability density function.

        Parameters
        ----------
        r : float or np.ndarray
            Radii in micrometers; must be non-negative.

        Raises
        ------
        ValueError
            If any radius is negative.
        """
        r = np.asarray(r, dtype=float)
        if np.any(r < 0.):
            raise ValueError("Argument r should be non-negative! Given r={0}".format(r))
        return self.frozen.pdf(r)

    def cdf(self, r):
        """Evaluate the cumulative distribution function."""
        return self.frozen.cdf(np.asarray(r, dtype=float))

    def quantile(self, q):
        """Return the radius below which a fraction ``q`` of the samples fall."""
        if not 0. < q < 1.:
            raise ValueError("Argument q should be in (0, 1)! Given q={0}".format(q))
        return float(self.frozen.ppf(q))


class WeibullDistribution(BaseRadiusDistribution):
    r"""Weibull radius distribution.

    .. math::
       f(r; \lambda, k) = \frac{k}{\lambda} \left(\frac{r}{\lambda}\right)^{k - 1}
                          e^{-(r / \lambda)^k}

    where :math:`\lambda` is the scale and :math:`k` the shape parameter.
    """

    kind = 'weibull'

    @property
    def frozen(self):
        """The equivalent frozen ``scipy.stats.weibull_min`` distribution."""
        return stats.weibull_min(c=self._shape, scale=self._scale)

    @property
    def mean(self):
        r"""Mean radius :math:`\lambda \Gamma(1 + 1/k)`."""
        return self._scale * gamma_function(1. + 1. / self._shape)

    def _draw(self, rng, size):
        # inverse of the cumulative distribution function
        u = rng.random(size)
        return self._scale * (-np.log1p(-u)) ** (1. / self._shape)


class GammaDistribution(BaseRadiusDistribution):
    r"""Gamma radius distribution.

    .. math::
       f(r; k, \theta) = \frac{r^{k - 1} e^{-r / \theta}}{\Gamma(k) \theta^k}

    where :math:`\theta` is the scale and :math:`k` the shape parameter.
    """

    kind = 'gamma'

    @property
    def frozen(self):
        """The equivalent frozen ``scipy.stats.gamma`` distribution."""
        return stats.gamma(a=self._shape, scale=self._scale)

    @property
    def mean(self):
        r"""Mean radius :math:`k \theta`."""
        return self._shape * self._scale

    def _draw(self, rng, size):
        if self._shape >= 1.:
            return self._scale * rng.standard_gamma(self._shape, size)
        # boost: G(k) = G(k + 1) U^(1/k) for shape below one
        boosted = rng.standard_gamma(self._shape + 1., size)
        return self._scale * boosted * rng.random(size) ** (1. / self._shape)


class LognormalDistribution(BaseRadiusDistribution):
    r"""Log-normal radius distribution.

    The scale is the median radius :math:`e^{\mu}` and the shape is :math:`\sigma`.
    """

    kind = 'lognormal'

    @property
    def frozen(self):
        """The equivalent frozen ``scipy.stats.lognorm`` distribution."""
        return stats.lognorm(s=self._shape, scale=self._scale)

    @property
    def mean(self):
        r"""Mean radius :math:`e^{\mu + \sigma^2 / 2}`."""
        return self._scale * np.exp(0.5 * self._shape ** 2)

    def _draw(self, rng, size):
        return self._scale * np.exp(self._shape * rng.standard_normal(size))


class FrozenRadiusDistribution(BaseRadiusDistribution):
    """Adapter exposing any frozen ``scipy.stats`` continuous distribution as radii."""

    kind = 'scipy'

    def __init__(self, frozen):
        """Initialize class.

        Parameters
        ----------
        frozen : scipy.stats rv_frozen
            Frozen continuous distribution with non-negative support.
        """
        if not hasattr(frozen, 'rvs') or not hasattr(frozen, 'pdf'):
            raise TypeError("Argument frozen should be a frozen scipy.stats distribution! "
                            "Given type(frozen)={0}".format(type(frozen)))
        lower = frozen.support()[0]
        if lower < 0.:
            raise ValueError("Argument frozen should have non-negative support! "
                             "Given lower bound={0}".format(lower))
        self._frozen = frozen
        super(FrozenRadiusDistribution, self).__init__(frozen.kwds.get('scale', 1.), 1.)

    def __repr__(self):
        return "FrozenRadiusDistribution({0})".format(self._frozen.dist.name)

    @property
    @doc_inherit(BaseRadiusDistribution, 'frozen')
    def frozen(self):
        return self._frozen

    @property
    @doc_inherit(BaseRadiusDistribution, 'mean')
    def mean(self):
        return float(self._frozen.mean())

    def _draw(self, rng, size):
        return self._frozen.rvs(size=size, random_state=rng)


_DISTRIBUTIONS = {
    'weibull': WeibullDistribution,
    'gamma': GammaDistribution,
    'lognormal': LognormalDistribution,
}


def make_distribution(kind, scale, shape):
    """Return the radius distribution of the given kind.

    Parameters
    ----------
    kind : str
        One of 'weibull', 'gamma' or 'lognormal'.
    scale : float
        Scale parameter in micrometers.
    shape : float
        Dimensionless shape parameter.
    """
    if kind not in _DISTRIBUTIONS:
        raise ValueError("Argument kind should be one of {0}! Given kind={1}".format(
            sorted(_DISTRIBUTIONS), kind))
    return _DISTRIBUTIONS[kind](scale, shape)


def make_rng(seed):
    """Return a seeded ``np.random.Generator`` for a 64-bit unsigned seed."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError("Argument seed should be an integer! Given type(seed)={0}".format(
            type(seed)))
    if not 0 <= seed < 2 ** 64:
        raise ValueError("Argument seed should be a 64-bit unsigned integer! "
                         "Given seed={0}".format(seed))
    return np.random.default_rng(int(seed))


def sample_radius(dist, rng):
    """Draw one radius from ``dist`` advancing ``rng``."""
    return dist.sample(rng)


def pdf(dist, r):
    """Evaluate the probability density of ``dist`` at radius ``r``."""
    return dist.pdf(r)


def mean_radius(dist):
    """Return the analytic mean radius of ``dist``."""
    return dist.mean


def radius_statistics(radii, dist):
    """Compare realized radii against the distribution they were drawn from.

    Parameters
    ----------
    radii : np.ndarray
        Realized radii of a packing.
    dist : BaseRadiusDistribution
        Input distribution.

    Returns
    -------
    statistics : dict
        Keys 'count', 'mean', 'mean_ratio', 'ks_statistic' and 'ks_pvalue'.
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0:
        raise ValueError("Argument radii should not be empty!")
    result = stats.kstest(radii, dist.cdf)
    mean = float(np.mean(radii))
    return {'count': int(radii.size),
            'mean': mean,
            'mean_ratio': mean / dist.mean,
            'ks_statistic': float(result.statistic),
            'ks_pvalue': float(result.pvalue)}

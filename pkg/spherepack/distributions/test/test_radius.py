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
"""Test spherepack.distributions.radius."""


import numpy as np
import sympy as sp

from numpy.testing import assert_raises, assert_allclose, assert_equal, assert_almost_equal
from scipy import stats
from scipy.integrate import quad

from spherepack.distributions.radius import (
    WeibullDistribution, GammaDistribution, LognormalDistribution, FrozenRadiusDistribution,
    make_distribution, make_rng, sample_radius, pdf, mean_radius, radius_statistics)


def test_distribution_raises():
    assert_raises(ValueError, WeibullDistribution, 0., 3.55)
    assert_raises(ValueError, WeibullDistribution, 15.7, -1.)
    assert_raises(ValueError, GammaDistribution, np.inf, 2.)
    assert_raises(ValueError, GammaDistribution, 7., np.nan)
    assert_raises(ValueError, make_distribution, 'uniform', 1., 1.)
    assert_raises(ValueError, WeibullDistribution(15.7, 3.55).pdf, -1.)
    assert_raises(ValueError, WeibullDistribution(15.7, 3.55).quantile, 1.)
    assert_raises(TypeError, FrozenRadiusDistribution, 'weibull')
    assert_raises(ValueError, FrozenRadiusDistribution, stats.norm(loc=1.))
    assert_raises(TypeError, make_rng, 1.5)
    assert_raises(TypeError, make_rng, True)
    assert_raises(ValueError, make_rng, -1)
    assert_raises(ValueError, make_rng, 2 ** 64)


def test_mean_radius():
    assert_almost_equal(mean_radius(WeibullDistribution(15.7, 3.55)), 14.14, decimal=2)
    assert_almost_equal(mean_radius(GammaDistribution(7., 2.)), 14., decimal=12)
    assert_almost_equal(mean_radius(WeibullDistribution(4.2, 1.)), 4.2, decimal=12)
    assert_almost_equal(LognormalDistribution(10., 0.25).mean, 10. * np.exp(0.03125), decimal=12)
    frozen = FrozenRadiusDistribution(stats.uniform(loc=1., scale=2.))
    assert_almost_equal(frozen.mean, 2., decimal=12)


def test_pdf_values():
    weibull = make_distribution('weibull', 15.7, 3.55)
    assert_equal(pdf(weibull, 0.), 0.)
    # gamma density from its closed form
    r, k, theta = sp.symbols('r k theta', positive=True)
    density = r ** (k - 1) * sp.exp(-r / theta) / (sp.gamma(k) * theta ** k)
    expected = float(density.subs({r: 7, k: 2, theta: 7}))
    assert_allclose(pdf(make_distribution('gamma', 7., 2.), 7.), expected, rtol=1e-12)
    assert_allclose(expected, np.exp(-1.) / 7., rtol=1e-12)
    # weibull density from its closed form
    lam = sp.symbols('lam', positive=True)
    density = k / lam * (r / lam) ** (k - 1) * sp.exp(-(r / lam) ** k)
    for value in [1., 10., 14.14, 25.]:
        expected = float(density.subs({r: value, k: sp.Rational(355, 100),
                                       lam: sp.Rational(157, 10)}))
        assert_allclose(weibull.pdf(value), expected, rtol=1e-10)


def test_pdf_normalization():
    for dist in [WeibullDistribution(15.7, 3.55), GammaDistribution(7., 2.),
                 LognormalDistribution(12., 0.3), GammaDistribution(3., 1.5)]:
        values = dist.pdf(np.linspace(0., 20. * dist.mean, 1001))
        assert np.all(values >= 0.)
        total = quad(dist.pdf, 0., 20. * dist.mean, limit=200, points=[dist.mean])[0]
        assert_allclose(total, 1., atol=1e-6)
    # symbolic normalization of the gamma density with integer shape
    r = sp.symbols('r', positive=True)
    assert_equal(sp.integrate(r / 49 * sp.exp(-r / 7), (r, 0, sp.oo)), 1)


def test_sample_mean_and_ks():
    critical = 1.95 / np.sqrt(10 ** 5)
    for dist, mean in [(WeibullDistribution(15.7, 3.55), 14.14),
                       (GammaDistribution(7., 2.), 14.)]:
        radii = dist.sample(make_rng(2024), 10 ** 5)
        assert radii.shape == (10 ** 5,)
        assert np.all(radii > 0.)
        assert abs(np.mean(radii) / mean - 1.) < 0.01
        assert stats.kstest(radii, dist.cdf).statistic < critical
    for dist in [LognormalDistribution(10., 0.4), GammaDistribution(4., 0.6)]:
        radii = dist.sample(make_rng(7), 10 ** 5)
        assert np.all(radii > 0.)
        assert abs(np.mean(radii) / dist.mean - 1.) < 0.02
        assert stats.kstest(radii, dist.cdf).statistic < critical


def test_sample_deterministic():
    dist = WeibullDistribution(15.7, 3.55)
    rng1, rng2 = make_rng(123), make_rng(123)
    first = [sample_radius(dist, rng1) for _ in range(100)]
    second = [sample_radius(dist, rng2) for _ in range(100)]
    assert_equal(first, second)
    assert all(isinstance(value, float) and value > 0. for value in first)
    assert_equal(dist.sample(make_rng(5), 50), dist.sample(make_rng(5), 50))
    assert not np.array_equal(dist.sample(make_rng(5), 50), dist.sample(make_rng(6), 50))


def test_frozen_distribution():
    dist = FrozenRadiusDistribution(stats.gamma(a=2., scale=7.))
    assert_allclose(dist.mean, 14., rtol=1e-12)
    assert_allclose(dist.pdf(7.), GammaDistribution(7., 2.).pdf(7.), rtol=1e-12)
    radii = dist.sample(make_rng(3), 1000)
    assert np.all(radii > 0.)
    assert dist.kind == 'scipy'


def test_quantile():
    dist = WeibullDistribution(15.7, 3.55)
    assert_allclose(dist.cdf(dist.quantile(0.999)), 0.999, rtol=1e-10)
    assert_allclose(dist.quantile(0.5), 15.7 * np.log(2.) ** (1. / 3.55), rtol=1e-10)


def test_radius_statistics():
    dist = GammaDistribution(7., 2.)
    radii = dist.sample(make_rng(11), 5000)
    result = radius_statistics(radii, dist)
    assert_equal(result['count'], 5000)
    assert_allclose(result['mean'], np.mean(radii))
    assert_allclose(result['mean_ratio'], np.mean(radii) / 14.)
    assert 0. <= result['ks_statistic'] < 0.05
    assert 0. <= result['ks_pvalue'] <= 1.
    # radii skewed towards small values are detected
    skewed = radius_statistics(radii[radii < 14.], dist)
    assert skewed['mean_ratio'] < 0.85
    assert skewed['ks_pvalue'] < 1e-3
    assert_raises(ValueError, radius_statistics, [], dist)

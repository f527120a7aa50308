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
# pragma pylint: disable=too-many-arguments,too-many-instance-attributes
r"""Discrete Thermal Sintering Module.

Each particle of a packing exchanges heat with the laser, the surrounding air and its
contacting neighbors,

.. math::
   q_i = Q \frac{r_i^3}{r_\ell^3} + k_b (T_R - T_i) + \sum_{j} k_t (T_j - T_i)

and its temperature advances explicitly, :math:`T_i \leftarrow T_i + q_i \Delta t / (m_i C_p)`.
Two contacting particles that both reach the sintering temperature bond for good.
"""


import logging
import warnings

import numpy as np


__all__ = ['StabilityError', 'PhysicalConstants', 'LaserPath', 'ThermalState',
           'BondingSimulation', 'particle_mass', 'laser_flux', 'convective_flux',
           'conductive_flux', 'stable_time_step', 'default_laser_depth', 'step', 'run_print']


class StabilityError(RuntimeError):
    """Raised when the time step is too large for the explicit temperature update."""

    def __init__(self, message, particle=None):
        super(StabilityError, self).__init__(message)
        self.particle = particle


class PhysicalConstants(object):
    """Laser, material and environment constants of the sintering model.

    Lengths are in micrometers, masses in grams, energies in joules.
    """

    _names = ('power', 'tau_air', 'tau_steel', 'k_b', 'k_t', 'heat_capacity', 'density',
              'laser_radius', 'ambient_temperature', 'sintering_temperature')

    def __init__(self, power=100., tau_air=0.262, tau_steel=15., k_b=2.9090e-6, k_t=3.3309e-4,
                 heat_capacity=0.5, density=8e-12, laser_radius=50., ambient_temperature=300.,
                 sintering_temperature=1000.):
        """Initialize class.

        Parameters
        ----------
        power : float, optional
            Total laser power Q in W; zero switches the laser off.
        tau_air : float, optional
            Thermal conductivity of air in W/(m K).
        tau_steel : float, optional
            Thermal conductivity of the powder material in W/(m K).
        k_b : float, optional
            Heat transfer coefficient to the air in W/K; may be zero.
        k_t : float, optional
            Heat transfer coefficient between contacting particles in W/K; may be zero.
        heat_capacity : float, optional
            Specific heat C_p in J/(g K).
        density : float, optional
            Density in g/µm³.
        laser_radius : float, optional
            Beam radius in µm.
        ambient_temperature : float, optional
            Air temperature T_R in K.
        sintering_temperature : float, optional
            Bonding threshold T_s in K; must exceed the ambient temperature.
        """
        for name, value in (('power', power), ('k_b', k_b), ('k_t', k_t)):
            if not value >= 0.:
                raise ValueError("Argument {0} should be non-negative! Given {0}={1}".format(
                    name, value))
        for name, value in (('tau_air', tau_air), ('tau_steel', tau_steel),
                            ('heat_capacity', heat_capacity), ('density', density),
                            ('laser_radius', laser_radius),
                            ('ambient_temperature', ambient_temperature)):
            if not value > 0.:
                raise ValueError("Argument {0} should be positive! Given {0}={1}".format(
                    name, value))
        if not sintering_temperature > ambient_temperature:
            raise ValueError("Argument sintering_temperature should exceed ambient_temperature! "
                             "Given sintering_temperature={0}".format(sintering_temperature))
        self.power = float(power)
        self.tau_air = float(tau_air)
        self.tau_steel = float(tau_steel)
        self.k_b = float(k_b)
        self.k_t = float(k_t)
        self.heat_capacity = float(heat_capacity)
        self.density = float(density)
        self.laser_radius = float(laser_radius)
        self.ambient_temperature = float(ambient_temperature)
        self.sintering_temperature = float(sintering_temperature)

    @classmethod
    def from_formula(cls, mean_radius, **kwargs):
        r"""Initialize with :math:`k_b = \pi \tau_a \bar{r} / 2` and
        :math:`k_t = \pi \tau_s \bar{r} / 2`.

        Parameters
        ----------
        mean_radius : float
            Mean particle radius in µm.
        kwargs
            Other constants, as in the class constructor.
        """
        if 'k_b' in kwargs or 'k_t' in kwargs:
            raise ValueError("Arguments k_b and k_t are derived and cannot be given!")
        defaults = cls()
        tau_air = kwargs.get('tau_air', defaults.tau_air)
        tau_steel = kwargs.get('tau_steel', defaults.tau_steel)
        radius = mean_radius * 1e-6
        k_b = np.pi * tau_air * radius / 2.
        k_t = np.pi * tau_steel * radius / 2.
        if not np.isclose(k_b, defaults.k_b, rtol=1e-2):
            warnings.warn("Formula heat transfer coefficient k_b={0:.4e} W/K differs from the "
                          "default {1:.4e} W/K".format(k_b, defaults.k_b), RuntimeWarning)
        return cls(k_b=k_b, k_t=k_t, **kwargs)

    def as_dict(self):
        """Return the constants as a dictionary."""
        return dict((name, getattr(self, name)) for name in self._names)


class LaserPath(object):
    """Sequence of beam positions in the bed plane, each held for a dwell time."""

    def __init__(self, segments, sweep='step'):
        """Initialize class.

        Parameters
        ----------
        segments : sequence of (float, float, float)
            Beam position x, y in µm and dwell time in s of each way-segment.
        sweep : str, optional
            'step' holds the beam at each position for its dwell; 'linear' moves it
            from the previous position to the current one during the dwell.
        """
        segments = np.asarray(segments, dtype=float).reshape(-1, 3)
        if np.any(segments[:, 2] <= 0.):
            raise ValueError("Every dwell time should be positive! Given {0}".format(
                segments[:, 2].tolist()))
        if sweep not in ('step', 'linear'):
            raise ValueError("Argument sweep should be 'step' or 'linear'! Given sweep={0}".format(
                sweep))
        self._segments = segments
        self._sweep = sweep

    def __len__(self):
        return len(self._segments)

    @property
    def segments(self):
        """Array of (x, y, dwell) rows."""
        return self._segments

    @property
    def sweep(self):
        """Beam motion model within a segment."""
        return self._sweep

    @property
    def duration(self):
        """Total dwell time."""
        return float(np.sum(self._segments[:, 2]))

    def schedule(self, dt):
        """Return the beam center of every time step, shape (n_steps, 2)."""
        if not dt > 0.:
            raise ValueError("Argument dt should be positive! Given dt={0}".format(dt))
        positions = []
        previous = self._segments[0, :2] if len(self._segments) else None
        for x, y, dwell in self._segments:
            target = np.array([x, y])
            nstep = max(1, int(round(dwell / dt)))
            if self._sweep == 'step':
                positions.append(np.repeat(target[None], nstep, axis=0))
            else:
                fraction = (np.arange(nstep) + 1.) / nstep
                positions.append(previous + fraction[:, None] * (target - previous))
            previous = target
        if not positions:
            return np.empty((0, 2))
        return np.concatenate(positions)


class ThermalState(object):
    """Particle temperatures, bonds formed so far and the current time."""

    def __init__(self, temperatures, bonds=None, time=0.):
        self._temperatures = np.asarray(temperatures, dtype=float)
        self._bonds = {} if bonds is None else dict(bonds)
        self._time = float(time)

    @property
    def temperatures(self):
        """Temperature of every particle in K."""
        return self._temperatures

    @property
    def bonds(self):
        """Bonded pair (i, j), i < j, to the time the bond formed."""
        return self._bonds

    @property
    def time(self):
        """Current time in s."""
        return self._time

    def bond_table(self):
        """Return bonds as (i, j, t_bonded) rows sorted by pair."""
        return [(i, j, self._bonds[(i, j)]) for i, j in sorted(self._bonds)]


def particle_mass(radius, constants):
    r"""Mass :math:`\frac{4\pi}{3} \rho r^3` of a spherical particle in g."""
    return 4. / 3. * np.pi * constants.density * np.asarray(radius, dtype=float) ** 3


def laser_flux(particle, beam_center, constants, surface=None, depth=None):
    """Return the laser power absorbed by a particle.

    Parameters
    ----------
    particle : Sphere
        The particle.
    beam_center : np.ndarray, shape=(2,) or None
        Beam axis position in the bed plane; None when the laser is off.
    constants : PhysicalConstants
        Model constants.
    surface : float, optional
        Height of the top of the bed; with ``depth`` restricts absorption to particles
        centered at or above ``surface - depth``.
    depth : float, optional
        Absorption depth below the surface.
    """
    return float(_laser_fluxes(particle.center[None], np.array([particle.radius]), beam_center,
                               constants, surface, depth)[0])


def _laser_fluxes(centers, radii, beam_center, constants, surface=None, depth=None):
    if beam_center is None or constants.power == 0.:
        return np.zeros(len(radii))
    horizontal = np.linalg.norm(centers[:, :2] - np.asarray(beam_center, dtype=float), axis=1)
    exposed = horizontal <= constants.laser_radius
    if surface is not None and depth is not None:
        exposed &= centers[:, 2] >= surface - depth
    return np.where(exposed, constants.power * radii ** 3 / constants.laser_radius ** 3, 0.)


def convective_flux(temperature, constants):
    """Heat flow from the air into a particle, ``k_b (T_R - T_i)``."""
    return constants.k_b * (constants.ambient_temperature - temperature)


def conductive_flux(temperature_i, temperature_j, constants):
    """Heat flow from particle j into particle i, ``k_t (T_j - T_i)``."""
    return constants.k_t * (temperature_j - temperature_i)


def _stability_ratios(packing, constants, dt):
    """Return ``(deg_i k_t + k_b) dt / (m_i C_p)`` of every particle."""
    n = packing.nspheres
    degree = np.zeros(n)
    if len(packing.contacts):
        degree = (np.bincount(packing.contacts[:, 0], minlength=n)
                  + np.bincount(packing.contacts[:, 1], minlength=n))
    capacity = particle_mass(packing.radii, constants) * constants.heat_capacity
    return (degree * constants.k_t + constants.k_b) * dt / capacity


def stable_time_step(packing, constants=None, margin=0.5):
    """Largest time step keeping every particle's update ratio below ``margin``.

    Parameters
    ----------
    packing : Packing
        Particles and their contact graph.
    constants : PhysicalConstants, optional
        Model constants, default values when omitted.
    margin : float, optional
        Bound on ``(deg_i k_t + k_b) dt / (m_i C_p)``.

    Returns
    -------
    dt : float
        Time step in s; infinite for an empty packing.
    """
    constants = PhysicalConstants() if constants is None else constants
    if not packing.nspheres:
        return np.inf
    return float(margin / np.max(_stability_ratios(packing, constants, 1.)))


def default_laser_depth(packing):
    """Two mean radii of the radius distribution, or of the realized radii if unrecorded."""
    if not packing.nspheres:
        return 0.
    params = packing.contact_params
    if params is not None:
        return 2. * float(params.mean_radius)
    return 2. * float(np.mean(packing.radii))


class BondingSimulation(object):
    """Explicit, synchronous temperature update over the contact graph of a packing."""

    def __init__(self, packing, constants=None, dt=1e-6, laser_depth=None):
        """Initialize class.

        Parameters
        ----------
        packing : Packing
            Particles and their contact graph.
        constants : PhysicalConstants, optional
            Model constants, default values when omitted.
        dt : float, optional
            Time step in s.
        laser_depth : float, optional
            Absorption depth below the top of the bed; two mean radii of the radius
            distribution by default.

        Raises
        ------
        StabilityError
            If ``(deg_i k_t + k_b) dt / (m_i C_p)`` is not below 0.5 for some particle.
        """
        if not dt > 0.:
            raise ValueError("Argument dt should be positive! Given dt={0}".format(dt))
        self._packing = packing
        self._constants = PhysicalConstants() if constants is None else constants
        self._dt = float(dt)
        self._masses = particle_mass(packing.radii, self._constants)
        self._capacity = self._masses * self._constants.heat_capacity
        contacts = packing.contacts
        self._first = contacts[:, 0] if len(contacts) else np.empty(0, dtype=int)
        self._second = contacts[:, 1] if len(contacts) else np.empty(0, dtype=int)
        self._surface = float(packing.upper[2]) if packing.nspheres else 0.
        if laser_depth is None:
            laser_depth = default_laser_depth(packing)
        self._depth = float(laser_depth)
        if packing.nspheres:
            ratios = _stability_ratios(packing, self._constants, self._dt)
            worst = int(np.argmax(ratios))
            if not ratios[worst] < 0.5:
                raise StabilityError("Time step dt={0} is unstable: (deg k_t + k_b) dt / (m C_p)"
                                     " = {1:.4g} for particle {2}".format(self._dt, ratios[worst],
                                                                          worst), worst)
        self._log_init()

    def _log_init(self):
        """Log an overview of the simulation."""
        logging.basicConfig(level=logging.INFO, format='%(levelname)s: %(message)s')
        logging.info("Initialized bonding simulation: {0} particles, {1} contacts, dt={2}, "
                     "laser depth={3:.4f}".format(self._packing.nspheres, len(self._first),
                                                  self._dt, self._depth))

    @property
    def dt(self):
        """Time step in s."""
        return self._dt

    @property
    def constants(self):
        """Model constants."""
        return self._constants

    @property
    def masses(self):
        """Particle masses in g."""
        return self._masses

    @property
    def laser_depth(self):
        """Absorption depth below the top of the bed."""
        return self._depth

    def initial_state(self):
        """Return the state with every particle at the ambient temperature."""
        return ThermalState(np.full(self._packing.nspheres, self._constants.ambient_temperature))

    def fluxes(self, temperatures, beam_center=None):
        """Net heat flow into every particle for the given temperatures."""
        c = self._constants
        flow = _laser_fluxes(self._packing.centers, self._packing.radii, beam_center, c,
                             self._surface, self._depth)
        flow = flow + convective_flux(temperatures, c)
        if len(self._first):
            exchange = conductive_flux(temperatures[self._first], temperatures[self._second], c)
            n = len(temperatures)
            flow = (flow + np.bincount(self._first, weights=exchange, minlength=n)
                    - np.bincount(self._second, weights=exchange, minlength=n))
        return flow

    def step(self, state, beam_center=None):
        """Advance ``state`` by one time step and return the new state.

        Raises
        ------
        StabilityError
            If a temperature becomes non-finite.
        """
        old = state.temperatures
        new = old + self.fluxes(old, beam_center) * self._dt / self._capacity
        bad = np.where(~np.isfinite(new))[0]
        if len(bad):
            raise StabilityError("Temperature of particle {0} is not finite at t={1}".format(
                int(bad[0]), state.time + self._dt), int(bad[0]))
        time = state.time + self._dt
        bonds = dict(state.bonds)
        if len(self._first):
            hot = new >= self._constants.sintering_temperature
            for k in np.where(hot[self._first] & hot[self._second])[0]:
                pair = (int(self._first[k]), int(self._second[k]))
                if pair not in bonds:
                    bonds[pair] = time
        return ThermalState(new, bonds, time)

    def run(self, path, snapshot_times=()):
        """Step the beam along ``path`` and collect temperature snapshots.

        Parameters
        ----------
        path : LaserPath
            Beam path.
        snapshot_times : sequence of float, optional
            Times at which the temperature field is recorded, each taken at the first
            step reaching it; times past the end of the path are taken at the end.

        Returns
        -------
        state : ThermalState
            Final state with its bonds.
        snapshots : list of (float, np.ndarray)
            Recording time and temperature field of every snapshot.
        """
        pending = sorted(float(t) for t in snapshot_times)
        snapshots = []
        state = self.initial_state()
        while pending and pending[0] <= state.time:
            snapshots.append((state.time, state.temperatures.copy()))
            pending.pop(0)
        for beam_center in path.schedule(self._dt):
            state = self.step(state, beam_center)
            while pending and pending[0] <= state.time + 1e-12 * self._dt:
                snapshots.append((state.time, state.temperatures.copy()))
                pending.pop(0)
        for _ in pending:
            snapshots.append((state.time, state.temperatures.copy()))
        logging.info("Print finished at t={0:.6g} s: {1} bonds, max temperature {2:.2f} K".format(
            state.time, len(state.bonds),
            float(state.temperatures.max()) if len(state.temperatures) else 0.))
        return state, snapshots


def step(state, packing, path_position, dt, constants, laser_depth=None):
    """Advance ``state`` of ``packing`` by one step of ``dt`` with the beam at ``path_position``."""
    return BondingSimulation(packing, constants, dt, laser_depth).step(state, path_position)


def run_print(packing, path, dt, constants, snapshot_times=(), laser_depth=None):
    """Simulate printing ``packing`` along ``path``; return the final state and snapshots."""
    return BondingSimulation(packing, constants, dt, laser_depth).run(path, snapshot_times)

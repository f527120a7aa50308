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
# pragma pylint: disable=too-many-instance-attributes,too-many-locals
"""Run Configuration Module.

A run is described by INI-style text with the sections ``[run]``, ``[distribution]``,
``[packing]`` and ``[simulation]``; list values use JSON array syntax, e.g.::

    [run]
    method = m1
    seed = 7

    [distribution]
    kind = weibull
    scale = 15.7
    shape = 3.55

    [packing]
    brick_side_lengths = [1, 1, 1]
    std_length_mean_radii = 15
    brick_numbers = [2, 2, 1]
"""


import configparser
import json
import re

import numpy as np

from spherepack.distributions.radius import make_distribution
from spherepack.geometry.sphere import ContactParams
from spherepack.packing.base import DomainSpec
from spherepack.packing.hemisphere import HemisphereDomain
from spherepack.bonding.thermal import PhysicalConstants, LaserPath


__all__ = ['ConfigError', 'SimulationConfig', 'RunConfig', 'parse_config', 'load_config']


METHODS = ('m1', 'm2', 'hemisphere')

_CONSTANTS = ('power', 'tau_air', 'tau_steel', 'k_b', 'k_t', 'heat_capacity', 'density',
              'laser_radius', 'ambient_temperature', 'sintering_temperature')

# section -> key -> (kind, default); a default of None means no value
_SCHEMA = {
    'run': {'method': ('text', 'm1'),
            'seed': ('int', 0),
            'output': ('text', 'spherepack-out'),
            'allow_partial': ('bool', False)},
    'distribution': {'kind': ('text', None),
                     'scale': ('float', None),
                     'shape': ('float', None)},
    'packing': {'brick_side_lengths': ('list', [1., 1., 1.]),
                'std_length': ('float', None),
                'std_length_mean_radii': ('float', None),
                'brick_numbers': ('list', [1, 1, 1]),
                'face_goal': ('float', 0.8),
                'body_goal': ('float', 0.55),
                'contact_parameter': ('float', 0.2),
                'parent_parameter': ('float', 0.5),
                'hemisphere_radii': ('list', None),
                'max_failures': ('int', 2000),
                'max_triplets': ('int', 500),
                'prune_after': ('int', 200)},
    'simulation': dict([(name, ('float', None)) for name in _CONSTANTS] +
                       [('formula_constants', ('bool', False)),
                        ('dt', ('float', 1e-6)),
                        ('laser_depth', ('float', None)),
                        ('sweep', ('text', 'step')),
                        ('path', ('list', [])),
                        ('snapshot_times', ('list', []))]),
}


# argument names of the domain classes -> configuration keys
_ALIASES = {'epsilon': 'contact_parameter', 'delta': 'parent_parameter'}


class ConfigError(ValueError):
    """Raised for malformed or inconsistent run configurations."""

    def __init__(self, message, key=None, line=None):
        where = []
        if key is not None:
            where.append("key '{0}'".format(key))
        if line is not None:
            where.append("line {0}".format(line))
        if where:
            message = "{0}: {1}".format(", ".join(where), message)
        super(ConfigError, self).__init__(message)
        self.key = key
        self.line = line


class SimulationConfig(object):
    """Constants, time step, laser path and snapshot times of a bonding simulation."""

    def __init__(self, constants, dt=1e-6, path=None, laser_depth=None, snapshot_times=()):
        if not isinstance(constants, PhysicalConstants):
            raise TypeError("Argument constants should be PhysicalConstants! Given type={0}".format(
                type(constants)))
        self._constants = constants
        self._dt = float(dt)
        self._path = LaserPath([]) if path is None else path
        self._laser_depth = laser_depth
        self._snapshot_times = tuple(float(t) for t in snapshot_times)

    @property
    def constants(self):
        """Physical constants."""
        return self._constants

    @property
    def dt(self):
        """Time step in s."""
        return self._dt

    @property
    def path(self):
        """Laser path."""
        return self._path

    @property
    def laser_depth(self):
        """Absorption depth below the top of the bed, or None for the default."""
        return self._laser_depth

    @property
    def snapshot_times(self):
        """Times of the temperature snapshots in s."""
        return self._snapshot_times


class RunConfig(object):
    """Parsed run configuration."""

    def __init__(self, method, spec, hemisphere=None, simulation=None,
                 output='spherepack-out', allow_partial=False):
        """Initialize class.

        Parameters
        ----------
        method : str
            One of 'm1', 'm2' or 'hemisphere'.
        spec : DomainSpec
            Brick, tiling, goals, tolerances, distribution and seed.
        hemisphere : HemisphereDomain, optional
            Carved brick; required by and only allowed with the hemisphere method.
        simulation : SimulationConfig, optional
            Bonding simulation settings.
        output : str, optional
            Output directory.
        allow_partial : bool, optional
            Whether a packing missing its goals is still written.
        """
        if method not in METHODS:
            raise ValueError("Argument method should be one of {0}! Given method={1}".format(
                METHODS, method))
        if (method == 'hemisphere') != (hemisphere is not None):
            raise ValueError("Argument hemisphere should be given exactly for the hemisphere "
                             "method! Given method={0}".format(method))
        if method == 'hemisphere' and np.any(spec.brick_numbers != 1):
            raise ValueError("The hemisphere method needs brick_numbers [1, 1, 1]! "
                             "Given brick_numbers={0}".format(spec.brick_numbers.tolist()))
        self._method = method
        self._spec = spec
        self._hemisphere = hemisphere
        self._simulation = simulation
        self._output = output
        self._allow_partial = bool(allow_partial)

    @property
    def method(self):
        """Packing method."""
        return self._method

    @property
    def spec(self):
        """Domain specification."""
        return self._spec

    @property
    def seed(self):
        """Seed of the random number generator."""
        return self._spec.seed

    @property
    def distribution(self):
        """Radius distribution."""
        return self._spec.distribution

    @property
    def hemisphere(self):
        """Carved brick of the hemisphere method, or None."""
        return self._hemisphere

    @property
    def simulation(self):
        """Bonding simulation settings, or None."""
        return self._simulation

    @property
    def output(self):
        """Output directory."""
        return self._output

    @property
    def allow_partial(self):
        """Whether a packing missing its goals is still written."""
        return self._allow_partial

    def as_dict(self):
        """Return a JSON-serializable echo of the configuration without the output directory."""
        echo = {'method': self._method, 'allow_partial': self._allow_partial}
        echo.update(self._spec.as_dict())
        if self._hemisphere is not None:
            echo['hemisphere_radii'] = self._hemisphere.hemisphere_radii.tolist()
        return echo


def _line_of(text, section, key):
    """Return the 1-based line of ``key`` in ``section``, or None."""
    current = None
    pattern = re.compile(r'^\s*{0}\s*[=:]'.format(re.escape(key)), re.IGNORECASE)
    for number, line in enumerate(text.splitlines(), 1):
        header = re.match(r'^\s*\[([^\]]+)\]', line)
        if header:
            current = header.group(1).strip()
        elif current == section and pattern.match(line):
            return number
    return None


def _header_line(text, section):
    for number, line in enumerate(text.splitlines(), 1):
        header = re.match(r'^\s*\[([^\]]+)\]', line)
        if header and header.group(1).strip() == section:
            return number
    return None


def _convert(kind, raw):
    if kind == 'text':
        return raw.strip()
    if kind == 'int':
        return int(raw)
    if kind == 'float':
        return float(raw)
    if kind == 'bool':
        lowered = raw.strip().lower()
        if lowered in configparser.ConfigParser.BOOLEAN_STATES:
            return configparser.ConfigParser.BOOLEAN_STATES[lowered]
        raise ValueError("not a boolean: {0!r}".format(raw))
    value = json.loads(raw)
    if not isinstance(value, list):
        raise ValueError("not a list: {0!r}".format(raw))
    return value


def _read(text, overrides):
    """Return {section: {key: value}} with defaults filled in."""
    parser = configparser.ConfigParser(interpolation=None, strict=True,
                                       inline_comment_prefixes=('#', ';'))
    try:
        parser.read_string(text)
    except configparser.Error as error:
        raise ConfigError(str(error).splitlines()[0], line=getattr(error, 'lineno', None))
    if parser.defaults():
        raise ConfigError("keys outside of a section are not allowed", key='DEFAULT')
    values = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError("unknown section", key=section, line=_header_line(text, section))
        for key in parser.options(section):
            if key not in _SCHEMA[section]:
                raise ConfigError("unknown key", key='{0}.{1}'.format(section, key),
                                  line=_line_of(text, section, key))
            kind = _SCHEMA[section][key][0]
            try:
                values[(section, key)] = _convert(kind, parser.get(section, key))
            except ValueError as error:
                raise ConfigError("malformed {0} value ({1})".format(kind, error),
                                  key='{0}.{1}'.format(section, key),
                                  line=_line_of(text, section, key))
    for (section, key), value in (overrides or {}).items():
        if key not in _SCHEMA.get(section, {}):
            raise ConfigError("unknown override", key='{0}.{1}'.format(section, key))
        values[(section, key)] = value
    sections = set(parser.sections()) | set(section for section, _ in (overrides or {}))
    table = {}
    for section, keys in _SCHEMA.items():
        table[section] = dict((key, values.get((section, key), default))
                              for key, (_, default) in keys.items())
    return table, sections


class _Locator(object):
    """Turn ValueError raised while building a section into ConfigError."""

    def __init__(self, text, section):
        self._text = text
        self._section = section

    def __enter__(self):
        return self

    def __exit__(self, kind, error, traceback):
        if kind is not None and issubclass(kind, ValueError) and not isinstance(error, ConfigError):
            key = re.search(r'Argument (\w+)', str(error))
            key = key.group(1) if key else None
            key = _ALIASES.get(key, key)
            line = _line_of(self._text, self._section, key) if key else None
            name = self._section if key is None else '{0}.{1}'.format(self._section, key)
            raise ConfigError(str(error), key=name, line=line)
        return False


def parse_config(text, overrides=None):
    """Parse a run configuration.

    Parameters
    ----------
    text : str
        Configuration text.
    overrides : dict, optional
        Values replacing those of the text, keyed by (section, key), e.g.
        ``{('run', 'seed'): 3}``.

    Returns
    -------
    config : RunConfig
        Parsed configuration.

    Raises
    ------
    ConfigError
        On syntax errors, unknown sections or keys, malformed values and violated
        invariants; carries the offending key and line when known.
    """
    table, sections = _read(text, overrides)
    if 'distribution' not in sections:
        raise ConfigError("section [distribution] is mandatory", key='distribution')

    run = table['run']
    if run['method'] not in METHODS:
        raise ConfigError("method should be one of {0}; got {1!r}".format(METHODS, run['method']),
                          key='run.method', line=_line_of(text, 'run', 'method'))
    if not 0 <= run['seed'] < 2 ** 64:
        raise ConfigError("seed should be an unsigned 64-bit integer; got {0}".format(run['seed']),
                          key='run.seed', line=_line_of(text, 'run', 'seed'))

    dist_table = table['distribution']
    for key in ('kind', 'scale', 'shape'):
        if dist_table[key] is None:
            raise ConfigError("missing value", key='distribution.{0}'.format(key))
    with _Locator(text, 'distribution'):
        dist = make_distribution(dist_table['kind'], dist_table['scale'], dist_table['shape'])

    packing = table['packing']
    if packing['std_length'] is not None and packing['std_length_mean_radii'] is not None:
        raise ConfigError("give std_length or std_length_mean_radii, not both",
                          key='packing.std_length_mean_radii',
                          line=_line_of(text, 'packing', 'std_length_mean_radii'))
    if packing['std_length_mean_radii'] is not None:
        std_length = packing['std_length_mean_radii'] * dist.mean
    elif packing['std_length'] is not None:
        std_length = packing['std_length']
    else:
        std_length = 1.
    sides = std_length * np.asarray(packing['brick_side_lengths'], dtype=float)
    numbers = np.asarray(packing['brick_numbers'])

    hemisphere = None
    if run['method'] == 'hemisphere':
        if np.any(numbers != 1):
            raise ConfigError("the hemisphere method needs brick_numbers [1, 1, 1]",
                              key='packing.brick_numbers',
                              line=_line_of(text, 'packing', 'brick_numbers'))
        if packing['hemisphere_radii'] is None:
            raise ConfigError("the hemisphere method needs hemisphere_radii",
                              key='packing.hemisphere_radii')
        with _Locator(text, 'packing'):
            hemisphere = HemisphereDomain(
                sides, std_length * np.asarray(packing['hemisphere_radii'], dtype=float))
    elif packing['hemisphere_radii'] is not None:
        raise ConfigError("hemisphere_radii is only allowed with the hemisphere method",
                          key='packing.hemisphere_radii',
                          line=_line_of(text, 'packing', 'hemisphere_radii'))

    with _Locator(text, 'packing'):
        contact = ContactParams(packing['contact_parameter'], packing['parent_parameter'],
                                dist.mean)
        spec = DomainSpec(sides, numbers, packing['face_goal'], packing['body_goal'], contact,
                          dist, run['seed'], packing['max_failures'], packing['max_triplets'],
                          packing['prune_after'])

    simulation = None
    if 'simulation' in sections:
        simulation = _simulation(text, table['simulation'], dist.mean)

    return RunConfig(run['method'], spec, hemisphere, simulation, run['output'],
                     run['allow_partial'])


def _simulation(text, table, mean):
    overrides = dict((name, table[name]) for name in _CONSTANTS if table[name] is not None)
    with _Locator(text, 'simulation'):
        if table['formula_constants']:
            if 'k_b' in overrides or 'k_t' in overrides:
                raise ConfigError("k_b and k_t cannot be given with formula_constants",
                                  key='simulation.formula_constants',
                                  line=_line_of(text, 'simulation', 'formula_constants'))
            constants = PhysicalConstants.from_formula(mean, **overrides)
        else:
            constants = PhysicalConstants(**overrides)
        if not table['dt'] > 0.:
            raise ValueError("Argument dt should be positive! Given dt={0}".format(table['dt']))
        try:
            segments = np.asarray(table['path'], dtype=float).reshape(-1, 3)
        except ValueError:
            raise ConfigError("path should be a list of [x, y, dwell] triples",
                              key='simulation.path', line=_line_of(text, 'simulation', 'path'))
        path = LaserPath(segments, table['sweep'])
        return SimulationConfig(constants, table['dt'], path, table['laser_depth'],
                                table['snapshot_times'])


def load_config(filename, overrides=None):
    """Parse the run configuration stored in ``filename``."""
    with open(filename, 'r') as handle:
        return parse_config(handle.read(), overrides)

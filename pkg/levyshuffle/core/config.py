# levyshuffle: configuration loading
#
# Two formats share one section model:
#   JSON  {"schema_version": 1, "max_grade": 6, "defaults": {...},
#          "processes": [{"name": ..., "drift": ..., "jumps": {...}}, ...]}
#   INI   [levyshuffle] options plus one [process NAME] section per process
# Sections hand out typed values through get/getint/getfraction with range
# checks, and every error names the offending field.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import configparser
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from . import teugels
from .alphabet import DEFAULT_MAX_GRADE, NAME_RE, TIME_LABEL
from .errors import (ConfigError, InconsistentSpec, InvalidSpec,
                     NotPositiveSemidefinite)
from .levy import FiniteAtoms, LevySpec, MomentSequence

SCHEMA_VERSION = 1
_SENTINEL = object()


@dataclass(frozen=True)
class Defaults:
    T: Fraction = Fraction(1)
    dt: Optional[Fraction] = None
    paths: int = 100
    seed: int = 0
    workers: int = 1


@dataclass(frozen=True)
class Config:
    processes: Tuple[LevySpec, ...]
    max_grade: int = DEFAULT_MAX_GRADE
    defaults: Defaults = field(default_factory=Defaults)
    source: str = ""

    def get_spec(self, name):
        for spec in self.processes:
            if spec.name == name:
                return spec
        raise ConfigError("no process named '%s' (known: %s)"
                          % (name, ", ".join(s.name for s in self.processes)))


def parse_fraction(value, path=None):
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigError("write rationals as integers or strings such as "
                          "\"1/2\", got %r" % (value,), path)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError("'%s' is not a rational number" % (value,), path)


class ConfigSection:
    """Typed read access to one section, tracking which options were used."""

    error = ConfigError

    def __init__(self, name, options, path_format):
        self._name = name
        self._options = dict(options)
        self._path_format = path_format
        self._accessed = set()

    def get_name(self):
        return self._name

    def path(self, option):
        return self._path_format(option)

    def has(self, option):
        return option in self._options

    def get(self, option, default=_SENTINEL):
        self._accessed.add(option)
        if option in self._options:
            return self._options[option]
        if default is _SENTINEL:
            raise ConfigError("option is required", self.path(option))
        return default

    def _check_range(self, option, value, minval, maxval, above):
        if minval is not None and value < minval:
            raise ConfigError("must have minimum of %s" % (minval,), self.path(option))
        if maxval is not None and value > maxval:
            raise ConfigError("must have maximum of %s" % (maxval,), self.path(option))
        if above is not None and value <= above:
            raise ConfigError("must be above %s" % (above,), self.path(option))
        return value

    def getint(self, option, default=_SENTINEL, minval=None, maxval=None):
        value = self.get(option, default)
        if value is default:
            return value
        if isinstance(value, bool):
            raise ConfigError("expected an integer", self.path(option))
        try:
            value = int(str(value).strip())
        except ValueError:
            raise ConfigError("unable to parse '%s' as an integer" % (value,),
                              self.path(option))
        return self._check_range(option, value, minval, maxval, None)

    def getfraction(self, option, default=_SENTINEL, minval=None, maxval=None,
                    above=None):
        value = self.get(option, default)
        if value is default:
            return value
        value = parse_fraction(value, self.path(option))
        return self._check_range(option, value, minval, maxval, above)

    def getlist(self, option, default=_SENTINEL):
        value = self.get(option, default)
        if value is default or isinstance(value, list):
            return value
        return [part.strip() for part in str(value).split(",") if part.strip()]

    def check_unused(self):
        unused = sorted(set(self._options) - self._accessed)
        if unused:
            raise ConfigError("unknown option", self.path(unused[0]))


def _load_atoms(section, option):
    atoms = []
    for i, item in enumerate(section.getlist(option)):
        path = "%s[%d]" % (section.path(option), i)
        if isinstance(item, dict):
            pair = (item.get("size"), item.get("prob"))
        elif isinstance(item, list) and len(item) == 2:
            pair = tuple(item)
        elif isinstance(item, str) and item.count("@") == 1:
            pair = tuple(item.split("@"))
        else:
            raise ConfigError("an atom is [size, prob], {\"size\", \"prob\"} "
                              "or size@prob", path)
        if None in pair:
            raise ConfigError("an atom needs both size and prob", path)
        atoms.append((parse_fraction(pair[0], path), parse_fraction(pair[1], path)))
    return tuple(atoms)


def _load_process(section, jumps, name):
    if not NAME_RE.match(name) or name == TIME_LABEL:
        raise ConfigError("'%s' is not a valid process name (identifier, not "
                          "'%s')" % (name, TIME_LABEL), section.path("name"))
    sigma = section.getfraction("sigma", Fraction(0), minval=0)
    law = None
    if jumps is not None:
        if jumps.has("moments"):
            moments = jumps.getlist("moments")
            path = jumps.path("moments")
            law = MomentSequence(tuple(parse_fraction(m, "%s[%d]" % (path, i))
                                       for i, m in enumerate(moments)))
        elif jumps.has("rate") or jumps.has("atoms"):
            rate = jumps.getfraction("rate", above=0)
            law = FiniteAtoms(rate, _load_atoms(jumps, "atoms"))
    if section.has("raw_drift"):
        if section.has("drift"):
            raise ConfigError("give either drift or raw_drift, not both",
                              section.path("raw_drift"))
        return LevySpec.from_raw_drift(name, section.getfraction("raw_drift"),
                                       sigma, law)
    return LevySpec(name, section.getfraction("drift", Fraction(0)), sigma, law)


def _build_process(section, jumps, name):
    try:
        spec = _load_process(section, jumps, name)
    except (InvalidSpec, TypeError) as e:
        raise ConfigError(str(e), section.get_name())
    section.check_unused()
    if jumps is not None and jumps is not section:
        jumps.check_unused()
    try:
        teugels.validate_moments(spec)
    except (NotPositiveSemidefinite, InconsistentSpec) as e:
        raise ConfigError("moment data rejected: %s" % (e,),
                          (jumps or section).path("moments"))
    return spec


def _load_defaults(section):
    dt = section.getfraction("dt", None, above=0)
    return Defaults(T=section.getfraction("T", Fraction(1), above=0),
                    dt=dt,
                    paths=section.getint("paths", 100, minval=1),
                    seed=section.getint("seed", 0, minval=0),
                    workers=section.getint("workers", 1, minval=1))


def _finish(processes, max_grade, defaults, source):
    if not processes:
        raise ConfigError("at least one process is required", "processes")
    names = [spec.name for spec in processes]
    for name in names:
        if names.count(name) > 1:
            raise ConfigError("duplicate process name '%s'" % (name,), "processes")
    config = Config(tuple(processes), max_grade, defaults, source)
    logging.info("levyshuffle: loaded %d processes from %s", len(processes), source)
    return config


def _json_section(name, data, prefix):
    if not isinstance(data, dict):
        raise ConfigError("expected an object", prefix or "(top level)")
    return ConfigSection(name, data, lambda opt: "%s.%s" % (prefix, opt)
                         if prefix else opt)


def load_json(text, source="<json>"):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("invalid JSON at line %d column %d: %s"
                          % (e.lineno, e.colno, e.msg), source)
    top = _json_section("levyshuffle", data, "")
    version = top.getint("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError("unsupported schema version %d (expected %d)"
                          % (version, SCHEMA_VERSION), "schema_version")
    max_grade = top.getint("max_grade", DEFAULT_MAX_GRADE, minval=2)
    section = _json_section("defaults", top.get("defaults", {}), "defaults")
    defaults = _load_defaults(section)
    section.check_unused()
    entries = top.get("processes")
    if not isinstance(entries, list):
        raise ConfigError("expected a list of processes", "processes")
    top.check_unused()
    processes = []
    for i, entry in enumerate(entries):
        prefix = "processes[%d]" % (i,)
        section = _json_section(prefix, entry, prefix)
        name = section.get("name")
        if not isinstance(name, str):
            raise ConfigError("expected a string", section.path("name"))
        jumps = None
        if section.has("jumps"):
            jumps = _json_section(prefix, section.get("jumps"), prefix + ".jumps")
        processes.append(_build_process(section, jumps, name))
    return _finish(processes, max_grade, defaults, source)


def load_cfg(text, source="<cfg>"):
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source)
    except configparser.Error as e:
        raise ConfigError(str(e).splitlines()[0], source)
    if not parser.has_section("levyshuffle"):
        raise ConfigError("missing [levyshuffle] section", source)
    top = ConfigSection("levyshuffle", parser.items("levyshuffle"),
                        lambda opt: "[levyshuffle] %s" % (opt,))
    max_grade = top.getint("max_grade", DEFAULT_MAX_GRADE, minval=2)
    defaults = _load_defaults(top)
    top.check_unused()
    processes = []
    for name in parser.sections():
        if name == "levyshuffle":
            continue
        parts = name.split()
        if len(parts) != 2 or parts[0] != "process":
            raise ConfigError("unknown section [%s]" % (name,), source)
        section = ConfigSection(name, parser.items(name),
                                lambda opt, name=name: "[%s] %s" % (name, opt))
        processes.append(_build_process(section, section, parts[1]))
    return _finish(processes, max_grade, defaults, source)


def load_config(filename):
    try:
        with open(filename) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError("unable to read config file: %s" % (e.strerror,), filename)
    if os.path.splitext(filename)[1].lower() == ".json":
        return load_json(text, filename)
    return load_cfg(text, filename)

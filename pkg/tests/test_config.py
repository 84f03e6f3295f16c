import json
import os
import unittest
from fractions import Fraction

from levyshuffle.core.config import (Defaults, load_cfg, load_config,
                                     load_json, parse_fraction)
from levyshuffle.core.errors import ConfigError
from levyshuffle.core.levy import FiniteAtoms, MomentSequence

CONFIG_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "config")


def config_path(name):
    return os.path.join(CONFIG_DIR, name)


def make_json(processes, **top):
    data = {"schema_version": 1, "processes": processes}
    data.update(top)
    return json.dumps(data)


class ExampleConfigTest(unittest.TestCase):
    def test_cpm1(self):
        config = load_config(config_path("cpm1.json"))
        spec = config.get_spec("x1")
        self.assertEqual(spec.jumps, FiniteAtoms(2, ((1, Fraction(1, 2)),
                                                     (-1, Fraction(1, 2)))))
        self.assertEqual(config.defaults.seed, 42)
        self.assertEqual(config.defaults.T, 1)
        self.assertIsNone(config.defaults.dt)

    def test_raw_drift(self):
        spec = load_config(config_path("atoms12.json")).get_spec("x1")
        self.assertEqual(spec.drift, Fraction(3, 2))

    def test_moments(self):
        config = load_config(config_path("factorial.json"))
        self.assertEqual(config.max_grade, 4)
        spec = config.get_spec("y")
        self.assertIsInstance(spec.jumps, MomentSequence)
        self.assertEqual(spec.jumps.max_order, 8)
        self.assertEqual(config.defaults, Defaults())

    def test_wiener(self):
        config = load_config(config_path("wiener.json"))
        self.assertEqual(config.defaults.dt, Fraction(1, 10000))
        self.assertEqual(config.get_spec("x1").sigma, 1)

    def test_ini(self):
        config = load_config(config_path("jump_diffusion.cfg"))
        self.assertEqual([spec.name for spec in config.processes], ["w", "z"])
        z = config.get_spec("z")
        self.assertEqual(z.drift, Fraction(1, 2))
        self.assertEqual(z.jumps.atoms, ((1, Fraction(1, 3)), (-2, Fraction(2, 3))))
        self.assertEqual(config.defaults.dt, Fraction(1, 1000))
        self.assertEqual(config.defaults.paths, 200)

    def test_unknown_process(self):
        config = load_config(config_path("cpm1.json"))
        with self.assertRaises(ConfigError):
            config.get_spec("x2")

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config(config_path("no-such-file.json"))


class JsonErrorsTest(unittest.TestCase):
    def assertConfigError(self, text, path):
        with self.assertRaises(ConfigError) as ctx:
            load_json(text)
        self.assertEqual(ctx.exception.path, path)

    def test_schema_version(self):
        self.assertConfigError(json.dumps({"processes": []}), "schema_version")
        self.assertConfigError(make_json([], schema_version=2), "schema_version")

    def test_float_rejected(self):
        self.assertConfigError(make_json([{"name": "x1", "sigma": 0.5}]),
                               "processes[0].sigma")

    def test_unknown_option(self):
        self.assertConfigError(make_json([{"name": "x1", "sigma": "1", "sigm": "2"}]),
                               "processes[0].sigm")
        self.assertConfigError(make_json([{"name": "x1", "sigma": "1"}], extra=1),
                               "extra")

    def test_negative_sigma(self):
        self.assertConfigError(make_json([{"name": "x1", "sigma": "-1"}]),
                               "processes[0].sigma")

    def test_bad_name(self):
        self.assertConfigError(make_json([{"name": "t", "sigma": "1"}]),
                               "processes[0].name")

    def test_duplicate_names(self):
        process = {"name": "x1", "sigma": "1"}
        self.assertConfigError(make_json([process, process]), "processes")

    def test_bad_atom(self):
        process = {"name": "x1", "jumps": {"rate": "1", "atoms": [["1"]]}}
        self.assertConfigError(make_json([process]), "processes[0].jumps.atoms[0]")

    def test_rate_positive(self):
        process = {"name": "x1", "jumps": {"rate": "0", "atoms": [["1", "1"]]}}
        self.assertConfigError(make_json([process]), "processes[0].jumps.rate")

    def test_drift_and_raw_drift(self):
        process = {"name": "x1", "drift": "0", "raw_drift": "0", "sigma": "1"}
        self.assertConfigError(make_json([process]), "processes[0].raw_drift")

    def test_impossible_moments(self):
        process = {"name": "y", "jumps": {"moments": ["1", "2", "1"]}}
        self.assertConfigError(make_json([process]), "processes[0].jumps.moments")

    def test_invalid_spec(self):
        self.assertConfigError(make_json([{"name": "x1", "drift": "1"}]), "processes[0]")

    def test_invalid_json(self):
        with self.assertRaises(ConfigError):
            load_json("{", "broken.json")

    def test_no_processes(self):
        self.assertConfigError(make_json([]), "processes")

    def test_dt_positive(self):
        self.assertConfigError(make_json([{"name": "x1", "sigma": "1"}],
                                         defaults={"dt": "0"}), "defaults.dt")


class IniErrorsTest(unittest.TestCase):
    def test_missing_main_section(self):
        with self.assertRaises(ConfigError):
            load_cfg("[process x1]\nsigma: 1\n")

    def test_unknown_section(self):
        with self.assertRaises(ConfigError):
            load_cfg("[levyshuffle]\n[stepper x]\n")

    def test_unknown_option(self):
        with self.assertRaises(ConfigError) as ctx:
            load_cfg("[levyshuffle]\n[process x1]\nsigma: 1\nsigam: 2\n")
        self.assertEqual(ctx.exception.path, "[process x1] sigam")

    def test_moments_list(self):
        config = load_cfg("[levyshuffle]\nmax_grade: 3\n"
                          "[process y]\nmoments: 1, 1, 1\n")
        self.assertEqual(config.max_grade, 3)
        self.assertEqual(config.get_spec("y").jumps.alpha, (1, 1, 1))


class ParseFractionTest(unittest.TestCase):
    def test_values(self):
        self.assertEqual(parse_fraction("1/3"), Fraction(1, 3))
        self.assertEqual(parse_fraction(" -2 "), -2)
        self.assertEqual(parse_fraction(5), 5)
        for bad in (0.5, True, "x", "1/0"):
            with self.assertRaises(ConfigError):
                parse_fraction(bad)


if __name__ == "__main__":
    unittest.main()

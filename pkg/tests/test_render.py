import json
import unittest
from fractions import Fraction

from levyshuffle.core import render
from levyshuffle.core.alphabet import build_alphabet
from levyshuffle.core.errors import ConfigError
from levyshuffle.core.levy import FiniteAtoms, LevySpec, MomentSequence
from levyshuffle.core.pathsim import ErrorReport
from levyshuffle.core.teugels import gram_matrix, strong_orthogonalize
from levyshuffle.core.words import Poly, quasi_shuffle

F = Fraction
PM1 = LevySpec("x1", 0, 0, FiniteAtoms(2, ((1, F(1, 2)), (-1, F(1, 2)))))
WIENER = LevySpec("x1", sigma=1)
FACTORIAL = LevySpec("y", 1, 0, MomentSequence((2, 6, 24, 120, 720, 5040, 40320)))


def through_json(data):
    return json.loads(json.dumps(data))


class TextTest(unittest.TestCase):
    def test_fraction(self):
        self.assertEqual(render.format_fraction(F(-3, 4)), "-3/4")
        self.assertEqual(render.format_fraction(5), "5")

    def test_poly(self):
        alpha = build_alphabet([WIENER])
        x, t = alpha.lookup("x1"), alpha.lookup("t")
        product = quasi_shuffle(Poly.word((x,)), Poly.word((x,)), alpha.table)
        self.assertEqual(render.format_poly(product, alpha), "2 (x1.x1) + 1 (t)")
        self.assertEqual(render.format_poly(Poly.word((t,), 2) - Poly.word((x,)), alpha),
                         "2 (t) - 1 (x1)")
        self.assertEqual(render.format_poly(-Poly.word((t,)), alpha), "-1 (t)")
        self.assertEqual(render.format_poly(Poly(), alpha), "0")
        self.assertEqual(render.format_poly(Poly.one() * F(1, 2), alpha), "1/2 (())")

    def test_vector(self):
        alpha = build_alphabet([WIENER])
        self.assertEqual(render.format_vector(alpha.vector(0)), "1 W1")
        self.assertEqual(render.format_vector(None), "-")

    def test_alphabet(self):
        text = render.format_alphabet(build_alphabet([WIENER]))
        self.assertIn("[x1, x1] = 1 (t)", text)
        self.assertIn("graded: true", text)
        text = render.format_alphabet(build_alphabet([PM1]))
        self.assertIn("time (adjoined)", text)
        self.assertIn("graded: false (filtered; witness [", text)

    def test_truncation_notice(self):
        with self.assertLogs(level="WARNING"):
            alpha = build_alphabet([FACTORIAL], max_grade=4)
        self.assertIn("notice: 'y' truncated at grade 4", render.format_alphabet(alpha))

    def test_matrix(self):
        self.assertEqual(render.format_matrix(((1, 0), (0, F(1, 2)))),
                         "  [  1   0]\n  [  0 1/2]")

    def test_report(self):
        text = render.format_report(ErrorReport(3, 0.0, 0.0, True))
        self.assertEqual(text.splitlines(), ["paths: 3", "max_abs_error: 0",
                                             "rms_error: 0", "exact: true"])


class JsonTest(unittest.TestCase):
    def test_alphabet(self):
        for family, max_grade in (([PM1], 6), ([WIENER, LevySpec("z", 0, 0, PM1.jumps)], 6)):
            alpha = build_alphabet(family, max_grade)
            data = through_json(render.alphabet_to_json(alpha))
            self.assertEqual(render.alphabet_from_json(data), alpha)

    def test_truncated_alphabet(self):
        with self.assertLogs(level="WARNING"):
            alpha = build_alphabet([FACTORIAL], max_grade=4)
        data = through_json(render.alphabet_to_json(alpha))
        self.assertEqual(data["truncated"], ["y"])
        self.assertIn(["y^2", "y^3"], data["truncated_pairs"])
        self.assertIsNone(data["letters"][0]["coordinates"])
        self.assertEqual(render.alphabet_from_json(data), alpha)

    def test_alphabet_fields(self):
        data = render.alphabet_to_json(build_alphabet([PM1]))
        self.assertFalse(data["graded"])
        self.assertEqual([item["label"] for item in data["letters"]], ["x1", "t", "x1^2"])
        self.assertEqual(data["letters"][0]["coordinates"], {"C1.1": "1", "C1.2": "-1"})

    def test_poly(self):
        alpha = build_alphabet([PM1])
        p = Poly([((0, 2), F(-2, 3)), ((1,), 4)])
        data = through_json(render.poly_to_json(p, alpha))
        self.assertEqual(data["terms"][0], {"word": ["x1", "x1^2"], "coeff": "-2/3"})
        self.assertEqual(render.poly_from_json(data, alpha), p)
        with self.assertRaises(ConfigError):
            render.poly_from_json({"terms": [{"word": ["x1"]}]}, alpha)

    def test_gram(self):
        gd = strong_orthogonalize(gram_matrix(PM1, 3))
        data = render.gram_to_json(gd)
        self.assertEqual(data["h"], ["2", "2", "0"])
        self.assertEqual(data["first_zero_index"], 3)

    def test_spec(self):
        for spec in (PM1, WIENER, FACTORIAL):
            self.assertEqual(render.spec_from_json(through_json(render.spec_to_json(spec))),
                             spec)


if __name__ == "__main__":
    unittest.main()

import random
import unittest
from fractions import Fraction

from levyshuffle.core.errors import (InconsistentSpec, NotInSpan,
                                     NotPositiveSemidefinite)
from levyshuffle.core.levy import (TIME, Coefficients, FiniteAtoms, LevySpec,
                                   MomentSequence, ProcessVector,
                                   power_bracket_vector, reduce_against)
from levyshuffle.core.teugels import (first_zero_index, gram_matrix,
                                      sharp_bracket, span_expansion,
                                      strong_orthogonalize, validate_moments)

F = Fraction
PM1 = LevySpec("x1", 0, 0, FiniteAtoms(2, ((1, F(1, 2)), (-1, F(1, 2)))))
ATOMS12 = LevySpec("x1", 0, 0, FiniteAtoms(1, ((1, F(1, 2)), (2, F(1, 2)))))
WIENER = LevySpec("x1", sigma=1)


def random_spec(rng):
    k = rng.randint(1, 3)
    sizes = rng.sample([-3, -2, -1, 1, 2, 3], k)
    weights = [rng.randint(1, 4) for _ in range(k)]
    probs = [F(x, sum(weights)) for x in weights]
    jumps = FiniteAtoms(rng.randint(1, 3), tuple(zip(sizes, probs)))
    return LevySpec("x1", F(rng.randint(-2, 2), 2), rng.choice((0, 0, 1)), jumps)


def orthogonalize(spec, N):
    return strong_orthogonalize(gram_matrix(spec, N))


class GramTest(unittest.TestCase):
    def test_pm1(self):
        gd = orthogonalize(PM1, 3)
        self.assertEqual(gd.G, ((2, 0, 2), (0, 2, 0), (2, 0, 2)))
        self.assertEqual(gd.h, (2, 2, 0))
        self.assertEqual(gd.C[2], (1, 0, 1))
        self.assertEqual(gd.norm(3), 0)
        self.assertEqual(first_zero_index(gd), 3)

    def test_wiener(self):
        gd = orthogonalize(WIENER, 3)
        self.assertEqual(gd.h, (1, 0, 0))
        self.assertEqual(first_zero_index(gd), 2)

    def test_sharp_bracket_adds_sigma(self):
        spec = LevySpec("x1", 0, 2, FiniteAtoms(1, ((1, 1),)))
        self.assertEqual(sharp_bracket(spec, 1, 1), 5)
        self.assertEqual(sharp_bracket(spec, 1, 2), 1)

    def test_order_checked(self):
        with self.assertRaises(ValueError):
            gram_matrix(PM1, 0)

    def test_factorization_reproduces_gram(self):
        rng = random.Random(21)
        for _ in range(30):
            spec = random_spec(rng)
            gd = orthogonalize(spec, 5)
            for i in range(5):
                self.assertEqual(gd.C[i][i], 1)
                for j in range(5):
                    if j > i:
                        self.assertEqual(gd.C[i][j], 0)
                    value = sum(gd.C[i][k] * gd.h[k] * gd.C[j][k] for k in range(5))
                    self.assertEqual(value, gd.G[i][j])
            self.assertTrue(all(x >= 0 for x in gd.h))


class StrongOrthogonalizeTest(unittest.TestCase):
    def test_negative_norm(self):
        with self.assertRaises(NotPositiveSemidefinite):
            strong_orthogonalize(((1, 2), (2, 1)))

    def test_degenerate_pivot_with_projection(self):
        with self.assertRaises(NotPositiveSemidefinite):
            strong_orthogonalize(((0, 1), (1, 1)))

    def test_not_symmetric(self):
        with self.assertRaises(NotPositiveSemidefinite):
            strong_orthogonalize(((1, 0), (1, 1)))

    def test_revived_norm(self):
        with self.assertRaises(InconsistentSpec):
            strong_orthogonalize(((1, 0, 0), (0, 0, 0), (0, 0, 1)))


class ValidateMomentsTest(unittest.TestCase):
    def test_factorial_moments(self):
        spec = LevySpec("y", 1, 0, MomentSequence((2, 6, 24, 120, 720, 5040, 40320)))
        gd = validate_moments(spec)
        self.assertEqual(gd.N, 4)
        self.assertTrue(all(x > 0 for x in gd.h))

    def test_impossible_moments(self):
        spec = LevySpec("y", 0, 0, MomentSequence((1, 2, 1)))
        with self.assertRaises(NotPositiveSemidefinite):
            validate_moments(spec)

    def test_atoms_skipped(self):
        self.assertIsNone(validate_moments(PM1))


class SpanExpansionTest(unittest.TestCase):
    def test_pm1_third_bracket(self):
        gd = orthogonalize(PM1, 3)
        self.assertEqual(span_expansion(PM1, 3, gd), Coefficients((0, 1, 0)))

    def test_wiener(self):
        gd = orthogonalize(WIENER, 3)
        self.assertEqual(span_expansion(WIENER, 2, gd), Coefficients((1, 0)))
        self.assertEqual(span_expansion(WIENER, 3, gd), Coefficients((0, 0)))

    def test_two_atoms_default_basis(self):
        gd = orthogonalize(ATOMS12, 4)
        self.assertEqual(first_zero_index(gd), 3)
        self.assertEqual(span_expansion(ATOMS12, 4, gd), Coefficients((-9, -6, 7)))

    def test_two_atoms_explicit_orders(self):
        gd = orthogonalize(ATOMS12, 4)
        self.assertEqual(span_expansion(ATOMS12, 4, gd, orders=(2, 3)),
                         Coefficients((0, -2, 3)))

    def test_dependent_orders(self):
        gd = orthogonalize(ATOMS12, 4)
        with self.assertRaises(NotInSpan):
            span_expansion(ATOMS12, 5, gd, orders=(2, 3, 4))
        with self.assertRaises(ValueError):
            span_expansion(ATOMS12, 3, gd, orders=(2, 3))

    def test_no_degeneracy(self):
        gd = orthogonalize(ATOMS12, 2)
        with self.assertRaises(NotInSpan):
            span_expansion(ATOMS12, 3, gd)

    def test_below_first_zero(self):
        gd = orthogonalize(ATOMS12, 4)
        with self.assertRaises(NotInSpan):
            span_expansion(ATOMS12, 2, gd)

    def test_missing_residual_moment_logged(self):
        # compensated Poisson known only through alpha_2..alpha_4
        spec = LevySpec("y", 0, 0, MomentSequence((1, 1, 1)))
        gd = validate_moments(spec)
        self.assertEqual(first_zero_index(gd), 2)
        with self.assertLogs(level="WARNING"):
            result = span_expansion(spec, 3, gd)
        self.assertEqual(result, Coefficients((1, 1)))

    def test_agrees_with_coordinates(self):
        rng = random.Random(22)
        for _ in range(50):
            spec = random_spec(rng)
            N = 8
            gd = orthogonalize(spec, N)
            k0 = first_zero_index(gd)
            self.assertIsNotNone(k0)
            for n in range(1, N + 1):
                basis = [ProcessVector({TIME: 1})]
                basis.extend(power_bracket_vector(spec, l) for l in range(1, n))
                reduced = reduce_against(power_bracket_vector(spec, n), basis)
                self.assertEqual(gd.h[n - 1] == 0, isinstance(reduced, Coefficients))
            for n in range(k0, N + 1):
                basis = [ProcessVector({TIME: 1})]
                basis.extend(power_bracket_vector(spec, l) for l in range(1, k0))
                self.assertEqual(span_expansion(spec, n, gd),
                                 reduce_against(power_bracket_vector(spec, n), basis))

    def test_atoms_bound_lower_brackets(self):
        rng = random.Random(23)
        for _ in range(20):
            spec = random_spec(rng)
            spec = LevySpec("x1", spec.drift, 0, spec.jumps)
            k = len(spec.jumps.atoms)
            orders = tuple(range(2, k + 2))
            basis = [ProcessVector({TIME: 1})]
            basis.extend(power_bracket_vector(spec, l) for l in orders)
            gd = orthogonalize(spec, 1)
            for n in range(k + 2, k + 9):
                reduced = reduce_against(power_bracket_vector(spec, n), basis)
                self.assertIsInstance(reduced, Coefficients)
                self.assertEqual(span_expansion(spec, n, gd, orders=orders), reduced)


if __name__ == "__main__":
    unittest.main()

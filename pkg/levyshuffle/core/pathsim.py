# levyshuffle: path sampling and pathwise verification
#
# Paths of FiniteAtoms / continuous families are sampled from numpy
# generators seeded per process with SeedSequence(seed, spawn_key=(i,)).
# Iterated Ito integrals I_w(T) are evaluated for a whole set of words in
# one pass over their prefix trie:
#   - without Brownian parts, event by event: between jumps every I_u is a
#     polynomial in local time, at a jump I_{ua} += I_u(s-) * dI_a;
#     exact mode keeps jump times and arithmetic rational
#   - with Brownian parts, on the sampling grid with the jumps of each step
#     inserted after its continuous increment (left-point sums via cumsum)
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import functools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Tuple

import numpy as np

from .errors import MissingGrid, NoCoordinateForm, UnsupportedSpec
from .levy import (BROWNIAN_KIND, COUNTER_KIND, TIME, FiniteAtoms,
                   MomentSequence, moment)
from .teugels import gram_matrix
from .words import EMPTY_WORD, Poly, quasi_shuffle

# Exact jump times are k / TIME_DENOMINATOR * T for integer k in [1, D]
TIME_DENOMINATOR = 2 ** 62


@dataclass(frozen=True)
class BrownianGrid:
    step: float
    increments: Mapping[int, np.ndarray]

    @property
    def steps(self):
        return len(next(iter(self.increments.values())))


@dataclass(frozen=True)
class PathRecord:
    horizon: object
    jump_events: Tuple[Tuple[object, int, int], ...]
    brownian_grid: Optional[BrownianGrid]
    seed: int
    exact: bool = False


@dataclass(frozen=True)
class ErrorReport:
    n_paths: int
    max_abs_error: float
    rms_error: float
    exact: bool

    @property
    def identity_broken(self):
        """Exact mode promises a zero error on every path."""
        return self.exact and self.max_abs_error != 0

    def as_dict(self):
        return {"n_paths": self.n_paths, "max_abs_error": self.max_abs_error,
                "rms_error": self.rms_error, "exact": self.exact}


def process_rng(seed, index):
    """Generator for process `index` (1-based) of a path seeded with `seed`."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def path_seed(master, k):
    """Seed of path k under master seed `master`."""
    sequence = np.random.SeedSequence(master, spawn_key=(0, k))
    return int(sequence.generate_state(1, np.uint64)[0])


def _check_samplable(family):
    for spec in family:
        if isinstance(spec.jumps, MomentSequence):
            raise UnsupportedSpec("process '%s' is given by moments only and "
                                  "cannot be simulated" % (spec.name,))


def sample_path(family, T, seed, dt=None, exact=False):
    T = Fraction(T)
    if T <= 0:
        raise ValueError("horizon must be positive, got %s" % (T,))
    if seed < 0:
        raise ValueError("seed must be nonnegative, got %d" % (seed,))
    _check_samplable(family)
    diffusive = [i for i, spec in enumerate(family, 1) if spec.sigma > 0]
    if diffusive and dt is None:
        raise MissingGrid("a time step dt is required when some sigma > 0")
    if diffusive and exact:
        raise UnsupportedSpec("exact evaluation needs a family without "
                              "Brownian parts")
    events, used = [], set()
    increments = {}
    step = steps = None
    if diffusive:
        steps = max(1, math.ceil(T / Fraction(dt)))
        step = float(T) / steps
    for index, spec in enumerate(family, 1):
        rng = process_rng(seed, index)
        if isinstance(spec.jumps, FiniteAtoms):
            count = int(rng.poisson(float(spec.jumps.rate * T)))
            numerators = []
            for k in rng.integers(1, TIME_DENOMINATOR, size=count, endpoint=True):
                k = int(k)
                while k in used:
                    k = int(rng.integers(1, TIME_DENOMINATOR, endpoint=True))
                used.add(k)
                numerators.append(k)
            probs = np.array([float(p) for p in spec.jumps.probs])
            atoms = rng.choice(len(probs), size=count, p=probs / probs.sum())
            for k, j in zip(numerators, atoms):
                if exact:
                    time = Fraction(k, TIME_DENOMINATOR) * T
                else:
                    time = float(T) * (k / TIME_DENOMINATOR)
                events.append((time, index, int(j) + 1))
        if spec.sigma > 0:
            increments[index] = rng.standard_normal(steps) * math.sqrt(step)
    events.sort()
    grid = BrownianGrid(step, increments) if diffusive else None
    return PathRecord(T if exact else float(T), tuple(events), grid, seed, exact)


class _LetterRates:
    """dI_a split by coordinate: dt rate, Brownian loadings, jump sizes."""

    def __init__(self, vector, exact):
        cast = Fraction if exact else float
        self.drift = cast(vector.coordinate(TIME))
        self.brownian = {}
        self.jumps = {}
        for symbol, value in vector.items():
            if symbol.kind == BROWNIAN_KIND:
                self.brownian[symbol.process] = cast(value)
            elif symbol.kind == COUNTER_KIND:
                self.jumps[symbol.process, symbol.atom] = cast(value)


def _build_trie(words):
    # nodes[k] = (parent, letter); node 0 is the empty word
    nodes = [(None, None)]
    index = {EMPTY_WORD: 0}
    for word in sorted(set(words), key=len):
        for n in range(1, len(word) + 1):
            prefix = word[:n]
            if prefix not in index:
                index[prefix] = len(nodes)
                nodes.append((index[prefix[:-1]], prefix[-1]))
    return nodes, index


def _horner(coeffs, x):
    value = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        value = value * x + c
    return value


def _event_driven(path, nodes, rates):
    exact = path.exact
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    values = [one] + [zero] * (len(nodes) - 1)
    start = zero
    for time, process, atom in path.jump_events + ((path.horizon, None, None),):
        span = time - start
        if span:
            polys = [[one]]
            for k in range(1, len(nodes)):
                parent, a = nodes[k]
                c = rates[a].drift
                if c:
                    base = polys[parent]
                    poly = [values[k]] + [c * b / (d + 1) for d, b in enumerate(base)]
                else:
                    poly = [values[k]]
                polys.append(poly)
            values = [_horner(p, span) for p in polys]
        if process is None:
            break
        left = values
        values = list(left)
        for k in range(1, len(nodes)):
            parent, a = nodes[k]
            jump = rates[a].jumps.get((process, atom))
            if jump:
                values[k] = left[k] + left[parent] * jump
        start = time
    return values


def _grid(path, nodes, rates):
    grid = path.brownian_grid
    steps, step = grid.steps, grid.step
    positions, sources = [], []
    for time, process, atom in path.jump_events:
        k = min(max(math.ceil(time / step) - 1, 0), steps - 1)
        positions.append(k + 1)
        sources.append((process, atom))
    deltas = {}
    for a, rate in rates.items():
        delta = np.full(steps, rate.drift * step)
        for process, loading in rate.brownian.items():
            delta = delta + loading * grid.increments[process]
        jumps = [rate.jumps.get(source, 0.0) for source in sources]
        deltas[a] = np.insert(delta, positions, jumps) if positions else delta
    total = steps + len(positions)
    series = [np.ones(total + 1)]
    for k in range(1, len(nodes)):
        parent, a = nodes[k]
        increments = series[parent][:-1] * deltas[a]
        series.append(np.concatenate(([0.0], np.cumsum(increments))))
    return [float(s[-1]) for s in series]


def evaluate_words(path, words, alpha):
    """I_w(T) for every word in `words`, as a dict word -> value."""
    words = [tuple(w) for w in words]
    rates = {}
    for word in words:
        for a in word:
            if a not in rates:
                vector = alpha.vector(a)
                if vector is None:
                    raise NoCoordinateForm("letter '%s' has no coordinate form"
                                           % (alpha.label(a),))
                rates[a] = _LetterRates(vector, path.exact)
    nodes, index = _build_trie(words)
    if path.brownian_grid is None:
        values = _event_driven(path, nodes, rates)
    else:
        values = _grid(path, nodes, rates)
    return {word: values[index[word]] for word in words}


def eval_iterated(path, w, alpha):
    w = tuple(w)
    return evaluate_words(path, [w], alpha)[w]


def _path_errors(alpha, pairs, products, T, dt, exact, seed, k):
    path = sample_path(alpha.family, T, path_seed(seed, k), dt, exact)
    words = set()
    for (v, w), product in zip(pairs, products):
        words.update((v, w))
        words.update(product.words())
    values = evaluate_words(path, words, alpha)
    errors = []
    for (v, w), product in zip(pairs, products):
        if exact:
            right = sum((c * values[u] for u, c in product.items()), Fraction(0))
        else:
            right = math.fsum(float(c) * values[u] for u, c in product.items())
        errors.append(abs(values[v] * values[w] - right))
    return errors


def verify_products(pairs, alpha, n_paths, T, seed, dt=None, exact=False, workers=1):
    """ErrorReport per word pair, all pairs sharing the same sampled paths."""
    if n_paths < 1:
        raise ValueError("n_paths must be positive, got %d" % (n_paths,))
    _check_samplable(alpha.family)
    pairs = [(tuple(v), tuple(w)) for v, w in pairs]
    products = [quasi_shuffle(Poly.word(v), Poly.word(w), alpha.table)
                for v, w in pairs]
    task = functools.partial(_path_errors, alpha, pairs, products, T, dt, exact, seed)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_path = list(pool.map(task, range(n_paths),
                                     chunksize=max(1, n_paths // (4 * workers))))
    else:
        per_path = [task(k) for k in range(n_paths)]
    reports = []
    for i, (v, w) in enumerate(pairs):
        errors = [row[i] for row in per_path]
        worst = max(errors)
        if exact and worst != 0:
            logging.error("levyshuffle: exact pathwise product of %r and %r is off by %s",
                          v, w, worst)
        rms = math.sqrt(math.fsum(float(e) ** 2 for e in errors) / n_paths)
        reports.append(ErrorReport(n_paths, float(worst), rms, exact))
        logging.debug("levyshuffle: verified %r * %r: max %g rms %g",
                      v, w, float(worst), rms)
    return reports


def verify_product(v, w, alpha, n_paths, T, seed, dt=None, exact=False, workers=1):
    return verify_products([(v, w)], alpha, n_paths, T, seed, dt, exact, workers)[0]


def sample_teugels(spec, N, n_paths, T, seed, index=1):
    """Samples of (Y^(1)_T, ..., Y^(N)_T), shape (n_paths, N)."""
    _check_samplable([spec])
    T = float(T)
    rng = process_rng(seed, index)
    totals = np.zeros((n_paths, N))
    if isinstance(spec.jumps, FiniteAtoms):
        sizes = np.array([float(a) for a in spec.jumps.sizes])
        means = np.array([float(spec.jumps.rate * p) * T for p in spec.jumps.probs])
        counts = rng.poisson(means, size=(n_paths, len(sizes)))
        for n in range(1, N + 1):
            totals[:, n - 1] = counts @ sizes ** n
    if spec.sigma > 0:
        totals[:, 0] += float(spec.sigma) * rng.standard_normal(n_paths) * math.sqrt(T)
    # the sigma^2 t part of [X]^(2) is not sampled, so only alpha_n t goes
    for n in range(2, N + 1):
        totals[:, n - 1] -= float(moment(spec, n)) * T
    if spec.jumps is not None:
        totals[:, 0] -= float(spec.jumps.moment(1)) * T
    return totals


@dataclass(frozen=True)
class SharpBracketReport:
    mean: np.ndarray
    stderr: np.ndarray
    expected: np.ndarray

    def max_deviation(self):
        """Largest |mean - expected| in units of standard error."""
        deviation = np.abs(self.mean - self.expected)
        spread = self.stderr > 0
        z = np.where(spread, deviation / np.where(spread, self.stderr, 1.0),
                     np.where(np.isclose(deviation, 0.0), 0.0, np.inf))
        return float(z.max())


def sharp_bracket_check(spec, N, n_paths, T, seed):
    """Monte Carlo E[Y^(i)_T Y^(j)_T] against G[i][j] T for i, j <= N."""
    samples = sample_teugels(spec, N, n_paths, T, seed)
    products = samples[:, :, None] * samples[:, None, :]
    expected = np.array([[float(x) * float(T) for x in row]
                         for row in gram_matrix(spec, N)])
    return SharpBracketReport(products.mean(axis=0),
                              products.std(axis=0, ddof=1) / math.sqrt(n_paths),
                              expected)

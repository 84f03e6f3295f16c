# levyshuffle: Levy process specifications and exact coordinates
#
# A LevySpec is drift + sigma*W + a compensated jump part, the jump law
# being either finitely many rational atoms (exact coordinates exist) or a
# raw moment sequence (moment algebra only). ProcessVector holds the exact
# coordinates of a semimartingale over the basis
#   T        deterministic time
#   W_i      Brownian driver of process i (unit variance)
#   C_{i,j}  uncompensated counter of jumps of size a_j of process i
# and supports the bracket product and exact span reductions.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

from .errors import InvalidSpec, MomentUnavailable, NoCoordinateForm


def as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, float)):
        raise TypeError("expected an exact rational, got %r" % (value,))
    return Fraction(value)


@dataclass(frozen=True)
class FiniteAtoms:
    rate: Fraction
    atoms: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        rate = as_fraction(self.rate)
        atoms = tuple((as_fraction(a), as_fraction(p)) for a, p in self.atoms)
        object.__setattr__(self, "rate", rate)
        object.__setattr__(self, "atoms", atoms)
        if rate <= 0:
            raise InvalidSpec("jump rate must be positive, got %s" % (rate,))
        if not atoms:
            raise InvalidSpec("at least one jump atom is required")
        sizes = [a for a, _ in atoms]
        if any(a == 0 for a in sizes):
            raise InvalidSpec("jump sizes must be nonzero")
        if len(set(sizes)) != len(sizes):
            raise InvalidSpec("jump sizes must be pairwise distinct")
        if any(p <= 0 for _, p in atoms):
            raise InvalidSpec("atom probabilities must be positive")
        if sum(p for _, p in atoms) != 1:
            raise InvalidSpec("atom probabilities must sum to 1")

    @property
    def sizes(self):
        return tuple(a for a, _ in self.atoms)

    @property
    def probs(self):
        return tuple(p for _, p in self.atoms)

    def moment(self, n):
        return self.rate * sum(p * a ** n for a, p in self.atoms)


@dataclass(frozen=True)
class MomentSequence:
    # alpha[0] is alpha_2, alpha[1] is alpha_3, ...
    alpha: Tuple[Fraction, ...]

    def __post_init__(self):
        alpha = tuple(as_fraction(x) for x in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if not alpha:
            raise InvalidSpec("moment sequence must supply at least alpha_2")
        if alpha[0] < 0:
            raise InvalidSpec("alpha_2 must be nonnegative")

    @property
    def max_order(self):
        return len(self.alpha) + 1

    def moment(self, n):
        if n > self.max_order:
            raise MomentUnavailable(
                "alpha_%d requested but moments are supplied up to alpha_%d"
                % (n, self.max_order))
        return self.alpha[n - 2]


JumpLaw = Union[FiniteAtoms, MomentSequence]


@dataclass(frozen=True)
class LevySpec:
    name: str
    drift: Fraction = Fraction(0)
    sigma: Fraction = Fraction(0)
    jumps: Optional[JumpLaw] = None

    def __post_init__(self):
        object.__setattr__(self, "drift", as_fraction(self.drift))
        object.__setattr__(self, "sigma", as_fraction(self.sigma))
        if not self.name:
            raise InvalidSpec("process name must not be empty")
        if self.sigma < 0:
            raise InvalidSpec("sigma must be nonnegative")
        if self.jumps is None and self.sigma == 0:
            raise InvalidSpec("process '%s' is deterministic (sigma = 0 and no jumps)"
                              % (self.name,))

    @classmethod
    def from_raw_drift(cls, name, raw_drift, sigma=0, jumps=None):
        """Build from X = b t + sigma W + sum Y_i (uncompensated jumps)."""
        drift = as_fraction(raw_drift)
        if isinstance(jumps, FiniteAtoms):
            drift += jumps.moment(1)
        elif isinstance(jumps, MomentSequence):
            raise InvalidSpec("raw_drift needs the first jump moment; "
                              "moment sequences start at alpha_2")
        return cls(name, drift, sigma, jumps)

    @property
    def is_continuous(self):
        return self.jumps is None

    @property
    def has_coordinates(self):
        return not isinstance(self.jumps, MomentSequence)


class Basis(NamedTuple):
    kind: int
    process: int = 0
    atom: int = 0

    def label(self):
        if self.kind == TIME_KIND:
            return "T"
        if self.kind == BROWNIAN_KIND:
            return "W%d" % (self.process,)
        return "C%d.%d" % (self.process, self.atom)

    @classmethod
    def parse(cls, text):
        if text == "T":
            return TIME
        if text.startswith("W"):
            return brownian(int(text[1:]))
        if text.startswith("C"):
            process, atom = text[1:].split(".")
            return counter(int(process), int(atom))
        raise ValueError("unknown basis symbol '%s'" % (text,))


TIME_KIND, BROWNIAN_KIND, COUNTER_KIND = 0, 1, 2
TIME = Basis(TIME_KIND)


def brownian(process):
    return Basis(BROWNIAN_KIND, process)


def counter(process, atom):
    return Basis(COUNTER_KIND, process, atom)


class ProcessVector:
    """Sparse exact coordinates over the T / W_i / C_{i,j} basis."""

    __slots__ = ("_coords",)

    def __init__(self, coords=()):
        if isinstance(coords, dict):
            coords = coords.items()
        out = {}
        for symbol, value in coords:
            value = as_fraction(value)
            total = out.get(symbol, 0) + value
            if total:
                out[symbol] = total
            else:
                out.pop(symbol, None)
        self._coords = out

    def items(self):
        return sorted(self._coords.items())

    def coordinate(self, symbol):
        return self._coords.get(symbol, Fraction(0))

    def __bool__(self):
        return bool(self._coords)

    def __eq__(self, other):
        if isinstance(other, ProcessVector):
            return self._coords == other._coords
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._coords.items()))

    def __add__(self, other):
        return ProcessVector(list(self._coords.items()) + list(other._coords.items()))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scale):
        scale = as_fraction(scale)
        return ProcessVector((s, scale * v) for s, v in self._coords.items())

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join("%s: %s" % (s.label(), v) for s, v in self.items())
        return "ProcessVector({%s})" % (body,)


def _basis_bracket(x, y):
    # [T, .] = 0, [W_i, W_i] = T, [C_ij, C_ij] = C_ij, other pairs vanish
    if x != y or x.kind == TIME_KIND:
        return None
    if x.kind == BROWNIAN_KIND:
        return TIME
    return x


def bracket_vectors(u, v):
    terms = []
    for x, cx in u.items():
        for y, cy in v.items():
            z = _basis_bracket(x, y)
            if z is not None:
                terms.append((z, cx * cy))
    return ProcessVector(terms)


def _require_coordinates(spec):
    if not spec.has_coordinates:
        raise NoCoordinateForm("process '%s' is given by moments only and has no "
                               "coordinate form" % (spec.name,))


def canonicalize(spec, index=1):
    """X = drift*T + sigma*W_i + sum_j a_j*C_{i,j} - (rate * sum_j p_j a_j)*T."""
    _require_coordinates(spec)
    terms = [(TIME, spec.drift), (brownian(index), spec.sigma)]
    if spec.jumps is not None:
        terms.append((TIME, -spec.jumps.moment(1)))
        for j, a in enumerate(spec.jumps.sizes, 1):
            terms.append((counter(index, j), a))
    return ProcessVector(terms)


def moment(spec, n):
    """alpha_n, the n-th moment of the Levy measure (n >= 2)."""
    if n < 2:
        raise ValueError("jump moments are defined for n >= 2, got %d" % (n,))
    if spec.jumps is None:
        return Fraction(0)
    return spec.jumps.moment(n)


def power_bracket_vector(spec, n, index=1):
    if n < 1:
        raise ValueError("power bracket order must be >= 1, got %d" % (n,))
    if n == 1:
        return canonicalize(spec, index)
    _require_coordinates(spec)
    terms = []
    if n == 2:
        terms.append((TIME, spec.sigma ** 2))
    if spec.jumps is not None:
        for j, a in enumerate(spec.jumps.sizes, 1):
            terms.append((counter(index, j), a ** n))
    return ProcessVector(terms)


def compensator(spec, n):
    """Coefficient of t in [X]^(n) - Y^(n): drift for n = 1,
    alpha_n + sigma^2 1_{n=2} otherwise."""
    if n == 1:
        return spec.drift
    value = moment(spec, n)
    if n == 2:
        value += spec.sigma ** 2
    return value


def teugels_vector(spec, n, index=1):
    """Coordinates of the Teugels martingale Y^(n)."""
    return power_bracket_vector(spec, n, index) - ProcessVector(
        ((TIME, compensator(spec, n)),))


class Independent:
    """Marker: the target is not in the span of the offered basis."""

    def __repr__(self):
        return "Independent"


INDEPENDENT = Independent()


@dataclass(frozen=True)
class Coefficients:
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_fraction(v) for v in self.values))


def _eliminate(row, combo, pivots):
    # Subtract multiples of the pivot rows so every pivot symbol vanishes.
    for symbol, prow, pcombo in pivots:
        value = row.get(symbol)
        if not value:
            continue
        factor = value / prow[symbol]
        for s, v in prow.items():
            total = row.get(s, 0) - factor * v
            if total:
                row[s] = total
            else:
                row.pop(s, None)
        for k, v in pcombo.items():
            total = combo.get(k, 0) - factor * v
            if total:
                combo[k] = total
            else:
                combo.pop(k, None)
    return row, combo


def reduce_against(target, basis):
    """Solve target = sum_k c_k basis_k exactly.

    Returns Coefficients or INDEPENDENT. Pivots are taken at the first
    nonzero coordinate in canonical basis order; basis vectors that are
    dependent on earlier ones receive coefficient 0.
    """
    pivots = []
    for k, vector in enumerate(basis):
        row, combo = _eliminate(dict(vector.items()), {k: Fraction(1)}, pivots)
        if row:
            pivots.append((min(row), row, combo))
    row, combo = _eliminate(dict(target.items()), {}, pivots)
    if row:
        return INDEPENDENT
    return Coefficients(tuple(-combo.get(k, Fraction(0)) for k in range(len(basis))))

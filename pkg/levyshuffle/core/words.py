# levyshuffle: words, polynomials and the quasi-shuffle Hopf algebra
#
# Words are tuples of letter ids. A Poly is an immutable sparse mapping
# word -> Fraction with zero coefficients removed. The quasi-shuffle
# product, shuffle, deconcatenation, antipode and the Hoffman exp/log
# isomorphism are parameterised by a BracketTable holding the structure
# constants [a,b] of the alphabet.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import itertools
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownLetter

EMPTY_WORD = ()


@dataclass(frozen=True)
class Letter:
    id: int
    grade: int
    label: str

    def __post_init__(self):
        if self.grade < 1:
            raise ValueError("letter '%s' has grade %d < 1" % (self.label, self.grade))


def _coefficient(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    raise TypeError("coefficients must be exact rationals, got %r" % (value,))


def _accumulate(out, word, coeff):
    # out[word] += coeff, keeping out free of zeros
    total = out.get(word, 0) + coeff
    if total:
        out[word] = total
    else:
        out.pop(word, None)


class Poly:
    """Finite linear combination of words with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=()):
        if isinstance(terms, Poly):
            self._terms = terms._terms
        else:
            if isinstance(terms, dict):
                terms = terms.items()
            out = {}
            for word, coeff in terms:
                _accumulate(out, tuple(word), _coefficient(coeff))
            self._terms = out
        self._hash = None

    @classmethod
    def word(cls, word, coeff=1):
        return cls(((tuple(word), coeff),))

    @classmethod
    def letter(cls, letter_id, coeff=1):
        return cls((((letter_id,), coeff),))

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls.word(EMPTY_WORD)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coefficient(self, word):
        return self._terms.get(tuple(word), Fraction(0))

    def letters(self):
        return {a for word in self._terms for a in word}

    def is_linear(self):
        """True when every word in the support is a single letter."""
        return all(len(word) == 1 for word in self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self._terms)
        for word, coeff in other.items():
            _accumulate(out, word, coeff)
        return _from_clean(out)

    def __sub__(self, other):
        out = dict(self._terms)
        for word, coeff in other.items():
            _accumulate(out, word, -coeff)
        return _from_clean(out)

    def __neg__(self):
        return _from_clean({w: -c for w, c in self._terms.items()})

    def __mul__(self, scale):
        scale = _coefficient(scale)
        if not scale:
            return Poly()
        return _from_clean({w: scale * c for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join("%r: %s" % (w, c) for w, c in sorted(self._terms.items()))
        return "Poly({%s})" % (body,)


def _from_clean(terms):
    # terms is already zero-free and keyed by tuples
    poly = Poly.__new__(Poly)
    poly._terms = terms
    poly._hash = None
    return poly


class BracketTable:
    """Symmetric table of structure constants [a,b] on the letters.

    Entries are linear Polys (combinations of single letters); an absent
    entry is the zero bracket.
    """

    def __init__(self, letters, entries=None):
        self._letters = {}
        for letter in letters:
            if letter.id in self._letters:
                raise ValueError("duplicate letter id %r" % (letter.id,))
            self._letters[letter.id] = letter
        self._entries = {}
        for (a, b), value in (entries or {}).items():
            key = (a, b) if a <= b else (b, a)
            value = Poly(value)
            if not value:
                continue
            if key in self._entries and self._entries[key] != value:
                raise ValueError("asymmetric bracket entries for %r" % (key,))
            self._entries[key] = value

    @property
    def letters(self):
        return tuple(self._letters.values())

    def letter(self, letter_id):
        try:
            return self._letters[letter_id]
        except KeyError:
            raise UnknownLetter(letter_id)

    def __contains__(self, letter_id):
        return letter_id in self._letters

    def bracket(self, a, b):
        if a not in self._letters:
            raise UnknownLetter(a)
        if b not in self._letters:
            raise UnknownLetter(b)
        return self._entries.get((a, b) if a <= b else (b, a), _ZERO)

    def entries(self):
        return sorted(self._entries.items())

    def __eq__(self, other):
        if isinstance(other, BracketTable):
            return (self.letters == other.letters
                    and self._entries == other._entries)
        return NotImplemented

    def __hash__(self):
        return hash((self.letters, frozenset(self._entries.items())))

    def check(self):
        """Return None when the table is a commutative associative product
        closed on the letters, otherwise (kind, witness)."""
        for key, value in self.entries():
            if not value.is_linear():
                return ("closure", key)
            for c in value.letters():
                if c not in self._letters:
                    return ("closure", key)
        ids = list(self._letters)
        for a, b, c in itertools.product(ids, repeat=3):
            left = bracket_polys(Poly.letter(a), self.bracket(b, c), self)
            right = bracket_polys(self.bracket(a, b), Poly.letter(c), self)
            if left != right:
                return ("associativity", (a, b, c))
        return None


_ZERO = Poly()


def bracket_polys(x, y, table):
    """Bilinear extension of the letter bracket to linear Polys."""
    out = {}
    for (a,), ca in x.items():
        for (b,), cb in y.items():
            for (c,), k in table.bracket(a, b).items():
                _accumulate(out, (c,), ca * cb * k)
    return _from_clean(out)


def require_letters(p, table):
    for a in p.letters():
        if a not in table:
            raise UnknownLetter(a)


def concat(v, w):
    return tuple(v) + tuple(w)


def concat_polys(p, q):
    out = {}
    for v, cv in p.items():
        for w, cw in q.items():
            _accumulate(out, v + w, cv * cw)
    return _from_clean(out)


def counit(p):
    return p.coefficient(EMPTY_WORD)


def grade_of(word, table):
    return sum(table.letter(a).grade for a in word)


def max_grade(p, table):
    """Largest word grade in the support of p (0 for the zero Poly)."""
    return max((grade_of(w, table) for w in p.words()), default=0)


def render_order(p, table):
    """Terms sorted for display: descending grade and length, then ids."""
    def key(item):
        word = item[0]
        return (-grade_of(word, table), -len(word), word)
    return sorted(p.items(), key=key)


def _product(p, q, bracket):
    # Word-level recursion va*wb = (v*wb)a + (va*w)b + (v*w)[a,b],
    # memoised on word pairs for the duration of one product.
    memo = {}

    def word_product(v, w):
        if not v:
            return {w: Fraction(1)}
        if not w:
            return {v: Fraction(1)}
        key = (v, w)
        cached = memo.get(key)
        if cached is not None:
            return cached
        a, b = v[-1], w[-1]
        out = {}
        for u, c in word_product(v[:-1], w).items():
            _accumulate(out, u + (a,), c)
        for u, c in word_product(v, w[:-1]).items():
            _accumulate(out, u + (b,), c)
        if bracket is not None:
            merged = bracket(a, b)
            if merged:
                inner = word_product(v[:-1], w[:-1])
                for (m,), k in merged.items():
                    for u, c in inner.items():
                        _accumulate(out, u + (m,), c * k)
        memo[key] = out
        return out

    out = {}
    for v, cv in p.items():
        for w, cw in q.items():
            for u, c in word_product(v, w).items():
                _accumulate(out, u, cv * cw * c)
    return _from_clean(out)


def quasi_shuffle(p, q, table):
    require_letters(p, table)
    require_letters(q, table)
    return _product(p, q, table.bracket)


def shuffle(p, q):
    return _product(p, q, None)


def deconcat(word):
    word = tuple(word)
    return [(word[:i], word[i:]) for i in range(len(word) + 1)]


def antipode(x, table):
    """Antipode of the quasi-shuffle Hopf algebra with deconcatenation.

    Defined by S(e) = e and S(w) = -w - sum over proper splittings uv = w
    of S(u)*v, so that sum_{uv=w} S(u)*v vanishes for nonempty w.
    Accepts a word or a Poly.
    """
    p = x if isinstance(x, Poly) else Poly.word(x)
    require_letters(p, table)
    memo = {EMPTY_WORD: Poly.one()}

    def word_antipode(w):
        cached = memo.get(w)
        if cached is not None:
            return cached
        out = -Poly.word(w)
        for u, v in deconcat(w)[1:-1]:
            out = out - quasi_shuffle(word_antipode(u), Poly.word(v), table)
        memo[w] = out
        return out

    result = Poly()
    for w, c in p.items():
        result = result + c * word_antipode(w)
    return result


def compositions(n):
    """All compositions of n as tuples of positive parts, coarsest last."""
    if n == 0:
        yield ()
        return
    for cuts in itertools.product((True, False), repeat=n - 1):
        parts = []
        size = 1
        for cut in cuts:
            if cut:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield tuple(parts)


def _hoffman(p, table, weight):
    require_letters(p, table)
    blocks = {}

    def block_bracket(block):
        cached = blocks.get(block)
        if cached is None:
            cached = Poly.letter(block[0])
            for a in block[1:]:
                cached = bracket_polys(cached, Poly.letter(a), table)
            blocks[block] = cached
        return cached

    out = {}
    for word, coeff in p.items():
        for parts in compositions(len(word)):
            k = weight(len(word), parts)
            factors = []
            start = 0
            for size in parts:
                factors.append(block_bracket(word[start:start + size]))
                start += size
            if not all(factors):
                continue
            for combo in itertools.product(*(f.items() for f in factors)):
                letters = tuple(m for (m,), _ in combo)
                c = coeff * k
                for _, fc in combo:
                    c *= fc
                _accumulate(out, letters, c)
    return _from_clean(out)


def _exp_weight(n, parts):
    return Fraction(1, math.prod(math.factorial(i) for i in parts))


def _log_weight(n, parts):
    return Fraction((-1) ** (n - len(parts)), math.prod(parts))


def hoffman_exp(p, table):
    """Hoffman exponential: algebra map from shuffle onto quasi-shuffle."""
    return _hoffman(p, table, _exp_weight)


def hoffman_log(p, table):
    return _hoffman(p, table, _log_weight)

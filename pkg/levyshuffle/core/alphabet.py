# levyshuffle: minimal alphabets for families of independent Levy processes
#
# Letters are, in id order: one generator per process (grade 1), the time
# letter "t" (grade 2), then the power bracket letters "name^n" (grade n)
# grouped by process. A process contributes power brackets until the next
# one falls in the span of t and the earlier ones; that span expansion
# fills the bracket table. Processes given by moments are reduced through
# the strong orthogonalization instead of coordinates and may be truncated
# at max_grade.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from . import teugels
from .errors import (InconsistentSpec, InvariantViolation, MomentUnavailable,
                     TruncationExceeded, UnknownLetter)
from .levy import (INDEPENDENT, TIME, LevySpec, MomentSequence, ProcessVector,
                   bracket_vectors, power_bracket_vector, reduce_against)
from .words import EMPTY_WORD, BracketTable, Letter, Poly

DEFAULT_MAX_GRADE = 6
TIME_LABEL = "t"
NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Generator:
    process: int


@dataclass(frozen=True)
class Time:
    # True when no process is continuous: t is then adjoined as a
    # generator instead of arising as [W]^(2)
    adjoined: bool = False


@dataclass(frozen=True)
class PowerBracket:
    process: int
    order: int


@dataclass(frozen=True, eq=True)
class Alphabet:
    letters: Tuple[Letter, ...]
    provenance: Dict[int, object]
    vectors: Dict[int, Optional[ProcessVector]]
    table: BracketTable
    family: Tuple[LevySpec, ...]
    max_grade: int = DEFAULT_MAX_GRADE
    truncated: Tuple[str, ...] = ()
    truncated_pairs: Tuple[Tuple[int, int], ...] = ()
    _by_label: Dict[str, int] = field(init=False, default=None, compare=False,
                                      repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_label",
                           {letter.label: letter.id for letter in self.letters})

    def letter(self, letter_id):
        return self.table.letter(letter_id)

    def label(self, letter_id):
        return self.letter(letter_id).label

    def lookup(self, label):
        try:
            return self._by_label[label]
        except KeyError:
            raise UnknownLetter(label)

    def vector(self, letter_id):
        self.letter(letter_id)
        return self.vectors.get(letter_id)

    @property
    def time_letter(self):
        return self.lookup(TIME_LABEL)

    def generator(self, process):
        return self.lookup(self.family[process - 1].name)

    def power_bracket(self, process, order):
        """Letter id standing for [X_process]^(order), or None."""
        if order == 1:
            return self.generator(process)
        return self._by_label.get("%s^%d" % (self.family[process - 1].name, order))

    def parse_word(self, text):
        text = text.strip()
        if text in ("", "()"):
            return EMPTY_WORD
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        return tuple(self.lookup(part.strip()) for part in text.split("."))

    def format_word(self, word):
        if not word:
            return "()"
        return ".".join(self.label(a) for a in word)

    def grade(self, letter_id):
        return self.letter(letter_id).grade


class _ProcessLetters:
    """Power bracket orders and span expansions for one process."""

    def __init__(self, spec, index, max_grade):
        self.spec = spec
        self.index = index
        self.vectors = {}
        self.expansions = {}
        self.truncated = False
        if isinstance(spec.jumps, MomentSequence):
            self._from_moments(max_grade)
        else:
            self._from_coordinates()

    def _from_coordinates(self):
        spec, index = self.spec, self.index
        generator = power_bracket_vector(spec, 1, index)
        if reduce_against(generator, [ProcessVector({TIME: 1})]) is not INDEPENDENT:
            raise InconsistentSpec("process '%s' is a multiple of time" % (spec.name,))
        basis = [ProcessVector({TIME: 1}), generator]
        self.vectors[1] = generator
        n = 2
        while True:
            vector = power_bracket_vector(spec, n, index)
            result = reduce_against(vector, basis)
            if result is not INDEPENDENT:
                self.expansions[n] = result.values
                break
            self.vectors[n] = vector
            basis.append(vector)
            n += 1
        for m in range(n + 1, 2 * self.top + 1):
            result = reduce_against(power_bracket_vector(spec, m, index), basis)
            if result is INDEPENDENT:
                raise InvariantViolation("[%s]^(%d) escaped the span of its "
                                         "power brackets" % (spec.name, m))
            self.expansions[m] = result.values

    def _from_moments(self, max_grade):
        spec = self.spec
        gd = teugels.validate_moments(spec)
        if gd is None or gd.norm(1) == 0:
            raise InconsistentSpec("process '%s' has a degenerate first Teugels "
                                   "martingale" % (spec.name,))
        self.vectors[1] = None
        n = 2
        while True:
            if n > max_grade:
                self.truncated = True
                logging.warning("levyshuffle: '%s' has no reduction up to grade "
                                "%d; alphabet truncated at grade %d",
                                spec.name, max_grade, max_grade)
                return
            if n > gd.N:
                raise TruncationExceeded(
                    "moments of '%s' end at alpha_%d before a reduction; supply "
                    "more moments or lower max_grade below %d"
                    % (spec.name, spec.jumps.max_order, n))
            if gd.norm(n) == 0:
                break
            self.vectors[n] = None
            n += 1
        for m in range(n, 2 * self.top + 1):
            try:
                self.expansions[m] = teugels.span_expansion(spec, m, gd).values
            except MomentUnavailable as e:
                raise TruncationExceeded("expanding [%s]^(%d): %s"
                                         % (spec.name, m, e))

    @property
    def top(self):
        return max(self.vectors)


def build_alphabet(family, max_grade=DEFAULT_MAX_GRADE):
    family = tuple(family)
    if not family:
        raise InconsistentSpec("the family must contain at least one process")
    if max_grade < 2:
        raise InconsistentSpec("max_grade must be at least 2, got %d" % (max_grade,))
    names = [spec.name for spec in family]
    for name in names:
        if not NAME_RE.match(name) or name == TIME_LABEL:
            raise InconsistentSpec("'%s' cannot be used as a process name" % (name,))
    if len(set(names)) != len(names):
        raise InconsistentSpec("process names must be unique")

    builders = [_ProcessLetters(spec, i, max_grade)
                for i, spec in enumerate(family, 1)]
    letters, provenance, vectors = [], {}, {}

    def add(label, grade, origin, vector):
        letter = Letter(len(letters), grade, label)
        letters.append(letter)
        provenance[letter.id] = origin
        vectors[letter.id] = vector
        return letter.id

    ids = {}
    for builder in builders:
        ids[builder.index, 1] = add(builder.spec.name, 1, Generator(builder.index),
                                    builder.vectors[1])
    adjoined = not any(spec.is_continuous for spec in family)
    time_id = add(TIME_LABEL, 2, Time(adjoined), ProcessVector({TIME: 1}))
    for builder in builders:
        for order in sorted(builder.vectors):
            if order > 1:
                ids[builder.index, order] = add(
                    "%s^%d" % (builder.spec.name, order), order,
                    PowerBracket(builder.index, order), builder.vectors[order])

    entries, truncated_pairs = {}, []
    for builder in builders:
        top = builder.top
        for o1 in range(1, top + 1):
            for o2 in range(o1, top + 1):
                key = (ids[builder.index, o1], ids[builder.index, o2])
                total = o1 + o2
                if total <= top:
                    entries[key] = Poly.letter(ids[builder.index, total])
                elif total in builder.expansions:
                    coeffs = builder.expansions[total]
                    basis = [time_id] + [ids[builder.index, o] for o in range(1, top + 1)]
                    entries[key] = Poly(((letter_id,), c)
                                        for letter_id, c in zip(basis, coeffs))
                elif builder.truncated:
                    truncated_pairs.append(key)
                else:
                    raise InvariantViolation("no expansion for [%s]^(%d)"
                                             % (builder.spec.name, total))
    table = BracketTable(letters, entries)
    problem = table.check()
    if problem is not None:
        raise InvariantViolation("bracket table fails %s at %r" % problem)
    _check_images(table, vectors)
    alpha = Alphabet(tuple(letters), provenance, vectors, table, family, max_grade,
                     tuple(b.spec.name for b in builders if b.truncated),
                     tuple(truncated_pairs))
    logging.info("levyshuffle: alphabet of %d letters for %d processes",
                 len(letters), len(family))
    return alpha


def _check_images(table, vectors):
    # the table must map onto the coordinate bracket wherever both
    # letters have coordinates
    known = [letter.id for letter in table.letters if vectors[letter.id] is not None]
    for i, a in enumerate(known):
        for b in known[i:]:
            image = ProcessVector()
            for (c,), k in table.bracket(a, b).items():
                if vectors[c] is None:
                    break
                image = image + vectors[c] * k
            else:
                if image != bracket_vectors(vectors[a], vectors[b]):
                    raise InvariantViolation(
                        "bracket of letters %d and %d disagrees with the "
                        "coordinate bracket" % (a, b))


def bracket_letters(alpha, a, b):
    return alpha.table.bracket(a, b)


def is_graded(alpha):
    """(True, None) when every nonzero [a,b] is a combination of letters of
    grade g(a)+g(b), otherwise (False, (a, b)) for the first offending pair."""
    for (a, b), value in alpha.table.entries():
        target = alpha.grade(a) + alpha.grade(b)
        if any(alpha.grade(c) != target for c in value.letters()):
            return False, (a, b)
    return True, None

# levyshuffle: text and JSON rendering
#
# Rationals are written as "p/q" (or "p" for integers) in both forms so
# JSON output parses back to the same exact values.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

from fractions import Fraction

from .alphabet import Alphabet, Generator, PowerBracket, Time, is_graded
from .config import parse_fraction
from .errors import ConfigError
from .levy import Basis, FiniteAtoms, LevySpec, MomentSequence, ProcessVector
from .teugels import first_zero_index
from .words import BracketTable, Letter, Poly, render_order


def format_fraction(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def format_poly(p, alpha):
    """Text form such as "2 (x1.x1) + 1 (t)"; the zero Poly is "0"."""
    parts = []
    for word, coeff in render_order(p, alpha.table):
        term = "%s (%s)" % (format_fraction(abs(coeff)), alpha.format_word(word))
        if not parts:
            parts.append(term if coeff > 0 else "-" + term)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def format_vector(vector):
    if vector is None:
        return "-"
    if not vector:
        return "0"
    return " + ".join("%s %s" % (format_fraction(v), s.label())
                      for s, v in vector.items())


def format_provenance(origin, alpha):
    if isinstance(origin, Generator):
        return "generator of %s" % (alpha.family[origin.process - 1].name,)
    if isinstance(origin, Time):
        return "time (adjoined)" if origin.adjoined else "time"
    return "[%s]^(%d)" % (alpha.family[origin.process - 1].name, origin.order)


def format_alphabet(alpha):
    lines = ["letters:"]
    width = max(len(letter.label) for letter in alpha.letters)
    for letter in alpha.letters:
        lines.append("  %-*s  grade %d  %-20s  %s" % (
            width, letter.label, letter.grade,
            format_provenance(alpha.provenance[letter.id], alpha),
            format_vector(alpha.vectors[letter.id])))
    lines.append("brackets:")
    for (a, b), value in alpha.table.entries():
        lines.append("  [%s, %s] = %s" % (alpha.label(a), alpha.label(b),
                                          format_poly(value, alpha)))
    graded, witness = is_graded(alpha)
    if graded:
        lines.append("graded: true")
    else:
        lines.append("graded: false (filtered; witness [%s, %s])"
                     % (alpha.label(witness[0]), alpha.label(witness[1])))
    for name in alpha.truncated:
        lines.append("notice: '%s' truncated at grade %d" % (name, alpha.max_grade))
    return "\n".join(lines)


def format_matrix(rows):
    cells = [[format_fraction(x) for x in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  [" + " ".join(c.rjust(width) for c in row) + "]"
                     for row in cells)


def format_report(report):
    return "\n".join([
        "paths: %d" % (report.n_paths,),
        "max_abs_error: %.6g" % (report.max_abs_error,),
        "rms_error: %.6g" % (report.rms_error,),
        "exact: %s" % ("true" if report.exact else "false",),
    ])


# JSON

def poly_to_json(p, alpha):
    return {"terms": [{"word": [alpha.label(a) for a in word],
                       "coeff": format_fraction(coeff)}
                      for word, coeff in render_order(p, alpha.table)]}


def poly_from_json(data, alpha):
    try:
        terms = [(tuple(alpha.lookup(label) for label in term["word"]),
                  parse_fraction(term["coeff"], "terms[%d].coeff" % (i,)))
                 for i, term in enumerate(data["terms"])]
    except (KeyError, TypeError):
        raise ConfigError("a Poly is {\"terms\": [{\"word\": [...], \"coeff\": ...}]}")
    return Poly(terms)


def vector_to_json(vector):
    if vector is None:
        return None
    return {s.label(): format_fraction(v) for s, v in vector.items()}


def vector_from_json(data):
    if data is None:
        return None
    return ProcessVector((Basis.parse(label), parse_fraction(value, label))
                         for label, value in data.items())


def spec_to_json(spec):
    jumps = None
    if isinstance(spec.jumps, FiniteAtoms):
        jumps = {"rate": format_fraction(spec.jumps.rate),
                 "atoms": [[format_fraction(a), format_fraction(p)]
                           for a, p in spec.jumps.atoms]}
    elif isinstance(spec.jumps, MomentSequence):
        jumps = {"moments": [format_fraction(x) for x in spec.jumps.alpha]}
    return {"name": spec.name, "drift": format_fraction(spec.drift),
            "sigma": format_fraction(spec.sigma), "jumps": jumps}


def spec_from_json(data):
    jumps = data.get("jumps")
    law = None
    if jumps is not None and "moments" in jumps:
        law = MomentSequence(tuple(parse_fraction(x) for x in jumps["moments"]))
    elif jumps is not None:
        law = FiniteAtoms(parse_fraction(jumps["rate"]),
                          tuple((parse_fraction(a), parse_fraction(p))
                                for a, p in jumps["atoms"]))
    return LevySpec(data["name"], parse_fraction(data["drift"]),
                    parse_fraction(data["sigma"]), law)


def _provenance_to_json(origin):
    if isinstance(origin, Generator):
        return {"kind": "generator", "process": origin.process}
    if isinstance(origin, Time):
        return {"kind": "time", "adjoined": origin.adjoined}
    return {"kind": "power_bracket", "process": origin.process, "order": origin.order}


def _provenance_from_json(data):
    kind = data["kind"]
    if kind == "generator":
        return Generator(data["process"])
    if kind == "time":
        return Time(data["adjoined"])
    if kind == "power_bracket":
        return PowerBracket(data["process"], data["order"])
    raise ConfigError("unknown provenance kind '%s'" % (kind,))


def alphabet_to_json(alpha):
    graded, witness = is_graded(alpha)
    return {
        "max_grade": alpha.max_grade,
        "family": [spec_to_json(spec) for spec in alpha.family],
        "letters": [{"id": letter.id, "label": letter.label, "grade": letter.grade,
                     "provenance": _provenance_to_json(alpha.provenance[letter.id]),
                     "coordinates": vector_to_json(alpha.vectors[letter.id])}
                    for letter in alpha.letters],
        "brackets": [{"left": alpha.label(a), "right": alpha.label(b),
                      "value": poly_to_json(value, alpha)}
                     for (a, b), value in alpha.table.entries()],
        "graded": graded,
        "witness": None if graded else [alpha.label(x) for x in witness],
        "truncated": list(alpha.truncated),
        "truncated_pairs": [[alpha.label(a), alpha.label(b)]
                            for a, b in alpha.truncated_pairs],
    }


def alphabet_from_json(data):
    letters = tuple(Letter(item["id"], item["grade"], item["label"])
                    for item in data["letters"])
    ids = {letter.label: letter.id for letter in letters}
    provenance = {item["id"]: _provenance_from_json(item["provenance"])
                  for item in data["letters"]}
    vectors = {item["id"]: vector_from_json(item["coordinates"])
               for item in data["letters"]}
    entries = {}
    for item in data["brackets"]:
        value = Poly((tuple(ids[label] for label in term["word"]),
                      parse_fraction(term["coeff"]))
                     for term in item["value"]["terms"])
        entries[ids[item["left"]], ids[item["right"]]] = value
    return Alphabet(letters, provenance, vectors, BracketTable(letters, entries),
                    tuple(spec_from_json(spec) for spec in data["family"]),
                    data["max_grade"], tuple(data["truncated"]),
                    tuple((ids[a], ids[b]) for a, b in data["truncated_pairs"]))


def gram_to_json(gd):
    return {"N": gd.N,
            "G": [[format_fraction(x) for x in row] for row in gd.G],
            "C": [[format_fraction(x) for x in row] for row in gd.C],
            "h": [format_fraction(x) for x in gd.h],
            "first_zero_index": first_zero_index(gd)}

# levyshuffle command: alphabet, bracket
#
# Prints the minimal alphabet of a configured family (letters, grades,
# provenance, coordinates, bracket table and the graded/filtered verdict)
# and single bracket lookups.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

from ..core import render
from ..core.alphabet import bracket_letters
from ..core.registry import argument, command

CONFIG = argument("config", help="family configuration (.json or .cfg)")


def positive_int(text):
    value = int(text)
    if value < 1:
        raise ValueError(text)
    return value


@command("alphabet", desc="print the minimal alphabet and its bracket table",
         arguments=(CONFIG,))
def cmd_alphabet(request):
    alpha = request.get_alphabet()
    request.respond(render.format_alphabet(alpha), render.alphabet_to_json(alpha))


@command("bracket", desc="bracket [a, b] of two letters",
         arguments=(CONFIG, argument("a", help="letter label"),
                    argument("b", help="letter label")))
def cmd_bracket(request):
    alpha = request.get_alphabet()
    a = alpha.lookup(request.args.a)
    b = alpha.lookup(request.args.b)
    value = bracket_letters(alpha, a, b)
    request.respond("[%s, %s] = %s" % (alpha.label(a), alpha.label(b),
                                       render.format_poly(value, alpha)),
                    render.poly_to_json(value, alpha))

# levyshuffle command: mul, shuffle, coproduct
#
# Words are dot-joined letter labels such as "x1.x1.t"; "()" is the
# empty word.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

from ..core import render
from ..core.registry import argument, command
from ..core.words import Poly, deconcat, quasi_shuffle, shuffle
from .alphabet import CONFIG

WORDS = (CONFIG, argument("v", help="left word"), argument("w", help="right word"))


def _respond_product(request, product):
    alpha = request.get_alphabet()
    request.respond(render.format_poly(product, alpha),
                    render.poly_to_json(product, alpha))


@command("mul", desc="quasi-shuffle product of two words", arguments=WORDS)
def cmd_mul(request):
    table = request.get_alphabet().table
    v, w = request.get_word("v"), request.get_word("w")
    _respond_product(request, quasi_shuffle(Poly.word(v), Poly.word(w), table))


@command("shuffle", desc="shuffle product of two words", arguments=WORDS)
def cmd_shuffle(request):
    v, w = request.get_word("v"), request.get_word("w")
    _respond_product(request, shuffle(Poly.word(v), Poly.word(w)))


@command("coproduct", desc="deconcatenation coproduct of a word",
         arguments=(CONFIG, argument("w", help="word")))
def cmd_coproduct(request):
    alpha = request.get_alphabet()
    pairs = deconcat(request.get_word("w"))
    text = " + ".join("[%s | %s]" % (alpha.format_word(u), alpha.format_word(v))
                      for u, v in pairs)
    request.respond(text, {"terms": [{"left": [alpha.label(a) for a in u],
                                      "right": [alpha.label(a) for a in v]}
                                     for u, v in pairs]})

# levyshuffle command: exp, log, antipode
#
# This file may be distributed under the terms of the GNU GPLv3 license.

from ..core import render
from ..core.registry import argument, command
from ..core.words import Poly, antipode, hoffman_exp, hoffman_log
from .alphabet import CONFIG

WORD = (CONFIG, argument("w", help="word, e.g. x1.x1.t"))


def _apply(request, transform):
    alpha = request.get_alphabet()
    result = transform(Poly.word(request.get_word("w")), alpha.table)
    request.respond(render.format_poly(result, alpha),
                    render.poly_to_json(result, alpha))


@command("exp", desc="Hoffman exponential of a word", arguments=WORD)
def cmd_exp(request):
    _apply(request, hoffman_exp)


@command("log", desc="Hoffman logarithm of a word", arguments=WORD)
def cmd_log(request):
    _apply(request, hoffman_log)


@command("antipode", desc="antipode of a word", arguments=WORD)
def cmd_antipode(request):
    _apply(request, antipode)

# levyshuffle command: verify
#
# Samples paths of the configured family and reports how far the pathwise
# product I_v(T) I_w(T) is from the iterated integrals of the quasi-shuffle
# product of v and w. Unset options fall back to the configuration
# defaults.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import logging

from ..core import render
from ..core.config import parse_fraction
from ..core.errors import InvariantViolation
from ..core.pathsim import verify_product
from ..core.registry import argument, command
from .alphabet import CONFIG, positive_int


def _positive_fraction(text):
    value = parse_fraction(text)
    if value <= 0:
        raise ValueError(text)
    return value


def _seed(text):
    value = int(text)
    if value < 0:
        raise ValueError(text)
    return value


@command("verify", desc="check I_v I_w = I_(v * w) on sampled paths",
         arguments=(CONFIG,
                    argument("v", help="left word"),
                    argument("w", help="right word"),
                    argument("--paths", type=positive_int, default=None,
                             help="number of sampled paths"),
                    argument("--T", type=_positive_fraction, default=None,
                             help="time horizon"),
                    argument("--seed", type=_seed, default=None, help="master seed"),
                    argument("--dt", type=_positive_fraction, default=None,
                             help="Brownian grid step"),
                    argument("--workers", type=positive_int, default=None,
                             help="worker processes"),
                    argument("--exact", action="store_true",
                             help="rational jump times and exact arithmetic")))
def cmd_verify(request):
    alpha = request.get_alphabet()
    v, w = request.get_word("v"), request.get_word("w")
    n_paths = request.get_default("paths")
    workers = request.get_default("workers")
    logging.info("levyshuffle: verifying %s * %s on %d paths",
                 alpha.format_word(v), alpha.format_word(w), n_paths)
    report = verify_product(v, w, alpha, n_paths, request.get_default("T"),
                            request.get_default("seed"), request.get_default("dt"),
                            exact=request.args.exact, workers=workers)
    request.respond(render.format_report(report), report.as_dict())
    if report.identity_broken:
        raise InvariantViolation("exact pathwise product of %s and %s is off by %s"
                                 % (alpha.format_word(v), alpha.format_word(w),
                                    report.max_abs_error))

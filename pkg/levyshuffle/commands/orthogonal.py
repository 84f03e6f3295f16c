# levyshuffle command: gram, orthogonalize, expand
#
# Works on a single named process of the configuration. expand writes the
# power bracket [X]^(n) over t and lower power brackets; for processes
# with exact coordinates the moment route is checked against the
# coordinate reduction.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import logging

from ..core import render, teugels
from ..core.errors import ConfigError, InvariantViolation
from ..core.levy import (TIME, MomentSequence, ProcessVector,
                         power_bracket_vector, reduce_against)
from ..core.registry import argument, command
from .alphabet import CONFIG, positive_int

PROCESS = argument("name", help="process name")
ORDER = argument("N", type=positive_int, help="truncation order")


def _gram_data(request):
    spec = request.get_config().get_spec(request.args.name)
    return spec, teugels.strong_orthogonalize(teugels.gram_matrix(spec, request.args.N))


def _factor_lines(gd):
    return ["C:", render.format_matrix(gd.C),
            "h: [%s]" % (", ".join(render.format_fraction(x) for x in gd.h),)]


@command("gram", desc="Gram matrix of the Teugels martingales of a process",
         arguments=(CONFIG, PROCESS, ORDER))
def cmd_gram(request):
    spec, gd = _gram_data(request)
    lines = ["G (%s, N=%d):" % (spec.name, gd.N), render.format_matrix(gd.G)]
    payload = render.gram_to_json(gd)
    payload["process"] = spec.name
    request.respond("\n".join(lines + _factor_lines(gd)), payload)


@command("orthogonalize", desc="strong orthogonalization G = C diag(h) C^T",
         arguments=(CONFIG, PROCESS, ORDER))
def cmd_orthogonalize(request):
    spec, gd = _gram_data(request)
    k0 = teugels.first_zero_index(gd)
    lines = ["G:", render.format_matrix(gd.G)] + _factor_lines(gd)
    lines.append("first zero index: %s" % (k0 if k0 is not None else "none",))
    payload = render.gram_to_json(gd)
    payload["process"] = spec.name
    if k0 is None and isinstance(spec.jumps, MomentSequence):
        notice = "no degeneracy up to truncation order %d" % (gd.N,)
        lines.append("notice: " + notice)
        payload["notice"] = notice
    request.respond("\n".join(lines), payload)


def _basis_label(name, order):
    if order == 0:
        return "t"
    if order == 1:
        return name
    return "[%s]^(%d)" % (name, order)


def _format_terms(coeffs, labels):
    parts = []
    for c, label in zip(coeffs, labels):
        term = "%s %s" % (render.format_fraction(abs(c)), label)
        if not parts:
            parts.append(term if c >= 0 else "-" + term)
        else:
            parts.append(("+ " if c >= 0 else "- ") + term)
    return " ".join(parts)


def _orders(text):
    return tuple(positive_int(part) for part in text.split(","))


def _cross_check(spec, n, orders, coeffs):
    basis = [ProcessVector({TIME: 1})]
    basis.extend(power_bracket_vector(spec, l) for l in orders)
    result = reduce_against(power_bracket_vector(spec, n), basis)
    if getattr(result, "values", None) != coeffs.values:
        raise InvariantViolation("moment and coordinate expansions of [%s]^(%d) "
                                 "disagree" % (spec.name, n))
    logging.info("levyshuffle: coordinate reduction agrees for [%s]^(%d)",
                 spec.name, n)


@command("expand", desc="expand [X]^(n) over t and lower power brackets",
         arguments=(CONFIG, PROCESS,
                    argument("n", type=positive_int, help="power bracket order"),
                    argument("--orders", type=_orders, default=None,
                             help="comma-separated orders to expand over "
                                  "(default: 1 .. first zero index - 1)"),
                    argument("--N", dest="depth", type=positive_int, default=None,
                             help="orthogonalization depth (default: n, capped "
                                  "by the supplied moments)")))
def cmd_expand(request):
    spec = request.get_config().get_spec(request.args.name)
    n = request.args.n
    if request.args.orders is not None and n in request.args.orders:
        raise ConfigError("--orders must not contain the expanded order %d" % (n,))
    depth = request.args.depth or n
    if isinstance(spec.jumps, MomentSequence):
        depth = min(depth, spec.jumps.max_order // 2)
    gd = teugels.strong_orthogonalize(teugels.gram_matrix(spec, depth))
    coeffs = teugels.span_expansion(spec, n, gd, request.args.orders)
    orders = request.args.orders
    if orders is None:
        orders = tuple(range(1, len(coeffs.values)))
    if spec.has_coordinates:
        _cross_check(spec, n, orders, coeffs)
    labels = [_basis_label(spec.name, 0)] + [_basis_label(spec.name, l)
                                             for l in orders]
    request.respond("%s = %s" % (_basis_label(spec.name, n),
                                 _format_terms(coeffs.values, labels)),
                    {"process": spec.name, "order": n, "basis": labels,
                     "coefficients": [render.format_fraction(c)
                                      for c in coeffs.values]})

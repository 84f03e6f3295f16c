# levyshuffle: Teugels martingales and strong orthogonalization
#
# The compensated power jump processes Y^(n) have predictable brackets
# <Y^(i), Y^(j)>_t = G[i][j] t with G[i][j] = alpha_{i+j} + sigma^2 1_{i=j=1}.
# Strong orthogonalization is the exact LDL^T factorisation G = C diag(h) C^T
# with C unit lower triangular. Orders are 1-based in the public API while
# the stored tuples are 0-based (h[0] is the norm of H^(1)).
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import (InconsistentSpec, InvariantViolation, MomentUnavailable,
                     NotInSpan, NotPositiveSemidefinite)
from .levy import Coefficients, MomentSequence, compensator, moment


@dataclass(frozen=True)
class GramData:
    N: int
    G: Tuple[Tuple[Fraction, ...], ...]
    C: Tuple[Tuple[Fraction, ...], ...]
    h: Tuple[Fraction, ...]

    def norm(self, n):
        return self.h[n - 1]


def sharp_bracket(spec, i, j):
    """Coefficient of t in <Y^(i), Y^(j)>."""
    value = moment(spec, i + j)
    if i == j == 1:
        value += spec.sigma ** 2
    return value


def gram_matrix(spec, N):
    if N < 1:
        raise ValueError("Gram matrix order must be >= 1, got %d" % (N,))
    return tuple(tuple(sharp_bracket(spec, i, j) for j in range(1, N + 1))
                 for i in range(1, N + 1))


def strong_orthogonalize(G):
    G = tuple(tuple(Fraction(x) for x in row) for row in G)
    N = len(G)
    if any(len(row) != N for row in G):
        raise ValueError("Gram matrix must be square")
    for i in range(N):
        for j in range(i):
            if G[i][j] != G[j][i]:
                raise NotPositiveSemidefinite(
                    "Gram matrix is not symmetric at (%d, %d)" % (i + 1, j + 1))
    C = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    h = []
    for n in range(N):
        for l in range(n):
            numerator = G[n][l] - sum(C[n][k] * C[l][k] * h[k] for k in range(l))
            if h[l]:
                C[n][l] = numerator / h[l]
            elif numerator:
                raise NotPositiveSemidefinite(
                    "projection of Y^(%d) on the degenerate H^(%d) is %s"
                    % (n + 1, l + 1, numerator))
        norm = G[n][n] - sum(C[n][k] ** 2 * h[k] for k in range(n))
        if norm < 0:
            raise NotPositiveSemidefinite(
                "negative norm %s for H^(%d)" % (norm, n + 1))
        h.append(norm)
    zero = next((n for n, v in enumerate(h) if v == 0), None)
    if zero is not None and any(h[zero:]):
        raise InconsistentSpec(
            "H^(%d) is degenerate but a later orthogonal martingale is not"
            % (zero + 1,))
    for i in range(N):
        for j in range(i + 1):
            value = sum(C[i][k] * h[k] * C[j][k] for k in range(N))
            if value != G[i][j]:
                raise InvariantViolation(
                    "C diag(h) C^T differs from G at (%d, %d)" % (i + 1, j + 1))
    return GramData(N, G, tuple(map(tuple, C)), tuple(h))


def first_zero_index(gd) -> Optional[int]:
    return next((n for n, v in enumerate(gd.h, 1) if v == 0), None)


def validate_moments(spec):
    """Orthogonalize as deep as the supplied moments allow."""
    if not isinstance(spec.jumps, MomentSequence):
        return None
    N = spec.jumps.max_order // 2
    if N < 1:
        return None
    return strong_orthogonalize(gram_matrix(spec, N))


def _lower_inverse(C, m):
    inv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    for i in range(m):
        for l in range(i):
            inv[i][l] = -sum(C[i][k] * inv[k][l] for k in range(l, i))
    return inv


def _solve(matrix, rhs):
    # Gauss-Jordan over the rationals; None when singular
    n = len(rhs)
    rows = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        scale = rows[col][col]
        rows[col] = [x / scale for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [row[n] for row in rows]


def _t_coefficient(spec, n, orders, coeffs):
    return compensator(spec, n) - sum(e * compensator(spec, l)
                                      for l, e in zip(orders, coeffs))


def _check_residual(spec, n, value):
    try:
        residual = sharp_bracket(spec, n, n) - value
    except MomentUnavailable:
        logging.warning("levyshuffle: alpha_%d unavailable for '%s', residual "
                        "check of the order %d expansion skipped",
                        2 * n, spec.name, n)
        return
    if residual:
        raise NotInSpan("[%s]^(%d) leaves residual norm %s outside the span"
                        % (spec.name, n, residual))


def span_expansion(spec, n, gd, orders=None):
    """Expand the power bracket [X]^(n) over t and lower power brackets.

    With orders=None the basis is t, [X]^(1), ..., [X]^(k0-1) where k0 is
    the first degenerate index of gd, and the result is computed through
    the orthogonal martingales H^(i). With an explicit tuple of orders the
    same expansion is solved over t and [X]^(l) for l in orders.
    Returns Coefficients ordered (t, then the power brackets).
    """
    if orders is not None:
        return _span_over(spec, n, tuple(orders))
    k0 = first_zero_index(gd)
    if k0 is None:
        raise NotInSpan("no degenerate orthogonal martingale up to order %d"
                        % (gd.N,))
    if n < k0:
        raise NotInSpan("[%s]^(%d) is independent of the lower power brackets "
                        "(first degenerate index %d)" % (spec.name, n, k0))
    m = k0 - 1
    proj = []
    for i in range(m):
        value = sharp_bracket(spec, n, i + 1)
        value -= sum(gd.C[i][l] * proj[l] for l in range(i))
        proj.append(value)
    d = [proj[i] / gd.h[i] for i in range(m)]
    _check_residual(spec, n, sum(d[i] ** 2 * gd.h[i] for i in range(m)))
    inv = _lower_inverse(gd.C, m)
    e = [sum(d[i] * inv[i][l] for i in range(l, m)) for l in range(m)]
    orders = tuple(range(1, m + 1))
    return Coefficients((_t_coefficient(spec, n, orders, e),) + tuple(e))


def _span_over(spec, n, orders):
    if not orders or n in orders:
        raise ValueError("expansion orders must be nonempty and exclude %d" % (n,))
    matrix = [[sharp_bracket(spec, i, j) for j in orders] for i in orders]
    rhs = [sharp_bracket(spec, i, n) for i in orders]
    e = _solve(matrix, rhs)
    if e is None:
        raise NotInSpan("Teugels martingales of orders %s are linearly dependent"
                        % (list(orders),))
    _check_residual(spec, n, sum(x * r for x, r in zip(e, rhs)))
    logging.debug("levyshuffle: [%s]^(%d) expanded over orders %s",
                  spec.name, n, list(orders))
    return Coefficients((_t_coefficient(spec, n, orders, e),) + tuple(e))

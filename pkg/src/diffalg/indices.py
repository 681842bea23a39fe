"""Multi-index combinatorics: the sets Gamma(r) and the coordinate maps.

Multi-indices are plain tuples of m naturals.  The canonical ordering is by
total degree first, then by "first derivation wins" within a degree, so that
for m = 2 the order starts (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
Every coordinate layout in the library is derived from this one ordering.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from .errors import ContextError, ResourceBudgetError
from . import bounds

DEFAULT_COORD_BUDGET = 1_000_000


def coord_budget():
    """Maximum number of ambient coordinates we agree to materialize."""
    return int(os.environ.get("DIFFALG_COORD_BUDGET", DEFAULT_COORD_BUDGET))


def deg(xi):
    """Total degree of a multi-index."""
    return sum(xi)


def unit_index(k, m):
    """The multi-index with a single 1 in slot k (1-based)."""
    if not 1 <= k <= m:
        raise ContextError("derivation index %d out of range 1..%d" % (k, m))
    return tuple(1 if j == k - 1 else 0 for j in range(m))


def shift(xi, k):
    """xi + unit_index(k)."""
    return tuple(e + (1 if j == k - 1 else 0) for j, e in enumerate(xi))


def index_sort_key(xi):
    """Canonical (degree, within-degree) sort key for multi-indices."""
    return (deg(xi), tuple(-e for e in xi))


@dataclass(frozen=True)
class GammaSet:
    """All multi-indices of degree <= r in m slots, canonically ordered."""

    m: int
    r: int
    elements: tuple = field(default=())

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, xi):
        return len(xi) == self.m and deg(xi) <= self.r


def gamma_set(m, r):
    """Enumerate Gamma(r) = {xi in N^m : deg xi <= r} in canonical order."""
    if m < 1:
        raise ContextError("m must be >= 1, got %d" % m)
    if r < 0:
        raise ContextError("r must be >= 0, got %d" % r)
    count = math.comb(r + m, m)
    if count > coord_budget():
        raise ResourceBudgetError(
            "Gamma(%d) in %d slots has %d elements, over the coordinate budget"
            % (r, m, count))
    out = []

    def rec(prefix, remaining):
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], r)
    out.sort(key=index_sort_key)
    return GammaSet(m=m, r=r, elements=tuple(out))


def coordinate_layout(n, gamma):
    """Canonical coordinate order for K^{n * |Gamma|}: xi-major, i-minor.

    With this layout the Gamma(r') coordinates are a prefix of the Gamma(r)
    ones for every r' <= r, which is what makes the projections "onto the
    first ... coordinates".
    """
    return [(i, xi) for xi in gamma for i in range(1, n + 1)]


@dataclass(frozen=True)
class CoordinateMaps:
    """Index bookkeeping for the ambient space K^{alpha(n,m)}.

    pi_indices select the Gamma(C-1) block, psi_indices the Gamma(1) block,
    and phi_blocks[k] maps the Gamma(C-1) block through xi -> xi + k
    (block 0 being the identity / pi block).
    """

    n: int
    m: int
    C: int
    alpha: int
    beta: int
    layout: tuple
    pi_indices: tuple
    psi_indices: tuple
    phi_blocks: tuple


def coordinate_maps(n, m, bit_budget=None):
    """Build the coordinate maps pi, psi, phi for the (n, m) axiom shape."""
    if n < 1 or m < 1:
        raise ContextError("n and m must be >= 1")
    C = bounds.bound_C(1, m, n, bit_budget=bit_budget)
    alpha = n * math.comb(C + m, m)
    beta = n * math.comb(C - 1 + m, m)
    if alpha > coord_budget():
        raise ResourceBudgetError(
            "alpha(%d,%d) = %d exceeds the coordinate budget" % (n, m, alpha))
    big = gamma_set(m, C)
    layout = coordinate_layout(n, big)
    pos = {v: idx for idx, v in enumerate(layout)}
    small = gamma_set(m, C - 1) if C >= 1 else gamma_set(m, 0)
    pi = tuple(pos[(i, xi)] for xi in small for i in range(1, n + 1))
    one = gamma_set(m, 1)
    psi = tuple(pos[(i, xi)] for xi in one for i in range(1, n + 1))
    blocks = [pi]
    for k in range(1, m + 1):
        blocks.append(tuple(pos[(i, shift(xi, k))]
                            for xi in small for i in range(1, n + 1)))
    return CoordinateMaps(n=n, m=m, C=C, alpha=alpha, beta=beta,
                          layout=tuple(layout), pi_indices=pi,
                          psi_indices=psi, phi_blocks=tuple(blocks))

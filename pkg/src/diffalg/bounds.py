"""The Ackermann function and the realization-length bound C_{r,m}^n.

Everything here is exact big-integer arithmetic.  A configurable bit budget
(env var DIFFALG_BIT_BUDGET, default 2^20 bits) guards against the m >= 4
blowups; hitting it raises ResourceBudgetError rather than truncating.
"""
from __future__ import annotations

import os

from .errors import ContextError, ResourceBudgetError

DEFAULT_BIT_BUDGET = 1 << 20

# Looping more than this many times in the C^1 recursion is hopeless anyway.
MAX_RECURSION_STEPS = 1 << 20

_ack_memo = {}


def bit_budget():
    return int(os.environ.get("DIFFALG_BIT_BUDGET", DEFAULT_BIT_BUDGET))


def _check_bits(approx_bits, budget):
    if approx_bits > budget:
        # approx_bits itself can be astronomical; never render it in decimal
        size = ("~2^%d" % approx_bits.bit_length()
                if approx_bits.bit_length() > 64 else str(approx_bits))
        raise ResourceBudgetError(
            "result needs about %s bits, over the %d-bit budget"
            % (size, budget))


def _pow2(e, budget):
    _check_bits(e + 1, budget)
    return 1 << e


def ackermann(x, y, bit_budget_=None):
    """A(x, y) with closed forms for x <= 3 and memoized recursion above.

    The closed forms (y+1, y+2, 2y+3, 2^{y+3}-3) each follow from the
    recursion by induction on y.
    """
    if x < 0 or y < 0:
        raise ContextError("ackermann arguments must be naturals")
    budget = bit_budget() if bit_budget_ is None else bit_budget_
    if x == 0:
        return y + 1
    if x == 1:
        return y + 2
    if x == 2:
        _check_bits(y.bit_length() + 2, budget)
        return 2 * y + 3
    if x == 3:
        return _pow2(y + 3, budget) - 3
    key = (x, y)
    if key in _ack_memo:
        return _ack_memo[key]
    if y == 0:
        val = ackermann(x - 1, 1, budget)
    else:
        val = ackermann(x - 1, ackermann(x, y - 1, budget), budget)
    _ack_memo[key] = val
    return val


def _c1_recursive(r, m, budget):
    """C_{r,m}^1 by literally iterating C_{r,m}^1 = A(m-1, C_{r-1,m}^1)."""
    if r > MAX_RECURSION_STEPS:
        raise ResourceBudgetError(
            "C^1 recursion over %d steps exceeds the iteration budget" % r)
    value = 0
    for _ in range(r):
        value = ackermann(m - 1, value, budget)
    return value


def _c1(r, m, budget):
    """C_{r,m}^1, via the closed forms for m <= 3."""
    if m == 1:
        return r
    if m == 2:
        return 2 * r
    if m == 3:
        return 3 * (_pow2(r, budget) - 1)
    return _c1_recursive(r, m, budget)


def bound_C(r, m, n, bit_budget=None, force_recursive=False):
    """The realization bound C_{r,m}^n.

    C_{0,m}^1 = 0, C_{r,m}^1 = A(m-1, C_{r-1,m}^1), and
    C_{r,m}^n = C_{C_{r,m}^{n-1}, m}^1.  With force_recursive the m <= 3
    closed forms are bypassed (used for cross-checks in tests).
    """
    if m < 1 or n < 1:
        raise ContextError("m and n must be >= 1")
    if r < 0:
        raise ContextError("r must be >= 0")
    budget = bit_budget if bit_budget is not None else globals()["bit_budget"]()
    value = r
    for _ in range(n):
        if force_recursive:
            value = _c1_recursive(value, m, budget)
        else:
            value = _c1(value, m, budget)
    return value


def closed_form(r, m, n, bit_budget_=None):
    """The paper's closed forms where available, else None.

    C_{r,1}^n = r; C_{r,2}^n = 2^n * r; C_{r,3}^1 = 3(2^r - 1).
    """
    budget = bit_budget() if bit_budget_ is None else bit_budget_
    if m == 1:
        return r
    if m == 2:
        return _pow2(n, budget) * r
    if m == 3 and n == 1:
        return 3 * (_pow2(r, budget) - 1)
    return None

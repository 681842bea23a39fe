"""Shared corpus generators for the test suite.

Everything is seeded; corpora are deterministic across runs.
"""
from __future__ import annotations

import random

from diffalg.coeff import Coefficient, FieldMode
from diffalg.dpoly import Context, DiffPolynomial, derivation_image
from diffalg.groebner import IdealPresentation
from diffalg.kernels import KernelPresentation


def rand_rational(rng, span=3):
    p = rng.randint(-span, span)
    q = rng.choice([1, 1, 2, 3])
    return p, q


def rand_coeff(rng, nv, allow_base=True):
    p, q = rand_rational(rng)
    c = Coefficient.from_rational(p, q, nv)
    if nv and allow_base and rng.random() < 0.4:
        c = c + Coefficient.base_var(rng.randint(1, nv), nv)
    return c


def rand_dpoly(rng, ctx, variables, max_deg=3, max_terms=3, nonzero=True):
    """A sparse random polynomial in the given variables."""
    variables = list(variables)
    while True:
        f = DiffPolynomial.zero(ctx)
        for _ in range(rng.randint(1, max_terms)):
            term = DiffPolynomial.const(ctx, rand_coeff(rng, ctx.nv))
            deg = rng.randint(0, max_deg)
            for _ in range(deg):
                i, xi = rng.choice(variables)
                term = term * DiffPolynomial.var(ctx, i, xi)
            f = f + term
        if not nonzero or not f.is_zero():
            return f


def graph_kernel(rng, mode_kind="constants"):
    """A length-r kernel whose top derivatives are graphs over the lower ones.

    The ideal is generated by x_i^(r) - q_i(levels <= r-1), which presents a
    genuine kernel: the lower variables stay algebraically independent, so
    the derivation extends freely.
    """
    n = rng.choice([1, 2])
    r = rng.choice([1, 1, 2])
    ctx = Context(n=n, m=1, mode=FieldMode(mode_kind, 1))
    lower = [(i, (j,)) for i in range(1, n + 1) for j in range(r)]
    gens = []
    for i in range(1, n + 1):
        q = rand_dpoly(rng, ctx, lower, max_deg=3, max_terms=2, nonzero=False)
        gens.append(DiffPolynomial.var(ctx, i, (r,)) - q)
    return KernelPresentation(ctx=ctx, r=r, ideal=IdealPresentation(ctx, gens))


def ode_kernel(roots, mode_kind="constants"):
    """The kernel of an order-1 equation: f(x) with distinct rational roots,
    together with its formal derivative."""
    ctx = Context(n=1, m=1, mode=FieldMode(mode_kind, 1))
    x0 = DiffPolynomial.var(ctx, 1, (0,))
    f = DiffPolynomial.from_int(ctx, 1)
    for a in roots:
        f = f * (x0 - DiffPolynomial.from_int(ctx, a))
    gens = [f, derivation_image(f, 1)]
    return KernelPresentation(ctx=ctx, r=1, ideal=IdealPresentation(ctx, gens))


def kernel_corpus(count=50, seed=20240817):
    """Mixed corpus of valid ordinary kernels for the Lando property runs."""
    rng = random.Random(seed)
    out = []
    root_sets = [(0,), (1,), (2, -1), (1, -1), (0, 3)]
    for idx in range(count):
        if idx % 5 == 4:
            out.append(ode_kernel(root_sets[(idx // 5) % len(root_sets)],
                                  "constants" if idx % 2 else "rational"))
        else:
            out.append(graph_kernel(rng,
                                    "rational" if idx % 3 == 0 else "constants"))
    return out


def locus_with_point(rng, n, m):
    """A rational-mode point a = (p_1(t), ..., p_n(t)) and generators of a
    variety through it, built as g_j(x) - g_j(a)."""
    ctx = Context(n=n, m=m, mode=FieldMode("rational", m))
    nv = ctx.nv
    point = []
    for _ in range(n):
        c = Coefficient.from_rational(*rand_rational(rng), nv)
        for k in range(1, m + 1):
            if rng.random() < 0.7:
                p, q = rand_rational(rng, span=2)
                c = c + (Coefficient.from_rational(p, q, nv)
                         * Coefficient.base_var(k, nv) ** _small_pow(rng))
        point.append(c)
    zero = (0,) * m
    base_vars = [(i, zero) for i in range(1, n + 1)]
    gens = []
    for _ in range(rng.randint(1, 2)):
        g = rand_dpoly(rng, ctx, base_vars, max_deg=2, max_terms=2,
                       nonzero=False)
        value = g.evaluate({v: point[v[0] - 1] for v in base_vars})
        gens.append(g - DiffPolynomial.const(ctx, value))
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        gens = [DiffPolynomial.var(ctx, 1, zero)
                - DiffPolynomial.const(ctx, point[0])]
    return IdealPresentation(ctx, gens), point


def _small_pow(rng):
    return rng.choice([1, 1, 2])


def finite_solution_ideal(rng, ctx):
    """An ideal with a finite rational solution set plus the known solutions.

    Per variable a product of distinct integer-root linear factors; the
    solution set is the full grid of root combinations.
    """
    zero_xi = (0,) * ctx.m
    variables = [(i, zero_xi) for i in range(1, ctx.n + 1)]
    gens = []
    roots = {}
    for v in variables:
        vals = rng.sample(range(-3, 4), rng.randint(1, 2))
        roots[v] = vals
        g = DiffPolynomial.from_int(ctx, 1)
        xv = DiffPolynomial.var(ctx, v[0], v[1])
        for a in vals:
            g = g * (xv - DiffPolynomial.from_int(ctx, a))
        gens.append(g)
    solutions = [{}]
    for v in variables:
        solutions = [{**s, v: a} for s in solutions for a in roots[v]]
    points = [{v: Coefficient.from_int(a, ctx.nv) for v, a in s.items()}
              for s in solutions]
    return IdealPresentation(ctx, gens), variables, points


def brute_force_solutions(I, variables, box=range(-4, 5)):
    """Exhaustively search an integer box for common zeros of I's generators."""
    nv = I.ctx.nv
    found = []

    def rec(assignment, remaining):
        if not remaining:
            point = {v: Coefficient.from_int(a, nv)
                     for v, a in assignment.items()}
            if all(g.evaluate(point).is_zero() for g in I.generators):
                found.append(point)
            return
        v = remaining[0]
        for a in box:
            assignment[v] = a
            rec(assignment, remaining[1:])
        del assignment[v]

    rec({}, list(variables))
    return found

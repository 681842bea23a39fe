"""Buchberger-based ideal computations over the exact coefficient field.

Monomial orders are grevlex (default), lex, and block orders for
elimination.  The block order compares the eliminated block first, so the
basis elements free of eliminated variables generate the elimination ideal.
Reduced Groebner bases are unique for a fixed order, which is what makes
every downstream construction (prolongations, containment checks)
presentation-independent.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .dpoly import Context, DiffPolynomial, var_rank, _mono_key
from .errors import ContextError


# --- monomial helpers (monomials are sorted ((var, exp), ...) tuples) ------


def mono_mul(a, b):
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return _mono_key(exps)


def mono_div(a, b):
    """a / b, or None when b does not divide a."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return _mono_key(exps)


def mono_lcm(a, b):
    exps = dict(a)
    for v, e in b:
        if exps.get(v, 0) < e:
            exps[v] = e
    return _mono_key(exps)


def mono_coprime(a, b):
    vb = {v for v, _ in b}
    return all(v not in vb for v, _ in a)


def mono_deg(a):
    return sum(e for _, e in a)


class MonomialOrder:
    """A total order on monomials; instances are compare functions."""

    def __init__(self, kind, seq=None, leading=None):
        if kind not in ("lex", "grevlex", "block"):
            raise ContextError("unknown monomial order %r" % (kind,))
        self.kind = kind
        # explicit variable sequence, most significant first (lex only)
        self.seq = tuple(seq) if seq is not None else None
        # leading (eliminated) variable block (block order only)
        self.leading = frozenset(leading) if leading is not None else None
        self._key = functools.cmp_to_key(self.compare)

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def lex(cls, seq=None):
        return cls("lex", seq=seq)

    @classmethod
    def block_elim(cls, eliminate):
        return cls("block", leading=eliminate)

    # comparisons return -1 / 0 / 1

    @staticmethod
    def _grevlex_cmp(a, b):
        da, db = mono_deg(a), mono_deg(b)
        if da != db:
            return -1 if da < db else 1
        ea, eb = dict(a), dict(b)
        for v in sorted(set(ea) | set(eb), key=var_rank):
            d = ea.get(v, 0) - eb.get(v, 0)
            if d:
                # smaller exponent in the least significant variable wins
                return 1 if d < 0 else -1
        return 0

    def _lex_cmp(self, a, b):
        ea, eb = dict(a), dict(b)
        if self.seq is not None:
            vs = list(self.seq)
            rest = sorted((set(ea) | set(eb)) - set(vs),
                          key=var_rank, reverse=True)
            vs += rest
        else:
            vs = sorted(set(ea) | set(eb), key=var_rank, reverse=True)
        for v in vs:
            d = ea.get(v, 0) - eb.get(v, 0)
            if d:
                return -1 if d < 0 else 1
        return 0

    def _block_cmp(self, a, b):
        lead = self.leading

        def split(mono):
            inner = tuple(t for t in mono if t[0] in lead)
            outer = tuple(t for t in mono if t[0] not in lead)
            return inner, outer

        ia, oa = split(a)
        ib, ob = split(b)
        c = self._grevlex_cmp(ia, ib)
        if c:
            return c
        return self._grevlex_cmp(oa, ob)

    def compare(self, a, b):
        if self.kind == "grevlex":
            return self._grevlex_cmp(a, b)
        if self.kind == "lex":
            return self._lex_cmp(a, b)
        return self._block_cmp(a, b)

    def sort_key(self, mono):
        return self._key(mono)


# --- division and Buchberger ------------------------------------------------


def leading_term(f, order):
    """(monomial, coefficient) of the order-largest term; f nonzero."""
    mono = max(f.terms, key=order.sort_key)
    return mono, f.terms[mono]


def _mono_poly(ctx, mono, c):
    return DiffPolynomial(ctx, {mono: c})


def normal_form(f, basis, order):
    """Full remainder of f under multivariate division by basis."""
    ctx = f.ctx
    if not basis:
        return f
    leads = [(leading_term(g, order), g) for g in basis]
    remainder = DiffPolynomial.zero(ctx)
    p = f
    while not p.is_zero():
        mono, c = leading_term(p, order)
        reduced = False
        for (lm, lc), g in leads:
            q = mono_div(mono, lm)
            if q is not None:
                p = p - _mono_poly(ctx, q, c / lc) * g
                reduced = True
                break
        if not reduced:
            remainder = remainder + _mono_poly(ctx, mono, c)
            p = p - _mono_poly(ctx, mono, c)
    return remainder


def _s_poly(f, g, order):
    ctx = f.ctx
    lmf, lcf = leading_term(f, order)
    lmg, lcg = leading_term(g, order)
    lcm = mono_lcm(lmf, lmg)
    uf = mono_div(lcm, lmf)
    ug = mono_div(lcm, lmg)
    return (_mono_poly(ctx, uf, lcf.inverse()) * f
            - _mono_poly(ctx, ug, lcg.inverse()) * g)


def buchberger(gens, order):
    """Reduced Groebner basis of the ideal generated by gens.

    Classic Buchberger with the coprimality and chain criteria; pairs are
    processed in a deterministic (lcm order, index) queue, and the final
    reduction makes the result the unique reduced basis for the order.
    """
    G = [g for g in gens if not g.is_zero()]
    if not G:
        return []
    ctx = G[0].ctx
    lms = [leading_term(g, order)[0] for g in G]

    def pair_key(pair):
        i, j = pair
        return (order.sort_key(mono_lcm(lms[i], lms[j])), i, j)

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    done = set()
    while pairs:
        pair = min(pairs, key=pair_key)
        pairs.discard(pair)
        i, j = pair
        done.add(pair)
        if mono_coprime(lms[i], lms[j]):
            continue
        lcm = mono_lcm(lms[i], lms[j])
        chain = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if mono_div(lcm, lms[k]) is None:
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik in done and pjk in done:
                chain = True
                break
        if chain:
            continue
        s = normal_form(_s_poly(G[i], G[j], order), G, order)
        if s.is_zero():
            continue
        t = len(G)
        G.append(s)
        lms.append(leading_term(s, order)[0])
        for k in range(t):
            pairs.add((k, t))
    return _reduce_basis(G, order)


def _reduce_basis(G, order):
    """Minimalize, tail-reduce, normalize monic, sort ascending by lm."""
    lms = [leading_term(g, order)[0] for g in G]
    keep = []
    for i, lm in enumerate(lms):
        redundant = False
        for j, other in enumerate(lms):
            if i == j:
                continue
            if mono_div(lm, other) is not None:
                # break ties deterministically so exactly one survives
                if other != lm or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(G[i])
    reduced = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        r = normal_form(g, others, order) if others else g
        if r.is_zero():
            continue
        _, lc = leading_term(r, order)
        reduced.append(r.scale(lc.inverse()))
    reduced.sort(key=lambda g: order.sort_key(leading_term(g, order)[0]))
    # unit ideal collapses to {1}
    for g in reduced:
        if g.is_constant():
            return [DiffPolynomial.from_int(g.ctx, 1)]
    return reduced


# --- ideal presentations ------------------------------------------------------


@dataclass
class IdealPresentation:
    """Finite generator list plus a cached reduced Groebner basis."""

    ctx: Context
    generators: list
    order: MonomialOrder = field(default_factory=MonomialOrder.grevlex)
    _gb: list = field(default=None, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if g.ctx != self.ctx:
                raise ContextError("generator in wrong context")

    @property
    def reduced_gb(self):
        if self._gb is None:
            self._gb = buchberger(self.generators, self.order)
        return self._gb

    def is_zero_ideal(self):
        return not self.reduced_gb

    def is_unit_ideal(self):
        gb = self.reduced_gb
        return len(gb) == 1 and gb[0].is_constant()

    def normal_form(self, f):
        if f.ctx != self.ctx:
            raise ContextError("polynomial in wrong context")
        return normal_form(f, self.reduced_gb, self.order)

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def variables(self):
        out = set()
        for g in self.generators:
            out |= g.variables()
        return out


def elimination_ideal(I, keep):
    """Generators of I intersected with the subring on `keep` variables.

    Uses a block order eliminating the complement; the returned
    presentation's generators are its reduced grevlex basis.
    """
    keep = set(keep)
    # variables we keep but that never occur in I are harmless
    eliminate = I.variables() - keep
    if not eliminate:
        gb = buchberger(I.generators, MonomialOrder.grevlex())
        return IdealPresentation(I.ctx, list(gb), MonomialOrder.grevlex(),
                                 _gb=list(gb))
    order = MonomialOrder.block_elim(eliminate)
    gb = buchberger(I.generators, order)
    kept = [g for g in gb if g.variables() <= keep]
    # restricted to the kept variables the block order is plain grevlex,
    # so `kept` is already the reduced grevlex basis of the elimination ideal
    return IdealPresentation(I.ctx, list(kept), MonomialOrder.grevlex(),
                             _gb=list(kept))


def radical_member(f, I):
    """Rabinowitsch test: f in the radical of I."""
    if f.ctx != I.ctx:
        raise ContextError("polynomial in wrong context")
    if f.is_zero():
        return True
    ctx2 = I.ctx.with_n(I.ctx.n + 1)
    z = DiffPolynomial.var(ctx2, ctx2.n, (0,) * ctx2.m)
    gens = [g.with_context(ctx2) for g in I.generators]
    gens.append(z * f.with_context(ctx2) - 1)
    gb = buchberger(gens, MonomialOrder.grevlex())
    return len(gb) == 1 and gb[0].is_constant()

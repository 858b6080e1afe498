"""Buchberger Groebner bases under explicit lexicographic variable rankings,
with ideal saturation and elimination-ideal extraction.

The engine packs each exponent vector into a single integer (16-bit fields,
highest-ranked variable in the most significant field), so lexicographic
comparison is integer comparison and divisibility is a guard-bit trick; all
coefficient arithmetic is primitive-integer pseudo-reduction.  Pair selection
is the normal strategy (minimal lcm degree, ties broken lexicographically on
the lcm) and pair pruning uses the Gebauer-Moeller criteria.  Output bases
are reduced, canonically sorted, and deterministic for fixed input and order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd as igcd

from .poly import MPoly, MonomialOrder

_SAT_VAR = ("sat", 0)
_W = 16                      # bits per exponent field
_FIELD_MAX = (1 << (_W - 1)) - 1


class ResourceCapExceeded(RuntimeError):
    """A configured Groebner resource cap was hit; the result is unusable."""


@dataclass(frozen=True)
class GroebnerLimits:
    max_basis: int = 2000
    max_degree: int = 200

    def check_degree(self, deg: int):
        if deg > self.max_degree:
            raise ResourceCapExceeded(
                f"polynomial degree {deg} exceeds cap {self.max_degree}")

    def check_basis(self, size: int):
        if size > self.max_basis:
            raise ResourceCapExceeded(
                f"basis size {size} exceeds cap {self.max_basis}")


DEFAULT_LIMITS = GroebnerLimits()


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple
    order: MonomialOrder
    is_groebner: bool = False


class _Ring:
    """Packing context for a fixed variable ranking."""

    __slots__ = ("vars", "n", "rank", "guard", "shifts")

    def __init__(self, order: MonomialOrder):
        self.vars = order.vars
        self.n = len(self.vars)
        self.rank = order._rank
        # highest-ranked variable occupies the most significant field
        self.shifts = {v: _W * (self.n - 1 - i) for i, v in enumerate(self.vars)}
        g = 0
        for i in range(self.n):
            g |= 1 << (_W * i + _W - 1)
        self.guard = g

    def pack(self, mono) -> int:
        x = 0
        for v, e in mono:
            if e > _FIELD_MAX:
                raise ResourceCapExceeded(f"exponent {e} exceeds field width")
            x |= e << self.shifts[v]
        return x

    def unpack(self, x: int):
        out = []
        for i, v in enumerate(self.vars):
            e = (x >> (_W * (self.n - 1 - i))) & ((1 << _W) - 1)
            if e:
                out.append((v, e))
        return tuple(sorted(out))

    def degree(self, x: int) -> int:
        d = 0
        while x:
            d += x & ((1 << _W) - 1)
            x >>= _W
        return d

    def to_dense(self, p: MPoly) -> dict:
        out = {}
        for m, c in p.terms.items():
            if not isinstance(c, int):
                raise ValueError("dense engine expects integer coefficients")
            out[self.pack(m)] = c
        return out

    def from_dense(self, terms: dict) -> MPoly:
        return MPoly({self.unpack(x): c for x, c in terms.items()})


def _content_strip(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = igcd(g, c)
        if g == 1:
            return terms
    if g <= 1:
        return terms
    return {m: c // g for m, c in terms.items()}


class _GPoly:
    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict):
        self.terms = terms
        self.lm = max(terms)
        self.lc = terms[self.lm]


def _normalized(terms: dict) -> dict:
    terms = _content_strip(terms)
    if terms[max(terms)] < 0:
        terms = {m: -c for m, c in terms.items()}
    return terms


def _reduce_full(f: dict, basis: list, guard: int, ring: _Ring,
                 limits: GroebnerLimits) -> dict | None:
    """Full normal form of f against basis, fraction-free (result defined up
    to a positive rational factor).  None encodes zero."""
    if not f:
        return None
    work = dict(f)
    out: dict = {}
    while work:
        m = max(work)
        c = work.pop(m)
        red = None
        for g in basis:
            # g.lm divides m  <=>  every field of m reaches g.lm's
            if ((m | guard) - g.lm) & guard == guard:
                red = g
                break
        if red is None:
            out[m] = c
            continue
        d = igcd(c, red.lc)
        a = red.lc // d
        b = c // d
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for k in work:
                work[k] *= a
            for k in out:
                out[k] *= a
        shift = m - red.lm
        for k, v in red.terms.items():
            if k == red.lm:
                continue
            kk = k + shift
            s = work.get(kk, 0) - b * v
            if s:
                work[kk] = s
            else:
                work.pop(kk, None)
    if not out:
        return None
    out = _normalized(out)
    limits.check_degree(max(ring.degree(m) for m in out))
    return out


def _lcm(a: int, b: int, guard: int) -> int:
    d = (b | guard) - a
    m = d & guard
    sel = m - (m >> (_W - 1))
    return a + (d & sel)


def _spoly(f: _GPoly, g: _GPoly, guard: int) -> dict:
    l = _lcm(f.lm, g.lm, guard)
    d = igcd(f.lc, g.lc)
    cf = g.lc // d
    cg = f.lc // d
    sf = l - f.lm
    sg = l - g.lm
    out = {k + sf: v * cf for k, v in f.terms.items()}
    for k, v in g.terms.items():
        kk = k + sg
        s = out.get(kk, 0) - v * cg
        if s:
            out[kk] = s
        else:
            out.pop(kk, None)
    return out


def _update_pairs(G: list, pairs: list, h_idx: int, guard: int, ring: _Ring):
    """Gebauer-Moeller pair update after appending G[h_idx]."""
    h = G[h_idx]
    hlm = h.lm
    # group candidate pairs (i, h) by lcm; keep the smallest index per lcm
    # and remember whether some pair with that lcm is coprime (Buchberger 1)
    by_lcm: dict = {}
    for i in range(h_idx):
        glm = G[i].lm
        l = _lcm(glm, hlm, guard)
        rec = by_lcm.get(l)
        coprime = glm + hlm == l
        if rec is None:
            by_lcm[l] = [i, coprime]
        else:
            if coprime:
                rec[1] = True
            if i < rec[0]:
                rec[0] = i
    # criterion M: drop an lcm when another candidate lcm properly divides
    # it; only strictly smaller degrees can divide properly
    lcms = sorted((ring.degree(l), l) for l in by_lcm)
    final = []
    for pos, (dl, l) in enumerate(lcms):
        i, coprime = by_lcm[l]
        if coprime:
            continue
        lg = l | guard
        dominated = False
        for d2, l2 in lcms:
            if d2 >= dl:
                break
            if (lg - l2) & guard == guard:
                dominated = True
                break
        if not dominated:
            final.append((l, i))
    # criterion B on queued pairs: drop (i,j) when lm(h) divides lcm(i,j)
    # and lcm(i,h) != lcm(i,j) != lcm(j,h)
    retained = []
    for entry in pairs:
        _, l, i, j = entry
        if (((l | guard) - hlm) & guard == guard
                and _lcm(G[i].lm, hlm, guard) != l
                and _lcm(G[j].lm, hlm, guard) != l):
            continue
        retained.append(entry)
    pairs[:] = retained
    heapq.heapify(pairs)
    for l, i in final:
        heapq.heappush(pairs, (ring.degree(l), l, i, h_idx))


def buchberger(gens, order: MonomialOrder,
               limits: GroebnerLimits = DEFAULT_LIMITS) -> IdealBasis:
    """Reduced Groebner basis of the given generators under `order`."""
    ring = _Ring(order)
    guard = ring.guard
    polys = []
    for p in gens:
        if not isinstance(p, MPoly):
            raise TypeError("generators must be MPoly")
        if p.is_zero:
            continue
        if not order.covers(p):
            raise ValueError("generator has variables outside the order")
        _, prim = p.primitive()
        polys.append(prim)
    if not polys:
        return IdealBasis((), order, True)
    dense = []
    seen = set()
    for p in polys:
        d = _normalized(ring.to_dense(p))
        key = frozenset(d.items())
        if key not in seen:
            seen.add(key)
            dense.append(_GPoly(d))
    # deterministic start: ascending leading monomial, then support size
    dense.sort(key=lambda g: (g.lm, len(g.terms)))

    G: list = []
    pairs: list = []
    for g in dense:
        # pre-reduce each input against the ones already admitted
        r = _reduce_full(g.terms, G, guard, ring, limits)
        if r is None:
            continue
        G.append(_GPoly(r))
        _update_pairs(G, pairs, len(G) - 1, guard, ring)
        limits.check_basis(len(G))

    while pairs:
        _, l, i, j = heapq.heappop(pairs)
        s = _spoly(G[i], G[j], guard)
        if not s:
            continue
        r = _reduce_full(s, G, guard, ring, limits)
        if r is None:
            continue
        G.append(_GPoly(r))
        limits.check_basis(len(G))
        _update_pairs(G, pairs, len(G) - 1, guard, ring)

    # minimalize: drop any g whose leading monomial another one divides
    G.sort(key=lambda g: g.lm)
    minimal: list = []
    for g in G:
        if not any(((g.lm | guard) - h.lm) & guard == guard for h in minimal):
            minimal.append(g)
    # interreduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = minimal[:i] + minimal[i + 1:]
            r = _reduce_full(minimal[i].terms, others, guard, ring, limits)
            if r is None:
                minimal.pop(i)
                changed = True
                break
            if r != minimal[i].terms:
                minimal[i] = _GPoly(r)
                changed = True
    minimal.sort(key=lambda g: g.lm, reverse=True)
    out = tuple(ring.from_dense(g.terms) for g in minimal)
    return IdealBasis(out, order, True)


def normal_form(p: MPoly, basis: IdealBasis,
                limits: GroebnerLimits = DEFAULT_LIMITS) -> MPoly:
    """Fully reduced form of p against a Groebner basis (up to a positive
    rational factor)."""
    if not basis.is_groebner:
        raise ValueError("normal form needs a Groebner basis")
    if p.is_zero:
        return p
    ring = _Ring(basis.order)
    dense = [_GPoly(ring.to_dense(g.primitive()[1])) for g in basis.generators]
    r = _reduce_full(ring.to_dense(p.primitive()[1]), dense, ring.guard, ring,
                     limits)
    if r is None:
        return MPoly.zero()
    return ring.from_dense(r)


def membership(p: MPoly, basis: IdealBasis) -> bool:
    """Ideal membership via zero normal form."""
    return normal_form(p, basis).is_zero


def saturate(basis: IdealBasis, q: MPoly,
             limits: GroebnerLimits = DEFAULT_LIMITS) -> IdealBasis:
    """Basis of I : q^infinity via the extra-variable trick (t*q - 1 with t
    ranked above everything, then drop every polynomial involving t)."""
    if q.is_zero:
        raise ValueError("cannot saturate by zero")
    if _SAT_VAR in q.vars():
        raise ValueError("reserved saturation variable in q")
    ext = basis.order.extended([_SAT_VAR])
    gens = list(basis.generators) + [MPoly.var(_SAT_VAR) * q - 1]
    full = buchberger(gens, ext, limits)
    kept = tuple(g for g in full.generators if _SAT_VAR not in g.vars())
    return IdealBasis(kept, basis.order, True)


def eliminate(basis: IdealBasis, keep) -> list:
    """Members of a Groebner basis lying entirely in the kept variables; a
    Groebner basis of the elimination ideal when the order ranks every
    eliminated variable above every kept one."""
    if not basis.is_groebner:
        raise ValueError("eliminate needs a Groebner basis")
    keep = set(keep)
    rank = basis.order._rank
    kept_ranks = [rank[v] for v in keep if v in rank]
    if kept_ranks:
        first_kept = min(kept_ranks)
        occurring = set()
        for g in basis.generators:
            occurring |= g.vars()
        for v in occurring - keep:
            if rank[v] > first_kept:
                raise ValueError(
                    f"order does not eliminate {v} above the kept variables")
    return [g for g in basis.generators if g.vars() <= keep]

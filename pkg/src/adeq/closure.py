"""Closure properties of difference-algebraic sequences.

Given defining difference polynomials p_1, ..., p_N and a rational function f,
the pipeline builds the radical-rational dynamical system whose states are the
windows s_i(n), ..., s_i(n+order_i-1) (plus optional auxiliary states such as
a running sum), prolongs it, saturates away the denominators and eliminates
everything but the output shifts.  The result is a difference polynomial
vanishing at t(n) = f(s_1, ..., s_N), of order at most the system dimension.

Convenience wrappers cover sums, products, reciprocals, radicals, partial
sums/products and the Aitken delta-squared transformation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diffpoly import (
    DegenerateInputError, DiffPoly, RatExpr, solve_linear, sv,
)
from .groebner import (
    DEFAULT_LIMITS, GroebnerLimits, MonomialOrder, buchberger, eliminate,
)
from .poly import (
    MPoly, Var, canonical_order, canonicalize, exact_div, parvar,
)

OUT_SEQ = "@z"


class InternalError(RuntimeError):
    """An impossible state (by the supporting theory); indicates a bug."""


@dataclass(frozen=True)
class StateEq:
    """One equation sigma(state)^mu * den = free + tangle of the system."""
    state: Var
    kind: str               # "chain" | "block" | "extra"
    mu: int
    den: MPoly              # this equation's own denominator; divides Q
    free_num: MPoly         # part free of the next shift
    tangle_num: MPoly       # part containing the next shift, degree < mu in it
    next_var: Var


@dataclass(frozen=True)
class ExtraState:
    """Auxiliary first-order state sigma(T) = num/den over window + T vars."""
    name: str
    num: MPoly
    den: MPoly


@dataclass(frozen=True)
class DynSystem:
    inputs: tuple
    equations: tuple
    f_num: MPoly
    f_den: MPoly
    q_common: MPoly
    params: frozenset

    @property
    def states(self) -> list:
        return [eq.state for eq in self.equations]

    @property
    def dimension(self) -> int:
        return len(self.equations)

    @property
    def exponents(self) -> list:
        return [eq.mu for eq in self.equations]

    def a_list(self) -> list:
        """Numerators of the untangled right-hand sides against the common
        denominator Q."""
        return [eq.free_num * exact_div(self.q_common, eq.den)
                for eq in self.equations]

    def e_list(self) -> list:
        """Numerators of the tangled parts against the common denominator."""
        return [eq.tangle_num * exact_div(self.q_common, eq.den)
                for eq in self.equations]

    @property
    def b(self) -> MPoly:
        """Output numerator: the system's output reads Q*z = b."""
        return self.f_num * exact_div(self.q_common, self.f_den)


@dataclass(frozen=True)
class ClosureResult:
    polynomial: DiffPoly
    order: int
    degree: int
    side_conditions: tuple = ()
    stride: int = 1

    def as_sigma_equation(self) -> DiffPoly:
        """Reinterpret a stride-d result as an equation in the plain shift
        (t(n+j) becomes s(n+j*d))."""
        if self.stride == 1:
            return self.polynomial
        name = self.polynomial.single_seq()
        out = {}
        for m, c in self.polynomial.body.terms.items():
            mm = tuple(sorted(
                (("seq", v[1], v[2] * self.stride), e) if v[0] == "seq" else (v, e)
                for v, e in m))
            out[mm] = c
        return DiffPoly(MPoly(out), self.polynomial.params)


def window_exprs(p: DiffPoly, upto: int) -> dict:
    """Rational expressions for s(n+k), order <= k <= upto, over the state
    window s(n..order-1).  Requires a rationalizing defining polynomial."""
    r = p.order
    name = p.single_seq()
    if not p.is_rationalizing():
        raise DegenerateInputError(
            f"cannot express {name}(n+{upto}) beyond the window: defining "
            "polynomial is not rationalizing")
    base = solve_linear(p, sv(name, r))
    exprs = {r: base}
    for k in range(r + 1, upto + 1):
        prev = exprs[k - 1]
        num = DiffPoly(prev.num).shift(1).body
        den = DiffPoly(prev.den).shift(1).body
        sub = {tuple(sv(name, r)): (base.num, base.den)}
        num2, c1 = num.subs_fractions(sub)
        den2, c2 = den.subs_fractions(sub)
        exprs[k] = RatExpr(num2 * c2, den2 * c1)
    return exprs


def build_system(inputs, f, extra=(), limits: GroebnerLimits = DEFAULT_LIMITS
                 ) -> DynSystem:
    """Construct the radical-rational dynamical system for f(s_1, ..., s_N).

    `f` is a RatExpr (or (num, den) pair of MPoly) over sequence variables
    name_i(n+offset); offsets below the input's order address the state window
    directly, larger offsets are composed through the solved recursion (only
    possible for rationalizing inputs)."""
    inputs = tuple(inputs)
    if not inputs:
        raise ValueError("at least one input equation is required")
    params: set = set()
    names = []
    for p in inputs:
        if not isinstance(p, DiffPoly):
            raise TypeError("inputs must be DiffPoly")
        if p.is_constant:
            raise DegenerateInputError("constant input polynomial")
        if p.has_index:
            raise DegenerateInputError(
                "closure inputs must not contain the index symbol n")
        name = p.single_seq()
        if p.order < 1:
            raise DegenerateInputError(
                f"input for {name} must have order >= 1")
        if name in names:
            raise ValueError(f"duplicate sequence symbol {name!r}")
        names.append(name)
        params |= p.params

    if isinstance(f, RatExpr):
        f_num, f_den = f.num, f.den
    else:
        f_num, f_den = f
        if not isinstance(f_num, MPoly):
            f_num = MPoly.const(f_num)
        if not isinstance(f_den, MPoly):
            f_den = MPoly.const(f_den)
    if f_den.is_zero:
        raise DegenerateInputError("f has zero denominator")

    orders = {p.single_seq(): p.order for p in inputs}
    extra_names = [e.name for e in extra]
    # compose window expressions for offsets at or beyond each input's order
    needed: dict = {}
    for v in (f_num.vars() | f_den.vars()):
        if v[0] == "seq":
            if v[1] in extra_names:
                continue
            if v[1] not in orders:
                raise ValueError(f"f references unknown sequence {v[1]!r}")
            if v[2] >= orders[v[1]]:
                needed[v[1]] = max(needed.get(v[1], 0), v[2])
        elif v[0] == "par":
            params.add(v[1])
    sub: dict = {}
    for p in inputs:
        name = p.single_seq()
        if name in needed:
            exprs = window_exprs(p, needed[name])
            for k, r in exprs.items():
                sub[tuple(sv(name, k))] = (r.num, r.den)
    if sub:
        num2, c1 = f_num.subs_fractions(sub)
        den2, c2 = f_den.subs_fractions(sub)
        eff = RatExpr(num2 * c2, den2 * c1)
        f_num, f_den = eff.num, eff.den

    equations = []
    q_common = f_den
    for p in inputs:
        name = p.single_seq()
        r = p.order
        for k in range(r - 1):
            equations.append(StateEq(
                state=tuple(sv(name, k)), kind="chain", mu=1,
                den=MPoly.one(), free_num=MPoly.var(tuple(sv(name, k + 1))),
                tangle_num=MPoly.zero(), next_var=tuple(sv(name, k + 1))))
        top = tuple(sv(name, r))
        mu = p.body.degree_in(top)
        init = p.initial().body
        rest = p.body - init * MPoly.var(top, mu)
        free = MPoly.zero()
        tangle = MPoly.zero()
        for e, coeff in rest.as_univariate(top).items():
            piece = coeff * MPoly.var(top, e) if e else coeff
            if e:
                tangle = tangle - piece
            else:
                free = free - piece
        equations.append(StateEq(
            state=tuple(sv(name, r - 1)), kind="block", mu=mu, den=init,
            free_num=free, tangle_num=tangle, next_var=top))
        q_common = q_common * init
    for ex in extra:
        if ex.name in names or ex.name in (OUT_SEQ,):
            raise ValueError(f"auxiliary state name {ex.name!r} collides")
        tvar = tuple(sv(ex.name, 0))
        nxt = tuple(sv(ex.name, 1))
        if nxt in ex.num.vars() | ex.den.vars():
            raise ValueError("auxiliary state update must be explicit")
        equations.append(StateEq(
            state=tvar, kind="extra", mu=1, den=ex.den, free_num=ex.num,
            tangle_num=MPoly.zero(), next_var=nxt))
        q_common = q_common * ex.den
        params |= {v[1] for v in ex.num.vars() | ex.den.vars()
                   if v[0] == "par"}

    return DynSystem(inputs=inputs, equations=tuple(equations),
                     f_num=f_num, f_den=f_den,
                     q_common=q_common, params=frozenset(params))


def _presolve(gens: list, eliminable: set, max_total_degree: int = 16):
    """Use unit-coefficient linear generators (var - expr) to substitute
    eliminated variables away.  The ideal and its elimination ideal are
    unchanged; this only shrinks the Groebner problem."""
    subs: dict = {}
    progress = True
    while progress:
        progress = False
        for idx, g in enumerate(gens):
            if g.is_zero:
                continue
            cands = sorted(g.vars() & eliminable,
                           key=lambda v: (-v[2], v[1]) if v[0] == "seq" else (0, ""))
            for v in cands:
                if g.degree_in(v) != 1:
                    continue
                a = g.coeff_of(v, 1)
                if not a.is_constant:
                    continue
                b = g.coeff_of(v, 0)
                expr = b * Fraction(-1, a.constant_value())
                if expr.total_degree() > max_total_degree:
                    continue
                repl = {v: expr}
                gens[idx] = MPoly.zero()
                for j, h in enumerate(gens):
                    if not h.is_zero and v in h.vars():
                        gens[j] = h.subs_vars(repl)
                for w in list(subs):
                    subs[w] = subs[w].subs_vars(repl)
                subs[v] = expr
                eliminable = eliminable - {v}
                progress = True
                break
            if progress:
                break
    return [g for g in gens if not g.is_zero], subs


def eliminate_system(sys: DynSystem, out_name: str = "s",
                     limits: GroebnerLimits = DEFAULT_LIMITS,
                     presolve: bool = True) -> ClosureResult:
    """Prolong the system, saturate by the denominators, eliminate the state
    shifts and pick the lowest-order, lowest-degree output polynomial."""
    M = sys.dimension
    gens: list = []
    for eq in sys.equations:
        base = (eq.den * MPoly.var(eq.next_var, eq.mu)
                - eq.free_num - eq.tangle_num)
        d = DiffPoly(base)
        for j in range(M):
            g = d.shift(j).body
            if not g.is_zero:
                gens.append(g)
    zpoly = DiffPoly(sys.f_den * MPoly.var(tuple(sv(OUT_SEQ, 0))) - sys.f_num)
    for j in range(M + 1):
        gens.append(zpoly.shift(j).body)
    # drop duplicates introduced by chain equations collapsing
    seen = set()
    uniq = []
    for g in gens:
        key = frozenset(canonicalize(g).terms.items())
        if key not in seen:
            seen.add(key)
            uniq.append(g)
    gens = uniq

    zvars = [tuple(sv(OUT_SEQ, j)) for j in range(M, -1, -1)]
    parvars = sorted(parvar(name) for name in sys.params)
    keep = set(zvars) | set(parvars)
    eliminable = set()
    for g in gens:
        eliminable |= {v for v in g.vars() if v[0] == "seq" and v[1] != OUT_SEQ}

    side = [DiffPoly(sys.q_common, sys.params).shift(j)
            for j in range(M + 1)]

    subs: dict = {}
    if presolve:
        gens, subs = _presolve(gens, eliminable)

    if not sys.q_common.is_constant:
        hprod = MPoly.one()
        for cond in side:
            q = cond.body.subs_vars(subs) if subs else cond.body
            if q.is_zero:
                raise DegenerateInputError(
                    "a denominator collapses to zero under the system "
                    "relations; inputs are degenerate")
            if not q.is_constant:
                hprod = hprod * q
        if not hprod.is_constant:
            t = ("sat", 0)
            gens = list(gens) + [MPoly.var(t) * hprod - 1]

    elim = set()
    for g in gens:
        elim |= {v for v in g.vars() if v not in keep and v[0] != "sat"}
    ranked = [("sat", 0)] if any(("sat", 0) in g.vars() for g in gens) else []
    ranked += sorted(elim, key=lambda v: (-v[2], v[1]))
    ranked += zvars + parvars
    order = MonomialOrder(ranked)

    basis = buchberger(gens, order, limits)
    members = eliminate(basis, keep)
    if not members:
        raise InternalError(
            "empty elimination ideal; contradicts the order-bound theorem")

    def sel_key(g: MPoly):
        d = DiffPoly(g)
        if d.is_constant:
            raise DegenerateInputError(
                "elimination ideal contains a parameter-only relation; "
                "inputs are degenerate")
        lead = canonical_order(g.vars()).leading(g)[0]
        return (d.order, d.degree, len(g.terms), lead)

    chosen = min(members, key=sel_key)
    result = DiffPoly(chosen, sys.params).rename({OUT_SEQ: out_name}).canonical()
    if result.order > M:
        raise InternalError("output order exceeds the system dimension")
    return ClosureResult(polynomial=result, order=result.order,
                         degree=result.degree, side_conditions=tuple(side))


def arith(inputs, f, out_name: str = "s", extra=(),
          limits: GroebnerLimits = DEFAULT_LIMITS) -> ClosureResult:
    """Difference polynomial for f(s_1, ..., s_N): the full pipeline."""
    return eliminate_system(build_system(inputs, f, extra=extra),
                            out_name=out_name, limits=limits)


# ---------------------------------------------------------------------------
# wrappers for the standard closure properties


def _head(p: DiffPoly, offset: int = 0) -> MPoly:
    return MPoly.var(tuple(sv(p.single_seq(), offset)))


def add(p: DiffPoly, q: DiffPoly, i: int = 0, j: int = 0, out_name="s",
        limits=DEFAULT_LIMITS) -> ClosureResult:
    """ADE for u(n+i) + v(n+j); order at most order(p) + order(q)."""
    return arith([p, q], (_head(p, i) + _head(q, j), MPoly.one()),
                 out_name, limits=limits)


def mul(p: DiffPoly, q: DiffPoly, i: int = 0, j: int = 0, out_name="s",
        limits=DEFAULT_LIMITS) -> ClosureResult:
    """ADE for u(n+i) * v(n+j); order at most order(p) + order(q)."""
    return arith([p, q], (_head(p, i) * _head(q, j), MPoly.one()),
                 out_name, limits=limits)


def div(q: DiffPoly, j: int = 0, out_name="s",
        limits=DEFAULT_LIMITS) -> ClosureResult:
    """ADE for 1/v(n+j); the caller asserts the sequence never vanishes."""
    return arith([q], (MPoly.one(), _head(q, j)), out_name, limits=limits)


def radical(p: DiffPoly, N: int, out_name="s") -> ClosureResult:
    """ADE for the N-th root, by inflating every shift-term exponent N-fold;
    no elimination is needed."""
    if N < 1:
        raise ValueError("radical index must be positive")
    if N == 1:
        res = p.rename({p.single_seq(): out_name}).canonical()
        return ClosureResult(res, res.order, res.degree, ())
    name = p.single_seq()
    out = {}
    for m, c in p.body.terms.items():
        mm = tuple(sorted((v, e * N) if v[0] == "seq" else (v, e)
                          for v, e in m))
        out[mm] = c
    res = DiffPoly(MPoly(out), p.params).rename({name: out_name}).canonical()
    return ClosureResult(res, res.order, res.degree, ())


def partial_sum(p: DiffPoly, i: int = 0, out_name="s",
                limits=DEFAULT_LIMITS) -> ClosureResult:
    """ADE for the running sum of u(n+i); order at most order(p) + 1."""
    acc = "@acc"
    ex = ExtraState(acc, MPoly.var(tuple(sv(acc, 0))) + _head(p, i),
                    MPoly.one())
    return arith([p], (MPoly.var(tuple(sv(acc, 0))), MPoly.one()),
                 out_name, extra=(ex,), limits=limits)


def partial_product(p: DiffPoly, i: int = 0, out_name="s",
                    limits=DEFAULT_LIMITS) -> ClosureResult:
    """ADE for the running product of u(n+i); order at most order(p) + 1."""
    acc = "@acc"
    ex = ExtraState(acc, MPoly.var(tuple(sv(acc, 0))) * _head(p, i),
                    MPoly.one())
    return arith([p], (MPoly.var(tuple(sv(acc, 0))), MPoly.one()),
                 out_name, extra=(ex,), limits=limits)


def aitken(p: DiffPoly, out_name="s", limits=DEFAULT_LIMITS) -> ClosureResult:
    """ADE for the Aitken delta-squared transform
    t(n) = (s(n)s(n+2) - s(n+1)^2) / (s(n+2) - 2 s(n+1) + s(n)).

    Heads beyond the input's order are composed through the solved recursion,
    so low-order rationalizing inputs are accepted as well.  The second
    difference appearing in the denominator is recorded among the side
    conditions through Q."""
    h0, h1, h2 = _head(p, 0), _head(p, 1), _head(p, 2)
    return arith([p], (h0 * h2 - h1 * h1, h2 - 2 * h1 + h0),
                 out_name, limits=limits)

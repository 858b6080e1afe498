"""Difference polynomials.

A difference polynomial is a multivariate polynomial in shifted sequence
terms name(n+j) together with (optionally) the index symbol n and declared
parameters.  The shift endomorphism increments every sequence shift and maps
n to n+k; it fixes constants and parameters.  Order and degree are taken over
the sequence terms only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .poly import (
    MPoly, Var, canonical_order, canonicalize, gcd, idxvar,
    leading_coeff_canonical, parvar, seqvar,
)


class DiffVar(NamedTuple):
    """A shifted sequence term; as a tuple it doubles as an MPoly variable key."""
    kind: str
    seq: str
    shift: int


def sv(seq: str, shift: int = 0) -> DiffVar:
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    return DiffVar("seq", seq, shift)


class DegenerateInputError(ValueError):
    """A mathematically degenerate situation that the caller must handle
    (vanishing initial, singular system, ambiguous polymorphic step, ...)."""


class DiffPoly:
    """Wrapper around an MPoly whose sequence variables carry the shift
    structure.  Immutable; all operations return new values."""

    __slots__ = ("body", "params")

    def __init__(self, body: MPoly, params: Iterable[str] = ()):
        self.body = body
        occurring = {v[1] for v in body.vars() if v[0] == "par"}
        self.params = frozenset(params) | occurring

    # -- inspection ----------------------------------------------------------

    def seq_vars(self) -> list[DiffVar]:
        return sorted(DiffVar(*v) for v in self.body.vars() if v[0] == "seq")

    def seq_names(self) -> list[str]:
        return sorted({v[1] for v in self.body.vars() if v[0] == "seq"})

    @property
    def is_constant(self) -> bool:
        return not any(v[0] == "seq" for v in self.body.vars())

    @property
    def has_index(self) -> bool:
        return idxvar() in self.body.vars()

    @property
    def order(self) -> int:
        shifts = [v[2] for v in self.body.vars() if v[0] == "seq"]
        return max(shifts) if shifts else 0

    @property
    def degree(self) -> int:
        return self.body.total_degree(kinds=("seq",))

    def single_seq(self) -> str:
        names = self.seq_names()
        if len(names) != 1:
            raise ValueError(f"expected one sequence symbol, found {names}")
        return names[0]

    def top_var(self) -> DiffVar:
        return sv(self.single_seq(), self.order)

    def __eq__(self, other):
        return isinstance(other, DiffPoly) and self.body == other.body

    def __hash__(self):
        return hash(self.body)

    def __repr__(self):
        return f"DiffPoly({format_poly(self.body)})"

    # -- core operations ------------------------------------------------------

    def shift(self, k: int = 1) -> "DiffPoly":
        """Apply the shift endomorphism k times: every name(n+j) becomes
        name(n+j+k) and n becomes n+k."""
        if k < 0:
            raise ValueError("cannot shift backwards")
        if k == 0:
            return self
        out = {}
        for m, c in self.body.terms.items():
            mm = tuple(sorted(
                (("seq", v[1], v[2] + k), e) if v[0] == "seq" else (v, e)
                for v, e in m))
            out[mm] = out.get(mm, 0) + c
        shifted = MPoly(out)
        if self.has_index:
            shifted = shifted.subs_vars({idxvar(): MPoly.var(idxvar()) + k})
        return DiffPoly(shifted, self.params)

    def initial(self) -> "DiffPoly":
        """Leading coefficient viewed as univariate in the highest shift."""
        if self.is_constant:
            raise DegenerateInputError("constant polynomial has no initial")
        top = self.top_var()
        m = self.body.degree_in(top)
        return DiffPoly(self.body.coeff_of(top, m), self.params)

    def is_rationalizing(self) -> bool:
        if self.is_constant:
            return False
        return self.body.degree_in(self.top_var()) == 1

    def canonical(self) -> "DiffPoly":
        return DiffPoly(canonicalize(self.body), self.params)

    def specialize(self, values: dict) -> "DiffPoly":
        """Substitute rational values for parameters (by name)."""
        mapping = {parvar(k): MPoly.const(v) for k, v in values.items()}
        return DiffPoly(self.body.subs_vars(mapping), ())

    def rename(self, mapping: dict) -> "DiffPoly":
        return DiffPoly(self.body.rename_seq(mapping), self.params)

    def scaled_equal(self, other: "DiffPoly") -> bool:
        """Equal as polynomials up to a nonzero constant multiple."""
        return canonicalize(self.body) == canonicalize(other.body)


class RatExpr:
    """Quotient of difference polynomials, stored gcd-reduced with the
    denominator primitive and positive-leading."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly, reduce: bool = True):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero:
            g = gcd(num, den)
            if not g.is_constant or g.constant_value() != 1:
                from .poly import exact_div
                num = exact_div(num, g)
                den = exact_div(den, g)
        if num.is_zero:
            den = MPoly.one()
        cden, pden = den.primitive()
        if leading_coeff_canonical(pden) < 0:
            pden, cden = -pden, -cden
        self.num = num * (1 / cden)
        self.den = pden

    @classmethod
    def from_poly(cls, p: MPoly) -> "RatExpr":
        return cls(p, MPoly.one(), reduce=False)

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    def __eq__(self, other):
        return (isinstance(other, RatExpr)
                and self.num * other.den == other.num * self.den)

    def __repr__(self):
        if self.den == MPoly.one():
            return f"RatExpr({format_poly(self.num)})"
        return f"RatExpr(({format_poly(self.num)}) / ({format_poly(self.den)}))"


# ---------------------------------------------------------------------------
# module-level operations matching the public surface


def shift(p: DiffPoly, k: int) -> DiffPoly:
    return p.shift(k)


def order_degree(p: DiffPoly) -> tuple[int, int]:
    """(order, degree) over the sequence terms; constants give (0, 0)."""
    return (p.order, p.degree)


def initial(p: DiffPoly) -> DiffPoly:
    return p.initial()


def is_rationalizing(p: DiffPoly) -> bool:
    return p.is_rationalizing()


def solve_linear(p: DiffPoly, v: DiffVar) -> RatExpr:
    """Solve p = 0 for a variable occurring linearly: p = A*v + B gives
    v = -B/A, gcd-reduced."""
    body = p.body
    d = body.degree_in(tuple(v))
    if d != 1:
        raise DegenerateInputError(
            f"cannot solve: degree in {v} is {d}, expected 1")
    a = body.coeff_of(tuple(v), 1)
    b = body.coeff_of(tuple(v), 0)
    return RatExpr(-b, a)


def substitute(p: DiffPoly, bindings: dict) -> tuple[DiffPoly, MPoly]:
    """Substitute RatExprs (or plain MPolys) for variables, clearing
    denominators.  Returns (result, cleared_denominator)."""
    mapping = {}
    for v, r in bindings.items():
        key = tuple(v)
        if isinstance(r, RatExpr):
            mapping[key] = (r.num, r.den)
        elif isinstance(r, MPoly):
            mapping[key] = (r, MPoly.one())
        else:
            mapping[key] = (MPoly.const(r), MPoly.one())
    num, den = p.body.subs_fractions(mapping)
    return DiffPoly(num, p.params), den


def solved_form(p: DiffPoly) -> RatExpr:
    """For a rationalizing p, the rational recursion right-hand side: p = 0
    solved for its highest shift."""
    return solve_linear(p, p.top_var())


def from_solved(top: DiffVar, rhs: RatExpr) -> DiffPoly:
    """Difference polynomial den*top - num associated with top = rhs."""
    body = rhs.den * MPoly.var(tuple(top)) - rhs.num
    return DiffPoly(body).canonical()


# ---------------------------------------------------------------------------
# rendering


def _var_text(v: Var) -> str:
    if v[0] == "seq":
        return f"{v[1]}(n+{v[2]})" if v[2] else f"{v[1]}(n)"
    if v[0] == "idx":
        return "n"
    if v[0] == "par":
        return v[1]
    return f"_t{v[1]}"


def _mono_text(m, order) -> str:
    if not m:
        return "1"
    ranked = sorted(m, key=lambda p_: order._rank[p_[0]])
    return "*".join(f"{_var_text(v)}^{e}" if e > 1 else _var_text(v)
                    for v, e in ranked)


def format_poly(p: MPoly, order=None, descending: bool = True) -> str:
    """Canonical text: terms in descending canonical-lex order by default."""
    if p.is_zero:
        return "0"
    if order is None:
        order = canonical_order(p.vars())
    terms = order.sorted_terms(p)
    if not descending:
        terms = terms[::-1]
    parts = []
    for m, c in terms:
        neg = c < 0
        c = -c if neg else c
        if not m:
            txt = str(c)
        elif c == 1:
            txt = _mono_text(m, order)
        else:
            txt = f"{c}*{_mono_text(m, order)}"
        parts.append(("- " if neg else "+ ") + txt)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _is_bare_sum(txt: str) -> bool:
    depth = 0
    for i, ch in enumerate(txt):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def _lowest_coeff(p: MPoly):
    order = canonical_order(p.vars())
    lo = min(p.terms, key=order.key)
    return p.terms[lo]


def _factored_text(p: MPoly) -> str:
    """Display with integer and monomial content pulled out front."""
    from .poly import mono_div
    if p.is_zero:
        return "0"
    mc = p.mono_content()
    cont, prim = p.primitive()
    sign = ""
    if _lowest_coeff(prim) < 0:
        prim, sign = -prim, "-"
    core = MPoly({mono_div(m, mc): c for m, c in prim.terms.items()})
    order = canonical_order(p.vars())
    pieces = []
    if cont != 1:
        pieces.append(str(cont) if cont.denominator == 1 else f"({cont})")
    if mc:
        pieces.append(_mono_text(mc, order))
    # factors read lowest shift first, following the usual display of
    # rational recursions
    core_txt = format_poly(core, order, descending=False).replace(" ", "")
    if len(core.terms) > 1 and pieces:
        pieces.append(f"({core_txt})")
    elif core_txt != "1" or not pieces:
        pieces.append(core_txt)
    return sign + "*".join(pieces)


def format_equation(p: DiffPoly, solved: bool = False) -> str:
    """`<canonical polynomial> = 0`, or the solved rational-recursion form
    for rationalizing polynomials."""
    if solved and not p.is_constant and p.is_rationalizing():
        top = p.top_var()
        rhs = solve_linear(p, top)
        num, den = rhs.num, rhs.den
        if _lowest_coeff(den) < 0:
            num, den = -num, -den
        num_txt = _factored_text(num)
        if den.is_constant and den.constant_value() == 1:
            return f"{_var_text(tuple(top))} = {num_txt}"
        den_txt = _factored_text(den)
        if _is_bare_sum(den_txt):
            den_txt = f"({den_txt})"
        if _is_bare_sum(num_txt):
            num_txt = f"({num_txt})"
        return f"{_var_text(tuple(top))} = {num_txt}/{den_txt}"
    return f"{format_poly(canonicalize(p.body))} = 0"

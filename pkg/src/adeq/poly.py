"""Exact sparse multivariate polynomial arithmetic over Q.

Variables are structural keys (plain tuples), not interned symbols:

    ("seq", name, shift)   a sequence term  name(n+shift), shift >= 0
    ("idx",)               the index symbol n
    ("par", name)          a symbolic parameter
    ("sat", k)             internal helper variable (ideal saturation)

A monomial is a tuple of (variable, exponent) pairs sorted by variable key;
a polynomial maps monomials to nonzero rational coefficients, stored as plain
ints whenever the value is integral.  All values are immutable by convention
and every operation is a pure function, so sharing across threads is safe.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

Var = tuple
Mono = tuple  # ((var, exp), ...) sorted by var

ONE_MONO: Mono = ()


def seqvar(name: str, shift: int = 0) -> Var:
    if shift < 0:
        raise ValueError(f"negative shift {shift} for sequence {name!r}")
    return ("seq", name, shift)


def idxvar() -> Var:
    return ("idx",)


def parvar(name: str) -> Var:
    return ("par", name)


def is_seqvar(v: Var) -> bool:
    return v[0] == "seq"


# ---------------------------------------------------------------------------
# monomial helpers (merge-based, keys stay sorted)

def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_divides(a: Mono, b: Mono) -> bool:
    """True if monomial a divides monomial b."""
    db = dict(b)
    for v, e in a:
        if db.get(v, 0) < e:
            return False
    return True


def mono_div(a: Mono, b: Mono) -> Mono:
    """a / b, assuming b divides a."""
    db = dict(b)
    out = []
    for v, e in a:
        r = e - db.get(v, 0)
        if r < 0:
            raise ArithmeticError("monomial division is not exact")
        if r:
            out.append((v, r))
    return tuple(out)


def mono_lcm(a: Mono, b: Mono) -> Mono:
    d = dict(a)
    for v, e in b:
        if d.get(v, 0) < e:
            d[v] = e
    return tuple(sorted(d.items()))


def mono_gcd(a: Mono, b: Mono) -> Mono:
    db = dict(b)
    out = []
    for v, e in a:
        m = min(e, db.get(v, 0))
        if m:
            out.append((v, m))
    return tuple(out)


def mono_degree(m: Mono, kinds=None) -> int:
    if kinds is None:
        return sum(e for _, e in m)
    return sum(e for v, e in m if v[0] in kinds)


def _norm_coeff(c):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    if isinstance(c, int):
        return c
    return Fraction(c)


class MPoly:
    """Multivariate polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _normalized=False):
        if terms is None:
            self.terms = {}
        elif _normalized:
            self.terms = terms
        else:
            clean = {}
            for m, c in terms.items():
                c = _norm_coeff(c)
                if c != 0:
                    clean[m] = c
            self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return cls({}, _normalized=True)

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _norm_coeff(c)
        if c == 0:
            return cls.zero()
        return cls({ONE_MONO: c}, _normalized=True)

    @classmethod
    def one(cls) -> "MPoly":
        return cls.const(1)

    @classmethod
    def var(cls, v: Var, exp: int = 1) -> "MPoly":
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return cls.one()
        return cls({((v, exp),): 1}, _normalized=True)

    @classmethod
    def monomial(cls, m: Mono, c=1) -> "MPoly":
        c = _norm_coeff(c)
        if c == 0:
            return cls.zero()
        return cls({m: c}, _normalized=True)

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self):
        if not self.terms:
            return 0
        if self.is_constant:
            return self.terms[ONE_MONO]
        raise ValueError("polynomial is not constant")

    def vars(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def total_degree(self, kinds=None) -> int:
        if not self.terms:
            return 0
        return max(mono_degree(m, kinds) for m in self.terms)

    def degree_in(self, v: Var) -> int:
        d = 0
        for m in self.terms:
            for vv, e in m:
                if vv == v and e > d:
                    d = e
        return d

    def coeff_of(self, v: Var, exp: int) -> "MPoly":
        """Coefficient of v**exp, as a polynomial in the remaining variables."""
        out = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for vv, ee in m:
                if vv == v:
                    e = ee
                else:
                    rest.append((vv, ee))
            if e == exp:
                out[tuple(rest)] = c
        return MPoly(out, _normalized=True)

    def as_univariate(self, v: Var) -> dict:
        """Map exponent-of-v -> MPoly coefficient (nonzero entries only)."""
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for vv, ee in m:
                if vv == v:
                    e = ee
                else:
                    rest.append((vv, ee))
            buckets.setdefault(e, {})[tuple(rest)] = c
        return {e: MPoly(t, _normalized=True) for e, t in buckets.items()}

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s == 0:
                res.pop(m, None)
            else:
                res[m] = _norm_coeff(s)
        return MPoly(res, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()}, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.const(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = _norm_coeff(other)
            if c == 0:
                return MPoly.zero()
            if c == 1:
                return self
            return MPoly({m: _norm_coeff(cc * c) for m, cc in self.terms.items()},
                         _normalized=True)
        if not self.terms or not other.terms:
            return MPoly.zero()
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        res: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s == 0:
                    res.pop(m, None)
                else:
                    res[m] = s
        return MPoly({m: _norm_coeff(c) for m, c in res.items()}, _normalized=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, assignment: dict):
        """Exact value of the polynomial at the given variable assignment."""
        missing = [v for v in self.vars() if v not in assignment]
        if missing:
            raise KeyError(f"no value for variable(s) {sorted(missing)}")
        total = 0
        powers: dict = {}
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                p = powers.get((v, e))
                if p is None:
                    p = assignment[v] ** e
                    powers[(v, e)] = p
                val = val * p
            total = total + val
        return total

    def subs_vars(self, mapping: dict) -> "MPoly":
        """Substitute polynomials for variables (variables absent from the
        mapping are kept)."""
        if not mapping:
            return self
        touched = {v for v in self.vars() if v in mapping}
        if not touched:
            return self
        out = MPoly.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            acc = MPoly.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    p = cache.get(key)
                    if p is None:
                        repl = mapping[v]
                        if not isinstance(repl, MPoly):
                            repl = MPoly.const(repl)
                        p = repl ** e
                        cache[key] = p
                    acc = acc * p
                else:
                    rest.append((v, e))
            if rest:
                acc = acc * MPoly.monomial(tuple(rest))
            out = out + acc
        return out

    def subs_fractions(self, mapping: dict) -> tuple["MPoly", "MPoly"]:
        """Substitute num/den pairs for variables, clearing denominators.

        Returns (numerator, cleared_denominator) with the denominator equal to
        the product of den_v ** max_exponent_of_v over substituted variables.
        """
        touched = {v for v in self.vars() if v in mapping}
        if not touched:
            return self, MPoly.one()
        maxexp = {v: self.degree_in(v) for v in touched}
        den = MPoly.one()
        for v in sorted(maxexp):
            den = den * (mapping[v][1] ** maxexp[v])
        out = MPoly.zero()
        for m, c in self.terms.items():
            acc = MPoly.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    num_v, den_v = mapping[v]
                    if not isinstance(num_v, MPoly):
                        num_v = MPoly.const(num_v)
                    if not isinstance(den_v, MPoly):
                        den_v = MPoly.const(den_v)
                    acc = acc * num_v ** e * den_v ** (maxexp[v] - e)
                else:
                    rest.append((v, e))
            for v in sorted(touched - {vv for vv, _ in m}):
                acc = acc * mapping[v][1] ** maxexp[v]
            if rest:
                acc = acc * MPoly.monomial(tuple(rest))
            out = out + acc
        return out, den

    def rename_seq(self, mapping: dict) -> "MPoly":
        """Rename sequence symbols, e.g. {"@z": "s"}; shifts are preserved."""
        out = {}
        for m, c in self.terms.items():
            mm = []
            for v, e in m:
                if v[0] == "seq" and v[1] in mapping:
                    mm.append((("seq", mapping[v[1]], v[2]), e))
                else:
                    mm.append((v, e))
            out[tuple(sorted(mm))] = c
        if len(out) != len(self.terms):
            raise ValueError("sequence renaming collided")
        return MPoly(out, _normalized=True)

    # -- content and normal forms -------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            if isinstance(c, int):
                num = igcd(num, abs(c))
            else:
                num = igcd(num, abs(c.numerator))
                den = den * c.denominator // igcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> tuple[Fraction, "MPoly"]:
        """Split into (content, primitive part with coprime integer coefficients)."""
        if not self.terms:
            return Fraction(0), self
        c = self.content()
        inv = 1 / c
        return c, MPoly({m: _norm_coeff(v * inv) for m, v in self.terms.items()},
                        _normalized=True)

    def mono_content(self) -> Mono:
        """gcd of all monomials (largest monomial dividing every term)."""
        it = iter(self.terms)
        try:
            g = next(it)
        except StopIteration:
            return ONE_MONO
        for m in it:
            if not g:
                break
            g = mono_gcd(g, m)
        return g


# ---------------------------------------------------------------------------
# monomial orders and division


class MonomialOrder:
    """Lexicographic order over an explicit variable ranking (highest first)."""

    __slots__ = ("vars", "_rank")

    def __init__(self, ranked_vars):
        self.vars = tuple(ranked_vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable in order")
        self._rank = {v: i for i, v in enumerate(self.vars)}

    def key(self, m: Mono) -> tuple:
        vec = [0] * len(self.vars)
        for v, e in m:
            i = self._rank.get(v)
            if i is None:
                raise KeyError(f"variable {v} not covered by this order")
            vec[i] = e
        return tuple(vec)

    def covers(self, p: MPoly) -> bool:
        return all(v in self._rank for v in p.vars())

    def leading(self, p: MPoly) -> tuple[Mono, object]:
        if p.is_zero:
            raise ValueError("zero polynomial has no leading term")
        lm = max(p.terms, key=self.key)
        return lm, p.terms[lm]

    def sorted_terms(self, p: MPoly) -> list:
        return sorted(p.terms.items(), key=lambda t: self.key(t[0]), reverse=True)

    def extended(self, new_top_vars) -> "MonomialOrder":
        return MonomialOrder(tuple(new_top_vars) + self.vars)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.vars == other.vars

    def __hash__(self):
        return hash(self.vars)


def _canonical_var_rank(v: Var):
    kind = v[0]
    if kind == "sat":
        return (0, v[1], 0)
    if kind == "seq":
        return (1, v[1], -v[2])
    if kind == "idx":
        return (2, "", 0)
    return (3, v[1], 0)


def canonical_order(varset) -> MonomialOrder:
    """Default display/normalization order: sequence terms first (name
    ascending, higher shifts greater), then n, then parameters."""
    return MonomialOrder(sorted(varset, key=_canonical_var_rank))


def leading_coeff_canonical(p: MPoly):
    order = canonical_order(p.vars())
    _, lc = order.leading(p)
    return lc


def canonicalize(p: MPoly) -> MPoly:
    """Clear denominators, divide by integer content, make the leading
    coefficient positive under the canonical order."""
    if p.is_zero:
        return p
    _, prim = p.primitive()
    if leading_coeff_canonical(prim) < 0:
        prim = -prim
    return prim


def arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def evaluate(p: MPoly, assignment: dict):
    return p.evaluate(assignment)


def divide(p: MPoly, divisors, order: MonomialOrder):
    """Multivariate division: p = sum(q_i * d_i) + r, no monomial of r
    divisible by any divisor's leading monomial under the given order."""
    divisors = list(divisors)
    if any(d.is_zero for d in divisors):
        raise ZeroDivisionError("zero divisor in division")
    lead = [order.leading(d) for d in divisors]
    quots = [MPoly.zero() for _ in divisors]
    rem = MPoly.zero()
    work = p
    while not work.is_zero:
        m, c = order.leading(work)
        for i, (lm, lc) in enumerate(lead):
            if mono_divides(lm, m):
                factor = MPoly.monomial(mono_div(m, lm), Fraction(c) / lc)
                quots[i] = quots[i] + factor
                work = work - factor * divisors[i]
                break
        else:
            t = MPoly.monomial(m, c)
            rem = rem + t
            work = work - t
    return quots, rem


def exact_div(p: MPoly, d: MPoly) -> MPoly:
    """p / d when the division is exact; raises otherwise."""
    if d.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero:
        return p
    if d.is_constant:
        inv = Fraction(1) / Fraction(d.constant_value())
        return p * inv
    order = canonical_order(p.vars() | d.vars())
    (q,), r = divide(p, [d], order)
    if not r.is_zero:
        raise ArithmeticError("polynomial division is not exact")
    return q


# ---------------------------------------------------------------------------
# multivariate gcd (recursive content / primitive part, subresultant PRS)


def _upoly(p: MPoly, v: Var) -> list:
    """Dense coefficient list in v (index = exponent), entries MPoly."""
    uni = p.as_univariate(v)
    d = max(uni)
    return [uni.get(e, MPoly.zero()) for e in range(d + 1)]


def _upoly_to_mpoly(coeffs: list, v: Var) -> MPoly:
    out = MPoly.zero()
    for e, c in enumerate(coeffs):
        if not c.is_zero:
            out = out + c * MPoly.var(v, e)
    return out


def _upoly_pseudo_rem(a: list, b: list) -> list:
    """Pseudo-remainder of dense MPoly-coefficient polynomials."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[db]
    r = list(a)
    for _ in range(da - db + 1):
        dr = len(r) - 1
        while dr >= 0 and r[dr].is_zero:
            dr -= 1
            r.pop()
        if dr < db:
            break
        lr = r[dr]
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[dr - db + i] = r[dr - db + i] - lr * b[i]
        r.pop()
    while r and r[-1].is_zero:
        r.pop()
    return r


def _poly_gcd_list(polys) -> MPoly:
    g = MPoly.zero()
    for p in polys:
        g = gcd(g, p)
        if g.is_constant and not g.is_zero:
            return MPoly.one()
    return g


def _content_gcd(a: Fraction, b: Fraction) -> Fraction:
    num = igcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // igcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _sign_normalized(p: MPoly) -> MPoly:
    if p.is_zero:
        return p
    return -p if leading_coeff_canonical(p) < 0 else p


def gcd(p: MPoly, q: MPoly) -> MPoly:
    """gcd carrying the rational content (so gcd(6*x^2, 4*x) = 2*x); the
    polynomial part is primitive and the leading coefficient positive under
    the canonical order.  gcd(p, 0) is p normalized to a positive lead."""
    if p.is_zero and q.is_zero:
        return MPoly.zero()
    if p.is_zero:
        return _sign_normalized(q)
    if q.is_zero:
        return _sign_normalized(p)
    cont = _content_gcd(p.content(), q.content())
    if p.is_constant or q.is_constant:
        return MPoly.const(cont)
    # Monomial content comes out first; it also covers the monomial/monomial
    # fast path.
    mc = mono_gcd(p.mono_content(), q.mono_content())
    if len(p.terms) == 1 and len(q.terms) == 1:
        return MPoly.monomial(mc, cont)
    pv, qv = p.vars(), q.vars()
    common = pv & qv
    if not common:
        return MPoly.monomial(mc, cont) if mc else MPoly.const(cont)
    if p.terms == q.terms:
        return _sign_normalized(p)
    # Choose the common variable of least maximal degree as the main one.
    v = min(common, key=lambda w: (max(p.degree_in(w), q.degree_in(w)),
                                   _canonical_var_rank(w)))
    a, b = _upoly(p, v), _upoly(q, v)
    ca = _poly_gcd_list(c for c in a if not c.is_zero)
    cb = _poly_gcd_list(c for c in b if not c.is_zero)
    cont_poly = gcd(ca, cb)
    a = [exact_div(c, ca) if not c.is_zero else c for c in a]
    b = [exact_div(c, cb) if not c.is_zero else c for c in b]
    if len(a) < len(b):
        a, b = b, a
    # Primitive PRS on the primitive parts.
    while b:
        r = _upoly_pseudo_rem(a, b)
        if not r:
            a = b
            break
        cr = _poly_gcd_list(c for c in r if not c.is_zero)
        a, b = b, [exact_div(c, cr) if not c.is_zero else c for c in r]
    g = _upoly_to_mpoly(a, v)
    cg = _poly_gcd_list(c for c in _upoly(g, v) if not c.is_zero)
    g = exact_div(g, cg)
    return canonicalize(g * cont_poly) * cont

import random
from fractions import Fraction

import pytest

from adeq.diffpoly import (
    DegenerateInputError, DiffPoly, RatExpr, format_equation, initial,
    is_rationalizing, order_degree, shift, solve_linear, substitute, sv,
)
from adeq.poly import MPoly, idxvar


def term(name, shift_=0):
    return MPoly.var(sv(name, shift_))


def x(j=0):
    return term("x", j)


def dp(body):
    return DiffPoly(body)


def factorial_ade():
    # s(n+2)*s(n) - s(n+1)*(s(n) + s(n+1)) = 0
    return dp(x(2) * x(0) - x(1) * (x(0) + x(1)))


def fraction_of_factorial_ade():
    # ADE of n!/(n!+1), order 2 and degree 4
    u0, u1, u2 = x(0), x(1), x(2)
    return dp(u2 * (u1 ** 2 * u0 - u1 ** 2 + u1 * u0 - u0)
              - u1 * (2 * u1 * u0 - u1 - u0))


def bernoulli_relation():
    return dp(5 * x(3) * x(0) - 6 * x(2) * x(1) + x(1) * x(0))


def test_shift_constant():
    p = dp(MPoly.const(5))
    assert shift(p, 3).body == MPoly.const(5)


def test_shift_factorial_ade():
    assert shift(factorial_ade(), 1) == dp(x(3) * x(1) - x(2) * (x(1) + x(2)))


def test_shift_catalan_holonomic():
    n = MPoly.var(idxvar())
    s0, s1, s2 = term("s", 0), term("s", 1), term("s", 2)
    p = dp((n + 2) * s1 - (4 * n + 2) * s0)
    assert shift(p, 1) == dp((n + 3) * s2 - (4 * n + 6) * s1)


def test_order_degree_paper_fixtures():
    assert order_degree(factorial_ade()) == (2, 2)
    assert order_degree(fraction_of_factorial_ade()) == (2, 4)
    assert order_degree(dp(x(0))) == (0, 1)
    assert dp(MPoly.const(3)).is_constant


def test_initial_read_offs():
    assert initial(factorial_ade()) == dp(x(0))
    assert initial(bernoulli_relation()) == dp(5 * x(0))
    # Catalan rational recursion: (10*x - sx)*s2x - 2*sx*(8*x + sx)
    p = dp((10 * x(0) - x(1)) * x(2) - 2 * x(1) * (8 * x(0) + x(1)))
    assert initial(p) == dp(10 * x(0) - x(1))
    with pytest.raises(DegenerateInputError):
        initial(dp(MPoly.const(1)))


def test_solve_linear_cfinite_coefficient():
    # c1(n)*s(n+1) + c0(n)*s(n) = 0 solved for c1(n)
    c0, c1 = term("c0"), term("c1")
    s0, s1 = term("s", 0), term("s", 1)
    r = solve_linear(dp(c1 * s1 + c0 * s0), sv("c1", 0))
    assert r == RatExpr(-c0 * s0, s1)


def test_solve_linear_trivial_and_highest_shift():
    r = solve_linear(dp(x(0) - 3), sv("x", 0))
    assert r == RatExpr(MPoly.const(3), MPoly.one())
    r = solve_linear(factorial_ade(), sv("x", 2))
    assert r == RatExpr(x(1) * (x(0) + x(1)), x(0))


def test_solve_linear_rejects_nonlinear():
    with pytest.raises(DegenerateInputError):
        solve_linear(dp(x(1) ** 2 - x(0)), sv("x", 1))


def test_substitute_zero_binding():
    q, r = dp(x(1) * x(0) + x(0)), None
    p = dp(x(2) * (x(1) * x(0)) + (x(0) + 1))
    res, den = substitute(p, {sv("x", 2): RatExpr(MPoly.zero(), MPoly.one())})
    assert res == dp(x(0) + 1)
    assert den == MPoly.one()


def test_substitute_hand_computation():
    # x -> sigma(x) - x in sigma(x) - x^2
    p = dp(x(1) - x(0) ** 2)
    res, den = substitute(p, {sv("x", 0): RatExpr(x(1) - x(0), MPoly.one())})
    assert den == MPoly.one()
    assert res == dp(x(1) - (x(1) - x(0)) ** 2)


def test_substitute_round_trip_annihilates():
    rng = random.Random(3)
    for _ in range(50):
        a = MPoly.const(rng.randint(1, 5)) * x(0) + rng.randint(-4, 4)
        b = x(0) ** 2 * rng.randint(-3, 3) + x(1) * rng.randint(1, 3)
        p = dp(a * x(2) + b)
        sol = solve_linear(p, sv("x", 2))
        res, den = substitute(p, {sv("x", 2): sol})
        assert res.body.is_zero


def test_is_rationalizing():
    assert is_rationalizing(factorial_ade())
    assert not is_rationalizing(dp(x(2) ** 2 - x(0)))
    assert is_rationalizing(bernoulli_relation())


def rand_diffpoly(rng):
    terms = {}
    order = rng.randint(1, 3)
    deg = rng.randint(1, 3)
    for _ in range(rng.randint(2, 6)):
        mono = []
        total = 0
        for j in range(order + 1):
            e = rng.randint(0, deg - total if deg > total else 0)
            total += e
            if e:
                mono.append((sv("x", j), e))
        terms[tuple(sorted(mono))] = rng.randint(-5, 5)
    p = MPoly(terms)
    while sv("x", order) not in p.vars():
        p = p + MPoly.var(sv("x", order)) * rng.randint(1, 3)
    return dp(p)


def test_prop_initial_order_degree_drop():
    # ord(I_p) < ord(p) and deg(I_p) < deg(p) on 200 random polynomials
    rng = random.Random(11)
    checked = 0
    while checked < 200:
        p = rand_diffpoly(rng)
        if p.is_constant:
            continue
        ip = initial(p)
        assert ip.order < p.order
        assert ip.degree < p.degree
        checked += 1


def test_shift_is_ring_endomorphism():
    rng = random.Random(13)
    for _ in range(40):
        p, q = rand_diffpoly(rng), rand_diffpoly(rng)
        assert shift(dp(p.body * q.body), 1) == dp(shift(p, 1).body * shift(q, 1).body)
        assert shift(dp(p.body + q.body), 1) == dp(shift(p, 1).body + shift(q, 1).body)


def test_format_equation_solved():
    p = dp(x(2) * (10 * x(0) - x(1)) - 2 * x(1) * (8 * x(0) + x(1)))
    txt = format_equation(p.rename({"x": "s"}), solved=True)
    assert txt == "s(n+2) = 2*s(n+1)*(8*s(n)+s(n+1))/(10*s(n)-s(n+1))"
    assert format_equation(dp(MPoly.zero())) == "0 = 0"

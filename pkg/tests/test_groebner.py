import pytest

from adeq.groebner import (
    GroebnerLimits, IdealBasis, ResourceCapExceeded, buchberger, eliminate,
    membership, normal_form, saturate,
)
from adeq.poly import MPoly, MonomialOrder

X1, X2, Z = ("par", "x1"), ("par", "x2"), ("par", "z")
W1, W2 = ("par", "w1"), ("par", "w2")


def v(key, e=1):
    return MPoly.var(key, e)


def test_already_reduced_basis():
    order = MonomialOrder([X1, X2])
    basis = buchberger([v(X1) - 2, v(X2) - 3], order)
    assert list(basis.generators) == [v(X1) - 2, v(X2) - 3]
    assert basis.is_groebner


def test_hand_spolynomial_example():
    # {x1^2, x1*x2 + x2^2} under lex x1 > x2 completes with x2^3
    order = MonomialOrder([X1, X2])
    basis = buchberger([v(X1, 2), v(X1) * v(X2) + v(X2, 2)], order)
    assert v(X2, 3) in basis.generators


def test_input_generators_reduce_to_zero():
    order = MonomialOrder([X1, X2])
    gens = [v(X1, 3) - 2 * v(X1) * v(X2),
            v(X1, 2) * v(X2) - 2 * v(X2, 2) + v(X1)]
    basis = buchberger(gens, order)
    for g in gens:
        assert membership(g, basis)


def test_spair_criterion_on_result():
    from adeq.poly import mono_lcm, mono_div, mono_divides
    order = MonomialOrder([X1, X2])
    gens = [v(X1, 2) + v(X2), v(X1) * v(X2, 2) - v(X1), v(X2, 3) - 2 * v(X2)]
    basis = buchberger(gens, order)
    polys = list(basis.generators)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            mi, ci = order.leading(polys[i])
            mj, cj = order.leading(polys[j])
            l = mono_lcm(mi, mj)
            s = (MPoly.monomial(mono_div(l, mi), cj) * polys[i]
                 - MPoly.monomial(mono_div(l, mj), ci) * polys[j])
            assert normal_form(s, basis).is_zero


def test_determinism():
    order = MonomialOrder([X1, X2])
    gens = [v(X1, 2) + v(X2, 2) - 1, v(X1) * v(X2) - 2]
    b1 = buchberger(gens, order)
    b2 = buchberger(list(reversed(gens)), order)
    assert b1.generators == b2.generators


def test_saturate_monomial():
    order = MonomialOrder([X1, X2])
    basis = buchberger([v(X1) * v(X2)], order)
    sat = saturate(basis, v(X1))
    assert list(sat.generators) == [v(X2)]


def test_saturate_nonzerodivisor():
    order = MonomialOrder([X1, X2])
    basis = buchberger([v(X1)], order)
    sat = saturate(basis, v(X2))
    assert list(sat.generators) == [v(X1)]


def test_saturate_hand_example():
    # <x1^2*x2 - x1> : x1^inf = <x1*x2 - 1>
    order = MonomialOrder([X1, X2])
    basis = buchberger([v(X1, 2) * v(X2) - v(X1)], order)
    sat = saturate(basis, v(X1))
    assert list(sat.generators) == [v(X1) * v(X2) - 1]


def test_saturate_idempotent():
    order = MonomialOrder([X1, X2])
    for gens in ([v(X1, 2) * v(X2) - v(X1)],
                 [v(X1) * v(X2, 2), v(X1, 2)],
                 [(v(X1) - v(X2)) * v(X2)]):
        basis = buchberger(gens, order)
        s1 = saturate(basis, v(X2))
        s2 = saturate(s1, v(X2))
        assert s1.generators == s2.generators


def test_eliminate_product():
    order = MonomialOrder([W1, W2, Z])
    basis = buchberger([v(Z) - v(W1) * v(W2), v(W1) - 2, v(W2) - 3], order)
    elim = eliminate(basis, {Z})
    assert elim == [v(Z) - 6]


def test_eliminate_sqrt2():
    order = MonomialOrder([W1, Z])
    basis = buchberger([v(W1, 2) - 2, v(Z) - v(W1)], order)
    assert eliminate(basis, {Z}) == [v(Z, 2) - 2]


def test_eliminate_order_precondition():
    order = MonomialOrder([Z, W1])  # kept variable ranked above eliminated
    basis = buchberger([v(W1, 2) - 2, v(Z) - v(W1)], order)
    with pytest.raises(ValueError):
        eliminate(basis, {Z})


def test_membership_trivial():
    order = MonomialOrder([X1, X2])
    g = v(X1, 2) - v(X2)
    basis = buchberger([g], order)
    assert membership(g, basis)
    assert not membership(MPoly.one(), basis)


def test_resource_cap():
    order = MonomialOrder([X1, X2])
    limits = GroebnerLimits(max_basis=1, max_degree=200)
    with pytest.raises(ResourceCapExceeded):
        buchberger([v(X1, 2) + v(X2), v(X1) * v(X2, 2) - v(X1)], order,
                   limits)

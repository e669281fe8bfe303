import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstab.exact import (
    BiPoly,
    LaurentPoly,
    Sign,
    ZeroPolynomialError,
    as_rational,
    dominance_bound,
    format_rational,
    laurent_sign_at_zero_plus,
    rational_arith,
    squarefree_decomposition,
    sturm_isolate_roots,
)
from weierstab.oracles import sign_changes_on_grid

from conftest import rationals


# --- rationals --------------------------------------------------------------


def test_rational_add():
    assert rational_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)


def test_rational_canonical_form():
    q = as_rational("2/4")
    assert (q.numerator, q.denominator) == (1, 2)
    assert format_rational(q) == "1/2"
    assert format_rational(Fraction(-6, 3)) == "-2"


def test_rational_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rational_arith(Fraction(3, 7), 0, "div")


def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational("1/0")


@given(rationals(), rationals(), rationals())
def test_ring_axioms(a, b, c):
    assert rational_arith(rational_arith(a, b, "add"), c, "add") == rational_arith(a, rational_arith(b, c, "add"), "add")
    assert rational_arith(rational_arith(a, b, "mul"), c, "mul") == rational_arith(a, rational_arith(b, c, "mul"), "mul")
    assert rational_arith(a, rational_arith(b, c, "add"), "mul") == rational_arith(
        rational_arith(a, b, "mul"), rational_arith(a, c, "mul"), "add"
    )
    r = rational_arith(a, b, "sub")
    assert r.denominator > 0


# --- Laurent polynomials ----------------------------------------------------


def test_sign_at_zero_plus_examples():
    assert laurent_sign_at_zero_plus(LaurentPoly({-1: 3, 0: -5, 1: 2})) is Sign.POSITIVE
    assert laurent_sign_at_zero_plus(LaurentPoly()) is Sign.ZERO
    assert laurent_sign_at_zero_plus(LaurentPoly({3: -2, 5: 7})) is Sign.NEGATIVE


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({-2: 0, 1: 3}) - LaurentPoly({1: 3})
    assert p.is_zero()
    assert LaurentPoly({0: 1, 2: 0}).terms == {0: 1}


def test_laurent_arithmetic():
    p = LaurentPoly({-1: 1, 1: 1})
    assert p * p == LaurentPoly({-2: 1, 0: 2, 2: 1})
    assert p(Fraction(1, 2)) == Fraction(5, 2)
    assert str(LaurentPoly({-1: 3, 0: -5, 1: 2})) == "3*u^-1 - 5 + 2*u"


laurents = st.dictionaries(st.integers(-3, 6), rationals(10, 6), min_size=1, max_size=6).map(LaurentPoly)


@settings(max_examples=300)
@given(laurents, st.integers(1, 10**6))
def test_sign_below_dominance_bound(p, k):
    if p.is_zero():
        return
    bound = dominance_bound(p)
    u0 = min(bound, Fraction(1, 1000)) * Fraction(k, 10**6 + 1)
    assert 0 < u0 < bound
    assert Sign((p(u0) > 0) - (p(u0) < 0)) is laurent_sign_at_zero_plus(p)


@given(laurents, laurents, laurents)
def test_laurent_ring(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)


def test_bipoly_substitution():
    # (2u^2 + uv) with v = 3/u - 2u  ->  3
    bp = BiPoly({(2, 0): 2, (1, 1): 1})
    assert bp.substitute_v(LaurentPoly({-1: 3, 1: -2})) == LaurentPoly({0: 3})
    assert bp.u_degree() == 2 and bp.v_degree() == 1
    assert bp.evaluate(1, 1) == 3


# --- Sturm isolation --------------------------------------------------------


def _dense_oracle(p, lo, hi):
    return sign_changes_on_grid(p, Fraction(lo), Fraction(hi), 10_000)


def test_isolate_sqrt2():
    roots = sturm_isolate_roots(LaurentPoly({0: -2, 2: 1}), (Fraction(1, 2), 2))
    assert len(roots) == 1
    r = roots[0]
    assert r.width <= Fraction(1, 2**20)
    assert r.lo**2 < 2 < r.hi**2


def test_isolate_root_outside():
    assert sturm_isolate_roots(LaurentPoly({0: -3, 1: 1}), (Fraction(1, 2), 2)) == []


def test_isolate_two_roots():
    # (u - 1)(u - 3/2) = u^2 - 5/2 u + 3/2
    p = LaurentPoly({0: Fraction(3, 2), 1: Fraction(-5, 2), 2: 1})
    assert _dense_oracle(p, Fraction(1, 2), 2) == 2  # oracle first
    roots = sturm_isolate_roots(p, (Fraction(1, 2), 2))
    assert len(roots) == 2
    assert roots[0].lo < 1 < roots[0].hi <= roots[1].lo < Fraction(3, 2) < roots[1].hi


def test_isolate_zero_polynomial():
    with pytest.raises(ZeroPolynomialError):
        sturm_isolate_roots(LaurentPoly(), (1, 2))


def test_isolate_requires_positive_interval():
    with pytest.raises(ValueError):
        sturm_isolate_roots(LaurentPoly({1: 1, 0: -1}), (0, 2))


def test_endpoint_roots_are_excluded():
    # roots 1/2 and 2 sit on the endpoints, 1 is inside
    p = LaurentPoly({1: 1, 0: Fraction(-1, 2)}) * LaurentPoly({1: 1, 0: -1}) * LaurentPoly({1: 1, 0: -2})
    roots = sturm_isolate_roots(p, (Fraction(1, 2), 2))
    assert len(roots) == 1 and roots[0].lo < 1 < roots[0].hi


def test_root_at_bisection_midpoint():
    # midpoint of (1/2, 3/2) is 1, an exact root
    p = LaurentPoly({1: 1, 0: -1}) * LaurentPoly({1: 1, 0: Fraction(-5, 4)})
    roots = sturm_isolate_roots(p, (Fraction(1, 2), Fraction(3, 2)))
    assert [r.multiplicity for r in roots] == [1, 1]
    assert roots[0].lo < 1 < roots[0].hi < roots[1].lo < Fraction(5, 4) < roots[1].hi


def test_multiplicities_and_laurent_input():
    # u^-2 (u - 1)^2 (u - 2)^3
    p = (LaurentPoly({1: 1, 0: -1}) * LaurentPoly({1: 1, 0: -1})).shift(-2)
    for _ in range(3):
        p = p * LaurentPoly({1: 1, 0: -2})
    roots = sturm_isolate_roots(p, (Fraction(1, 3), 3))
    assert [(r.multiplicity) for r in roots] == [2, 3]
    assert roots[0].lo < 1 < roots[0].hi and roots[1].lo < 2 < roots[1].hi
    # the tangential root leaves no sign change; the triple root does
    assert _dense_oracle(p, Fraction(1, 3), 3) == 1


def test_squarefree_decomposition():
    one = Fraction(1)
    lin = [Fraction(-1), one]  # u - 1
    quad = [Fraction(2), Fraction(0), one]  # u^2 + 2
    p = [Fraction(0)] * 1
    # p = 5 (u-1)^2 (u^2+2)
    from weierstab.exact import _mul

    p = [5 * c for c in _mul(_mul(lin, lin), quad)]
    assert squarefree_decomposition(p) == [(quad, 1), (lin, 2)]


def test_custom_tolerance():
    roots = sturm_isolate_roots(LaurentPoly({0: -2, 2: 1}), (1, 2), tol=Fraction(1, 10))
    assert roots[0].width <= Fraction(1, 10)


def test_sturm_vs_dense_sampling_random():
    rng = random.Random(20240611)
    lo, hi = Fraction(1, 100), Fraction(3)
    checked = 0
    for _ in range(120):
        deg = rng.randint(1, 8)
        coeffs = {k: rng.randint(-10, 10) for k in range(deg + 1)}
        coeffs[deg] = coeffs[deg] or 1
        p = LaurentPoly(coeffs)
        expected = sign_changes_on_grid(p, lo, hi, 10_000)
        roots = sturm_isolate_roots(p, (lo, hi))
        assert sum(r.multiplicity % 2 for r in roots) == expected, str(p)
        for a, b in zip(roots, roots[1:]):
            assert a.hi <= b.lo
        checked += 1
    assert checked == 120

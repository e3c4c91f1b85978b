from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.utilities.iterables import multiset_permutations

from bconj.algebra import ALPHA, ONE
from bconj.partitions import partitions_of, partitions_up_to
from bconj.symfunc import (
    BasisError,
    SymFunc,
    TripleSym,
    convert,
    m_multiply,
    p_multiply,
    scalar_product_alpha,
)

N_VARS = 5
xs = sympy.symbols(f"x1:{N_VARS + 1}")


def power_sum(k):
    return sum(x**k for x in xs)


def elementary(k):
    return sum(sympy.Mul(*c) for c in combinations(xs, k))


def monomial(lam):
    if len(lam) > N_VARS:
        return sympy.Integer(0)
    padded = list(lam) + [0] * (N_VARS - len(lam))
    return sum(sympy.Mul(*(x**e for x, e in zip(xs, perm))) for perm in multiset_permutations(padded))


def explicit(f: SymFunc):
    """Expand a SymFunc with numeric coefficients into a polynomial in five variables."""
    total = sympy.Integer(0)
    for lam, c in f.terms.items():
        c = c(0)
        coeff = sympy.Rational(c.numerator, c.denominator)
        if f.basis == "p":
            term = sympy.Mul(*(power_sum(k) for k in lam))
        elif f.basis == "e":
            term = sympy.Mul(*(elementary(k) for k in lam))
        else:
            term = monomial(lam)
        total += coeff * term
    return sympy.expand(total)


@pytest.mark.parametrize("lam", partitions_up_to(N_VARS))
@pytest.mark.parametrize("source", ["p", "e", "m"])
def test_conversions_against_explicit_polynomials(lam, source):
    f = SymFunc.single(source, lam)
    for target in ("p", "e", "m"):
        g = convert(f, target)
        assert g.basis == target
        assert sympy.expand(explicit(g) - explicit(f)) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_round_trip_all_bases(n):
    for lam in partitions_of(n):
        for src in ("p", "e", "m"):
            f = SymFunc.single(src, lam)
            for mid in ("p", "e", "m"):
                assert convert(convert(f, mid), src) == f


def test_small_examples():
    assert convert(SymFunc.single("p", (1, 1)), "m") == SymFunc("m", {(2,): 1, (1, 1): 2})
    assert convert(SymFunc.single("e", (2,)), "p") == SymFunc("p", {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)})
    assert SymFunc.single("p", (2,)) == SymFunc("m", {(2,): 1})


def test_linear_structure():
    f = SymFunc("p", {(2,): ALPHA, (1, 1): 1})
    assert f - f == 0
    assert sum([f, f]) == f.scale(2)
    assert (f * 0).is_zero()
    assert f[(2,)] == ALPHA and f[(3,)] == 0
    with pytest.raises(BasisError):
        f + SymFunc.single("m", (2,))
    with pytest.raises(BasisError):
        SymFunc("q", {})


def test_format_and_json():
    f = SymFunc("p", {(1, 1): 1, (2,): ALPHA})
    assert f.format() == "p[1,1] + a*p[2]"
    assert SymFunc("m", {(1, 1): 2}).format() == "2*m[1,1]"
    assert SymFunc.one("p").format() == "1"
    assert SymFunc.zero("p").format() == "0"
    g = SymFunc("m", {(2, 1): ONE / (ALPHA + 1), (1, 1, 1): -3})
    assert SymFunc.from_json("m", g.to_json()) == g


def test_evaluate_and_valuation():
    f = SymFunc("p", {(2,): ALPHA * ALPHA, (1, 1): ALPHA})
    assert f.valuation() == 1
    assert f.evaluate_alpha(0) == 0
    assert SymFunc.zero("p").valuation() is None


@given(st.sampled_from(partitions_up_to(3)), st.sampled_from(partitions_up_to(3)))
def test_products_against_explicit(lam, mu):
    f, g = SymFunc.single("m", lam), SymFunc.single("m", mu)
    assert sympy.expand(explicit(m_multiply(f, g)) - explicit(f) * explicit(g)) == 0
    fp, gp = convert(f, "p"), convert(g, "p")
    assert convert(p_multiply(fp, gp), "m") == m_multiply(f, g)


def test_scalar_product():
    p2, p11 = SymFunc.single("p", (2,)), SymFunc.single("p", (1, 1))
    assert scalar_product_alpha(p2, p2) == ALPHA * 2
    assert scalar_product_alpha(p11, p11) == ALPHA * ALPHA * 2
    assert scalar_product_alpha(p2, p11) == 0
    # at alpha=1, the m and h bases are dual; check <m_2, h_2> = 1 with h_2 = (p11 + p2)/2
    h2 = SymFunc("p", {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)})
    assert scalar_product_alpha(SymFunc.single("m", (2,)), h2)(1) == 1


def test_triple_products():
    f = TripleSym.from_product(SymFunc.single("p", (1,)), SymFunc.single("p", (2,)), SymFunc.one("p"))
    g = f * f
    assert g[((1, 1), (2, 2), ())] == 1
    assert (TripleSym.one() * f) == f
    assert f.scale(ALPHA).valuation() == 1
    assert (f - f) == 0

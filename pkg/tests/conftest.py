from fractions import Fraction

import hypothesis.strategies as st

from umbral import Poly, Series

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)

nonzero_rationals = rationals.filter(bool)


@st.composite
def polys(draw, variables=("x", "y"), max_terms=4, max_exp=3):
    n_terms = draw(st.integers(min_value=0, max_value=max_terms))
    total = Poly.const(0)
    for _ in range(n_terms):
        coeff = draw(rationals)
        exps = {
            v: draw(st.integers(min_value=0, max_value=max_exp)) for v in variables
        }
        total = total + Poly.monomial(exps, coeff)
    return total


@st.composite
def delta_series(draw, order=8):
    lead = draw(nonzero_rationals)
    rest = draw(
        st.lists(rationals, min_size=order - 1, max_size=order - 1)
    )
    return Series([Fraction(0), lead, *rest])


@st.composite
def unit_series(draw, order=8):
    """Series with constant term exactly 1."""
    rest = draw(st.lists(rationals, min_size=order, max_size=order))
    return Series([Fraction(1), *rest])

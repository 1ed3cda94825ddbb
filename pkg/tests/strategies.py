from fractions import Fraction

from hypothesis import strategies as st

from pfaffzeta.polynomial import MultiPoly
from pfaffzeta.ratfun import RatFun


def polys(nvars=2, max_deg=3, max_terms=4, coeffs=st.integers(-5, 5)):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: MultiPoly(d, nvars))


def geometric_factors():
    return st.lists(st.tuples(st.integers(0, 3), st.integers(1, 3)), max_size=2)


@st.composite
def ratfuns(draw):
    num = draw(polys())
    shift = draw(st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
    F = RatFun(num.shift(shift) if not num.is_zero() else num)
    for exps in draw(geometric_factors()):
        F = F * RatFun.geometric(exps)
    return F * Fraction(draw(st.integers(1, 4)), draw(st.integers(1, 4)))

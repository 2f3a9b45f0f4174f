from fractions import Fraction

from hypothesis import given, strategies as st

from covol.intervals import RationalInterval, exp_interval, pi_interval, sqrt_interval

fracs = st.fractions(min_value=-100, max_value=100, max_denominator=1000)


@st.composite
def intervals(draw):
    a, b = draw(fracs), draw(fracs)
    return RationalInterval(min(a, b), max(a, b))


@given(intervals(), intervals(), fracs, fracs)
def test_arithmetic_encloses_pointwise_images(x, y, s, t):
    a = x.lo + (x.hi - x.lo) * (s - int(s) if s >= 0 else 0)
    b = y.lo + (y.hi - y.lo) * (t - int(t) if t >= 0 else 0)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)


def test_pi_enclosure():
    iv = pi_interval(30)
    assert iv.width <= Fraction(1, 10 ** 30)
    assert iv.contains(Fraction("3.14159265358979323846264338327950288419716939937510"))


def test_sqrt_and_exp():
    iv = sqrt_interval(725)
    assert iv.lo * iv.lo <= 725 <= iv.hi * iv.hi
    e = exp_interval(RationalInterval.point(Fraction(1, 2)), 30)
    assert e.contains(Fraction("1.64872127070012814684865078781416357165377610071014801157508"))


def test_intersect_and_sign():
    a = RationalInterval(Fraction(0), Fraction(2))
    b = RationalInterval(Fraction(1), Fraction(3))
    assert a.intersect(b) == RationalInterval(Fraction(1), Fraction(2))
    assert RationalInterval(Fraction(1), Fraction(2)).sign() == 1
    assert RationalInterval(Fraction(-2), Fraction(-1)).sign() == -1
    assert a.contains_zero()

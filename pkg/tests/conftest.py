from fractions import Fraction

from hypothesis import settings, strategies as st

from qgev.scalar import Cyc8

settings.register_profile("qgev", max_examples=200, deadline=None, derandomize=True)
settings.load_profile("qgev")

small_rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
cyc8s = st.builds(Cyc8, small_rationals, small_rationals, small_rationals, small_rationals)
gauss = st.builds(Cyc8.from_gauss, st.integers(-3, 3), st.integers(-3, 3))


def matrices(n, elements=gauss):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n)


def F(*args):
    return Fraction(*args)

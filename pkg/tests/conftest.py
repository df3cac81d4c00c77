import sys
from fractions import Fraction

from hypothesis import strategies as st

from s03.scalar import FieldK
from s03.linalg import MatK

small = st.integers(min_value=-6, max_value=6)


@st.composite
def field_elements(draw):
    a, b, c, e = (draw(small) for _ in range(4))
    d = draw(st.integers(min_value=1, max_value=5))
    return FieldK.from_ints(a, b, c, e, d)


@st.composite
def nonzero_field_elements(draw):
    x = draw(field_elements())
    return x if not x.is_zero() else FieldK.coerce(1)


@st.composite
def matrices(draw, n=None):
    n = n or draw(st.integers(min_value=1, max_value=4))
    return MatK.from_rows([[draw(field_elements()) for _ in range(n)] for _ in range(n)])


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(lambda q: q != 0)
HALF = FieldK.coerce(Fraction(1, 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(num))

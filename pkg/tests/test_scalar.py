import cmath

from hypothesis import given

from s03.scalar import I, ONE, SQRT2, FieldK, LaurentK, parse_k

from conftest import field_elements, nonzero_field_elements


def close(x: FieldK, z: complex) -> bool:
    return abs(complex(x) - z) < 1e-9 * max(1.0, abs(z))


def test_units():
    assert I * I == -ONE
    assert SQRT2 * SQRT2 == FieldK.coerce(2)
    assert ((ONE + I) / SQRT2) ** 8 == ONE


@given(field_elements(), field_elements(), field_elements())
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(field_elements(), field_elements())
def test_matches_complex_oracle(x, y):
    assert close(x * y, complex(x) * complex(y))
    assert close(x + y, complex(x) + complex(y))


@given(nonzero_field_elements())
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert close(x.inverse(), 1 / complex(x))


@given(field_elements())
def test_str_round_trip(x):
    assert parse_k(str(x)) == x
    assert parse_k(x.pretty()) == x


def test_parse_examples():
    assert parse_k("1/2") == FieldK.coerce(1) / 2
    assert parse_k("(1+i)/sqrt2") ** 2 == I
    assert cmath.isclose(complex(parse_k("sqrt2^-1")), 2 ** -0.5)


def test_laurent_derivative_and_eval():
    s = LaurentK.monomial((1,))
    p = s * s + s ** -1 * 3
    assert p.derivative() == s * 2 - s ** -2 * 3
    assert p.evaluate(2) == FieldK.coerce(4) + FieldK.coerce(3) / 2

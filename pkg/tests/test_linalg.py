import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from s03.linalg import (CharPoly, MatK, MatL, charpoly, commutant_dimension, embed_two_site,
                        intertwiner, kron, kron_all, nullspace)
from s03.scalar import I, ONE, SQRT2, FieldK

from conftest import matrices


def to_numpy(m: MatK) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in m.to_rows()])


@given(matrices(3), matrices(3))
def test_product_matches_numpy(a, b):
    assert np.allclose(to_numpy(a @ b), to_numpy(a) @ to_numpy(b))


@given(matrices(2), matrices(2))
def test_kron_matches_numpy(a, b):
    assert np.allclose(to_numpy(kron(a, b)), np.kron(to_numpy(a), to_numpy(b)))


@given(matrices())
def test_inverse(m):
    if m.is_invertible():
        assert m @ m.inverse() == MatK.identity(m.rows)
    else:
        assert nullspace(m)


@settings(max_examples=30)
@given(st.lists(st.integers(-4, 4), min_size=16, max_size=16))
def test_charpoly_matches_sympy(entries):
    rows = [entries[4 * i:4 * i + 4] for i in range(4)]
    cp = charpoly(MatK.from_rows(rows))
    x = sympy.Symbol("x")
    ref = sympy.Matrix(rows).charpoly(x).all_coeffs()
    assert cp.int_coeffs() == [int(c) for c in reversed(ref)]


def test_charpoly_over_k():
    m = MatK.from_rows([[1, SQRT2], [I, 0]])
    cp = charpoly(m)
    # x^2 - x - i sqrt2
    assert cp == CharPoly([-(I * SQRT2), -ONE, ONE])
    assert cp.evaluate_matrix(m).is_zero()


def test_charpoly_strings_and_square():
    cp = CharPoly.from_factors([([1, 0, 1], 2)])
    assert cp.factored_str() == "(x^2+1)^2"
    assert cp.expanded_str() == "x^4+2x^2+1"
    assert cp.is_perfect_square()
    assert not CharPoly.from_factors([([0, 1], 2), ([4, 0, 1], 1)]).is_perfect_square()
    assert CharPoly.from_json(cp.to_json()) == cp


def test_json_round_trip():
    m = MatK.from_rows([[1, I], [SQRT2, FieldK.coerce(1) / 3]])
    assert MatK.from_json(m.to_json()) == m


def test_embed_two_site_wrap():
    swap = MatK.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    z = MatK.from_rows([[1, 0], [0, -1]])
    e = MatK.identity(2)
    # swapping sites L and 1 exchanges Z on site 1 with Z on site L
    w = embed_two_site(swap, 3, 3, wrap=True)
    assert w @ kron_all([z, e, e]) @ w == kron_all([e, e, z])


def test_commutant_and_intertwiner():
    x = MatK.from_rows([[0, 1], [1, 0]])
    z = MatK.from_rows([[1, 0], [0, -1]])
    assert commutant_dimension([x, z]) == 1
    assert commutant_dimension([z]) == 2
    t = MatK.from_rows([[1, 2], [3, 5]])
    conj = [t @ m @ t.inverse() for m in (x, z)]
    found = intertwiner([x, z], conj)
    assert found is not None
    assert all(found @ a == b @ found for a, b in zip((x, z), conj))
    assert intertwiner([z], [MatK.identity(2)]) is None


def test_matl_derivative_and_eval():
    a = MatK.from_rows([[1, 2], [0, 1]])
    b = MatK.from_rows([[0, 1], [1, 0]])
    p = MatL({(0,): a, (2,): b}, 2, 2, 1)
    assert p.evaluate(3) == a + b.scale(9)
    assert p.derivative().evaluate(3) == b.scale(6)


def test_dimension_errors():
    with pytest.raises(ValueError):
        MatK.identity(2) @ MatK.identity(3)
    with pytest.raises(ValueError):
        charpoly(MatK.zeros(2, 3))

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from s03 import chains
from s03.linalg import MatK, commutator
from s03.scalar import FieldK

from conftest import rationals


def test_weights_ybe():
    r = chains.check_ybe_weights()
    assert r["N"]
    # the tabulated display is P N(u); it does not satisfy the same YBE
    assert not r["displayed"]
    assert chains.displayed_matrix(3) == chains.SWAP @ chains.n_matrix(3)


def test_vertex_weights_symmetric():
    w = chains.vertex_weights(Fraction(3, 2))
    assert w == chains.VertexWeights.from_matrix(chains.n_matrix(Fraction(3, 2)))


@pytest.mark.parametrize("boundary", ["open", "periodic"])
@pytest.mark.parametrize("L", [2, 3, 4, 5])
def test_charpoly_table(L, boundary):
    r = chains.charpoly_report(L, boundary)
    assert r["matches"], r


def test_charpoly_strings():
    r = chains.charpoly_report(2, "open")
    assert r["factored"] == "(x^2+1)^2"
    assert chains.charpoly_report(2, "periodic")["factored"] == "x^2(x^2+4)"


def test_perfect_square_exception():
    assert chains.charpoly_report(3, "periodic")["perfect_square"]
    assert not chains.charpoly_report(2, "periodic")["perfect_square"]


@settings(max_examples=15, deadline=None)
@given(rationals, rationals, st.integers(2, 4))
def test_closed_transfer_commutes(u, v, L):
    assert chains.check_transfer_commutativity(L, "closed", u, v)


@pytest.mark.parametrize("L", [2, 3, 4])
def test_open_transfer_commutes(L):
    assert chains.check_transfer_commutativity(L, "open", 4, 9)
    assert chains.check_transfer_commutativity(L, "open", Fraction(1, 3), Fraction(-5, 2))


def test_twisted_transfer_is_not_commuting():
    # a generic twist breaks commutativity; the plain trace does not
    K = MatK.from_rows([[1, 2], [3, 5]])
    a = chains.transfer_closed(3, FieldK.coerce(4), K=K).matrix
    b = chains.transfer_closed(3, FieldK.coerce(9), K=K).matrix
    assert not commutator(a, b).is_zero()


def test_polynomial_commutativity():
    for L in (2, 3):
        assert chains.check_transfer_commutativity_polynomial(L)


def test_reflection_equation():
    assert chains.check_reflection_equation(MatK.identity(2))
    assert not chains.check_reflection_equation(MatK.from_rows([[1, 2], [3, 5]]))


@pytest.mark.parametrize("boundary", ["open", "periodic"])
def test_hamiltonian_from_transfer(boundary):
    for L in (2, 3, 4):
        r = chains.hamiltonian_consistency(L, boundary)
        assert r["consistent"]


def test_hamiltonian_commutes_with_transfer():
    assert chains.commutes_with_transfer(3)


def test_eigenstates():
    r = chains.verify_eigenstates()
    assert r["plus_BC"]["eigenvectors"] and r["minus_BC"]["eigenvectors"]
    assert r["orthogonal_two_site"]
    assert r["convention"] == "minus_BC"


@pytest.mark.parametrize("L,M", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
@pytest.mark.parametrize("u", [4, Fraction(1, 9), Fraction(9, 4)])
def test_partition_oracle(L, M, u):
    assert chains.partition_function(L, M, u) == chains.brute_force_partition(L, M, u)


@pytest.mark.parametrize("u", [3, Fraction(2, 3), Fraction(-5, 7)])
def test_partition_unnormalised_oracle(u):
    assert chains.partition_function(2, 3, u, normalised=False) == chains.brute_force_partition(2, 3, u, normalised=False)


def test_normalised_needs_square():
    with pytest.raises(ValueError):
        chains.partition_function(2, 2, Fraction(2, 3))


def test_caps():
    with pytest.raises(ValueError):
        chains.brute_force_partition(5, 5, 4)
    with pytest.raises(ValueError):
        chains.transfer_open(7, 4)
    with pytest.raises(ValueError):
        chains.partition_function(2, 2, 0)

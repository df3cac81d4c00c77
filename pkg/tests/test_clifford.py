import pytest

from s03 import clifford
from s03.linalg import MatK


def test_sigma_relations():
    assert all(clifford.check_sigma_relations().values())


@pytest.mark.parametrize("L", range(2, 7))
def test_generators(L):
    assert clifford.check_anticommutation(L)
    assert clifford.check_symmetry(L)["all"]


def test_symmetry_control():
    assert not clifford.check_symmetry(3, perturb=True)["all"]


@pytest.mark.parametrize("L,square", [(2, -1), (4, 1), (6, -1)])
def test_casimir(L, square):
    r = clifford.casimir_report(L)
    assert r["central"] and r["commutes_with_H"]
    assert clifford.casimir(L) @ clifford.casimir(L) == MatK.identity(2 ** L).scale(square)


def test_casimir_odd_l_rejected():
    with pytest.raises(ValueError):
        clifford.casimir(3)


def test_word_algebra():
    b1, b2 = clifford.gen(1), clifford.gen(2)
    assert clifford.multiply(b1, b1) == clifford.scalar(1)
    assert clifford.add(clifford.multiply(b1, b2), clifford.multiply(b2, b1)) == {}
    assert clifford.word_str(0b101) == "B1B3"


@pytest.mark.parametrize("L", [2, 3, 4, 5])
def test_homomorphism(L):
    assert clifford.check_homomorphism(L, seed=L)


@pytest.mark.parametrize("L", [2, 3, 4, 5])
def test_regular_decomposition(L):
    r = clifford.regular_rep_decomposition(L)
    assert r["ok"]
    assert r["irreps"] == 2 ** ((L + 2) // 2)
    assert set(r["dims"]) == {2 ** ((L + 1) // 2)}


@pytest.mark.parametrize("L", [2, 3, 4, 5])
def test_irrep_actions(L):
    assert clifford.verify_all_actions(L)


def test_casimir_scalar_depends_on_alpha():
    r = clifford.verify_irrep_actions(4, [1, 1], -1)
    assert r["ok"] and r["casimir_with_alpha"]
    assert not r["casimir_without_alpha"]

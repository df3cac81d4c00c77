from fractions import Fraction

import pytest

from s03 import reps
from s03.linalg import MatK

HALF = Fraction(1, 2)


def full_check(rep):
    return (all(reps.check_rll(rep).values()) and all(reps.check_rll_explicit(rep).values())
            and all(reps.check_tilde_relations(rep).values()))


def test_tilde_round_trip():
    rep = reps.rra_linear_rep()
    for s in "+-":
        assert reps.from_tilde(reps.to_tilde(rep.block(s))) == rep.block(s)


@pytest.mark.parametrize("rep", [reps.fundamental_rep(), reps.rra_linear_rep(), reps.rra_rep(2), reps.rra_rep(3)],
                         ids=["fundamental", "rra-linear", "rra2", "rra3"])
def test_rll(rep):
    assert full_check(rep)


def test_rll_detects_a_broken_rep():
    rep = reps.fundamental_rep()
    mats = dict(rep.mats)
    mats[("+", 1, 2)] = mats[("+", 1, 2)].scale(2)
    assert not all(reps.check_rll(reps.Rep(mats)).values())


@pytest.mark.parametrize("case,params", [
    ("A", dict(lam_p=1, lam_m=2, x=1, mu_p=1)),
    ("A", dict(lam_p=2, lam_m=-3, x=5, mu_p=HALF)),
    ("B", dict(lam_p=2, mu=3, x=5)),
    ("C", dict(a_p=2, a_m=4, l_p=3, l_m=6, b=5)),
])
def test_two_dim_families(case, params):
    rep = reps.rep_2dim(case, **params)
    assert full_check(rep)
    assert reps.irreducible(rep)[0]


@pytest.mark.parametrize("case,params", [
    ("A", dict(lam_p=0, lam_m=1, x=1, mu_p=1)),
    ("B", dict(lam_p=1, mu=1, x=0)),
    ("C", dict(a_p=1, a_m=1, l_p=1, l_m=2, b=1)),
])
def test_two_dim_constraints(case, params):
    with pytest.raises(reps.RepConstraintError):
        reps.rep_2dim(case, **params)


@pytest.mark.parametrize("ratio", [1, 3, Fraction(-2, 5)])
def test_block_family(ratio):
    assert full_check(reps.rep_block(2, 2, [1, 2], [3, 4], ratio=ratio))
    with pytest.raises(reps.RepConstraintError):
        reps.rep_block(2, 1, [1, 1], [3])


def test_affine_relations():
    for rep in (reps.fundamental_rep(), reps.rra_linear_rep()):
        r = reps.check_affine_rll(reps.evaluation_rep(rep))
        for s in ("++", "--", "+-"):
            assert r["matrix" + s] and r["entrywise" + s]
            # the final term as printed has its two arguments swapped
            assert not r["entrywise_literal" + s]
        assert r["commutator_12_21"] and r["commutator_11_22"]


def test_evaluation_factorisation():
    r = reps.evaluation_factorisation(reps.fundamental_rep())
    assert r["found"] and r["left"] and r["right"] and r["spectral"] and r["factorises"]
    assert r["Q"] @ r["Q"] == -MatK.identity(4)


def test_fusion_invariance():
    assert reps.fusion_invariance_check(reps.fundamental_rep())
    assert reps.fusion_invariance_check(reps.rra_linear_rep())


def test_z_exchange_and_fundamental_table():
    for rep in (reps.fundamental_rep(), reps.rra_linear_rep()):
        assert reps.check_z_exchange(rep, HALF, Fraction(1, 3))
    assert all(reps.check_fundamental_lz().values())


def test_coproducts():
    r = reps.coproduct_report()
    assert r["exchange_A"] and r["exchange_B"]
    assert r["coincide_at_pm1"]
    assert not r["coincide_at_pm1_printed_B"]
    assert r["inequivalent_at_half"]
    assert r["table_B"]["mismatches"] == []


def test_x_matrices_fundamental():
    r = reps.fundamental_x_constants()
    assert r["B_zero"] and r["ABC_form"] and r["classes"] and r["formulas"]
    assert r["Q_plus_form"] and r["N_minus_form"]


def test_nxn_family():
    fam = reps.rep_nxn_family(3, [1, 2, 3], [1, 2], [3, 4], HALF, 1)
    r = reps.check_nxn_family(fam)
    assert r["exchange"] and r["Q_N_zero"] and r["ansatz"]
    with pytest.raises(ValueError):
        reps.rep_nxn_family(3, [1, 2], [1, 2], [3, 4], HALF, 1)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_rra_decomposition_counts(N):
    d = reps.decompose_rra(N)
    assert d["counts_ok"]
    assert d["total_dim"] == 2 ** (N + 1)
    assert all(c == 1 for c in d["commutant_dims"])


def test_rra_equivalence_classes():
    assert reps.decompose_rra(2)["pairwise_equivalence_ok"]
    # from N = 3 on, all four blocks at odd N fall into one class
    assert reps.decompose_rra(3)["class_sizes"] == [4]

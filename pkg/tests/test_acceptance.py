"""Acceptance criteria 1-12.

Run under pytest, or directly (``python3 tests/test_acceptance.py``) to print
one PASS/FAIL line per criterion.  Criteria whose literal statement is
refuted by the exact computation are marked xfail(strict=True): the test
asserts the literal claim, so it would turn into an XPASS failure if the
claim ever started to hold.
"""

import sys
import time
from fractions import Fraction

import pytest

from s03 import algebra, chains, clifford, core, reps
from s03.scalar import I, SQRT2

RESULTS = {}


def c1():
    ok = core.check_spectral_ybe()
    return ok, "R12(x) R13(xy) R23(y) = R23(y) R13(xy) R12(x) coefficientwise in s, t"


def c2():
    r = core.check_braid_identities()
    return r["sum"] and r["squares"], f"Rhat + Rhat^-1 = sqrt2 I: {r['sum']}; Rhat^2 + Rhat^-2 = 0: {r['squares']}"


def c3():
    r = core.diagonal_scalar()
    detail = (f"literal form: {r['literal']}; holds with an extra factor 2/sqrt(x): {r['up_to_2_over_sqrt_x']}, "
              f"i.e. M (Rhat + x Rhat^-1) M^-1 = 2 * (1+i)/(2 sqrt2) diag(x-i, x-i, 1-ix, 1-ix)")
    return r["literal"], detail


def c4():
    bad = [f"{b} L={L}" for b in ("open", "periodic") for L in range(2, 7)
           if not chains.charpoly_report(L, b)["matches"]]
    return not bad, "all ten polynomials match" if not bad else f"mismatch: {bad}"


def c5():
    closed = all(chains.check_transfer_commutativity(L, "closed", u, v)
                 for L in range(2, 6) for u, v in ((4, 9), (Fraction(1, 4), 9), (2, Fraction(-3, 5))))
    opened = all(chains.check_transfer_commutativity(L, "open", 4, 9) for L in range(2, 7))
    return closed and opened, f"closed L=2..5 at 3 pairs: {closed}; open K=K'=I L=2..6: {opened}"


def c6():
    r = chains.verify_eigenstates()
    two, three = chains.listed_eigenstates()
    H2 = chains.hamiltonian(2, "open", -1).matrix
    H3 = chains.hamiltonian(3, "open", -1).matrix
    ev2 = {chains._eigenvalue(H2, v) for _, v, _ in two}
    ev3 = {chains._eigenvalue(H3, v) for _, v, _ in three}
    ok = (r["plus_BC"]["eigenvectors"] and r["convention"] != "none"
          and ev2 == {I, -I} and ev3 == {I * SQRT2, -I * SQRT2})
    return ok, f"exact eigenvectors; listed eigenvalues match h = {'-' if r['convention'] == 'minus_BC' else '+'}B x C"


def c7():
    anti = all(clifford.check_anticommutation(L) for L in range(2, 7))
    sym = all(clifford.check_symmetry(L)["all"] for L in range(2, 7))
    cas = all(clifford.casimir_report(L)["central"] for L in (2, 4, 6))
    dec = all(clifford.regular_rep_decomposition(L)["ok"] for L in range(2, 6))
    return anti and sym and cas and dec, (f"anticommutation {anti}, [H_open, B_i] = 0 {sym}, "
                                         f"Casimir central {cas}, decomposition counts {dec}")


def c8():
    parts = []
    counts = pairs = True
    for N in range(2, 6):
        d = reps.decompose_rra(N)
        counts = counts and d["counts_ok"]
        pairs = pairs and d["pairwise_equivalence_ok"]
        parts.append(f"N={N}: {d['irreps']} irreps of dim {d['dims'][0]}, classes {d['class_sizes']}")
    detail = f"counts and dims {counts}; exactly two-by-two equivalent {pairs} ({'; '.join(parts)})"
    return counts and pairs, detail


def c9():
    dims = all(algebra.s03_dimension(N) == algebra.s03_dimension_oracle(N) == 2 ** (N + 1) for N in range(1, 7))
    import itertools
    fg = all(all(algebra.verify_fg_action(n, k, l).values())
             for n in (0, 1, 2) for k in itertools.product(range(3), repeat=n)
             for l in itertools.product(range(3), repeat=n))
    return dims and fg, f"dimension 2^(N+1) for N=1..6: {dims}; dual actions n<=2, exponents<=2: {fg}"


def c10():
    res = [chains.partition_function(L, M, u) == chains.brute_force_partition(L, M, u)
           for L, M in ((1, 1), (2, 2), (2, 3)) for u in (4, Fraction(1, 9))]
    return all(res), f"{sum(res)}/{len(res)} lattices agree"


def c11():
    fus = reps.fusion_invariance_check(reps.fundamental_rep())
    f = reps.evaluation_factorisation(reps.fundamental_rep())
    fac = f["found"] and f["factorises"] and f["spectral"]
    return fus and fac, f"projectors commute: {fus}; x-factorisation with Q = i Pi1 - i Pi2: {fac}"


def c12():
    bad = [f"{b} L={L}" for b in ("open", "periodic") for L in range(2, 7)
           if not chains.charpoly_report(L, b)["perfect_square"]]
    return not bad, ("all perfect squares" if not bad else
                     f"not a perfect square: {', '.join(bad)} (x^2(x^2+4))")


CRITERIA = [
    (1, "spectral Yang-Baxter equation", c1, 1.0),
    (2, "braid identities", c2, 1.0),
    (3, "diagonalisation", c3, 1.0),
    (4, "characteristic polynomials", c4, 300.0),
    (5, "transfer-matrix commutativity", c5, 600.0),
    (6, "two- and three-site eigenstates", c6, None),
    (7, "Clifford symmetry", c7, None),
    (8, "RRA decomposition", c8, None),
    (9, "rewriting dimension law and dual actions", c9, None),
    (10, "partition function oracle", c10, None),
    (11, "fusion and evaluation factorisation", c11, None),
    (12, "perfect-square spectra", c12, None),
]
REFUTED = {
    3: "the identity needs an extra factor 2/sqrt(x)",
    8: "for N >= 3 the blocks do not split into pairs of equivalent irreps",
    12: "periodic L=2 gives x^2(x^2+4)",
}


def run(num):
    _, name, fn, limit = next(c for c in CRITERIA if c[0] == num)
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok, detail = False, f"{detail}; took {dt:.1f} s, limit {limit:.0f} s"
    RESULTS[num] = (ok, name, detail)
    return ok, detail


def line(num) -> str:
    ok, name, detail = RESULTS[num]
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("num", [c[0] for c in CRITERIA if c[0] not in REFUTED])
def test_criterion(num):
    ok, detail = run(num)
    assert ok, detail


@pytest.mark.parametrize("num", sorted(REFUTED))
def test_refuted_criterion(num, request):
    request.node.add_marker(pytest.mark.xfail(strict=True, reason=REFUTED[num]))
    ok, detail = run(num)
    assert ok, detail


def main() -> int:
    for num, *_ in CRITERIA:
        run(num)
        print(line(num), flush=True)
    return 0 if all(RESULTS[n][0] for n in RESULTS if n not in REFUTED) else 1


if __name__ == "__main__":
    sys.exit(main())

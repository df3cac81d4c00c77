"""Verification suites shared by the CLI and the test-suite.

Each check returns ``(status, payload)`` with status one of

    pass               the identity holds exactly
    fail               it does not
    mismatch-reported  a tabulated value or literal statement disagrees with
                       the computation; the payload says how (does not fail
                       the run, the corrected identity is checked separately)
"""

import itertools
import json
import random
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import algebra, chains, clifford, core, reps
from .linalg import CharPoly, MatK, MatL
from .scalar import FieldK

PASS, FAIL, MISMATCH = "pass", "fail", "mismatch-reported"

Check = Tuple[str, Callable[[], Tuple[str, object]]]


def jsonable(obj):
    """Convert results to plain JSON types with stable ordering."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, FieldK):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, MatK):
        return obj.to_json()
    if isinstance(obj, CharPoly):
        return obj.to_json()
    if isinstance(obj, MatL):
        return {"exponents": [list(e) for e in obj.exponents()],
                "coefficients": [obj.coeffs[e].to_json() for e in obj.exponents()]}
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else "".join(map(str, k)): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return str(obj)


def _bool(ok: bool, payload=None):
    return (PASS if ok else FAIL), payload


def _all(d: Dict) -> bool:
    return all(v if isinstance(v, bool) else _all(v) for v in d.values())


def _literal(ok: bool, payload=None):
    """A literal statement that is reported rather than enforced."""
    return (PASS if ok else MISMATCH), payload


H = FieldK.coerce(Fraction(1, 2))
T3 = FieldK.coerce(Fraction(1, 3))


# -- core ---------------------------------------------------------------

def core_checks() -> List[Check]:
    def diag():
        r = core.diagonal_scalar()
        return _bool(r["diagonal"] and r["up_to_2_over_sqrt_x"],
                     {"relation": "M Rhat(x) M^-1 = (2/sqrt(x)) (1+i)/(2 sqrt2) diag(x-i, x-i, 1-ix, 1-ix)"})

    def diag_literal():
        r = core.diagonal_scalar()
        return _literal(r["literal"], {"literal": r["literal"], "holds_for": "(Rhat + x Rhat^-1)/2" if r["rescaled_literal"] else None})

    def eigen():
        r = core.rhat_eigen_report()
        return _bool(r["matches_roots"] and r["kernel_plus"] == 2 and r["kernel_minus"] == 2,
                     {"charpoly": r["charpoly"].expanded_str(), "kernels": [r["kernel_plus"], r["kernel_minus"]]})

    def fusion():
        r = core.check_fusion_projectors()
        ok = r["sum_identity"] and r["idempotent"] and r["orthogonal"] and r["ranks"] == (2, 2) and r["x_independent"]
        return _bool(ok, {k: list(v) if isinstance(v, tuple) else v for k, v in r.items()})

    return [
        ("core.ybe.constant", lambda: _bool(core.check_constant_ybe(core.R))),
        ("core.ybe.spectral", lambda: _bool(core.check_spectral_ybe())),
        ("core.braid.sum", lambda: _bool(core.check_braid_identities()["sum"])),
        ("core.braid.squares", lambda: _bool(core.check_braid_identities()["squares"])),
        ("core.rhat.eigenvalues", eigen),
        ("core.family.tabulated", lambda: _bool(_all(core.check_family_golden()), core.check_family_golden())),
        ("core.z.braid.points", lambda: _bool(all(core.check_z_braid_relation(z, w) for z, w in ((H, T3), (2, 5), (1, -1), (1, 1))))),
        ("core.z.braid.polynomial", lambda: _bool(core.check_z_braid_polynomial())),
        ("core.z.unit", lambda: _bool(core.z_normalised_at_unit(1) == core.R_HAT and core.z_normalised_at_unit(-1) == core.R_HAT.inverse())),
        ("core.diagonal.scaled", diag),
        ("core.diagonal.literal", diag_literal),
        ("core.fusion.projectors", fusion),
        ("core.weights.ybe", lambda: _bool(chains.check_ybe_weights()["N"])),
        ("core.weights.displayed_ybe", lambda: _literal(chains.check_ybe_weights()["displayed"],
                                                         {"displayed_equals": "P N(u)", "ybe": chains.check_ybe_weights()["displayed"]})),
    ]


# -- algebra ------------------------------------------------------------

def algebra_checks(seed: int = 0) -> List[Check]:
    def dims():
        got = {N: (algebra.s03_dimension(N), algebra.s03_dimension_oracle(N)) for N in range(1, 7)}
        ok = all(a == b == 2 ** (N + 1) for N, (a, b) in got.items())
        return _bool(ok, {str(N): list(v) for N, v in got.items()})

    def strategies():
        rng = random.Random(seed)
        ok = True
        for N in range(1, 6):
            for w in itertools.product("abcd", repeat=N):
                a = algebra.s03_reduce_word(w, "leftmost")
                b = algebra.s03_reduce_word(w, "rightmost")
                c = algebra.s03_reduce_word(w, "random", rng)
                ok = ok and a == b == c
        return _bool(ok, {"seed": seed})

    def examples():
        cases = {"bc": (-1, ("c", "b")), "ac": (-1, ("d", "b")), "cc": (-1, ("b", "b")), "cb": (1, ("c", "b"))}
        ok = all(algebra.s03_reduce_word(tuple(w)) == v for w, v in cases.items())
        return _bool(ok)

    def fg():
        out = {}
        for n in (0, 1, 2):
            for k in itertools.product(range(3), repeat=n):
                for l in itertools.product(range(3), repeat=n):
                    for name, ok in algebra.verify_fg_action(n, k, l).items():
                        out[name] = out.get(name, True) and ok
        return _bool(all(out.values()), out)

    def fg_literal():
        bad = set()
        for k in range(3):
            for l in range(3):
                for name, ok in algebra.verify_fg_action(1, (k,), (l,), literal_n1=True).items():
                    if not ok:
                        bad.add(name)
        return _literal(not bad, {"failing_at_n1_without_increment": sorted(bad)})

    return [
        ("algebra.dimension", dims),
        ("algebra.reduce.examples", examples),
        ("algebra.reduce.strategies", strategies),
        ("algebra.coassociativity", lambda: _bool(all(algebra.check_coassociativity(N) for N in range(1, 4)))),
        ("algebra.coproduct.multiplicative", lambda: _bool(all(
            algebra.check_coproduct_multiplicative(x, y) for x in itertools.product("abcd", repeat=2) for y in itertools.product("abcd", repeat=1)))),
        ("algebra.rra.rll", lambda: _bool(all(_all(reps.rra_rll_check(N)) for N in (1, 2, 3)))),
        ("algebra.dual.critical_pairs", lambda: _bool(algebra.dual_critical_pairs() == [])),
        ("algebra.fg.action", fg),
        ("algebra.fg.literal_n1", fg_literal),
    ]


# -- reps ---------------------------------------------------------------

def reps_checks() -> List[Check]:
    fund = reps.fundamental_rep
    lin = reps.rra_linear_rep

    def rll(rep):
        return _all(reps.check_rll(rep)) and _all(reps.check_rll_explicit(rep)) and _all(reps.check_tilde_relations(rep))

    def two_dim():
        cases = {
            "A": reps.rep_2dim("A", lam_p=1, lam_m=2, x=1, mu_p=1),
            "A2": reps.rep_2dim("A", lam_p=2, lam_m=-3, x=5, mu_p=H),
            "B": reps.rep_2dim("B", lam_p=2, mu=3, x=5),
            "C": reps.rep_2dim("C", a_p=2, a_m=4, l_p=3, l_m=6, b=5),
        }
        res = {k: rll(r) and reps.irreducible(r)[0] for k, r in cases.items()}
        res["A_ratio"] = reps.case_a_ratio_holds(cases["A"], 1, 2)
        return _bool(all(res.values()), res)

    def two_dim_errors():
        errs = 0
        for case, p in (("A", dict(lam_p=0, lam_m=1, x=1, mu_p=1)), ("B", dict(lam_p=1, mu=1, x=0)),
                        ("C", dict(a_p=1, a_m=1, l_p=1, l_m=2, b=1))):
            try:
                reps.rep_2dim(case, **p)
            except reps.RepConstraintError:
                errs += 1
        return _bool(errs == 3)

    def block():
        r1 = reps.rep_block(2, 2, [1, 2], [3, 4])
        r2 = reps.rep_block(2, 1, [1, 2], [5], ratio=3)
        return _bool(rll(r1) and rll(r2), {"commutant_dims": [reps.irreducible(r1)[1], reps.irreducible(r2)[1]]})

    def affine(key):
        def run():
            res = {}
            for name, rep in (("fundamental", fund()), ("rra-linear", lin())):
                r = reps.check_affine_rll(reps.evaluation_rep(rep))
                res[name] = all(v for k, v in r.items() if k.startswith(key))
            return res
        return run

    def affine_literal():
        res = affine("entrywise_literal")()
        return _literal(all(res.values()), {"holds": res, "corrected_last_term": "theta_b (x2-x1) Y_(a bbar)(x2) X_(c dbar)(x1)"})

    def coproduct():
        r = reps.coproduct_report()
        ok = r["exchange_A"] and r["exchange_B"] and r["coincide_at_pm1"] and r["inequivalent_at_half"]
        return _bool(ok, {k: r[k] for k in ("exchange_A", "exchange_B", "coincide_at_pm1", "inequivalent_at_half")})

    def coproduct_printed():
        r = reps.coproduct_report()
        return _literal(r["coincide_at_pm1_printed_B"],
                        {"coincide_at_pm1_with_printed_coefficients": r["coincide_at_pm1_printed_B"],
                         "table_B_with_printed_coefficients": len(r["table_B_printed_formula"]["mismatches"])})

    def coproduct_tables():
        r = reps.coproduct_report()
        mism = {"A": r["table_A"]["mismatches"], "B": r["table_B"]["mismatches"]}
        return _literal(not mism["A"] and not mism["B"], mism)

    def x_fund():
        r = reps.fundamental_x_constants()
        ok = r["B_zero"] and r["C_minus_iA_upper"] and r["C_plus_iA_lower"] and r["ABC_form"] and r["classes"] and r["formulas"]
        ok = ok and r["Q_plus_form"] and r["N_minus_form"]
        return _bool(ok, r)

    def x_other():
        res = {}
        for name, rep in (("rra-linear", lin()), ("2dim-A", reps.rep_2dim("A", lam_p=1, lam_m=2, x=1, mu_p=1))):
            r = reps.x_matrices(rep, name)
            res[name] = _all(r["formulas"]) and _all(r["classes"])
        return _bool(all(res.values()), res)

    def x_table():
        r = reps.compare_x_table()
        clean = all(v["prefactor"] and not v["mismatches"] for v in r.values())
        return _literal(clean, r)

    def nxn():
        fams = [
            reps.rep_nxn_family(3, [1, 2, 3], [1, 2], [3, 4], H, 1),
            reps.rep_nxn_family(2, [1, -1], [1], [1], 2, -1),
            reps.rep_nxn_family(4, [1, 2, 3, 5], [1, 1, 2], [2, 3, 1], 3, 1),
        ]
        res = [reps.check_nxn_family(f) for f in fams]
        ok = all(r["exchange"] and r["Q_N_zero"] and r["ansatz"] for r in res)
        return _bool(ok, [{k: v for k, v in r.items() if k != "k"} for r in res])

    def z_exchange():
        res = {name: all(reps.check_z_exchange(rep, z, w) for z, w in ((H, T3), (2, 5), (-3, H)))
               for name, rep in (("fundamental", fund()), ("rra-linear", lin()))}
        res["fundamental_table"] = _all(reps.check_fundamental_lz())
        return _bool(all(res.values()), res)

    def factorisation():
        r = reps.evaluation_factorisation(fund())
        ok = r["found"] and r["left"] and r["right"] and r["spectral"] and r["factorises"] and r["Q_squared_minus_identity"]
        return _bool(ok, {"q": r["q"], "Q_squared_minus_identity": r["Q_squared_minus_identity"], "factorises": r["factorises"]})

    def decompose(N):
        def run():
            d = reps.decompose_rra(N)
            return _bool(d["counts_ok"], {k: d[k] for k in ("irreps", "dims", "commutant_dims", "expected")})
        return run

    def pairwise():
        res = {}
        for N in (2, 3, 4, 5):
            d = reps.decompose_rra(N)
            res[str(N)] = {"class_sizes": d["class_sizes"], "classes": d["classes"], "two_by_two": d["pairwise_equivalence_ok"]}
        return _literal(all(v["two_by_two"] for v in res.values()), res)

    def rra_tables():
        r = reps.compare_rra_tables()
        return _literal(all(not v["mismatches"] for v in r.values()), r)

    def fusion():
        reps_ = [fund(), lin()]
        return _bool(all(reps.fusion_invariance_check(r) for r in reps_))

    def affine_pt(key):
        def run():
            return _bool(all(affine(key)().values()))
        return run

    return [
        ("reps.rll.fundamental", lambda: _bool(rll(fund()))),
        ("reps.rll.rra_linear", lambda: _bool(rll(lin()) and reps.irreducible(lin())[0])),
        ("reps.rll.tensor_square", lambda: _bool(_all(reps.check_rll(reps.coproduct_rep(fund(), lin()))))),
        ("reps.two_dim", two_dim),
        ("reps.two_dim.constraints", two_dim_errors),
        ("reps.block", block),
        ("reps.affine.matrix", affine_pt("matrix")),
        ("reps.affine.entrywise", lambda: _bool(all(
            all(v for k, v in reps.check_affine_rll(reps.evaluation_rep(r)).items()
                if k.startswith("entrywise") and "literal" not in k) for r in (fund(), lin())))),
        ("reps.affine.entrywise_literal", affine_literal),
        ("reps.affine.commutators", lambda: _bool(all(
            reps.check_affine_rll(reps.evaluation_rep(r))[k] for r in (fund(), lin()) for k in ("commutator_12_21", "commutator_11_22")))),
        ("reps.z.exchange", z_exchange),
        ("reps.coproduct", coproduct),
        ("reps.coproduct.printed_coefficients", coproduct_printed),
        ("reps.coproduct.tables", coproduct_tables),
        ("reps.x.fundamental", x_fund),
        ("reps.x.other", x_other),
        ("reps.x.table", x_table),
        ("reps.nxn", nxn),
        ("reps.fusion.invariance", fusion),
        ("reps.evaluation.factorisation", factorisation),
    ] + [(f"reps.decompose.{N}", decompose(N)) for N in (1, 2, 3, 4, 5)] + [
        ("reps.decompose.two_by_two", pairwise),
        ("reps.decompose.tables", rra_tables),
    ]


# -- chains -------------------------------------------------------------

def chain_checks() -> List[Check]:
    def cp(L, b):
        def run():
            r = chains.charpoly_report(L, b)
            return _bool(r["matches"], {"factored": r["factored"], "expected": r["expected"]})
        return run

    def squares():
        res = {f"{b}{L}": chains.charpoly_report(L, b)["perfect_square"] for b in ("open", "periodic") for L in range(2, 7)}
        return _literal(all(res.values()), res)

    def closed():
        pairs = ((4, 9), (Fraction(1, 4), 9), (2, 3))
        res = {str(L): all(chains.check_transfer_commutativity(L, "closed", u, v) for u, v in pairs) for L in range(2, 6)}
        return _bool(all(res.values()), res)

    def open_():
        res = {str(L): chains.check_transfer_commutativity(L, "open", 4, 9) for L in range(2, 7)}
        return _bool(all(res.values()), res)

    def consistency():
        res = {f"{b}{L}": chains.hamiltonian_consistency(L, b) for b in ("open", "periodic") for L in range(2, 5)}
        return _bool(all(v["consistent"] for v in res.values()), res)

    def eig():
        r = chains.verify_eigenstates()
        ok = r["plus_BC"]["eigenvectors"] and r["minus_BC"]["eigenvectors"] and r["orthogonal_two_site"] and r["convention"] != "none"
        return _bool(ok, r)

    def refl_other():
        diag = chains.check_reflection_equation(MatK.from_rows([[1, 0], [0, -1]]))
        generic = chains.check_reflection_equation(MatK.from_rows([[1, 2], [3, 5]]))
        return _bool(diag and not generic, {"K=diag(1,-1)": diag, "generic K (control)": generic})

    checks = [(f"chains.charpoly.{b}.{L}", cp(L, b)) for b in ("open", "periodic") for L in range(2, 7)]
    return checks + [
        ("chains.charpoly.perfect_square", squares),
        ("chains.commute.closed", closed),
        ("chains.commute.closed_polynomial", lambda: _bool(all(chains.check_transfer_commutativity_polynomial(L) for L in (2, 3, 4)))),
        ("chains.commute.open", open_),
        ("chains.reflection.identity", lambda: _bool(chains.check_reflection_equation(MatK.identity(2)))),
        ("chains.reflection.diag", refl_other),
        ("chains.hamiltonian.derivative", consistency),
        ("chains.hamiltonian.commutes_with_transfer", lambda: _bool(all(chains.commutes_with_transfer(L) for L in (2, 3, 4)))),
        ("chains.eigenstates", eig),
    ]


def vertex_checks() -> List[Check]:
    def oracle():
        res = {}
        for (L, M) in ((1, 1), (2, 2), (2, 3)):
            for u in (4, Fraction(1, 9)):
                res[f"{L}x{M}@{u}"] = chains.partition_function(L, M, u) == chains.brute_force_partition(L, M, u)
        return _bool(all(res.values()), res)

    return [("vertex.partition.oracle", oracle)]


def clifford_checks(seed: int = 0) -> List[Check]:
    def decomp():
        res = {str(L): clifford.regular_rep_decomposition(L) for L in range(2, 6)}
        return _bool(all(r["ok"] for r in res.values()),
                     {L: {"irreps": r["irreps"], "dim": r["dims"][0]} for L, r in res.items()})

    def casimir():
        res = {str(L): clifford.casimir_report(L) for L in (2, 4, 6)}
        return _bool(all(r["central"] and r["commutes_with_H"] and r["square"] != 0 for r in res.values()), res)

    def cas_alpha():
        r = clifford.verify_irrep_actions(4, [1, 1], -1)
        return _literal(r["casimir_without_alpha"], {"scalar": r["casimir_scalar"], "includes_alpha": r["casimir_with_alpha"]})

    return [
        ("clifford.sigma", lambda: _bool(_all(clifford.check_sigma_relations()))),
        ("clifford.anticommutation", lambda: _bool(all(clifford.check_anticommutation(L) for L in range(2, 7)))),
        ("clifford.symmetry", lambda: _bool(all(clifford.check_symmetry(L)["all"] for L in range(2, 7)))),
        ("clifford.symmetry.control", lambda: _bool(not any(clifford.check_symmetry(L, perturb=True)["all"] for L in range(2, 5)))),
        ("clifford.casimir", casimir),
        ("clifford.homomorphism", lambda: _bool(all(clifford.check_homomorphism(L, seed=seed) for L in range(2, 6)), {"seed": seed})),
        ("clifford.decomposition", decomp),
        ("clifford.actions", lambda: _bool(all(clifford.verify_all_actions(L) for L in range(2, 6)))),
        ("clifford.casimir_scalar_literal", cas_alpha),
    ]


SUITES = {
    "core": lambda seed: core_checks(),
    "algebra": algebra_checks,
    "reps": lambda seed: reps_checks(),
    "chains": lambda seed: chain_checks(),
    "vertex": lambda seed: vertex_checks(),
    "clifford": clifford_checks,
}


def run_suite(names: Optional[List[str]] = None, seed: int = 0,
              timing: Optional[Dict[str, int]] = None) -> Dict[str, object]:
    """Run suites in fixed order; ``ok`` is True iff no check failed.

    Runtimes go into ``timing`` (check id -> ms) when a dict is passed, so
    the report itself stays byte-stable.
    """
    names = names or list(SUITES)
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    entries = []
    for n in SUITES:
        if n not in names:
            continue
        for cid, fn in SUITES[n](seed):
            t0 = time.perf_counter()
            try:
                status, payload = fn()
            except Exception as exc:  # a crash is a failure, reported not raised
                status, payload = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
            if timing is not None:
                timing[cid] = round((time.perf_counter() - t0) * 1000)
            entries.append({"id": cid, "status": status, "payload": jsonable(payload)})
    counts = {s: sum(e["status"] == s for e in entries) for s in (PASS, FAIL, MISMATCH)}
    return {"seed": seed, "suites": [n for n in SUITES if n in names], "counts": counts,
            "ok": counts[FAIL] == 0, "checks": entries}


def dumps(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True)

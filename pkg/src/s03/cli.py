"""Command-line front end.

Every command writes a single report (JSON by default, or aligned text) and
exits 0 iff every check it ran passed.  Output has fixed ordering and no
timestamps, so two runs of the same build are byte-identical; ``--timing``
adds a separate non-stable section with per-check runtimes.
"""

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List

from . import algebra, chains, clifford, reps, suites
from .linalg import MatK
from .scalar import parse_k

MAX_SITES = 6
MAX_DEGREE = 5
SUITE_NAMES = list(suites.SUITES)


class CLIError(Exception):
    pass


# -- argument helpers ----------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}")


def _params(items: List[str]) -> Dict[str, object]:
    """Parse key=value pairs; comma-separated values become lists."""
    out = {}
    for item in items or []:
        for part in item.split():
            if "=" not in part:
                raise CLIError(f"parameter {part!r} is not key=value")
            k, v = part.split("=", 1)
            vals = [parse_k(x) for x in v.split(",")]
            out[k] = vals if "," in v else vals[0]
    return out


def _cap(value: int, limit: int, what: str, force: bool):
    if value > limit and not force:
        raise CLIError(f"{what} = {value} exceeds the desk-scale cap {limit}; pass --force to override")


def _int_param(params, key, default=None) -> int:
    if key not in params:
        if default is None:
            raise CLIError(f"missing parameter {key}")
        return default
    v = params.pop(key)
    if not v.is_rational() or v.to_fraction().denominator != 1:
        raise CLIError(f"parameter {key} must be an integer")
    return int(v.to_fraction())


def _as_list(v):
    return v if isinstance(v, list) else [v]


# -- output ----------------------------------------------------------------

def _text(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"rows", "cols", "entries"}:
            m = MatK.from_json(obj)
            return [pad + line for line in m.pretty().splitlines()]
        lines = []
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar_text(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar_text(v)}")
        return lines
    return [pad + _scalar_text(obj)]


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar_text(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar_text(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, str) and "*sqrt2" in v:
        try:
            return parse_k(v).pretty()
        except ValueError:
            return v
    return str(v)


def _verify_text(report) -> List[str]:
    width = max((len(e["id"]) for e in report["checks"]), default=0)
    lines = [f"{e['id'].ljust(width)}  {e['status']}" for e in report["checks"]]
    c = report["counts"]
    lines.append(f"seed {report['seed']}: {c['pass']} pass, {c['fail']} fail, {c['mismatch-reported']} mismatch-reported")
    return lines


def emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return
    if report.get("command") == "verify":
        lines = _verify_text(report)
    else:
        lines = _text({k: v for k, v in report.items() if k not in ("command", "timing")})
    if "timing" in report:
        lines.append("timing:")
        lines += _text(report["timing"], 1)
    out.write("\n".join(lines) + "\n")


# -- commands --------------------------------------------------------------

def cmd_verify(args) -> dict:
    if args.all or not args.suites:
        names = SUITE_NAMES
    else:
        names = args.suites
    timing = {}
    report = suites.run_suite(names, args.seed, timing)
    report["command"] = "verify"
    if args.timing:
        report["timing"] = {"runtime_ms": timing}
    return report


def cmd_algebra(args) -> dict:
    if args.action == "reduce":
        word = algebra.parse_s03_word(args.arg)
        nf = algebra.s03_normal_form(word)
        return {"command": "algebra reduce", "input": algebra.word_str(word),
                "normal_form": algebra.element_str(nf),
                "terms": {algebra.word_str(w): str(c) for w, c in sorted(nf.items())}, "ok": True}
    n = int(args.arg)
    if n < 1:
        raise CLIError("degree must be >= 1")
    if args.action == "dim":
        _cap(n, 8, "degree", args.force)
        dim = algebra.s03_dimension(n)
        oracle = algebra.s03_dimension_oracle(n)
        return {"command": "algebra dim", "degree": n, "dimension": dim, "oracle": oracle,
                "expected": 2 ** (n + 1), "basis": [algebra.word_str(w) for w in algebra.s03_basis(n)],
                "ok": dim == oracle == 2 ** (n + 1)}
    _cap(n, MAX_DEGREE, "degree", args.force)
    rep = algebra.rra_rep(n)
    return {"command": "algebra rra", "degree": n, "basis": [algebra.word_str(w) for w in algebra.s03_basis(n)],
            "matrices": {f"L{s}{i}{j}": m.to_json() for (s, i, j), m in rep.items()}, "ok": True}


def _build_family(name: str, params: Dict, force: bool):
    if name == "fundamental":
        return reps.fundamental_rep()
    if name == "rra-linear":
        return reps.rra_linear_rep()
    if name == "rra":
        n = _int_param(params, "N", 1)
        _cap(n, MAX_DEGREE, "degree", force)
        return reps.rra_rep(n)
    if name in ("2dim-A", "2dim-B", "2dim-C"):
        return reps.rep_2dim(name[-1], **params)
    if name == "block":
        N1 = _int_param(params, "N1")
        N2 = _int_param(params, "N2")
        kw = {"ratio": params.pop("ratio")} if "ratio" in params else {}
        return reps.rep_block(N1, N2, _as_list(params.pop("rho")), _as_list(params.pop("lam")), **kw)
    if name == "nxn":
        n = _int_param(params, "n")
        eps = _int_param(params, "eps", 1)
        return reps.rep_nxn_family(n, _as_list(params["a"]), _as_list(params["u"]), _as_list(params["v"]),
                                   params["k"], eps)
    raise CLIError(f"unknown family {name!r}; choose from fundamental, rra-linear, rra, 2dim-A, 2dim-B, 2dim-C, block, nxn")


def cmd_reps(args) -> dict:
    if args.action == "decompose":
        _cap(args.degree, MAX_DEGREE, "degree", args.force)
        d = reps.decompose_rra(args.degree)
        keys = ("N", "total_dim", "irreps", "dims", "commutant_dims", "classes", "class_sizes", "expected",
                "counts_ok", "pairwise_equivalence_ok")
        out = {"command": "reps decompose"}
        out.update({k: suites.jsonable(d[k]) for k in keys})
        out["checks"] = {"counts": suites.PASS if d["counts_ok"] else suites.FAIL,
                         "two_by_two": suites.PASS if d["pairwise_equivalence_ok"] else suites.MISMATCH}
        out["ok"] = d["counts_ok"]
        return out
    params = _params(args.params)
    try:
        fam = _build_family(args.family, params, args.force)
    except KeyError as exc:
        raise CLIError(f"missing parameter {exc.args[0]}")
    except (ValueError, TypeError) as exc:
        raise CLIError(str(exc))
    if args.family == "nxn":
        r = reps.check_nxn_family(fam)
        checks = {"exchange": r["exchange"], "Q_N_zero": r["Q_N_zero"], "ansatz": r["ansatz"]}
        return {"command": "reps check", "family": "nxn", "checks": checks, "k": suites.jsonable(r["k"]),
                "ok": all(checks.values())}
    checks = {}
    for prefix, res in (("rll", reps.check_rll(fam)), ("explicit", reps.check_rll_explicit(fam)),
                        ("tilde", reps.check_tilde_relations(fam))):
        for k, v in res.items():
            checks[f"{prefix}.{k}"] = v
    irr, cdim = reps.irreducible(fam)
    return {"command": "reps check", "family": args.family, "dim": fam.dim, "checks": checks,
            "irreducible": irr, "commutant_dim": cdim, "ok": all(checks.values())}


def cmd_chain(args) -> dict:
    if args.sites < 2:
        raise CLIError("sites must be >= 2")
    _cap(args.sites, MAX_SITES, "sites", args.force)
    if args.action == "charpoly":
        r = chains.charpoly_report(args.sites, args.boundary)
        return {"command": "chain charpoly", **r, "ok": r["matches"]}
    ok = chains.check_transfer_commutativity(args.sites, args.boundary, args.u, args.v)
    return {"command": "chain commute", "sites": args.sites, "boundary": args.boundary,
            "u": str(args.u), "v": str(args.v), "commutator_zero": ok, "ok": ok}


def cmd_vertex(args) -> dict:
    if args.u == 0:
        raise CLIError("u must be nonzero")
    _cap(args.cols, MAX_SITES, "cols", args.force)
    norm = not args.unnormalised
    z = chains.partition_function(args.cols, args.rows, args.u, normalised=norm)
    out = {"command": "vertex partition", "cols": args.cols, "rows": args.rows, "u": str(args.u),
           "normalised": norm, "Z": str(z), "Z_pretty": z.pretty()}
    ok = True
    if args.oracle:
        b = chains.brute_force_partition(args.cols, args.rows, args.u, normalised=norm)
        ok = b == z
        out.update({"oracle": str(b), "oracle_matches": ok})
    out["ok"] = ok
    return out


def cmd_clifford(args) -> dict:
    L = args.sites
    if args.action == "decompose":
        if not 2 <= L <= 5:
            raise CLIError("decompose supports 2 <= sites <= 5")
        r = clifford.regular_rep_decomposition(L)
        return {"command": "clifford decompose", **suites.jsonable(r)}
    if not 2 <= L <= 6:
        raise CLIError("verify supports 2 <= sites <= 6")
    checks = {
        "anticommutation": clifford.check_anticommutation(L),
        "symmetry": bool(clifford.check_symmetry(L)["all"]),
        "homomorphism": clifford.check_homomorphism(L, seed=args.seed),
    }
    out = {"command": "clifford verify", "sites": L, "seed": args.seed}
    if L % 2 == 0:
        cr = clifford.casimir_report(L)
        checks["casimir_central"] = cr["central"]
        checks["casimir_commutes_with_H"] = cr["commutes_with_H"]
        out["casimir_square"] = cr["square"]
    if L <= 5:
        checks["irrep_actions"] = clifford.verify_all_actions(L)
    out["checks"] = checks
    out["ok"] = all(checks.values())
    return out


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--force", action="store_true", default=argparse.SUPPRESS,
                        help="lift the desk-scale caps on sites and degree")

    p = argparse.ArgumentParser(prog="s03", description="Exact checks for S03, its dual and derived models.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suites", nargs="*", metavar="SUITE",
                   help=f"one or more of: {', '.join(SUITE_NAMES)}")
    v.add_argument("--all", action="store_true", help="run every suite (the default)")
    v.add_argument("--timing", action="store_true", help="append a non-stable runtime section")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("algebra", parents=[common], help="S03 rewriting and the RRA")
    a.add_argument("action", choices=("reduce", "dim", "rra"))
    a.add_argument("arg", help="word such as ab^2c, or a degree N")
    a.set_defaults(func=cmd_algebra)

    r = sub.add_parser("reps", parents=[common], help="representations of the dual algebra")
    rsub = r.add_subparsers(dest="action", required=True)
    rc = rsub.add_parser("check", parents=[common])
    rc.add_argument("--family", required=True,
                    help="fundamental, rra-linear, rra, 2dim-A, 2dim-B, 2dim-C, block, nxn")
    rc.add_argument("--params", nargs="*", default=[], help="key=value, lists comma-separated")
    rd = rsub.add_parser("decompose", parents=[common])
    rd.add_argument("--degree", type=int, required=True)
    r.set_defaults(func=cmd_reps)

    c = sub.add_parser("chain", parents=[common], help="spin chain transfer matrices and Hamiltonians")
    csub = c.add_subparsers(dest="action", required=True)
    cc = csub.add_parser("charpoly", parents=[common])
    cc.add_argument("--sites", type=int, required=True)
    cc.add_argument("--boundary", choices=("open", "periodic"), required=True)
    cm = csub.add_parser("commute", parents=[common])
    cm.add_argument("--sites", type=int, required=True)
    cm.add_argument("--boundary", choices=("open", "periodic"), default="periodic")
    cm.add_argument("--u", type=_fraction, required=True)
    cm.add_argument("--v", type=_fraction, required=True)
    c.set_defaults(func=cmd_chain)

    vx = sub.add_parser("vertex", parents=[common], help="eight-vertex partition functions")
    vsub = vx.add_subparsers(dest="action", required=True)
    vp = vsub.add_parser("partition", parents=[common])
    vp.add_argument("--cols", type=int, required=True)
    vp.add_argument("--rows", type=int, required=True)
    vp.add_argument("--u", type=_fraction, required=True)
    vp.add_argument("--oracle", action="store_true", help="also sum over configurations directly")
    vp.add_argument("--unnormalised", action="store_true",
                    help="drop the (2u)^(-1/2) weight factor; needed when u is not a rational square")
    vx.set_defaults(func=cmd_vertex)

    cl = sub.add_parser("clifford", parents=[common], help="Clifford symmetry of the open chain")
    cl.add_argument("action", choices=("verify", "decompose"))
    cl.add_argument("--sites", type=int, required=True)
    cl.set_defaults(func=cmd_clifford)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("format", "json"), ("seed", 0), ("force", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        report = args.func(args)
    except (CLIError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    report = suites.jsonable(report)
    emit(report, args.format)
    return 0 if report.get("ok", False) else 1


if __name__ == "__main__":
    sys.exit(main())

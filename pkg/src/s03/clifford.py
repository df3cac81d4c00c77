"""Clifford symmetry of the open chain.

B_i = D x ... x D x B x 1 x ... x 1 (B on site i) for i <= L and
B_(L+1) = D x ... x D.  They satisfy {B_i, B_j} = 2 delta_ij.

The abstract algebra C_(L+1) is handled through words: a word is a bitmask
whose bit k (0-based) stands for B_(k+1), read as the ordered product
B_1^n1 B_2^n2 ... B_(L+1)^n(L+1).  Elements are ``{mask: FieldK}``.
"""

import itertools
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .chains import B, C, D, hamiltonian
from .linalg import MatK, commutant_dimension, commutator, kron, kron_all, nullspace
from .scalar import FieldK, I, ONE, ZERO

Element = Dict[int, FieldK]
I2 = MatK.identity(2)


def check_sigma_relations() -> Dict[str, bool]:
    return {
        "squares": B @ B == I2 and C @ C == -I2 and D @ D == I2,
        "DB": D @ B == -(B @ D) and D @ B == C,
        "DC": D @ C == -(C @ D) and D @ C == B,
        "CB": C @ B == -(B @ C) and C @ B == D,
    }


def _check_L(L: int, lo: int = 2, hi: int = 6):
    if not isinstance(L, int) or not lo <= L <= hi:
        raise ValueError(f"number of sites must be in {lo}..{hi}")


def build_generators(L: int) -> List[MatK]:
    """[B_1, ..., B_(L+1)] as 2^L x 2^L matrices."""
    _check_L(L)
    gens = []
    for i in range(1, L + 1):
        gens.append(kron_all([D] * (i - 1) + [B] + [I2] * (L - i)))
    gens.append(kron_all([D] * L))
    return gens


def check_anticommutation(L: int) -> bool:
    gens = build_generators(L)
    ident = MatK.identity(2 ** L)
    for a, b in itertools.product(range(len(gens)), repeat=2):
        anti = gens[a] @ gens[b] + gens[b] @ gens[a]
        if anti != (ident.scale(2) if a == b else MatK.zeros(2 ** L)):
            return False
    return True


def check_symmetry(L: int, perturb: bool = False) -> Dict[str, object]:
    """[H_open, B_i] = 0 for all i; ``perturb`` adds D on site 1 as a control."""
    H = hamiltonian(L, "open").matrix
    if perturb:
        H = H + kron_all([D] + [I2] * (L - 1))
    gens = build_generators(L)
    per = [commutator(H, g).is_zero() for g in gens]
    out: Dict[str, object] = {"generators": per, "all": all(per)}
    if L == 2:
        derived = {"1xC": kron(I2, C), "CxD": kron(C, D), "BxC": kron(B, C), "CxB": kron(C, B)}
        out["derived"] = {k: commutator(H, m).is_zero() for k, m in derived.items()}
        out["all"] = out["all"] and all(out["derived"].values())
    return out


def casimir(L: int) -> MatK:
    """Product B_1 ... B_(L+1), defined for even L."""
    if L % 2:
        raise ValueError("the Casimir is defined for even L only")
    gens = build_generators(L)
    out = MatK.identity(2 ** L)
    for g in gens:
        out = out @ g
    return out


def casimir_report(L: int) -> Dict[str, object]:
    c = casimir(L)
    gens = build_generators(L)
    H = hamiltonian(L, "open").matrix
    ident = MatK.identity(2 ** L)
    sq = c @ c
    return {
        "central": all(commutator(c, g).is_zero() for g in gens),
        "commutes_with_H": commutator(c, H).is_zero(),
        "square": 1 if sq == ident else (-1 if sq == -ident else 0),
    }


# -- word algebra --------------------------------------------------------

def word_sign(a: int, b: int) -> int:
    """Sign of (ordered a)(ordered b) = sign * ordered(a xor b)."""
    swaps = 0
    x = b
    while x:
        low = x & -x
        # generators of a with a larger index than this generator of b
        swaps += bin(a & ~((low << 1) - 1)).count("1")
        x ^= low
    return -1 if swaps % 2 else 1


def multiply(x: Element, y: Element) -> Element:
    out: Element = {}
    for a, ca in x.items():
        for b, cb in y.items():
            m = a ^ b
            v = ca * cb * word_sign(a, b)
            nv = out.get(m, ZERO) + v
            if nv.is_zero():
                out.pop(m, None)
            else:
                out[m] = nv
    return out


def gen(i: int) -> Element:
    """B_i as an element (1-based)."""
    return {1 << (i - 1): ONE}


def scalar(c) -> Element:
    return {0: FieldK.coerce(c)}


def add(*xs: Element) -> Element:
    out: Element = {}
    for x in xs:
        for m, c in x.items():
            nv = out.get(m, ZERO) + c
            if nv.is_zero():
                out.pop(m, None)
            else:
                out[m] = nv
    return out


def scale(x: Element, c) -> Element:
    c = FieldK.coerce(c)
    return {m: v * c for m, v in x.items() if not (v * c).is_zero()}


def product(xs: Sequence[Element]) -> Element:
    out = scalar(1)
    for x in xs:
        out = multiply(out, x)
    return out


def word_str(mask: int) -> str:
    if mask == 0:
        return "1"
    return "".join(f"B{k + 1}" for k in range(mask.bit_length()) if mask >> k & 1)


def to_matrix(x: Element, gens: List[MatK]) -> MatK:
    n = gens[0].rows
    out = MatK.zeros(n)
    for m, c in x.items():
        w = MatK.identity(n)
        for k in range(len(gens)):
            if m >> k & 1:
                w = w @ gens[k]
        out = out + w.scale(c)
    return out


def check_homomorphism(L: int, trials: int = 20, max_len: int = 6, seed: int = 0) -> bool:
    """Random generator words multiplied abstractly and as matrices agree."""
    rng = random.Random(seed)
    gens = build_generators(L)
    n = L + 1
    for _ in range(trials):
        letters = [rng.randrange(1, n + 1) for _ in range(rng.randrange(1, max_len + 1))]
        abstract = product([gen(i) for i in letters])
        mat = MatK.identity(2 ** L)
        for i in letters:
            mat = mat @ gens[i - 1]
        if to_matrix(abstract, gens) != mat:
            return False
    return True


# -- irreducible blocks --------------------------------------------------

def _idem(i: int, j: int, eps: int) -> Element:
    """1 + i eps B_i B_j."""
    return add(scalar(1), scale(multiply(gen(i), gen(j)), I * eps))


def _monomial(ns: Sequence[int]) -> Element:
    return product([gen(k + 1) if n else scalar(1) for k, n in enumerate(ns)])


def basis_even(L: int, eps: Sequence[int], alpha: int) -> Dict[Tuple[int, ...], Element]:
    """A^(n_1..n_(L/2)) = B_1^n1 ... (1 + alpha B_(L+1)) prod_j (1 + i eps_j B_j B_(L+1-j))."""
    h = L // 2
    tail = product([add(scalar(1), scale(gen(L + 1), alpha))] + [_idem(j, L + 1 - j, eps[j - 1]) for j in range(1, h + 1)])
    return {ns: multiply(_monomial(ns), tail) for ns in itertools.product((0, 1), repeat=h)}


def basis_odd(L: int, eps: Sequence[int]) -> Dict[Tuple[int, ...], Element]:
    """A^(m; n_1..n_((L-1)/2)) = (1 + (-1)^m B_(L+1)) B^n prod_j (...) (1 + i eps_h B_h B_(L+1)), h = (L+1)/2."""
    h = (L - 1) // 2
    mid = (L + 1) // 2
    tail = product([_idem(j, L + 1 - j, eps[j - 1]) for j in range(1, h + 1)] + [_idem(mid, L + 1, eps[mid - 1])])
    out = {}
    for m in (0, 1):
        head = add(scalar(1), scale(gen(L + 1), -1 if m else 1))
        for ns in itertools.product((0, 1), repeat=h):
            out[(m,) + ns] = product([head, _monomial(ns), tail])
    return out


def _valid_signs(xs, n, what):
    if len(xs) != n or any(x not in (1, -1) for x in xs):
        raise ValueError(f"{what} must be {n} values of +1 or -1")


def irrep_basis(L: int, eps: Sequence[int], alpha: int = 1):
    if L % 2 == 0:
        _valid_signs(eps, L // 2, "eps")
        _valid_signs([alpha], 1, "alpha")
        return basis_even(L, eps, alpha)
    _valid_signs(eps, (L + 1) // 2, "eps")
    return basis_odd(L, eps)


def _coords(x: Element, basis: Dict, n_masks: int) -> Optional[Dict]:
    """Express x in the span of basis elements by exact solve."""
    keys = list(basis)
    cols = [[basis[k].get(m, ZERO) for m in range(n_masks)] for k in keys]
    rhs = [x.get(m, ZERO) for m in range(n_masks)]
    aug = MatK.from_columns(cols + [rhs])
    ns = nullspace(aug)
    for v in ns:
        if not v[-1].is_zero():
            c = [-vi / v[-1] for vi in v[:-1]]
            return {k: ci for k, ci in zip(keys, c) if not ci.is_zero()}
    return None


def block_matrices(L: int, basis: Dict) -> List[MatK]:
    """Matrices of left multiplication by B_1..B_(L+1) on the span of ``basis``."""
    keys = list(basis)
    n_masks = 1 << (L + 1)
    mats = []
    for i in range(1, L + 2):
        cols = []
        for k in keys:
            c = _coords(multiply(gen(i), basis[k]), basis, n_masks)
            if c is None:
                raise ValueError("span not invariant")
            cols.append([c.get(kk, ZERO) for kk in keys])
        mats.append(MatK.from_columns(cols))
    return mats


def _sign_choices(L: int):
    if L % 2 == 0:
        for eps in itertools.product((1, -1), repeat=L // 2):
            for alpha in (1, -1):
                yield list(eps), alpha
    else:
        for eps in itertools.product((1, -1), repeat=(L + 1) // 2):
            yield list(eps), None


def regular_rep_decomposition(L: int) -> Dict[str, object]:
    """Split the 2^(L+1)-dim left regular representation into the explicit blocks."""
    _check_L(L, 2, 5)
    n_masks = 1 << (L + 1)
    blocks = []
    all_cols = []
    for eps, alpha in _sign_choices(L):
        basis = irrep_basis(L, eps, alpha if alpha is not None else 1)
        mats = block_matrices(L, basis)
        blocks.append({"eps": eps, "alpha": alpha, "dim": len(basis), "commutant": commutant_dimension(mats)})
        all_cols += [[b.get(m, ZERO) for m in range(n_masks)] for b in basis.values()]
    spans = MatK.from_columns(all_cols).is_invertible()
    exp_count = 2 ** ((L + 2) // 2)
    exp_dim = 2 ** ((L + 1) // 2)
    return {
        "sites": L,
        "regular_dim": n_masks,
        "irreps": len(blocks),
        "dims": [b["dim"] for b in blocks],
        "commutant_dims": [b["commutant"] for b in blocks],
        "spans": spans,
        "expected": {"count": exp_count, "dim": exp_dim},
        "ok": spans and len(blocks) == exp_count and all(b["dim"] == exp_dim and b["commutant"] == 1 for b in blocks),
        "blocks": [{"eps": b["eps"], "alpha": b["alpha"]} for b in blocks],
    }


def _flip(ns, j):
    ns = list(ns)
    ns[j] ^= 1
    return tuple(ns)


def expected_action(L: int, i: int, key: Tuple[int, ...], eps, alpha) -> Tuple[FieldK, Tuple[int, ...]]:
    """The tabulated action B_i A^key = coeff * A^key'."""
    if L % 2 == 0:
        h = L // 2
        ns = key
        if i <= h:
            return FieldK.coerce((-1) ** sum(ns[: i - 1])), _flip(ns, i - 1)
        if i == L + 1:
            return FieldK.coerce(alpha * (-1) ** sum(ns)), ns
        j = L + 1 - i
        return -I * eps[j - 1] * (-1) ** sum(ns[:j]), _flip(ns, j - 1)
    h = (L - 1) // 2
    mid = (L + 1) // 2
    m, ns = key[0], key[1:]
    if i <= h:
        return FieldK.coerce((-1) ** sum(ns[: i - 1])), (m ^ 1,) + _flip(ns, i - 1)
    if i == mid:
        return I * eps[mid - 1] * (-1) ** (m + 1), (m ^ 1,) + tuple(ns)
    if i == L + 1:
        return FieldK.coerce((-1) ** m), key
    j = L + 1 - i
    return -I * eps[j - 1] * (-1) ** sum(ns[:j]), (m ^ 1,) + _flip(ns, j - 1)


def verify_irrep_actions(L: int, eps: Sequence[int], alpha: int = 1) -> Dict[str, object]:
    """Compare left multiplication on the basis with the tabulated formulas."""
    _check_L(L, 2, 5)
    basis = irrep_basis(L, eps, alpha)
    failures = []
    for i in range(1, L + 2):
        for key, elem in basis.items():
            got = multiply(gen(i), elem)
            c, k2 = expected_action(L, i, key, eps, alpha)
            want = scale(basis[k2], c)
            if got != want:
                failures.append(f"B{i} A{key}")
    out: Dict[str, object] = {"ok": not failures, "failures": failures}
    if L % 2 == 0:
        cas = product([gen(i) for i in range(1, L + 2)])
        key0 = next(iter(basis))
        c = _coords(multiply(cas, basis[key0]), {key0: basis[key0]}, 1 << (L + 1))
        value = c[key0] if c else None
        prod_eps = ONE
        for e in eps:
            prod_eps = prod_eps * (-I * e)
        out["casimir_scalar"] = value
        out["casimir_with_alpha"] = value == prod_eps * alpha
        out["casimir_without_alpha"] = value == prod_eps
        out["casimir_scalar_on_all"] = all(multiply(cas, b) == scale(b, value) for b in basis.values()) if value is not None else False
    return out


def verify_all_actions(L: int) -> bool:
    ok = True
    for eps, alpha in _sign_choices(L):
        r = verify_irrep_actions(L, eps, alpha if alpha is not None else 1)
        ok = ok and r["ok"] and r.get("casimir_with_alpha", True) and r.get("casimir_scalar_on_all", True)
    return ok

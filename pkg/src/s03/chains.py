"""Eight-vertex model and spin chains built on the Baxterised S03 R-matrix.

Weights are kept unnormalised: R(u) = (2u)^(-1/2) N(u) with

    N(u) = [[1+u, 0, 0, 1-u], [0, 1-u, 1+u, 0], [0, 1+u, u-1, 0], [u-1, 0, 0, 1+u]]

which is R(x) = s^-1 R + s R21^-1 at x = u times sqrt(2u).  Polynomial
matrices here are MatL objects whose exponents are powers of u (not s).
A transfer matrix on L sites drops (2u)^(-L/2) (closed) or (2u)^(-L) (open).
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .linalg import (CharPoly, MatK, MatL, charpoly, commutator, embed_two_site,
                     kron, kron_l)
from .scalar import FieldK, I, SQRT2, ZERO, k_inverse

N0 = MatK.from_rows([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [-1, 0, 0, 1]])
N1 = MatK.from_rows([[1, 0, 0, -1], [0, -1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]])
SWAP = MatK.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])

B = MatK.from_rows([[0, 1], [1, 0]])
C = MatK.from_rows([[0, 1], [-1, 0]])
D = MatK.from_rows([[1, 0], [0, -1]])

MAX_CLOSED = 8
MAX_OPEN = 6
ORACLE_CAP = 16


def n_matrix(u=None, nvars: int = 1, var: int = 0, power: int = 1):
    """N(u) at a point (MatK) or as a polynomial in variable ``var`` raised to ``power``."""
    if u is not None:
        return N0 + N1.scale(FieldK.coerce(u))
    e0 = (0,) * nvars
    e1 = tuple(power if k == var else 0 for k in range(nvars))
    return MatL({e0: N0, e1: N1}, 4, 4, nvars)


def displayed_matrix(u):
    """The tabulated weight matrix, equal to P N(u)."""
    return SWAP @ n_matrix(u)


@dataclass(frozen=True)
class VertexWeights:
    """Unnormalised weights; the common factor is (2u)^(-1/2)."""

    a1: FieldK
    b1: FieldK
    c1: FieldK
    d1: FieldK
    a2: FieldK
    b2: FieldK
    c2: FieldK
    d2: FieldK

    @classmethod
    def from_matrix(cls, m: MatK) -> "VertexWeights":
        return cls(m[0, 0], m[1, 1], m[1, 2], m[0, 3], m[3, 3], m[2, 2], m[2, 1], m[3, 0])


def vertex_weights(u, displayed: bool = False) -> VertexWeights:
    return VertexWeights.from_matrix(displayed_matrix(u) if displayed else n_matrix(u))


def check_ybe_weights() -> Dict[str, bool]:
    """YBE R12(z) R13(zw) R23(w) = R23(w) R13(zw) R12(z) for N and for the display."""
    from .core import leg12, leg13, leg23

    out = {}
    for name, f in (("N", n_matrix), ("displayed", displayed_matrix)):
        ok = True
        for z, w in ((4, 9), (Fraction(1, 4), 9), (2, 3)):
            z, w = FieldK.coerce(z), FieldK.coerce(w)
            # prefactors (2z 2zw 2w)^(-1/2) agree on both sides
            a, b, c = f(z), f(z * w), f(w)
            ok = ok and leg12(a) @ leg13(b) @ leg23(c) == leg23(c) @ leg13(b) @ leg12(a)
        out[name] = ok
    return out


# -- aux-block algebra ---------------------------------------------------

def _kron(a, b):
    if isinstance(a, MatL) or isinstance(b, MatL):
        return kron_l(a, b)
    return kron(a, b)


def _block(m, alpha: int, beta: int, aux_first: bool = True):
    """Local 2x2 operator R[alpha, beta] of a 4x4 R acting on aux x site.

    aux_first=False reads R_(j0) = P R P, i.e. site index first.
    """
    def pick(k: MatK) -> MatK:
        if aux_first:
            return k.submatrix([2 * alpha, 2 * alpha + 1], [2 * beta, 2 * beta + 1])
        return k.submatrix([alpha, 2 + alpha], [beta, 2 + beta])

    return m.map(pick) if isinstance(m, MatL) else pick(m)


def _row_product(mats, aux_first=True):
    """Aux-block matrix of R_(0,1) ... R_(0,L) as a 2x2 list of site operators."""
    cur = None
    for m in mats:
        blk = [[_block(m, a, b, aux_first) for b in (0, 1)] for a in (0, 1)]
        if cur is None:
            cur = blk
            continue
        cur = [[_kron(cur[a][0], blk[0][b]) + _kron(cur[a][1], blk[1][b]) for b in (0, 1)] for a in (0, 1)]
    return cur


def _reverse_product(mats):
    """Aux blocks of R_(L,0) ... R_(1,0) with mats listed for sites 1..L."""
    cur = None
    for m in reversed(mats):
        blk = [[_block(m, a, b, aux_first=False) for b in (0, 1)] for a in (0, 1)]
        if cur is None:
            cur = blk
            continue
        # the new site sits to the left in tensor order but to the right in aux order
        cur = [[_kron(blk[0][b], cur[a][0]) + _kron(blk[1][b], cur[a][1]) for b in (0, 1)] for a in (0, 1)]
    return cur


@dataclass
class TransferMatrix:
    L: int
    boundary: str
    matrix: object  # MatK at a point, MatL as a polynomial in u
    dropped_power: Fraction  # the matrix omits (2u)^(-dropped_power)


def _check_sites(L, lo, hi):
    if not isinstance(L, int) or not lo <= L <= hi:
        raise ValueError(f"number of sites must be in {lo}..{hi}")


def transfer_closed(L: int, u=None, nvars: int = 1, var: int = 0, K=None) -> TransferMatrix:
    """t(u) = Tr_0 R_01(u) ... R_0L(u), unnormalised.  ``K`` inserts Tr_0 K_0 (twist)."""
    _check_sites(L, 1, MAX_CLOSED)
    m = n_matrix(u, nvars, var)
    blk = _row_product([m] * L)
    if K is None:
        mat = blk[0][0] + blk[1][1]
    else:
        mat = None
        for a, b in itertools.product((0, 1), repeat=2):
            if not K[b, a].is_zero():
                t = blk[a][b].scale(K[b, a])
                mat = t if mat is None else mat + t
    return TransferMatrix(L, "closed", mat, Fraction(L, 2))


def transfer_open(L: int, u=None, nvars: int = 1, var: int = 0, K=None, Kp=None) -> TransferMatrix:
    """Double-row t(u) = Tr_0 K'_0 R_01 ... R_0L K_0 R_L0 ... R_10, unnormalised."""
    _check_sites(L, 1, MAX_OPEN)
    m = n_matrix(u, nvars, var)
    top = _row_product([m] * L)
    bottom = _reverse_product([m] * L)
    K = K if K is not None else MatK.identity(2)
    Kp = Kp if Kp is not None else MatK.identity(2)
    mat = None
    for a, g, h, b in itertools.product((0, 1), repeat=4):
        # Tr(K' A K B) = sum K'[b,a] A[a,g] K[g,h] B[h,b]
        c = Kp[b, a] * K[g, h]
        if c.is_zero():
            continue
        t = (top[a][g] @ bottom[h][b]).scale(c)
        mat = t if mat is None else mat + t
    return TransferMatrix(L, "open", mat, Fraction(L))


def transfer(L, boundary, u=None, **kw) -> TransferMatrix:
    if boundary in ("closed", "periodic"):
        return transfer_closed(L, u, **kw)
    if boundary == "open":
        return transfer_open(L, u, **kw)
    raise ValueError("boundary must be 'open', 'closed' or 'periodic'")


def check_transfer_commutativity(L: int, boundary: str, u, v) -> bool:
    """[t(u), t(v)] = 0 exactly at two points."""
    a = transfer(L, boundary, u).matrix
    b = transfer(L, boundary, v).matrix
    return commutator(a, b).is_zero()


def check_transfer_commutativity_polynomial(L: int) -> bool:
    """[t(u), t(v)] = 0 as a polynomial identity in u, v (closed chains)."""
    if L > 4:
        raise ValueError("polynomial check limited to L <= 4")
    a = transfer_closed(L, nvars=2, var=0).matrix
    b = transfer_closed(L, nvars=2, var=1).matrix
    return (a @ b - b @ a).is_zero()


def check_reflection_equation(K: MatK, points=((4, 9), (Fraction(1, 4), 9), (9, 4))) -> bool:
    """R12(x/y) K1 R21(xy) K2 = K2 R12(xy) K1 R21(x/y) at exact points.

    Prefactors are the same on both sides, so N(u) is used.
    """
    if K.shape != (2, 2):
        raise ValueError("K must be 2x2")
    K1 = kron(K, MatK.identity(2))
    K2 = kron(MatK.identity(2), K)
    ok = True
    for x, y in points:
        x, y = FieldK.coerce(x), FieldK.coerce(y)
        r_minus, r_plus = n_matrix(x / y), n_matrix(x * y)
        r21_plus, r21_minus = SWAP @ r_plus @ SWAP, SWAP @ r_minus @ SWAP
        lhs = r_minus @ K1 @ r21_plus @ K2
        rhs = K2 @ r_plus @ K1 @ r21_minus
        ok = ok and lhs == rhs
    return ok


# -- Hamiltonians --------------------------------------------------------

@dataclass
class ChainHamiltonian:
    L: int
    boundary: str
    matrix: MatK


def local_density(sign: int = 1, mirrored: bool = False) -> MatK:
    """h = B x C (sign=+1) or its negative; mirrored gives C x B."""
    return (kron(C, B) if mirrored else kron(B, C)).scale(sign)


def hamiltonian(L: int, boundary: str, sign: int = 1, mirrored: bool = False) -> ChainHamiltonian:
    """Sum of h_(i,i+1); periodic adds h_(L,1) with its first leg on site L."""
    _check_sites(L, 2, 6)
    if boundary not in ("open", "periodic", "closed"):
        raise ValueError("boundary must be 'open' or 'periodic'")
    h = local_density(sign, mirrored)
    H = MatK.zeros(2 ** L)
    for i in range(1, L):
        H = H + embed_two_site(h, i, L)
    if boundary != "open":
        H = H + embed_two_site(h, L, L, wrap=True)
    return ChainHamiltonian(L, "open" if boundary == "open" else "periodic", H)


def derivative_hamiltonian(L: int, boundary: str) -> MatK:
    """t'(1) t(1)^-1 of the normalised transfer matrix.

    With t = (2u)^(-k) tau(u) this is tau'(1) tau(1)^-1 - k.
    """
    tm = transfer(L, boundary)
    tau = tm.matrix
    t1 = tau.evaluate(1)
    d1 = tau.derivative(0).evaluate(1)
    k = FieldK.coerce(tm.dropped_power)
    return d1 @ t1.inverse() - MatK.identity(2 ** L).scale(k)


def hamiltonian_consistency(L: int, boundary: str) -> Dict[str, object]:
    """Find a, b with t'(1) t(1)^-1 = a H + b I.

    H is tried with density B x C and with the mirrored C x B; the first
    orientation that fits is reported.
    """
    Hd = derivative_hamiltonian(L, boundary)
    n = 2 ** L
    for mirrored in (False, True):
        H = hamiltonian(L, boundary, mirrored=mirrored).matrix
        i, j = next((i, j) for i, j in H.nonzero_positions() if i != j)
        a = Hd[i, j] / H[i, j]
        rest = Hd - H.scale(a)
        b = rest[0, 0]
        if rest == MatK.identity(n).scale(b):
            return {"consistent": True, "density": "C x B" if mirrored else "B x C", "scale": a, "shift": b}
    return {"consistent": False}


def commutes_with_transfer(L: int, points=(4, Fraction(1, 9), 3)) -> bool:
    """[H_per, t(u)] = 0 at sample points."""
    H = hamiltonian(L, "periodic").matrix
    return all(commutator(H, transfer_closed(L, u).matrix).is_zero() for u in points)


TABLE_OPEN = {
    2: [([1, 0, 1], 2)],
    3: [([2, 0, 1], 4)],
    4: [([5, 0, 1], 4), ([1, 0, 1], 4)],
    5: [([4, 0, 8, 0, 1], 8)],
    6: [([1, 0, 1], 8), ([1, 0, 83, 0, 19, 0, 1], 8)],
}
TABLE_PERIODIC = {
    2: [([0, 1], 2), ([4, 0, 1], 1)],
    3: [([3, 0, 1], 4)],
    4: [([0, 1], 4), ([8, 0, 1], 2), ([4, 0, 1], 4)],
    5: [([5, 0, 10, 0, 1], 8)],
    6: [([0, 1], 24), ([16, 0, 1], 4), ([4, 0, 1], 8), ([12, 0, 1], 8)],
}


def chain_charpoly(L: int, boundary: str, sign: int = 1) -> CharPoly:
    return charpoly(hamiltonian(L, boundary, sign).matrix)


def expected_charpoly(L: int, boundary: str) -> CharPoly:
    table = TABLE_OPEN if boundary == "open" else TABLE_PERIODIC
    return CharPoly.from_factors(table[L])


def charpoly_report(L: int, boundary: str) -> Dict[str, object]:
    cp = chain_charpoly(L, boundary)
    exp = expected_charpoly(L, boundary)
    return {
        "sites": L,
        "boundary": boundary,
        "expanded": cp.expanded_str(),
        "factored": cp.factored_str(),
        "expected": exp.factored_str(),
        "matches": cp == exp,
        "perfect_square": cp.is_perfect_square(),
    }


# -- eigenstates ---------------------------------------------------------

def _state(terms: Dict[str, FieldK], L: int) -> List[FieldK]:
    """Vector from {'udu': coeff}; u is basis index 0 and d is index 1."""
    v = [ZERO] * (2 ** L)
    for spins, c in terms.items():
        idx = int("".join("0" if s == "u" else "1" for s in spins), 2)
        v[idx] = v[idx] + FieldK.coerce(c)
    return v


def listed_eigenstates():
    """(label, vector, eigenvalue as listed) for two and three sites."""
    r2i = I * SQRT2
    two = [
        ("uu+i dd", _state({"uu": 1, "dd": I}, 2), -I),
        ("du+i ud", _state({"du": 1, "ud": I}, 2), -I),
        ("uu-i dd", _state({"uu": 1, "dd": -I}, 2), I),
        ("du-i ud", _state({"du": 1, "ud": -I}, 2), I),
    ]
    three = []
    for sg, tag in ((1, "+"), (-1, "-")):
        lam = r2i * sg
        three += [
            (f"w1{tag}", _state({"ddu": 1, "udd": 1, "uuu": r2i * sg}, 3), lam),
            (f"w2{tag}", _state({"ddu": 1, "udd": -1, "dud": -r2i * sg}, 3), lam),
            (f"w3{tag}", _state({"uud": 1, "duu": 1, "ddd": -r2i * sg}, 3), lam),
            (f"w4{tag}", _state({"uud": 1, "duu": -1, "udu": r2i * sg}, 3), lam),
        ]
    return two, three


def _eigenvalue(H: MatK, v: List[FieldK]) -> Optional[FieldK]:
    w = H.apply(v)
    k = next(i for i, x in enumerate(v) if not x.is_zero())
    lam = w[k] / v[k]
    return lam if all(wi == lam * vi for wi, vi in zip(w, v)) else None


def verify_eigenstates() -> Dict[str, object]:
    """Check the listed states under h = +B x C and h = -B x C."""
    two, three = listed_eigenstates()
    out: Dict[str, object] = {}
    for sign in (1, -1):
        H2 = hamiltonian(2, "open", sign).matrix
        H3 = hamiltonian(3, "open", sign).matrix
        eig = all(_eigenvalue(H2, v) is not None for _, v, _ in two) and all(
            _eigenvalue(H3, v) is not None for _, v, _ in three)
        labels = all(_eigenvalue(H2, v) == lam for _, v, lam in two) and all(
            _eigenvalue(H3, v) == lam for _, v, lam in three)
        key = "plus_BC" if sign == 1 else "minus_BC"
        out[key] = {"eigenvectors": eig, "listed_eigenvalues": labels}
    vecs = [v for _, v, _ in two]
    out["orthogonal_two_site"] = all(
        sum((a.conj_i() * b for a, b in zip(vecs[p], vecs[q])), ZERO).is_zero()
        for p, q in itertools.combinations(range(4), 2)
    )
    out["convention"] = "minus_BC" if out["minus_BC"]["listed_eigenvalues"] else (
        "plus_BC" if out["plus_BC"]["listed_eigenvalues"] else "none")
    return out


# -- partition functions -------------------------------------------------

def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    from math import isqrt

    if q <= 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _normaliser(u: Fraction, count: int) -> FieldK:
    """(2u)^(-count/2) for u a rational square."""
    s = _rational_sqrt(u)
    if s is None:
        raise ValueError("u must be the square of a nonzero rational for the normalised value")
    one_over = k_inverse(SQRT2 * FieldK.coerce(s))
    return one_over ** count


def _as_fraction(u) -> Fraction:
    if isinstance(u, FieldK):
        if not u.is_rational():
            raise ValueError("u must be rational")
        return u.to_fraction()
    return Fraction(u)


def partition_function(Lcols: int, Mrows: int, u, normalised: bool = True) -> FieldK:
    """Tr[t(u)^M] on an L x M torus with every row at the same u."""
    if Lcols < 1 or Mrows < 1:
        raise ValueError("lattice sizes must be positive")
    uf = _as_fraction(u)
    if uf == 0:
        raise ValueError("u must be nonzero")
    t = transfer_closed(Lcols, FieldK.coerce(uf)).matrix
    z = (t ** Mrows).trace()
    return z * _normaliser(uf, Lcols * Mrows) if normalised else z


def brute_force_partition(Lcols: int, Mrows: int, u, normalised: bool = True) -> FieldK:
    """Direct sum over arrow configurations on the torus.

    Vertex (r, j) has left/right horizontal edges h[r][j], h[r][j+1 mod L]
    and lower/upper vertical edges v[r][j], v[r+1 mod M][j]; its weight is
    N(u)[(h_in, v_in), (h_out, v_out)].  Weights are scaled to integers.
    """
    if Lcols < 1 or Mrows < 1:
        raise ValueError("lattice sizes must be positive")
    if Lcols * Mrows > ORACLE_CAP:
        raise ValueError(f"brute force is capped at {ORACLE_CAP} vertices")
    uf = _as_fraction(u)
    if uf == 0:
        raise ValueError("u must be nonzero")
    den = uf.denominator
    w = [[int((N0[i, j] * den + N1[i, j] * uf.numerator).to_fraction()) for j in range(4)] for i in range(4)]
    L, M = Lcols, Mrows
    h = [[0] * L for _ in range(M)]
    v = [[0] * L for _ in range(M)]
    total = 0

    def visit(pos: int, acc: int):
        nonlocal total
        if pos == L * M:
            total += acc
            return
        r, j = divmod(pos, L)
        hin = h[r][j]
        vin = v[r][j]
        last_col = j == L - 1
        last_row = r == M - 1
        for hout in ((h[r][0],) if last_col else (0, 1)):
            for vout in ((v[0][j],) if last_row else (0, 1)):
                wt = w[2 * hin + vin][2 * hout + vout]
                if wt == 0:
                    continue
                if not last_col:
                    h[r][j + 1] = hout
                if not last_row:
                    v[r + 1][j] = vout
                visit(pos + 1, acc * wt)

    # free variables: h[r][0] for each row and v[0][j] for each column
    for hs in itertools.product((0, 1), repeat=M):
        for vs in itertools.product((0, 1), repeat=L):
            for r in range(M):
                h[r][0] = hs[r]
            for j in range(L):
                v[0][j] = vs[j]
            visit(0, 1)
    z = FieldK.coerce(Fraction(total, den ** (L * M)))
    return z * _normaliser(uf, L * M) if normalised else z

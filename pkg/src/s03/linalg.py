"""Dense exact linear algebra over Q(i, sqrt2) and over Laurent polynomials.

:class:`MatK` keeps a matrix as four integer arrays (the coefficients of
``1, i, sqrt2, i*sqrt2``) over one common denominator. Products are then
numpy object-dtype products of Python integers, which keeps 64x64
computations at desk speed without giving up exactness.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .scalar import ONE, ZERO, FieldK, LaurentK

__all__ = [
    "MatK",
    "MatL",
    "CharPoly",
    "kron",
    "kron_all",
    "embed_two_site",
    "embed_one_site",
    "site_permutation",
    "charpoly",
    "nullspace",
    "rank",
    "commutant_dimension",
    "commutant_basis",
    "intertwiner",
    "intertwiner_space",
    "direct_sum",
    "commutator",
    "anticommutator",
]

# basis units 1, i, r, i*r with r = sqrt2; _UNIT_MUL[p][q] = (factor, index of unit)
_UNIT_MUL = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (1, 3), (2, 0), (2, 1)),
    ((1, 3), (-1, 2), (2, 1), (-2, 0)),
)


class MatK:
    """Immutable dense matrix over Q(i, sqrt2)."""

    __slots__ = ("rows", "cols", "comp", "den")

    def __init__(self, rows: int, cols: int, comp, den: int = 1, normalize: bool = True):
        self.rows = rows
        self.cols = cols
        comp = [c if c is not None and c.any() else None for c in comp]
        self.comp = comp
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self):
        arrays = [c for c in self.comp if c is not None]
        if not arrays:
            self.den = 1
            return
        if self.den < 0:
            self.comp = [None if c is None else -c for c in self.comp]
            self.den = -self.den
        if self.den == 1:
            return
        g = self.den
        for c in arrays:
            g = math.gcd(g, *c.ravel().tolist())
            if g == 1:
                return
        self.comp = [None if c is None else c // g for c in self.comp]
        self.den //= g

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "MatK":
        entries = [[FieldK.coerce(x) for x in row] for row in rows]
        nr = len(entries)
        nc = len(entries[0]) if nr else 0
        if any(len(r) != nc for r in entries):
            raise ValueError("ragged rows")
        den = 1
        for row in entries:
            for x in row:
                if x.d != 1:
                    den = math.lcm(den, x.d)
        comp = [np.empty((nr, nc), dtype=object) for _ in range(4)]
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                f = den // x.d
                comp[0][i, j] = x.a * f
                comp[1][i, j] = x.b * f
                comp[2][i, j] = x.c * f
                comp[3][i, j] = x.e * f
        return cls(nr, nc, comp, den)

    @classmethod
    def from_int_array(cls, arr, den: int = 1) -> "MatK":
        arr = np.asarray(arr)
        a = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            a[idx] = int(arr[idx])
        return cls(arr.shape[0], arr.shape[1], [a, None, None, None], den)

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "MatK":
        cols = rows if cols is None else cols
        return cls(rows, cols, [None] * 4, 1, normalize=False)

    @classmethod
    def identity(cls, n: int) -> "MatK":
        a = np.zeros((n, n), dtype=object)
        for k in range(n):
            a[k, k] = 1
        return cls(n, n, [a, None, None, None], 1, normalize=False)

    @classmethod
    def diag(cls, values: Sequence) -> "MatK":
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "MatK":
        return cls.from_rows(list(zip(*cols))) if cols else cls.zeros(0, 0)

    # access

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def _arr(self, k):
        c = self.comp[k]
        return c if c is not None else np.zeros((self.rows, self.cols), dtype=object)

    def __getitem__(self, idx) -> FieldK:
        i, j = idx
        vals = [0 if c is None else c[i, j] for c in self.comp]
        return FieldK.from_ints(vals[0], vals[1], vals[2], vals[3], self.den)

    def to_rows(self) -> List[List[FieldK]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def row(self, i) -> List[FieldK]:
        return [self[i, j] for j in range(self.cols)]

    def column(self, j) -> List[FieldK]:
        return [self[i, j] for i in range(self.rows)]

    def nonzero_positions(self):
        mask = np.zeros((self.rows, self.cols), dtype=bool)
        for c in self.comp:
            if c is not None:
                mask |= c != 0
        return list(zip(*np.nonzero(mask)))

    def is_zero(self) -> bool:
        return all(c is None for c in self.comp)

    def is_rational(self) -> bool:
        return all(c is None for c in self.comp[1:])

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "MatK") -> "MatK":
        if not isinstance(other, MatK):
            return NotImplemented
        self._check_same(other)
        den = math.lcm(self.den, other.den)
        f1, f2 = den // self.den, den // other.den
        comp = []
        for c1, c2 in zip(self.comp, other.comp):
            if c1 is None and c2 is None:
                comp.append(None)
            elif c1 is None:
                comp.append(c2 * f2)
            elif c2 is None:
                comp.append(c1 * f1)
            else:
                comp.append(c1 * f1 + c2 * f2)
        return MatK(self.rows, self.cols, comp, den)

    def __neg__(self) -> "MatK":
        return MatK(self.rows, self.cols, [None if c is None else -c for c in self.comp], self.den, normalize=False)

    def __sub__(self, other: "MatK") -> "MatK":
        if not isinstance(other, MatK):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "MatK":
        k = FieldK.coerce(k)
        kc = (k.a, k.b, k.c, k.e)
        comp = [None] * 4
        for p, c in enumerate(self.comp):
            if c is None:
                continue
            for q, kv in enumerate(kc):
                if not kv:
                    continue
                f, t = _UNIT_MUL[p][q]
                term = c * (f * kv)
                comp[t] = term if comp[t] is None else comp[t] + term
        return MatK(self.rows, self.cols, comp, self.den * k.d)

    def __mul__(self, k) -> "MatK":
        if isinstance(k, MatK):
            return self @ k
        try:
            return self.scale(k)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, k) -> "MatK":
        return self.scale(FieldK.coerce(k).inverse())

    def __matmul__(self, other: "MatK") -> "MatK":
        if not isinstance(other, MatK):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        comp = [None] * 4
        for p, c1 in enumerate(self.comp):
            if c1 is None:
                continue
            for q, c2 in enumerate(other.comp):
                if c2 is None:
                    continue
                f, t = _UNIT_MUL[p][q]
                prod = c1.dot(c2)
                if f != 1:
                    prod = prod * f
                comp[t] = prod if comp[t] is None else comp[t] + prod
        comp = [c if c is None else np.asarray(c, dtype=object).reshape(self.rows, other.cols) for c in comp]
        return MatK(self.rows, other.cols, comp, self.den * other.den)

    def __pow__(self, n: int) -> "MatK":
        if n < 0:
            return self.inverse() ** (-n)
        result = MatK.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatK):
            return NotImplemented
        if self.shape != other.shape or self.den != other.den:
            return False
        for c1, c2 in zip(self.comp, other.comp):
            if (c1 is None) != (c2 is None):
                return False
            if c1 is not None and not np.array_equal(c1, c2):
                return False
        return True

    def __hash__(self):
        return hash((self.shape, self.den, tuple(None if c is None else tuple(c.ravel()) for c in self.comp)))

    def transpose(self) -> "MatK":
        return MatK(self.cols, self.rows, [None if c is None else c.T.copy() for c in self.comp], self.den, normalize=False)

    @property
    def T(self) -> "MatK":
        return self.transpose()

    def conj(self) -> "MatK":
        """Entrywise complex conjugation (i -> -i)."""
        c = self.comp
        return MatK(self.rows, self.cols, [c[0], None if c[1] is None else -c[1], c[2], None if c[3] is None else -c[3]], self.den, normalize=False)

    def dagger(self) -> "MatK":
        return self.conj().transpose()

    def trace(self) -> FieldK:
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        vals = [0 if c is None else sum(c[k, k] for k in range(self.rows)) for c in self.comp]
        return FieldK.from_ints(int(vals[0]), int(vals[1]), int(vals[2]), int(vals[3]), self.den)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatK":
        rows, cols = list(rows), list(cols)
        return MatK(len(rows), len(cols), [None if c is None else c[np.ix_(rows, cols)] for c in self.comp], self.den)

    def apply(self, vec: Sequence) -> List[FieldK]:
        col = MatK.from_rows([[x] for x in vec])
        return (self @ col).column(0)

    def inverse(self) -> "MatK":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [self.row(i) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        _rref(aug, n)
        for i in range(n):
            if aug[i][i] != ONE:
                raise ZeroDivisionError("matrix is singular")
        return MatK.from_rows([r[n:] for r in aug])

    def rank(self) -> int:
        rows = [r for r in self.to_rows()]
        return len(_rref(rows, self.cols))

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def evaluate_poly(self, coeffs: Sequence[FieldK]) -> "MatK":
        """Horner evaluation of ``sum coeffs[k] * self**k``."""
        result = MatK.zeros(self.rows, self.cols)
        ident = MatK.identity(self.rows)
        for c in reversed(coeffs):
            result = result @ self + ident.scale(c)
        return result

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[str(x) for x in row] for row in self.to_rows()]}

    @classmethod
    def from_json(cls, data: dict) -> "MatK":
        from .scalar import parse_k

        m = cls.from_rows([[parse_k(x) for x in row] for row in data["entries"]])
        if m.shape != (data["rows"], data["cols"]):
            raise ValueError("shape in JSON does not match entries")
        return m

    def pretty(self) -> str:
        cells = [[x.pretty() for x in row] for row in self.to_rows()]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)

    def __repr__(self):
        return f"MatK({self.rows}x{self.cols})\n{self.pretty()}"


def _rref(rows: List[List[FieldK]], ncols: int) -> List[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        pivot = None
        for k in range(r, nrows):
            if rows[k][col]:
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for k in range(nrows):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], prow)]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots


def _sparse_nullspace(equations: Iterable[Dict[int, FieldK]], nvars: int) -> List[List[FieldK]]:
    """Kernel basis of a sparse linear system given as ``{var: coeff}`` rows."""
    pivot_rows: Dict[int, Dict[int, FieldK]] = {}
    for eq in equations:
        row = {k: v for k, v in eq.items() if v}
        # reduce against existing pivots
        changed = True
        while row and changed:
            changed = False
            for var in sorted(row):
                if var in pivot_rows:
                    f = row[var]
                    for k, v in pivot_rows[var].items():
                        nv = row.get(k, ZERO) - f * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
                    changed = True
                    break
        if not row:
            continue
        lead = min(row)
        inv = row[lead].inverse()
        row = {k: v * inv for k, v in row.items()}
        # back-substitute into existing pivots to keep them reduced
        for var, prow in pivot_rows.items():
            if lead in prow:
                f = prow[lead]
                for k, v in row.items():
                    nv = prow.get(k, ZERO) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivot_rows[lead] = row
    # now each pivot row may still contain other pivot vars; fully reduce
    for lead in sorted(pivot_rows, reverse=True):
        prow = pivot_rows[lead]
        for var in sorted(pivot_rows):
            if var != lead and var in prow:
                f = prow[var]
                for k, v in pivot_rows[var].items():
                    nv = prow.get(k, ZERO) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
    free = [v for v in range(nvars) if v not in pivot_rows]
    basis = []
    for fv in free:
        vec = [ZERO] * nvars
        vec[fv] = ONE
        for lead, prow in pivot_rows.items():
            if fv in prow:
                vec[lead] = -prow[fv]
        basis.append(vec)
    return basis


def nullspace(m: MatK) -> List[List[FieldK]]:
    """Exact basis of the right kernel of ``m``."""
    eqs = []
    for i in range(m.rows):
        eqs.append({j: m[i, j] for j in range(m.cols) if m[i, j]})
    basis = _sparse_nullspace(eqs, m.cols)
    return basis


def rank(m: MatK) -> int:
    return m.cols - len(nullspace(m))


def kron(a: MatK, b: MatK) -> MatK:
    comp = [None] * 4
    for p, c1 in enumerate(a.comp):
        if c1 is None:
            continue
        for q, c2 in enumerate(b.comp):
            if c2 is None:
                continue
            f, t = _UNIT_MUL[p][q]
            prod = np.kron(c1, c2)
            if f != 1:
                prod = prod * f
            comp[t] = prod if comp[t] is None else comp[t] + prod
    return MatK(a.rows * b.rows, a.cols * b.cols, comp, a.den * b.den)


def kron_all(mats: Sequence[MatK]) -> MatK:
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def site_permutation(perm: Sequence[int], dims: Sequence[int]) -> MatK:
    """Permutation matrix sending tensor factor ``k`` to position ``perm[k]``.

    The result ``S`` satisfies ``S @ kron(x_0, ..., x_{n-1}) = kron(y_0, ...)``
    for column vectors with ``y[perm[k]] = x[k]``.
    """
    n = len(dims)
    new_dims = [0] * n
    for k in range(n):
        new_dims[perm[k]] = dims[k]
    total = int(np.prod(dims))
    a = np.zeros((total, total), dtype=object)
    for idx in np.ndindex(*dims):
        new_idx = [0] * n
        for k in range(n):
            new_idx[perm[k]] = idx[k]
        src = int(np.ravel_multi_index(idx, dims))
        dst = int(np.ravel_multi_index(tuple(new_idx), new_dims))
        a[dst, src] = 1
    return MatK(total, total, [a, None, None, None], 1, normalize=False)


def embed_one_site(m: MatK, site: int, L: int, d: int = 2) -> MatK:
    """Operator ``m`` on site ``site`` (1-based) of ``L`` sites of dimension ``d``."""
    if not 1 <= site <= L:
        raise ValueError(f"site {site} out of range 1..{L}")
    left = MatK.identity(d ** (site - 1))
    right = MatK.identity(d ** (L - site))
    return kron(kron(left, m), right)


def embed_two_site(m: MatK, site: int, L: int, d: int = 2, wrap: bool = False) -> MatK:
    """Two-site operator on sites ``(site, site+1)`` of an ``L``-site chain.

    With ``wrap=True`` and ``site == L`` the operator acts on the pair ``(L, 1)``
    with its first leg on site ``L``.
    """
    if m.shape != (d * d, d * d):
        raise ValueError("two-site operator must be d^2 x d^2")
    if wrap and site == L:
        if L < 2:
            raise ValueError("wrap needs at least two sites")
        # place m on (1, 2) then relabel sites so that leg 1 -> site L, leg 2 -> site 1
        base = kron(m, MatK.identity(d ** (L - 2)))
        perm = [L - 1, 0] + list(range(1, L - 1))
        S = site_permutation(perm, [d] * L)
        return S @ base @ S.transpose()
    if not 1 <= site <= L - 1:
        raise ValueError(f"site {site} out of range 1..{L - 1}")
    left = MatK.identity(d ** (site - 1))
    right = MatK.identity(d ** (L - site - 1))
    return kron(kron(left, m), right)


def partial_trace_first(m: MatK, d: int) -> MatK:
    """Trace over the leftmost tensor factor of dimension ``d``."""
    n = m.rows // d
    if m.rows != n * d or not m.is_square():
        raise ValueError("dimension not divisible by auxiliary dimension")
    comp = []
    for c in m.comp:
        if c is None:
            comp.append(None)
            continue
        acc = c[0:n, 0:n].copy()
        for k in range(1, d):
            acc = acc + c[k * n : (k + 1) * n, k * n : (k + 1) * n]
        comp.append(acc)
    return MatK(n, n, comp, m.den)


def direct_sum(mats: Sequence[MatK]) -> MatK:
    n = sum(m.rows for m in mats)
    k = sum(m.cols for m in mats)
    rows = [[ZERO] * k for _ in range(n)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                rows[r0 + i][c0 + j] = m[i, j]
        r0 += m.rows
        c0 += m.cols
    return MatK.from_rows(rows)


def commutator(a: MatK, b: MatK) -> MatK:
    return a @ b - b @ a


def anticommutator(a: MatK, b: MatK) -> MatK:
    return a @ b + b @ a


class CharPoly:
    """Monic characteristic polynomial, coefficients of ``lambda**0 .. lambda**n``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = [FieldK.coerce(c) for c in coeffs]
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, CharPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return CharPoly(out)

    def __pow__(self, n: int) -> "CharPoly":
        out = CharPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, x) -> FieldK:
        x = FieldK.coerce(x)
        total = ZERO
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def evaluate_matrix(self, m: MatK) -> MatK:
        return m.evaluate_poly(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.is_rational() and c.d == 1 for c in self.coeffs)

    def int_coeffs(self) -> List[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [c.a for c in self.coeffs]

    @classmethod
    def from_ints(cls, coeffs: Sequence[int]) -> "CharPoly":
        return cls([FieldK.coerce(c) for c in coeffs])

    @classmethod
    def from_factors(cls, factors: Sequence[Tuple[Sequence[int], int]]) -> "CharPoly":
        """Product of ``(coeffs_low_to_high, multiplicity)`` integer factors."""
        out = cls([1])
        for coeffs, mult in factors:
            out = out * cls.from_ints(coeffs) ** mult
        return out

    def sqrt(self) -> Optional["CharPoly"]:
        """Exact monic square root, or ``None`` if this is not a perfect square."""
        n = self.degree
        if n % 2:
            return None
        m = n // 2
        # coefficients from the top: q = x^m + ..., solve q^2 = p downward
        p = list(self.coeffs)
        q = [ZERO] * (m + 1)
        q[m] = ONE
        half = FieldK.coerce(Fraction(1, 2))
        for k in range(1, m + 1):
            # coefficient of x^(n-k) in q^2, excluding the 2 q_{m-k} q_m term
            acc = ZERO
            for i in range(m - k + 1, m):
                acc = acc + q[i] * q[n - k - i]
            q[m - k] = (p[n - k] - acc) * half
        cand = CharPoly(q)
        return cand if cand * cand == self else None

    def is_perfect_square(self) -> bool:
        return self.sqrt() is not None

    def factored(self) -> Optional[List[Tuple[List[int], int]]]:
        """Factorization over Z as ``[(coeffs_low_to_high, multiplicity), ...]``.

        Only available when all coefficients are integers.
        """
        if not self.is_integral():
            return None
        import sympy

        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(self.int_coeffs())), x)
        _, factors = sympy.factor_list(poly)
        out = []
        for f, mult in factors:
            out.append(([int(c) for c in reversed(f.all_coeffs())], int(mult)))
        out.sort(key=lambda fm: (len(fm[0]), fm[0]))
        return out

    def factored_str(self, var: str = "x") -> Optional[str]:
        fac = self.factored()
        if fac is None:
            return None
        parts = []
        for coeffs, mult in fac:
            body = _poly_str(coeffs, var)
            if len([c for c in coeffs if c]) > 1:
                body = f"({body})"
            parts.append(body + (f"^{mult}" if mult > 1 else ""))
        return "".join(parts) if parts else "1"

    def expanded_str(self, var: str = "x") -> str:
        if self.is_integral():
            return _poly_str(self.int_coeffs(), var)
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(f"({c.pretty()})" + (f"*{var}^{k}" if k else ""))
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coeffs],
            "expanded": self.expanded_str(),
            "factored": self.factored_str(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CharPoly":
        from .scalar import parse_k

        return cls([parse_k(c) for c in data["coefficients"]])

    def __repr__(self):
        return f"CharPoly({self.expanded_str()})"


def _poly_str(coeffs: Sequence[int], var: str) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        if k == 0:
            mono = str(abs(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            if abs(c) != 1:
                mono = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, mono))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, mono in terms[1:]:
        out += sign + mono
    return out


def charpoly(m: MatK) -> CharPoly:
    """Faddeev-LeVerrier: det(lambda I - m), exact over Q(i, sqrt2).

    M_0 = 0, c_n = 1;  M_k = m M_{k-1} + c_{n-k+1} I;  c_{n-k} = -tr(m M_k) / k.
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of non-square matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    ident = MatK.identity(n)
    mk = MatK.zeros(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1]) if k > 1 else ident
        coeffs[n - k] = -(m @ mk).trace() / k
    return CharPoly(coeffs)


def _commutant_equations(pairs: Sequence[Tuple[MatK, MatK]], dA: int, dB: int):
    """Equations for X (dB x dA, unknown index i*dA + j) with X A = B X."""
    eqs = []
    for A, B in pairs:
        a_nz: Dict[int, List[Tuple[int, FieldK]]] = {}
        for (k, j) in A.nonzero_positions():
            a_nz.setdefault(int(j), []).append((int(k), A[k, j]))
        b_nz: Dict[int, List[Tuple[int, FieldK]]] = {}
        for (i, k) in B.nonzero_positions():
            b_nz.setdefault(int(i), []).append((int(k), B[i, k]))
        for i in range(dB):
            for j in range(dA):
                eq: Dict[int, FieldK] = {}
                # (X A)_{ij} = sum_k X_{ik} A_{kj}
                for k, v in a_nz.get(j, []):
                    idx = i * dA + k
                    eq[idx] = eq.get(idx, ZERO) + v
                # (B X)_{ij} = sum_k B_{ik} X_{kj}
                for k, v in b_nz.get(i, []):
                    idx = k * dA + j
                    eq[idx] = eq.get(idx, ZERO) - v
                eqs.append(eq)
    return eqs


def intertwiner_space(repA: Sequence[MatK], repB: Sequence[MatK]) -> List[MatK]:
    """Basis of ``{X : X A_k = B_k X for all k}``."""
    if len(repA) != len(repB) or not repA:
        raise ValueError("representations must list the same nonzero number of generators")
    dA = repA[0].rows
    dB = repB[0].rows
    for A, B in zip(repA, repB):
        if A.shape != (dA, dA) or B.shape != (dB, dB):
            raise ValueError("dimension mismatch between generator matrices")
    eqs = _commutant_equations(list(zip(repA, repB)), dA, dB)
    basis = _sparse_nullspace(eqs, dA * dB)
    return [MatK.from_rows([vec[i * dA : (i + 1) * dA] for i in range(dB)]) for vec in basis]


def commutant_basis(mats: Sequence[MatK]) -> List[MatK]:
    if not mats:
        raise ValueError("commutant of an empty family is not defined here")
    return intertwiner_space(mats, mats)


def commutant_dimension(mats: Sequence[MatK]) -> int:
    """Dimension of the commutant; 1 is taken as irreducible over Q(i, sqrt2)."""
    return len(commutant_basis(mats))


def intertwiner(repA: Sequence[MatK], repB: Sequence[MatK]) -> Optional[MatK]:
    """An invertible X with ``X A_k = B_k X``, or ``None``.

    Tries each basis element and small integer combinations of pairs; this is
    conclusive whenever the intertwiner space has dimension at most one.
    """
    if len(repA) != len(repB):
        raise ValueError("generator lists differ in length")
    if repA and repA[0].rows != repB[0].rows:
        return None
    space = intertwiner_space(repA, repB)
    for X in space:
        if X.is_invertible():
            return X
    for i in range(len(space)):
        for j in range(i + 1, len(space)):
            for c in (1, 2, -1, 3):
                X = space[i] + space[j].scale(c)
                if X.is_invertible():
                    return X
    return None


class MatL:
    """Matrix of Laurent polynomials stored as ``{exponent tuple: MatK}``."""

    __slots__ = ("rows", "cols", "nvars", "coeffs")

    def __init__(self, coeffs: Dict, rows: int, cols: int, nvars: int = 1):
        clean = {}
        for e, m in coeffs.items():
            if isinstance(e, int):
                e = (e,)
            if len(e) != nvars:
                raise ValueError("exponent arity mismatch")
            if m.shape != (rows, cols):
                raise ValueError("coefficient shape mismatch")
            if not m.is_zero():
                clean[e] = clean[e] + m if e in clean else m
        self.coeffs = {e: m for e, m in clean.items() if not m.is_zero()}
        self.rows = rows
        self.cols = cols
        self.nvars = nvars

    @classmethod
    def constant(cls, m: MatK, nvars: int = 1) -> "MatL":
        return cls({(0,) * nvars: m}, m.rows, m.cols, nvars)

    @classmethod
    def from_terms(cls, terms: Sequence[Tuple], nvars: int = 1) -> "MatL":
        """From ``[(exponent, MatK), ...]``."""
        first = terms[0][1]
        out: Dict = {}
        for e, m in terms:
            e = (e,) if isinstance(e, int) else tuple(e)
            out[e] = out[e] + m if e in out else m
        return cls(out, first.rows, first.cols, nvars)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[LaurentK]], nvars: int = 1) -> "MatL":
        rows = len(entries)
        cols = len(entries[0])
        exps = set()
        for row in entries:
            for p in row:
                exps.update(p.terms)
        coeffs = {}
        for e in exps:
            coeffs[e] = MatK.from_rows([[p.terms.get(e, ZERO) for p in row] for row in entries])
        return cls(coeffs, rows, cols, nvars)

    @property
    def shape(self):
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> LaurentK:
        return LaurentK({e: m[i, j] for e, m in self.coeffs.items()}, self.nvars)

    def entries(self) -> List[List[LaurentK]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "MatL") -> "MatL":
        out = dict(self.coeffs)
        for e, m in other.coeffs.items():
            out[e] = out[e] + m if e in out else m
        return MatL(out, self.rows, self.cols, self.nvars)

    def __neg__(self):
        return MatL({e: -m for e, m in self.coeffs.items()}, self.rows, self.cols, self.nvars)

    def __sub__(self, other: "MatL") -> "MatL":
        return self + (-other)

    def scale(self, k) -> "MatL":
        if isinstance(k, LaurentK):
            out: Dict = {}
            for e1, c in k.terms.items():
                for e2, m in self.coeffs.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    t = m.scale(c)
                    out[e] = out[e] + t if e in out else t
            return MatL(out, self.rows, self.cols, self.nvars)
        return MatL({e: m.scale(k) for e, m in self.coeffs.items()}, self.rows, self.cols, self.nvars)

    def __matmul__(self, other) -> "MatL":
        if isinstance(other, MatK):
            other = MatL.constant(other, self.nvars)
        out: Dict = {}
        for e1, m1 in self.coeffs.items():
            for e2, m2 in other.coeffs.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                p = m1 @ m2
                out[e] = out[e] + p if e in out else p
        return MatL(out, self.rows, other.cols, self.nvars)

    def __rmatmul__(self, other) -> "MatL":
        if isinstance(other, MatK):
            return MatL.constant(other, self.nvars) @ self
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, MatK):
            other = MatL.constant(other, self.nvars)
        if not isinstance(other, MatL):
            return NotImplemented
        return self.shape == other.shape and self.coeffs == other.coeffs

    def evaluate(self, *point) -> MatK:
        pts = [FieldK.coerce(p) for p in point]
        if len(pts) != self.nvars:
            raise ValueError(f"expected {self.nvars} values")
        total = MatK.zeros(self.rows, self.cols)
        for e, m in self.coeffs.items():
            f = ONE
            for p, k in zip(pts, e):
                if k:
                    f = f * p ** k
            total = total + m.scale(f)
        return total

    def derivative(self, var: int = 0) -> "MatL":
        out = {}
        for e, m in self.coeffs.items():
            if e[var]:
                ne = e[:var] + (e[var] - 1,) + e[var + 1 :]
                out[ne] = m.scale(e[var])
        return MatL(out, self.rows, self.cols, self.nvars)

    def shift(self, exp) -> "MatL":
        """Multiply by a monomial ``s**exp``."""
        exp = (exp,) if isinstance(exp, int) else tuple(exp)
        return MatL({tuple(x + y for x, y in zip(e, exp)): m for e, m in self.coeffs.items()}, self.rows, self.cols, self.nvars)

    def map(self, f) -> "MatL":
        """Apply a linear map on coefficient matrices (e.g. partial trace)."""
        out = {e: f(m) for e, m in self.coeffs.items()}
        first = next(iter(out.values()), None)
        rows, cols = (first.rows, first.cols) if first is not None else (self.rows, self.cols)
        return MatL(out, rows, cols, self.nvars)

    def exponents(self):
        return sorted(self.coeffs)

    def __repr__(self):
        return f"MatL({self.rows}x{self.cols}, exponents={self.exponents()})"


def kron_l(a, b) -> MatL:
    """Kronecker product where either side may be MatK or MatL."""
    nv = a.nvars if isinstance(a, MatL) else (b.nvars if isinstance(b, MatL) else 1)
    if isinstance(a, MatK):
        a = MatL.constant(a, nv)
    if isinstance(b, MatK):
        b = MatL.constant(b, nv)
    out: Dict = {}
    for e1, m1 in a.coeffs.items():
        for e2, m2 in b.coeffs.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            p = kron(m1, m2)
            out[e] = out[e] + p if e in out else p
    return MatL(out, a.rows * b.rows, a.cols * b.cols, nv)

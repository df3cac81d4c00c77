"""Exact arithmetic in Q(i, sqrt2) and Laurent polynomials over it.

A :class:`FieldK` value is stored as five integers ``(a, b, c, e, d)`` meaning
``(a + b*i + (c + e*i)*sqrt2) / d`` with ``d > 0`` and the gcd of all five
equal to 1, so that equal values always have identical representations.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "GaussRational",
    "FieldK",
    "LaurentK",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "k_inverse",
    "laurent_derivative",
    "laurent_eval",
    "parse_k",
]


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GaussRational:
    """A Gaussian rational ``re + i*im``."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other):
        other = _as_gauss(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_as_gauss(other))

    def __rsub__(self, other):
        return _as_gauss(other) - self

    def __mul__(self, other):
        o = _as_gauss(other)
        return GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of Gaussian zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * _as_gauss(other).inverse()

    def __str__(self):
        return f"{_frac_str(self.re)}+{_frac_str(self.im)}*i"


def _as_gauss(x) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(Fraction(x))
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussRational")


class FieldK:
    """Element ``u + v*sqrt2`` of Q(i, sqrt2) with ``u, v`` Gaussian rationals."""

    __slots__ = ("a", "b", "c", "e", "d", "_hash")

    def __init__(self, u=0, v=0):
        u = _as_gauss(u)
        v = _as_gauss(v)
        den = math.lcm(u.re.denominator, u.im.denominator, v.re.denominator, v.im.denominator)
        self._set(
            u.re.numerator * (den // u.re.denominator),
            u.im.numerator * (den // u.im.denominator),
            v.re.numerator * (den // v.re.denominator),
            v.im.numerator * (den // v.im.denominator),
            den,
        )

    def _set(self, a, b, c, e, d):
        if d < 0:
            a, b, c, e, d = -a, -b, -c, -e, -d
        g = math.gcd(a, b, c, e, d)
        if g != 1:
            a //= g
            b //= g
            c //= g
            e //= g
            d //= g
        self.a, self.b, self.c, self.e, self.d = a, b, c, e, d
        self._hash = None

    @classmethod
    def from_ints(cls, a: int, b: int, c: int, e: int, d: int = 1) -> "FieldK":
        """Build ``(a + b*i + (c + e*i)*sqrt2) / d`` from integers."""
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        obj = cls.__new__(cls)
        obj._set(a, b, c, e, d)
        return obj

    @classmethod
    def coerce(cls, x) -> "FieldK":
        if isinstance(x, FieldK):
            return x
        if isinstance(x, int):
            return cls.from_ints(x, 0, 0, 0, 1)
        if isinstance(x, Rational):
            return cls.from_ints(int(x.numerator), 0, 0, 0, int(x.denominator))
        if isinstance(x, GaussRational):
            return cls(x)
        if isinstance(x, complex) and x.imag.is_integer() and x.real.is_integer():
            return cls.from_ints(int(x.real), int(x.imag), 0, 0, 1)
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldK")

    @property
    def u(self) -> GaussRational:
        return GaussRational(Fraction(self.a, self.d), Fraction(self.b, self.d))

    @property
    def v(self) -> GaussRational:
        return GaussRational(Fraction(self.c, self.d), Fraction(self.e, self.d))

    def ints(self) -> Tuple[int, int, int, int, int]:
        return self.a, self.b, self.c, self.e, self.d

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.e)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.e)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.a, self.d)

    # ring operations

    def __add__(self, other):
        if not isinstance(other, FieldK):
            try:
                other = FieldK.coerce(other)
            except TypeError:
                return NotImplemented
        d1, d2 = self.d, other.d
        if d1 == d2:
            return FieldK.from_ints(self.a + other.a, self.b + other.b, self.c + other.c, self.e + other.e, d1)
        return FieldK.from_ints(
            self.a * d2 + other.a * d1,
            self.b * d2 + other.b * d1,
            self.c * d2 + other.c * d1,
            self.e * d2 + other.e * d1,
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self):
        obj = FieldK.__new__(FieldK)
        obj.a, obj.b, obj.c, obj.e, obj.d = -self.a, -self.b, -self.c, -self.e, self.d
        obj._hash = None
        return obj

    def __sub__(self, other):
        if not isinstance(other, FieldK):
            try:
                other = FieldK.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return FieldK.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FieldK):
            try:
                other = FieldK.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, e = self.a, self.b, self.c, self.e
        a2, b2, c2, e2 = other.a, other.b, other.c, other.e
        # (p + q r)(p' + q' r) = (p p' + 2 q q') + (p q' + q p') r, r = sqrt2
        return FieldK.from_ints(
            a * a2 - b * b2 + 2 * (c * c2 - e * e2),
            a * b2 + b * a2 + 2 * (c * e2 + e * c2),
            a * c2 - b * e2 + c * a2 - e * b2,
            a * e2 + b * c2 + c * b2 + e * a2,
            self.d * other.d,
        )

    __rmul__ = __mul__

    def conj_sqrt2(self) -> "FieldK":
        """Galois conjugate sqrt2 -> -sqrt2."""
        return FieldK.from_ints(self.a, self.b, -self.c, -self.e, self.d)

    def conj_i(self) -> "FieldK":
        """Galois conjugate i -> -i (complex conjugation)."""
        return FieldK.from_ints(self.a, -self.b, self.c, -self.e, self.d)

    def inverse(self) -> "FieldK":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        # (p + q r)^-1 = (p - q r) / (p^2 - 2 q^2); then divide by a Gaussian integer g
        a, b, c, e, d = self.a, self.b, self.c, self.e, self.d
        gr = a * a - b * b - 2 * (c * c - e * e)
        gi = 2 * a * b - 4 * c * e
        # 1/g = conj(g)/|g|^2
        n = gr * gr + gi * gi
        # numerator (a + b i - (c + e i) r) * conj(g) * d
        pr, pi = a * gr + b * gi, b * gr - a * gi
        qr, qi = -(c * gr + e * gi), -(e * gr - c * gi)
        return FieldK.from_ints(pr * d, pi * d, qr * d, qi * d, n)

    def __truediv__(self, other):
        if not isinstance(other, FieldK):
            try:
                other = FieldK.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldK.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, FieldK):
            try:
                other = FieldK.coerce(other)
            except TypeError:
                return NotImplemented
        return (self.a, self.b, self.c, self.e, self.d) == (other.a, other.b, other.c, other.e, other.d)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.a, self.d))
            else:
                self._hash = hash((self.a, self.b, self.c, self.e, self.d))
        return self._hash

    def __complex__(self):
        r = math.sqrt(2.0)
        return complex((self.a + self.c * r) / self.d, (self.b + self.e * r) / self.d)

    def __repr__(self):
        return f"FieldK({self})"

    def __str__(self):
        d = self.d

        def q(n):
            return _frac_str(Fraction(n, d))

        return f"{q(self.a)}+{q(self.b)}*i+({q(self.c)}+{q(self.e)}*i)*sqrt2"

    def pretty(self) -> str:
        """Compact human-readable form, e.g. ``1/2*sqrt2`` or ``1+i``."""
        terms = []
        for coeff, unit in ((self.u.re, ""), (self.u.im, "i"), (self.v.re, "sqrt2"), (self.v.im, "i*sqrt2")):
            if coeff == 0:
                continue
            if unit == "":
                s = str(coeff)
            elif coeff == 1:
                s = unit
            elif coeff == -1:
                s = "-" + unit
            else:
                s = f"{coeff}*{unit}"
            terms.append(s)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out


ZERO = FieldK.from_ints(0, 0, 0, 0, 1)
ONE = FieldK.from_ints(1, 0, 0, 0, 1)
I = FieldK.from_ints(0, 1, 0, 0, 1)
SQRT2 = FieldK.from_ints(0, 0, 1, 0, 1)


def k_inverse(a: FieldK) -> FieldK:
    return FieldK.coerce(a).inverse()


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return FieldK.coerce(node.value)
    if isinstance(node, ast.Name):
        if node.id == "i":
            return I
        if node.id == "sqrt2":
            return SQRT2
        raise ValueError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(node.operand)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left)
        if isinstance(node.op, ast.Pow):
            exp = _eval_node(node.right)
            if not exp.is_rational() or exp.d != 1:
                raise ValueError("exponent must be an integer")
            return left ** exp.a
        right = _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported syntax in scalar expression: {ast.dump(node)}")


def parse_k(text: str) -> FieldK:
    """Parse a scalar such as ``1/2+0/1*i+(1/2+0/1*i)*sqrt2``, ``(1+i)/2`` or ``sqrt2^-1``."""
    text = text.strip().replace("^", "**")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc
    return _eval_node(tree)


Exponent = Tuple[int, ...]


class LaurentK:
    """Laurent polynomial over Q(i, sqrt2) in one or more variables.

    Terms are a mapping from exponent tuples to nonzero :class:`FieldK`
    coefficients. Single-variable polynomials (variable ``s = x**(1/2)`` in
    the spectral code) also accept plain integer exponents on construction.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping = None, nvars: int = 1):
        clean: Dict[Exponent, FieldK] = {}
        if terms:
            for exp, coeff in terms.items():
                if isinstance(exp, int):
                    exp = (exp,)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not match nvars={nvars}")
                coeff = FieldK.coerce(coeff)
                if coeff:
                    if exp in clean:
                        coeff = clean[exp] + coeff
                        if not coeff:
                            del clean[exp]
                            continue
                    clean[exp] = coeff
        self.terms = clean
        self.nvars = nvars

    @classmethod
    def constant(cls, c, nvars: int = 1) -> "LaurentK":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exp, c=1, nvars: int = 1) -> "LaurentK":
        return cls({exp: c}, nvars)

    @classmethod
    def _raw(cls, terms, nvars):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        return obj

    def _coerce(self, other) -> "LaurentK":
        if isinstance(other, LaurentK):
            if other.nvars != self.nvars:
                raise ValueError("mismatched number of variables")
            return other
        return LaurentK.constant(other, self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            if exp in out:
                s = out[exp] + c
                if s:
                    out[exp] = s
                else:
                    del out[exp]
            else:
                out[exp] = c
        return LaurentK._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentK._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentK):
            k = FieldK.coerce(other)
            if not k:
                return LaurentK._raw({}, self.nvars)
            return LaurentK._raw({e: c * k for e, c in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        out: Dict[Exponent, FieldK] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    c = out[e] + c
                out[e] = c
        return LaurentK._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self.terms.items()
            return LaurentK({tuple(-x * (-n) for x in e): c.inverse() ** (-n)}, self.nvars)
        result = LaurentK.constant(1, self.nvars)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentK):
            try:
                other = LaurentK.constant(other, self.nvars)
            except TypeError:
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def derivative(self, var: int = 0) -> "LaurentK":
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = e[:var] + (e[var] - 1,) + e[var + 1 :]
                out[ne] = c * e[var]
        return LaurentK._raw(out, self.nvars)

    def evaluate(self, *point) -> FieldK:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values")
        pts = [FieldK.coerce(p) for p in point]
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for p, k in zip(pts, e):
                if k:
                    if k < 0 and not p:
                        raise ZeroDivisionError("negative power evaluated at zero")
                    term = term * p ** k
            total = total + term
        return total

    def substitute(self, var: int, value) -> "LaurentK":
        """Substitute a scalar for one variable, keeping the others."""
        p = FieldK.coerce(value)
        if self.nvars == 1:
            return LaurentK.constant(self.evaluate(p))
        terms: Dict[Exponent, FieldK] = {}
        for e, c in self.terms.items():
            ne = e[:var] + e[var + 1 :]
            terms[ne] = terms.get(ne, ZERO) + c * p ** e[var]
        return LaurentK({k: v for k, v in terms.items() if v}, self.nvars - 1)

    def min_exponent(self, var: int = 0) -> int:
        return min((e[var] for e in self.terms), default=0)

    def max_exponent(self, var: int = 0) -> int:
        return max((e[var] for e in self.terms), default=0)

    def __repr__(self):
        return f"LaurentK({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["s", "t", "w", "v"][: self.nvars] if self.nvars <= 4 else [f"x{k}" for k in range(self.nvars)]
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append(f"({c.pretty()})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def laurent_derivative(p: LaurentK, var: int = 0) -> LaurentK:
    return p.derivative(var)


def laurent_eval(p: LaurentK, s0) -> FieldK:
    return p.evaluate(s0)


def k_sum(values: Iterable[FieldK]) -> FieldK:
    total = ZERO
    for v in values:
        total = total + v
    return total


Scalar = Union[int, Fraction, FieldK]

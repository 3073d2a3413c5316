"""Scalar arithmetic with an exact and a floating backend.

The exact backend represents numbers of the field Q(i, sqrt2):

    (a + b*sqrt2) + i*(c + d*sqrt2)        a, b, c, d rational

which contains every matrix entry of the H/X/Y/Z gates, of multiqubit
CZ gates, and of the unit phases -1, +-i, (1+-i)/sqrt2.  Circuits built
from those gates simulate with no rounding at all, so "equals zero" is
decided exactly instead of against a tolerance.  Anything else (general
1-qubit gates, Gaussian samples) lives on the floating backend as a
plain Python complex.

Mixing the two backends in an arithmetic operation demotes the result
to the floating backend.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_SQRT2 = 1.4142135623730951

_F0 = Fraction(0)


class Exact:
    """An element a + b*sqrt2 + i*(c + d*sqrt2) with rational a, b, c, d.

    Values are immutable and hashable; Fraction keeps each component in
    lowest terms, so equal values always have identical components.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    @classmethod
    def from_int(cls, n: int) -> "Exact":
        return cls(n)

    @classmethod
    def rational(cls, p, q=1) -> "Exact":
        return cls(Fraction(p, q))

    @classmethod
    def _fast(cls, a, b, c, d) -> "Exact":
        # internal: components are already Fractions (results of Fraction
        # arithmetic), skip the validating constructor
        self = object.__new__(cls)
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        return self

    # ---- predicates -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    @property
    def is_real(self) -> bool:
        return not (self.c or self.d)

    # ---- conversions ------------------------------------------------

    def __complex__(self) -> complex:
        return complex(float(self.a) + float(self.b) * _SQRT2,
                       float(self.c) + float(self.d) * _SQRT2)

    def conjugate(self) -> "Exact":
        return Exact(self.a, self.b, -self.c, -self.d)

    def abs2(self) -> "Exact":
        """|x|^2, again an element of the field (real)."""
        re2_a = self.a * self.a + 2 * self.b * self.b
        re2_b = 2 * self.a * self.b
        im2_a = self.c * self.c + 2 * self.d * self.d
        im2_b = 2 * self.c * self.d
        return Exact(re2_a + im2_a, re2_b + im2_b)

    # ---- arithmetic -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Exact):
            return Exact._fast(self.a + other.a, self.b + other.b,
                               self.c + other.c, self.d + other.d)
        if isinstance(other, numbers.Integral) or isinstance(other, Fraction):
            return Exact._fast(self.a + Fraction(other), self.b, self.c, self.d)
        if isinstance(other, numbers.Complex):
            return complex(self) + complex(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Exact._fast(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        if isinstance(other, Exact):
            return Exact._fast(self.a - other.a, self.b - other.b,
                               self.c - other.c, self.d - other.d)
        if isinstance(other, numbers.Integral) or isinstance(other, Fraction):
            return Exact._fast(self.a - Fraction(other), self.b, self.c, self.d)
        if isinstance(other, numbers.Complex):
            return complex(self) - complex(other)
        return NotImplemented

    def __rsub__(self, other):
        neg = self.__neg__()
        return neg.__add__(other)

    def __mul__(self, other):
        if isinstance(other, Exact):
            pa, pb, qa, qb = self.a, self.b, self.c, self.d
            ra, rb, sa, sb = other.a, other.b, other.c, other.d
            # sparse values are the common case; skip zero cross terms
            if not (qa or qb or sa or sb):  # both real
                if not (pb or rb):  # both rational
                    return Exact._fast(pa * ra, _F0, _F0, _F0)
                return Exact._fast(pa * ra + 2 * pb * rb,
                                   pa * rb + pb * ra, _F0, _F0)
            # (p + iq)(r + is) with p,q,r,s in Q[sqrt2]
            re_a = (pa * ra + 2 * pb * rb) - (qa * sa + 2 * qb * sb)
            re_b = (pa * rb + pb * ra) - (qa * sb + qb * sa)
            im_a = (pa * sa + 2 * pb * sb) + (qa * ra + 2 * qb * rb)
            im_b = (pa * sb + pb * sa) + (qa * rb + qb * ra)
            return Exact._fast(re_a, re_b, im_a, im_b)
        if isinstance(other, numbers.Integral) or isinstance(other, Fraction):
            f = Fraction(other)
            return Exact._fast(self.a * f, self.b * f, self.c * f, self.d * f)
        if isinstance(other, numbers.Complex):
            return complex(self) * complex(other)
        return NotImplemented

    __rmul__ = __mul__

    def _invert(self) -> "Exact":
        if self.is_zero:
            raise ZeroDivisionError("exact scalar division by zero")
        # 1/z = conj(z) / |z|^2 ; |z|^2 = A + B*sqrt2 with rational A, B,
        # and 1/(A + B*sqrt2) = (A - B*sqrt2)/(A^2 - 2 B^2).
        n = self.abs2()
        den = n.a * n.a - 2 * n.b * n.b
        inv_a, inv_b = n.a / den, -n.b / den
        conj = self.conjugate()
        return conj * Exact(inv_a, inv_b)

    def __truediv__(self, other):
        if isinstance(other, Exact):
            return self * other._invert()
        if isinstance(other, numbers.Integral) or isinstance(other, Fraction):
            return self * Exact(Fraction(1, 1) / Fraction(other))
        if isinstance(other, numbers.Complex):
            return complex(self) / complex(other)
        return NotImplemented

    def __rtruediv__(self, other):
        inv = self._invert()
        return inv.__mul__(other)

    # ---- comparison -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Exact):
            return (self.a == other.a and self.b == other.b
                    and self.c == other.c and self.d == other.d)
        if isinstance(other, numbers.Integral) or isinstance(other, Fraction):
            return self == Exact(other)
        if isinstance(other, numbers.Complex):
            return complex(self) == complex(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"Exact({self.a}, {self.b}, {self.c}, {self.d})"


Exact.ZERO = Exact(0)
Exact.ONE = Exact(1)
Exact.MINUS_ONE = Exact(-1)
Exact.I = Exact(0, 0, 1)
Exact.SQRT2 = Exact(0, 1)
Exact.INV_SQRT2 = Exact(0, Fraction(1, 2))  # 1/sqrt2 == (1/2)*sqrt2

#: Union of the two scalar backends as accepted throughout the package.
Scalar = Exact | complex | float | int


def is_exact(s) -> bool:
    return isinstance(s, Exact)


def to_float(s) -> complex:
    """Map any scalar onto the floating backend."""
    if isinstance(s, Exact):
        return complex(s)
    return complex(s)


def conj_scalar(s):
    if isinstance(s, Exact):
        return s.conjugate()
    return complex(s).conjugate()


def abs2_scalar(s):
    """|s|^2 on the same backend as s (Exact stays Exact)."""
    if isinstance(s, Exact):
        return s.abs2()
    z = complex(s)
    return z.real * z.real + z.imag * z.imag


def scalar_is_zero(s, abs_eps: float = 0.0) -> bool:
    """Exact scalars are tested exactly; floats against abs_eps."""
    if isinstance(s, Exact):
        return s.is_zero
    return abs(complex(s)) <= abs_eps


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative comparison thresholds for the floating backend."""

    abs_eps: float = 1e-10
    rel_eps: float = 1e-9

    def __post_init__(self):
        for v in (self.abs_eps, self.rel_eps):
            if not (np.isfinite(v) and v >= 0):
                raise ValueError("tolerances must be finite and >= 0")

    def threshold(self, scale: float = 1.0) -> float:
        return self.abs_eps + self.rel_eps * scale

    def close(self, x: complex, y: complex) -> bool:
        return abs(x - y) <= self.threshold(max(abs(x), abs(y)))


DEFAULT_TOL = Tolerance()


def approx_eq(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Scalar comparison: Exact vs Exact is exact, otherwise tolerant."""
    if isinstance(x, Exact) and isinstance(y, Exact):
        return x == y
    return tol.close(to_float(x), to_float(y))


# ---- randomness ------------------------------------------------------

def make_rng(seed, *stream) -> np.random.Generator:
    """Deterministic generator for (seed, stream...) independent of order
    in which other streams are consumed."""
    return np.random.default_rng([int(seed), *map(int, stream)])


def random_scalar(rng: np.random.Generator) -> complex:
    """Standard complex Gaussian draw (independent N(0,1) parts)."""
    return complex(rng.standard_normal(), rng.standard_normal())


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def kron_all(mats) -> np.ndarray:
    """Tensor product of a sequence of matrices, first factor leftmost."""
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out

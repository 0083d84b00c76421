"""Exact integer polynomials and the two Chebyshev-type families used everywhere else.

Two related families are the workhorses of this package:

* ``cheb_u(n)`` -- the degree-n Chebyshev polynomial of the second kind scaled
  to the interval (-2, 2): ``P_0 = 1``, ``P_1 = x``, ``P_n = x*P_{n-1} - P_{n-2}``.
  Its roots are ``2*cos(pi*k/(n+1))``, k = 1..n.
* ``z_poly(n)`` -- the characteristic polynomial of the n-by-n tridiagonal
  matrix with diagonal (2, ..., 2, 1) and -1 on the off-diagonals:
  ``Z_0 = 1``, ``Z_1 = x - 1``, ``Z_n = (x-2)*Z_{n-1} - Z_{n-2}``.
  Substituting x**2 into Z_n yields cheb_u(2n), so its roots are
  ``4*cos(pi*k/(2n+1))**2``, all inside [0, 4).

All coefficients are arbitrary-precision Python integers; binomial-sized
coefficients overflow 64-bit words near degree 35, and exactness is the whole
point of this module.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial over the integers.

    ``coefficients[i]`` is the coefficient of x**i.  The zero polynomial is
    represented by the single coefficient (0,); any other polynomial has a
    nonzero leading coefficient.
    """

    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Sequence[int]):
        coeffs = [int(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports 0 by the single-zero convention."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return poly_shift_const(self, other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return poly_shift_const(self, -other)
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coefficients])
        return poly_mul(self, other)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            return IntPolynomial([0])
        return IntPolynomial([i * c for i, c in enumerate(self.coefficients)][1:])

    def substitute_square(self) -> "IntPolynomial":
        """Return p(x**2): coefficient i moves to power 2i."""
        out = [0] * (2 * len(self.coefficients) - 1)
        for i, c in enumerate(self.coefficients):
            out[2 * i] = c
        return IntPolynomial(out)

    def halve_even_powers(self) -> "IntPolynomial":
        """Inverse of :meth:`substitute_square`; requires only even powers."""
        for i, c in enumerate(self.coefficients):
            if i % 2 == 1 and c != 0:
                raise ValueError("polynomial has odd powers; cannot halve exponents")
        return IntPolynomial(self.coefficients[::2])

    def to_json(self) -> list[str]:
        """Coefficients as decimal strings, ascending, preserving exactness."""
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPolynomial":
        return cls([int(s) for s in data])

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0 and self.degree > 0:
                continue
            mag = "" if (abs(c) == 1 and i > 0) else str(abs(c))
            var = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            sign = "-" if c < 0 else ("+" if terms else "")
            terms.append(f"{sign} {mag}{var}".strip() if terms else f"{sign}{mag}{var}")
        return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class LandmarkRoots:
    """Smallest and second-smallest roots of Z_m and of Z_m + (-1)**m.

    x1 < x2 are roots of Z_m; u1 < u2 are roots of Z_m + (-1)**m.  All four
    lie in [0, 4).
    """

    m: int
    x1: float
    x2: float
    u1: float
    u2: float


@dataclass(frozen=True)
class RealRootVerdict:
    """Outcome of the real-rootedness test for products of cheb_u factors.

    ``roots`` is present exactly when ``all_real`` is true; it is then the
    full closed-form root list, ascending, with multiplicities.
    """

    all_real: bool
    case_label: str  # one of: single-factor, equal-pair, adjacent-pair, non-real
    roots: tuple[float, ...] | None = None


_CHEB_CACHE: list[IntPolynomial] = [IntPolynomial([1]), IntPolynomial([0, 1])]
_Z_CACHE: list[IntPolynomial] = [IntPolynomial([1]), IntPolynomial([-1, 1])]
# guards cache growth; lock-free reads are fine since the lists only grow
_CACHE_LOCK = threading.Lock()
_X_MINUS_2 = IntPolynomial([-2, 1])
_X = IntPolynomial([0, 1])


def cheb_u(n: int) -> IntPolynomial:
    """Chebyshev polynomial of the second kind scaled to (-2, 2), degree n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n >= len(_CHEB_CACHE):
        with _CACHE_LOCK:
            while len(_CHEB_CACHE) <= n:
                _CHEB_CACHE.append(_X * _CHEB_CACHE[-1] - _CHEB_CACHE[-2])
    return _CHEB_CACHE[n]


def z_poly(n: int) -> IntPolynomial:
    """Characteristic polynomial of the tridiagonal matrix with diagonal (2,..,2,1).

    Satisfies z_poly(n).substitute_square() == cheb_u(2n); the constant term
    is (-1)**n.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n >= len(_Z_CACHE):
        with _CACHE_LOCK:
            while len(_Z_CACHE) <= n:
                _Z_CACHE.append(_X_MINUS_2 * _Z_CACHE[-1] - _Z_CACHE[-2])
    return _Z_CACHE[n]


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Exact convolution product."""
    out = [0] * (len(a.coefficients) + len(b.coefficients) - 1)
    for i, ca in enumerate(a.coefficients):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coefficients):
            out[i + j] += ca * cb
    return IntPolynomial(out)


def poly_shift_const(p: IntPolynomial, c: int) -> IntPolynomial:
    """Return p + c."""
    coeffs = list(p.coefficients)
    coeffs[0] += c
    return IntPolynomial(coeffs)


def eval_real(p: IntPolynomial, x: float) -> float:
    """Horner evaluation in floating point.

    Fine for moderate degrees; the monomial basis is ill-conditioned near the
    ends of the root interval once degrees pass ~25, so the high-degree test
    sweeps use :func:`eval_exact` instead.
    """
    acc = 0.0
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


def eval_exact(p: IntPolynomial, x: int | Fraction) -> int | Fraction:
    """Exact Horner evaluation at an integer or rational point.

    ``Fraction(float_value)`` converts a float argument losslessly, so this
    doubles as an arbitrarily-accurate evaluator at floating-point points.
    """
    acc: int | Fraction = 0
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc



def cheb_u_value(n: int, x):
    """Evaluate cheb_u(n) at x by the three-term recurrence (numerically stable).

    Accepts scalars or numpy arrays.
    """
    if n == 0:
        return x * 0 + 1.0
    prev, cur = x * 0 + 1.0, x * 1.0
    for _ in range(n - 1):
        prev, cur = cur, x * cur - prev
    return cur


def z_value(n: int, x):
    """Evaluate z_poly(n) at x by the recurrence (numerically stable).

    Accepts scalars or numpy arrays.
    """
    if n == 0:
        return x * 0 + 1.0
    prev, cur = x * 0 + 1.0, x - 1.0
    for _ in range(n - 1):
        prev, cur = cur, (x - 2.0) * cur - prev
    return cur


def z_roots(n: int) -> list[float]:
    """Roots of z_poly(n): 4*cos(pi*k/(2n+1))**2, k = 1..n, ascending."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return [4 * math.cos(math.pi * k / (2 * n + 1)) ** 2 for k in range(n, 0, -1)]


def z_shifted_roots(n: int, p: int) -> list[float]:
    """Roots of z_poly(n) + (-1)**p in closed form.

    The root set is {4*cos(pi*k / (2n+1+(-1)**(k+p)))**2 : k = 1..n}; all n
    values are distinct and lie in [0, 4).  Returned in the k-order of the
    formula (descending in magnitude).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p not in (0, 1):
        raise ValueError(f"p must be 0 or 1, got {p}")
    out = []
    for k in range(1, n + 1):
        denom = 2 * n + 1 + (-1) ** (k + p)
        out.append(4 * math.cos(math.pi * k / denom) ** 2)
    return out


def landmark_roots(m: int) -> LandmarkRoots:
    """The two smallest roots of Z_m and of Z_m + (-1)**m, for m > 1."""
    if m <= 1:
        raise ValueError(f"m must be > 1, got {m}")
    return LandmarkRoots(
        m=m,
        x1=4 * math.cos(math.pi * m / (2 * m + 1)) ** 2,
        x2=4 * math.cos(math.pi * (m - 1) / (2 * m + 1)) ** 2,
        u1=4 * math.cos(math.pi * m / (2 * m + 2)) ** 2,
        u2=4 * math.cos(math.pi * (m - 1) / (2 * m)) ** 2,
    )


def product_polynomial(ks: Sequence[int], p: int) -> IntPolynomial:
    """The even polynomial prod_k cheb_u(2*i_k) + (-1)**p."""
    prod = IntPolynomial([1])
    for k in ks:
        prod = prod * cheb_u(2 * k)
    return poly_shift_const(prod, (-1) ** p)


def classify_product_real(ks: Sequence[int], p: int) -> RealRootVerdict:
    """Decide whether prod_k cheb_u(2*i_k) + (-1)**p has only real roots.

    Exactly three shapes are all-real; every root is then known in closed
    form (returned ascending, double roots listed twice):

    * one factor, either sign of the constant;
    * two equal factors with constant -1 (the product minus one splits into
      a difference of two shifted factors);
    * two factors of adjacent index with constant +1 (the product plus one
      is a perfect square of an odd-degree cheb_u in sqrt(x)).

    Everything else has at least one conjugate pair.
    """
    ks = list(ks)
    if not ks:
        raise ValueError("factor index list must be nonempty")
    if any(k < 1 for k in ks):
        raise ValueError(f"factor indices must be >= 1, got {ks}")
    if p not in (0, 1):
        raise ValueError(f"p must be 0 or 1, got {p}")

    if len(ks) == 1:
        j = ks[0]
        vals = []
        for y in z_shifted_roots(j, p):
            r = math.sqrt(y)
            vals.extend([r, -r])
        return RealRootVerdict(True, "single-factor", tuple(sorted(vals)))

    if len(ks) == 2:
        i1, i2 = ks
        if i1 == i2 and p == 1:
            j = i1
            vals = []
            for k in range(1, j + 1):
                for denom in (2 * j, 2 * j + 2):
                    r = 2 * math.cos(math.pi * k / denom)
                    vals.extend([r, -r])
            return RealRootVerdict(True, "equal-pair", tuple(sorted(vals)))
        if abs(i1 - i2) == 1 and p == 0:
            j = max(i1, i2)
            vals = []
            for k in range(1, 2 * j):
                r = 2 * math.cos(math.pi * k / (2 * j))
                vals.extend([r, r])  # every root has multiplicity 2
            return RealRootVerdict(True, "adjacent-pair", tuple(sorted(vals)))

    return RealRootVerdict(False, "non-real", None)


def product_bound_witness(ks: Sequence[int]) -> float:
    """Third-smallest root (with multiplicity) of prod_k z_poly(i_k).

    On (0, x3] the product stays strictly below 1 in absolute value; callers
    sample that interval to confirm the bound.  For exactly two factors the
    bound requires the indices to differ by more than 1 and is rejected
    otherwise.
    """
    ks = list(ks)
    if len(ks) < 2:
        raise ValueError("need at least two factors")
    if any(k < 1 for k in ks):
        raise ValueError(f"factor indices must be >= 1, got {ks}")
    if len(ks) == 2 and abs(ks[0] - ks[1]) <= 1:
        raise ValueError(
            f"two-factor bound requires indices differing by more than 1, got {ks}"
        )
    merged: list[float] = []
    for k in ks:
        merged.extend(z_roots(k))
    merged.sort()
    return merged[2]

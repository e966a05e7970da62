"""Dense univariate polynomials over the rationals, and series at infinity.

A Poly stores coefficients by ascending degree with no trailing zeros; the
zero polynomial has an empty coefficient tuple.  Coefficients are rationals
by default but any exact ring element with +,-,* works (dual numbers use the
same code for Jacobian evaluation), so the arithmetic is written without
assuming a concrete scalar.

Series live in the local parameter t = 1/X at infinity.  A Series records
the lowest t-power present (negative powers are the polynomial part in X)
and an explicit truncation: coefficients at t-powers >= prec are unknown.
Exact objects (converted polynomials) carry prec=None.  Truncation
propagates as the minimum over operands, so a lost order is never reported
as a zero coefficient.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DivisionByZeroError, InputError
from .exactnum import Dual, ONE, ZERO, Rational, rat, rat_str


def _coerce(c):
    return c if isinstance(c, Dual) else rat(c)


class Poly:
    """Immutable dense univariate polynomial, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def x(power: int = 1, coeff=1) -> "Poly":
        return Poly([0] * power + [coeff])

    @staticmethod
    def from_roots(roots: Sequence) -> "Poly":
        p = Poly.one()
        for r in roots:
            p = p * Poly([-rat(r), 1])
        return p

    # -- structure -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    @property
    def lead(self):
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # -- ring operations -------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = _coerce(c)
        return Poly([a * c for a in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; x may be a Rational, Dual, or Poly."""
        if isinstance(x, Poly):
            out = Poly.zero()
            for c in reversed(self.coeffs):
                out = out * x + Poly([c])
            return out
        out = x * 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            cs = rat_str(c) if not isinstance(c, Dual) else repr(c)
            terms.append(f"{cs}*X^{k}" if k else cs)
        return "Poly(" + " + ".join(terms) + ")"


def poly_divmod(a: Poly, b: Poly) -> tuple:
    """Exact division with remainder: a = q*b + r, deg r < deg b."""
    if b.is_zero():
        raise DivisionByZeroError("polynomial division by zero")
    q = [ZERO] * max(0, a.degree - b.degree + 1)
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    while len(rem) - 1 >= db and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        dr = len(rem) - 1
        if dr < db:
            break
        f = rem[-1] / lb
        q[dr - db] = f
        for i in range(db + 1):
            rem[dr - db + i] = rem[dr - db + i] - f * b.coeff(i)
        rem.pop()
    return Poly(q), Poly(rem)


def poly_exact_div(a: Poly, b: Poly, what: str = "polynomial") -> Poly:
    """Division known to be exact; nonzero remainder is an error."""
    q, r = poly_divmod(a, b)
    if not r.is_zero():
        raise InputError(f"{what}: division is not exact (remainder {r!r})")
    return q


def poly_shift(a: Poly, c) -> Poly:
    """Return a(X + c) by exact synthetic translation."""
    c = _coerce(c)
    out = list(a.coeffs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = out[j] + c * out[j + 1]
    return Poly(out)


def poly_gcd_content(polys: Sequence[Poly]):
    """Least common multiple of all coefficient denominators (for scaling)."""
    from gmpy2 import lcm

    denom = 1
    for p in polys:
        for c in p.coeffs:
            denom = lcm(denom, rat(c).denominator)
    return denom


# ---------------------------------------------------------------------------
# Series in t = 1/X
# ---------------------------------------------------------------------------


class Series:
    """Truncated series  sum_k c_k t^k  with t = 1/X.

    lo is the t-exponent of the first stored coefficient (may be negative:
    those are the polynomial-in-X part).  Coefficients at exponents >= prec
    are unknown; prec=None means the series is exact.
    """

    __slots__ = ("lo", "coeffs", "prec")

    def __init__(self, lo: int, coeffs: Iterable, prec=None):
        cs = [rat(c) for c in coeffs]
        while cs and cs[0] == 0:
            cs.pop(0)
            lo += 1
        if prec is not None:
            cs = cs[: max(0, prec - lo)]
        while cs and cs[-1] == 0 and prec is None:
            cs.pop()
        self.lo = lo
        self.coeffs = tuple(cs)
        self.prec = prec

    @staticmethod
    def from_poly(p: Poly) -> "Series":
        # X^k = t^-k, so the coefficient list reverses
        if p.is_zero():
            return Series(0, (), None)
        return Series(-p.degree, list(reversed([rat(c) for c in p.coeffs])), None)

    @staticmethod
    def zero(prec=None) -> "Series":
        return Series(0, (), prec)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff_t(self, k: int) -> Rational:
        """Coefficient of t^k (raises if beyond the truncation)."""
        if self.prec is not None and k >= self.prec:
            raise InputError(f"series truncated below t^{k}")
        if self.lo <= k < self.lo + len(self.coeffs):
            return self.coeffs[k - self.lo]
        return ZERO

    def coeff_xinv(self, j: int) -> Rational:
        """Coefficient of X^-j."""
        return self.coeff_t(j)

    def _prec_min(self, other) -> int | None:
        if self.prec is None:
            return other.prec
        if other.prec is None:
            return self.prec
        return min(self.prec, other.prec)

    def __add__(self, other: "Series") -> "Series":
        prec = self._prec_min(other)
        lo = min(self.lo if self.coeffs else 0, other.lo if other.coeffs else 0)
        hi_a = self.lo + len(self.coeffs)
        hi_b = other.lo + len(other.coeffs)
        hi = max(hi_a, hi_b)
        if prec is not None:
            hi = min(hi, prec)
        out = []
        for k in range(lo, hi):
            a = self.coeffs[k - self.lo] if self.lo <= k < hi_a else ZERO
            b = other.coeffs[k - other.lo] if other.lo <= k < hi_b else ZERO
            out.append(a + b)
        return Series(lo, out, prec)

    def __neg__(self) -> "Series":
        return Series(self.lo, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        if self.is_zero() or other.is_zero():
            return Series.zero(self._prec_min(other))
        # truncation of the product: a term t^k needs every split a_i*b_{k-i}
        prec = None
        if self.prec is not None:
            prec = self.prec + other.lo
        if other.prec is not None:
            p2 = other.prec + self.lo
            prec = p2 if prec is None else min(prec, p2)
        lo = self.lo + other.lo
        hi = self.lo + len(self.coeffs) + other.lo + len(other.coeffs) - 1
        if prec is not None:
            hi = min(hi, prec - 1)
        out = [ZERO] * (hi - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                k = self.lo + i + other.lo + j - lo
                if k < len(out):
                    out[k] = out[k] + a * b
        return Series(lo, out, prec)

    def scale(self, c) -> "Series":
        c = rat(c)
        return Series(self.lo, [a * c for a in self.coeffs], self.prec)

    def truncate(self, prec: int) -> "Series":
        return Series(self.lo, self.coeffs, prec if self.prec is None else min(prec, self.prec))

    def poly_part(self) -> Poly:
        """The floor: terms with nonnegative powers of X (t-power <= 0)."""
        out = {}
        for i, c in enumerate(self.coeffs):
            k = self.lo + i
            if k <= 0:
                out[-k] = c
        if not out:
            return Poly.zero()
        deg = max(out)
        return Poly([out.get(i, ZERO) for i in range(deg + 1)])

    def tail(self) -> "Series":
        """Terms with strictly negative powers of X (t-power >= 1)."""
        out = [(self.lo + i, c) for i, c in enumerate(self.coeffs) if self.lo + i >= 1]
        lo = out[0][0] if out else 1
        return Series(lo, [c for _, c in out], self.prec)

    def known_order(self) -> int:
        """Largest N with coefficients of X^-1..X^-N all known."""
        return (self.prec - 1) if self.prec is not None else 10**9

    def __eq__(self, other):
        return (
            isinstance(other, Series)
            and self.lo == other.lo
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:12]):
            k = self.lo + i
            if c == 0:
                continue
            if k == 0:
                terms.append(rat_str(c))
            elif k < 0:
                terms.append(f"{rat_str(c)}*X^{-k}")
            else:
                terms.append(f"{rat_str(c)}*X^-{k}")
        body = " + ".join(terms) or "0"
        tr = "" if self.prec is None else f" + O(X^-{self.prec})"
        return f"Series({body}{tr})"


class LaurentTail:
    """A series with no polynomial part: coefficients of X^-1 .. X^-N.

    The truncation order N is explicit; conversions to and from Series keep
    it intact.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        self.coeffs = tuple(rat(c) for c in coeffs)
        self.order = len(self.coeffs) if order is None else order
        if self.order < len(self.coeffs):
            self.coeffs = self.coeffs[: self.order]

    @staticmethod
    def from_series(s: Series) -> "LaurentTail":
        t = s.tail()
        n = t.known_order()
        if n >= 10**9:
            n = t.lo + len(t.coeffs) - 1 if t.coeffs else 0
        return LaurentTail([t.coeff_t(k) for k in range(1, n + 1)], n)

    def to_series(self) -> Series:
        return Series(1, self.coeffs, self.order + 1)

    def coeff_xinv(self, j: int) -> Rational:
        if j < 1 or j > self.order:
            raise InputError(f"coefficient X^-{j} outside recorded order {self.order}")
        return self.coeffs[j - 1] if j - 1 < len(self.coeffs) else ZERO

    def __eq__(self, other):
        return (
            isinstance(other, LaurentTail)
            and self.coeffs == other.coeffs
            and self.order == other.order
        )

    def __repr__(self):
        return repr(self.to_series())


def _as_series(x) -> Series:
    if isinstance(x, Series):
        return x
    if isinstance(x, LaurentTail):
        return x.to_series()
    if isinstance(x, Poly):
        return Series.from_poly(x)
    raise InputError(f"cannot interpret {type(x).__name__} as a series")


def series_invert(x, order: int) -> Series:
    """Multiplicative inverse; the product is 1 + O(X^-(order)) or better.

    The result carries coefficients down to X^-order when the input's
    truncation allows it.
    """
    s = _as_series(x)
    if s.is_zero():
        raise DivisionByZeroError("cannot invert the zero series")
    m = s.lo  # leading exponent, leading coefficient nonzero
    c0 = s.coeffs[0]
    # unit part u with s = c0 * t^m * (1 + u), u in positive powers of t;
    # precision order+1 makes the product with s known through X^-order
    want = order + 1
    if s.prec is not None:
        want = min(want, s.prec - m)
    if want < 1:
        raise InputError("input series is truncated too low to invert to that order")
    u = [s.coeffs[i] / c0 if i < len(s.coeffs) else ZERO for i in range(1, want)]
    inv = [ONE] + [ZERO] * (want - 1)
    for k in range(1, want):
        acc = ZERO
        for i in range(1, k + 1):
            ui = u[i - 1] if i - 1 < len(u) else ZERO
            acc += ui * inv[k - i]
        inv[k] = -acc
    unit = Series(0, inv, want)
    return unit.scale(1 / c0) if m == 0 else Series(-m, [c / c0 for c in unit.coeffs], want - m)


def sqrt_series(F: Poly, terms: int) -> Series:
    """Branch of sqrt(F) at infinity with leading term +X^(g+1).

    F must be monic of even degree 2g+2.  The result carries `terms`
    coefficients, starting at X^(g+1); its square reproduces F to that
    order.
    """
    d = F.degree
    if d < 0 or d % 2 != 0:
        raise InputError(f"sqrt_series needs even degree, got {d}")
    if not F.is_monic():
        raise InputError("sqrt_series needs a monic polynomial")
    h = d // 2
    # F(1/t) * t^d = 1 + u(t) with u_k the coefficient of X^(d-k)
    u = [rat(F.coeff(d - k)) for k in range(1, terms)]
    out = [ONE] + [ZERO] * (terms - 1)
    for k in range(1, terms):
        acc = u[k - 1] if k - 1 < len(u) else ZERO
        for i in range(1, k):
            acc -= out[i] * out[k - i]
        out[k] = acc / 2
    return Series(-h, out, terms - h)

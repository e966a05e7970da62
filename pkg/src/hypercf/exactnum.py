"""Exact scalar arithmetic: arbitrary-precision rationals and dual numbers.

Rationals are gmpy2.mpq values: always reduced, positive denominator, zero
is 0/1.  GMP keeps the million-digit fractions that show up along long
integrable-map orbits tractable; plain fractions.Fraction has the same
semantics but its gcd throughput becomes the bottleneck.  Everything in the
package goes through rat()/rat_str() so the backing type stays in one place.

Dual numbers carry one derivative slot per active variable and implement
the product/quotient rule exactly, which is all the Poisson-bracket and
Jacobian checks need: point evaluations of exact partial derivatives,
without symbolic expression swell.
"""

from __future__ import annotations

from typing import Callable, Sequence

from gmpy2 import mpq, mpz

from .errors import DivisionByZeroError, PoleError

Rational = mpq  # the base field everywhere

ZERO = mpq(0)
ONE = mpq(1)


def rat(value, den=None) -> Rational:
    """Build a Rational from int/str/Rational (optionally num, den).

    Strings accept "p/q" and "p" with an optional leading minus, the same
    form used in all JSON/CSV output.
    """
    try:
        q = mpq(value.strip()) if isinstance(value, str) else mpq(value)
    except ZeroDivisionError:
        raise DivisionByZeroError("zero denominator in rational") from None
    except (ValueError, TypeError) as exc:
        raise ValueError(f"not a rational: {value!r}") from exc
    if den is None:
        return q
    d = rat(den)
    if d == 0:
        raise DivisionByZeroError("zero denominator in rational")
    return q / d


def rat_str(x: Rational) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(mpq(x))


def rat_div(a: Rational, b: Rational) -> Rational:
    """Exact division with a reported (not crashing) zero-divisor error."""
    if b == 0:
        raise DivisionByZeroError(f"division by zero: {rat_str(rat(a))} / 0")
    return mpq(a) / mpq(b)


_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": rat_div,
}


def rat_arith(a, b, op: str) -> Rational:
    """Field operation on two rationals; op is one of + - * /."""
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    return _OPS[op](rat(a), rat(b))


def is_integral(x: Rational) -> bool:
    return mpq(x).denominator == 1


def to_int(x: Rational):
    q = mpq(x)
    if q.denominator != 1:
        raise ValueError(f"{rat_str(q)} is not an integer")
    return mpz(q.numerator)


class Dual:
    """Value plus exact gradient, one slot per active variable.

    Constant lifts have an all-zero derivative vector.  Arithmetic follows
    the product/quotient rule exactly over the rationals; division by a
    Dual with zero value raises PoleError.
    """

    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = mpq(val)
        self.grad = tuple(mpq(g) for g in grad)

    @staticmethod
    def variable(val, index: int, nvars: int) -> "Dual":
        return Dual(val, tuple(ONE if i == index else ZERO for i in range(nvars)))

    @staticmethod
    def constant(val, nvars: int) -> "Dual":
        return Dual(val, (ZERO,) * nvars)

    def _coerce(self, other) -> "Dual":
        if isinstance(other, Dual):
            return other
        return Dual.constant(other, len(self.grad))

    def __add__(self, other):
        o = self._coerce(other)
        return Dual(self.val + o.val, tuple(a + b for a, b in zip(self.grad, o.grad)))

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, tuple(-g for g in self.grad))

    def __sub__(self, other):
        return self.__add__(-self._coerce(other))

    def __rsub__(self, other):
        return (-self).__add__(self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        return Dual(
            self.val * o.val,
            tuple(a * o.val + self.val * b for a, b in zip(self.grad, o.grad)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.val == 0:
            raise PoleError("dual division by a value that is zero")
        inv = 1 / o.val
        return Dual(
            self.val * inv,
            tuple((a * o.val - self.val * b) * inv * inv for a, b in zip(self.grad, o.grad)),
        )

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("dual powers must be integers")
        if n < 0:
            return Dual.constant(1, len(self.grad)).__truediv__(self.__pow__(-n))
        out = Dual.constant(1, len(self.grad))
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Dual) else other
        return self.val == o.val and self.grad == o.grad

    def __repr__(self):
        return f"Dual({rat_str(self.val)}, [{', '.join(rat_str(g) for g in self.grad)}])"


def dual_eval(f: Callable, point: Sequence) -> tuple:
    """Evaluate f and its exact gradient at a rational point.

    f is called with one Dual argument per coordinate.  Returns
    (value, [df/dx_0, ...]).  A pole along the evaluation raises PoleError
    naming the offending variable assignment.
    """
    pt = [rat(x) for x in point]
    n = len(pt)
    args = [Dual.variable(x, i, n) for i, x in enumerate(pt)]
    try:
        out = f(*args)
    except PoleError:
        raise PoleError(
            "pole encountered at point (" + ", ".join(rat_str(x) for x in pt) + ")",
            point=tuple(pt),
        ) from None
    if not isinstance(out, Dual):
        out = Dual.constant(out, n)
    return out.val, list(out.grad)


def gradient(f: Callable, point: Sequence) -> list:
    return dual_eval(f, point)[1]

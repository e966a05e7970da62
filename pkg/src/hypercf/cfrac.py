"""Continued-fraction expansion of (Y + P0)/Q0 on Y^2 = A^2 + 4R.

The expansion state at line n carries the polynomial triple
(P_n, Q_n, Q_{n-1}) tied together by the exact identity
F - P_n^2 = Q_n * Q_{n-1}.  Stepping is pure polynomial algebra:

    a_n    = 2(X + v_n)/u_n           (the linear partial quotient)
    P_next = -P_n + a_n Q_n
    Q_next = (F - P_next^2) / Q_n     (exact division)

and the backward step recovers the unique linear a matching the top two
coefficients, so forward/backward are bit-exact inverses.  The series form
of the expansion is kept only as a cross-check oracle (expand_G); the
iteration itself never touches series.

Normalization: A is monic of degree g+1 with no X^g term, so
Q_n = u_n (X^g - v_n X^{g-1} + ...) and P_n - A = 2 d_n X^{g-1} + ... carry
the per-line data (u_n, v_n, d_n), with 4 d_n + u_n u_{n-1} = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, SingularExpansionError
from .exactnum import Rational, rat, rat_str
from .upoly import LaurentTail, Poly, Series, poly_divmod, poly_exact_div, series_invert, sqrt_series


@dataclass(frozen=True)
class CurveSpec:
    """The curve Y^2 = F(X) with F = A^2 + 4R, in normalized form.

    A is monic of degree g+1 with zero coefficient at X^g.  Generically R
    has degree exactly g with leading coefficient u != 0; smaller degree is
    tolerated (it covers the u = 0 special case) but the expansion may then
    terminate.
    """

    genus: int
    A: Poly
    R: Poly

    def __post_init__(self):
        g = self.genus
        if g < 1:
            raise InputError("genus must be a positive integer")
        if self.A.degree != g + 1 or not self.A.is_monic():
            raise InputError(f"A must be monic of degree {g + 1}")
        if self.A.coeff(g) != 0:
            raise InputError("A must have zero coefficient at X^g (shift X to remove it)")
        if self.R.degree > g:
            raise InputError(f"R must have degree at most {g}")

    @property
    def F(self) -> Poly:
        return self.A * self.A + self.R.scale(4)

    @property
    def u(self) -> Rational:
        """Leading coefficient of R at X^g (zero in the degenerate case)."""
        return rat(self.R.coeff(self.genus))


@dataclass(frozen=True)
class SeedLine:
    """The line-0 data (P0, Q0) of an expansion."""

    P0: Poly
    Q0: Poly


@dataclass(frozen=True)
class CFLine:
    """One line of the expansion: its index and the per-line data."""

    n: int
    P: Poly
    Q: Poly
    u: Rational
    v: Rational
    d: Rational


def line_data(curve: CurveSpec, n: int, P: Poly, Q: Poly) -> CFLine:
    g = curve.genus
    u = rat(Q.coeff(g))
    if u == 0:
        raise SingularExpansionError(n)
    v = -Q.coeff(g - 1) / u
    d = (P - curve.A).coeff(g - 1) / 2
    return CFLine(n, P, Q, u, v, d)


class Expansion:
    """Immutable snapshot of the expansion at one line.

    Construct through validate_seed(); step_forward/step_backward return
    new snapshots.
    """

    __slots__ = ("curve", "n", "P", "Q", "Qprev")

    def __init__(self, curve: CurveSpec, n: int, P: Poly, Q: Poly, Qprev: Poly):
        self.curve = curve
        self.n = n
        self.P = P
        self.Q = Q
        self.Qprev = Qprev

    def line(self) -> CFLine:
        return line_data(self.curve, self.n, self.P, self.Q)

    def __eq__(self, other):
        return (
            isinstance(other, Expansion)
            and self.curve == other.curve
            and self.n == other.n
            and self.P == other.P
            and self.Q == other.Q
            and self.Qprev == other.Qprev
        )


def validate_seed(curve: CurveSpec, seed: SeedLine) -> Expansion:
    """Check the seed invariants and return the line-0 state.

    Accepts iff P0 - A has degree <= g-1, Q0 has degree g with nonzero
    leading coefficient, and Q0 divides F - P0^2 exactly.  Each failure has
    its own diagnostic.
    """
    g = curve.genus
    P0, Q0 = seed.P0, seed.Q0
    diff = P0 - curve.A
    if diff.degree > g - 1:
        raise InputError(f"P0 - A must have degree <= {g - 1}, got {diff.degree}")
    if Q0.degree != g:
        raise InputError(f"Q0 must have degree {g}, got {Q0.degree}")
    if Q0.coeff(g) == 0:
        raise InputError("Q0 has zero leading coefficient u_0")
    q, r = poly_divmod(curve.F - P0 * P0, Q0)
    if not r.is_zero():
        raise InputError("Q0 does not divide F - P0^2: seed violates the divisibility requirement")
    return Expansion(curve, 0, P0, Q0, q)


def step_forward(state: Expansion) -> Expansion:
    """Advance one line: n -> n+1.

    Singular (terminating) expansions raise SingularExpansionError carrying
    the index of the line that failed to have full degree.
    """
    g = state.curve.genus
    ln = state.line()  # raises if the current line is already degenerate
    # a_n = 2(X + v_n)/u_n
    a = Poly([2 * ln.v / ln.u, 2 / ln.u])
    P_next = -state.P + a * state.Q
    Q_next = poly_exact_div(state.curve.F - P_next * P_next, state.Q, "step_forward")
    nxt = Expansion(state.curve, state.n + 1, P_next, Q_next, state.Q)
    if Q_next.degree != g or Q_next.coeff(g) == 0:
        raise SingularExpansionError(state.n + 1)
    return nxt


def step_backward(state: Expansion) -> Expansion:
    """Recede one line: n -> n-1.

    The linear a with P_{n-1} = -P_n + a Q_{n-1} of the correct shape is
    forced by matching the two top coefficients (possible because A has no
    X^g term).
    """
    g = state.curve.genus
    Qp = state.Qprev
    if Qp.degree != g or Qp.coeff(g) == 0:
        raise SingularExpansionError(state.n - 1)
    u_prev = rat(Qp.coeff(g))
    v_prev = -Qp.coeff(g - 1) / u_prev
    a = Poly([2 * v_prev / u_prev, 2 / u_prev])
    P_prev = -state.P + a * Qp
    Q_prev2 = poly_exact_div(state.curve.F - P_prev * P_prev, Qp, "step_backward")
    return Expansion(state.curve, state.n - 1, P_prev, Qp, Q_prev2)


def lines(state: Expansion, count: int) -> list:
    """The next `count` lines forward of (and excluding) the given state."""
    out = []
    cur = state
    for _ in range(count):
        cur = step_forward(cur)
        out.append(cur.line())
    return out


def lines_backward(state: Expansion, count: int) -> list:
    out = []
    cur = state
    for _ in range(count):
        cur = step_backward(cur)
        out.append(cur.line())
    return out


def check_line_invariants(state: Expansion) -> None:
    """Exact per-line invariants: the spectral identity and 4d + u u' = 0."""
    curve = state.curve
    lhs = curve.F - state.P * state.P
    if lhs != state.Q * state.Qprev:
        raise InputError(f"line {state.n}: F - P^2 != Q * Qprev")
    ln = state.line()
    u_prev = state.Qprev.coeff(curve.genus)
    if 4 * ln.d + ln.u * u_prev != 0:
        raise InputError(f"line {state.n}: 4d + u u_prev != 0")


# ---------------------------------------------------------------------------
# Series oracle
# ---------------------------------------------------------------------------


def y_series(curve: CurveSpec, order: int, branch: int = +1) -> Series:
    """Series of Y = branch * sqrt(F) at infinity, `order` X^-1-terms deep."""
    g = curve.genus
    s = sqrt_series(curve.F, order + g + 2)
    return s if branch > 0 else -s


def complete_quotient_series(state: Expansion, order: int, branch: int = +1) -> Series:
    """Series of Y_n = (Y + P_n)/Q_n around infinity on the chosen branch."""
    g = state.curve.genus
    y = y_series(state.curve, order + 2 * g + 4, branch)
    num = y + Series.from_poly(state.P)
    return num * series_invert(state.Q, order + g + 2)


def expand_G(state: Expansion, order: int, branch: int = +1) -> LaurentTail:
    """Series of G = Y_0 - a_0 at infinity_1, or of G^dagger = Y_0 at infinity_2.

    branch=+1 gives the moment generating series (no polynomial part after
    removing the floor); branch=-1 expands Y_0 itself on the other sheet,
    where it already has no polynomial part.
    """
    yq = complete_quotient_series(state, order + 2, branch)
    tail = yq - Series.from_poly(yq.poly_part())
    t = tail.truncate(order + 1)
    return LaurentTail([t.coeff_xinv(j) for j in range(1, order + 1)], order)


def partial_quotient_from_series(state: Expansion, order: int = 8) -> Poly:
    """Floor of Y_n recomputed from the series (oracle for a_n)."""
    return complete_quotient_series(state, order, +1).poly_part()


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def poly_to_json(p: Poly) -> list:
    return [rat_str(c) for c in p.coeffs]


def poly_from_json(arr) -> Poly:
    return Poly([rat(c) for c in arr])


def curve_seed_to_json(curve: CurveSpec, seed: SeedLine) -> dict:
    return {
        "genus": curve.genus,
        "A": poly_to_json(curve.A),
        "R": poly_to_json(curve.R),
        "P0": poly_to_json(seed.P0),
        "Q0": poly_to_json(seed.Q0),
    }


def curve_seed_from_json(doc: dict) -> tuple:
    try:
        genus = int(doc["genus"])
        A = poly_from_json(doc["A"])
        R = poly_from_json(doc["R"])
        P0 = poly_from_json(doc["P0"])
        Q0 = poly_from_json(doc["Q0"])
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad curve/seed document: {exc}") from exc
    return CurveSpec(genus, A, R), SeedLine(P0, Q0)


def line_to_json(ln: CFLine) -> dict:
    return {
        "n": ln.n,
        "u": rat_str(ln.u),
        "v": rat_str(ln.v),
        "d": rat_str(ln.d),
        "P": poly_to_json(ln.P),
        "Q": poly_to_json(ln.Q),
    }

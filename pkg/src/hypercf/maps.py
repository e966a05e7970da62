"""The explicit birational maps in genus 1 and 2, with their invariants.

Genus 1 is the planar map

    (d, v) -> (-d - v^2 - f,  -v - u/(d + v^2 + f))

with conserved H = d v^2 - u v + d^2 + f d.  Genus 2 is the 4D map in the
coordinates (d, e, v_prev, w_prev), which preserves the pair H1, H2 and a
nondegenerate Poisson bracket.  The step formulas are written over plain
field operations so they evaluate equally on rationals and on dual numbers;
exact Jacobians come for free from the latter.

For g >= 3 no closed-form coordinate map is provided: the continued-fraction
engine realizes the same dynamics exactly in any genus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import cfrac
from .errors import InputError, SingularOrbitError
from .exactnum import Dual, Rational, dual_eval, rat


def _val(x):
    return x.val if isinstance(x, Dual) else x


# ---------------------------------------------------------------------------
# Genus 1
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class G1Params:
    """Curve constants of Y^2 = (X^2+f)^2 + 4u(X-v)."""

    f: Rational
    u: Rational
    v: Rational | None = None  # root of R; None when u = 0


@dataclass(frozen=True)
class G1State:
    d: Rational
    v: Rational


def _g1_step_raw(d, v, f, u):
    den = d + v * v + f
    if _val(den) == 0:
        raise SingularOrbitError("g1 step: d + v^2 + f vanishes")
    return -den, -v - u / den


def g1_step(p: G1Params, s: G1State) -> G1State:
    d2, v2 = _g1_step_raw(s.d, s.v, p.f, p.u)
    return G1State(d2, v2)


def g1_step_back(p: G1Params, s: G1State) -> G1State:
    # inverse map: v = -v' + u/d', d = -d' - v^2 - f
    if s.d == 0:
        raise SingularOrbitError("g1 backward step: d vanishes")
    v = -s.v + p.u / s.d
    return G1State(-s.d - v * v - p.f, v)


def _g1_h_raw(d, v, f, u):
    return d * v * v - u * v + d * d + f * d


def g1_conserved(p: G1Params, s: G1State) -> Rational:
    """H = d v^2 - u v + d^2 + f d, constant along orbits (equals -u*v_curve)."""
    return _g1_h_raw(s.d, s.v, p.f, p.u)


def g1_orbit(p: G1Params, s: G1State, steps: int) -> list:
    out = [s]
    for _ in range(steps):
        s = g1_step(p, s)
        out.append(s)
    return out


def qrt_coefficients(p: G1Params) -> tuple:
    """(alpha, beta) = (u^2, u^2 (v^2 + f)) of the biquadratic d-relation."""
    if p.v is None:
        raise InputError("QRT coefficients need the curve parameter v (u != 0)")
    return p.u * p.u, p.u * p.u * (p.v * p.v + p.f)


def g1_from_seed(curve: cfrac.CurveSpec, seed: cfrac.SeedLine) -> tuple:
    """(params, state) for the genus-1 map from a validated curve+seed."""
    if curve.genus != 1:
        raise InputError("genus-1 map needs a genus-1 curve")
    state0 = cfrac.validate_seed(curve, seed)
    f = rat(curve.A.coeff(0))
    u = rat(curve.R.coeff(1))
    v_param = None if u == 0 else -curve.R.coeff(0) / u
    ln = state0.line()
    return G1Params(f, u, v_param), G1State(ln.d, ln.v)


# ---------------------------------------------------------------------------
# Genus 2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class G2Params:
    """Curve constants of Y^2 = (X^3+fX+g)^2 + 4u(X^2-vX+w)."""

    f: Rational
    g: Rational
    u: Rational
    v: Rational | None = None
    w: Rational | None = None


@dataclass(frozen=True)
class G2State:
    """Coordinates (d_n, e_n, v_{n-1}, w_{n-1}) of the 4D map."""

    d: Rational
    e: Rational
    v_prev: Rational
    w_prev: Rational

    def as_tuple(self):
        return (self.d, self.e, self.v_prev, self.w_prev)


def _g2_step_raw(d, e, vp, wp, f, g, u):
    if _val(d) == 0:
        raise SingularOrbitError("g2 step: d vanishes")
    den = d * (e * e + e * vp + wp) + u
    if _val(den) == 0:
        raise SingularOrbitError("g2 step: denominator D vanishes")
    d2 = -den / d
    e2 = (
        vp * (d * d + d * (e + vp) * (e + vp) - d * wp + f * d - u)
        + e * (2 * d * d - d * wp + f * d - u)
        + g * d
    ) / den
    v1 = -vp - e
    w1 = -wp + vp * vp + vp * e + d - u / d + f
    return d2, e2, v1, w1


def g2_step(p: G2Params, s: G2State) -> G2State:
    return G2State(*_g2_step_raw(s.d, s.e, s.v_prev, s.w_prev, p.f, p.g, p.u))


def _g2_h_raw(d, e, vp, wp, f, g, u):
    # v_n, w_n of the current line, then H1 = -u v, H2 = u w of the curve
    vn = -vp - e
    wn = -wp + vp * vp + vp * e + d - u / d + f
    h1 = d * (2 * d * e + vn * wp + vp * wn + f * e + g)
    h2 = d * (d * e * e - wn * wp + g * e)
    return h1, h2


def g2_conserved(p: G2Params, s: G2State) -> tuple:
    """(H1, H2) = (-u v_curve, u w_curve), constant along orbits."""
    if s.d == 0:
        raise SingularOrbitError("H1, H2 need d != 0")
    return _g2_h_raw(s.d, s.e, s.v_prev, s.w_prev, p.f, p.g, p.u)


def g2_orbit(p: G2Params, s: G2State, steps: int) -> list:
    out = [s]
    for _ in range(steps):
        s = g2_step(p, s)
        out.append(s)
    return out


def g2_from_seed(curve: cfrac.CurveSpec, seed: cfrac.SeedLine) -> tuple:
    """(params, state) with state (d_0, e_0, v_{-1}, w_{-1}) from a seed."""
    if curve.genus != 2:
        raise InputError("genus-2 map needs a genus-2 curve")
    state0 = cfrac.validate_seed(curve, seed)
    f = rat(curve.A.coeff(1))
    g = rat(curve.A.coeff(0))
    u = rat(curve.R.coeff(2))
    v_param = None if u == 0 else -curve.R.coeff(1) / u
    w_param = None if u == 0 else curve.R.coeff(0) / u
    diff = seed.P0 - curve.A
    d0 = diff.coeff(1) / 2
    if d0 == 0:
        raise SingularOrbitError("seed has d_0 = 0")
    e0 = diff.coeff(0) / (2 * d0)
    qm1 = state0.Qprev
    um1 = qm1.coeff(2)
    if um1 == 0:
        raise SingularOrbitError("seed has degenerate Q_{-1}")
    vprev = -qm1.coeff(1) / um1
    wprev = qm1.coeff(0) / um1
    return (
        G2Params(f, g, u, v_param, w_param),
        G2State(d0, e0, vprev, wprev),
    )


def g2_from_pair_seed(p: G2Params, d0, d1, v0, v1) -> G2State:
    """State (d_1, e_1, v_0, w_0) from the second-order-pair initial data.

    (d0, d1, v0, v1) seeds the coupled second-order recurrences; e_1 and w_0
    are recovered from e_n = -(v_{n-1} + v_n) and w_n = d_{n+1} + d_n + f + v_n^2.
    """
    e1 = -(rat(v0) + rat(v1))
    w0 = rat(d1) + rat(d0) + p.f + rat(v0) * rat(v0)
    return G2State(rat(d1), e1, rat(v0), w0)


# -- Poisson bracket of the 4D map ------------------------------------------


def g2_bracket_matrix(d, e, vp, wp):
    """The bracket matrix in coordinates (d, e, v_prev, w_prev)."""
    if _val(d) == 0:
        raise SingularOrbitError("bracket matrix has a pole at d = 0")
    zero = d * 0
    one = zero + 1
    inv_d = one / d
    b_ew = (vp + e) / d
    return [
        [zero, zero, zero, -one],
        [zero, zero, inv_d, b_ew],
        [zero, -inv_d, zero, zero],
        [one, -b_ew, zero, zero],
    ]


def g2_brackets(a: Callable, b: Callable, s: G2State) -> Rational:
    """{a, b} at s for rational functions a, b of (d, e, v_prev, w_prev)."""
    pt = s.as_tuple()
    _, ga = dual_eval(a, pt)
    _, gb = dual_eval(b, pt)
    pi = g2_bracket_matrix(*pt)
    acc = rat(0)
    for i in range(4):
        if ga[i] == 0:
            continue
        for j in range(4):
            acc += ga[i] * pi[i][j] * gb[j]
    return acc


def g2_jacobian(p: G2Params, s: G2State) -> list:
    """Exact Jacobian matrix of the step at s (rows: outputs, cols: inputs)."""
    n = 4
    args = [Dual.variable(x, i, n) for i, x in enumerate(s.as_tuple())]
    outs = _g2_step_raw(*args, p.f, p.g, p.u)
    return [list(o.grad) for o in outs]


def g2_poisson_pushforward_ok(p: G2Params, s: G2State) -> bool:
    """J Pi(s) J^T == Pi(step(s)) entrywise, with J the exact Jacobian."""
    jac = g2_jacobian(p, s)
    pi = g2_bracket_matrix(*s.as_tuple())
    s2 = g2_step(p, s)
    pi2 = g2_bracket_matrix(*s2.as_tuple())
    for i in range(4):
        for j in range(4):
            acc = rat(0)
            for a in range(4):
                for b in range(4):
                    acc += jac[i][a] * pi[a][b] * jac[j][b]
            if acc != pi2[i][j]:
                return False
    return True


def g2_jacobi_ok(s: G2State) -> bool:
    """Pointwise Jacobi identity of the bracket at s, all coordinate triples."""
    pt = s.as_tuple()
    n = 4
    pi = g2_bracket_matrix(*pt)
    # gradients of every bracket-matrix entry, via one dual evaluation
    args = [Dual.variable(x, i, n) for i, x in enumerate(pt)]
    pid = g2_bracket_matrix(*args)
    grad = [[list(pid[i][j].grad) for j in range(n)] for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                acc = rat(0)
                for m in range(n):
                    acc += grad[a][b][m] * pi[m][c]
                    acc += grad[b][c][m] * pi[m][a]
                    acc += grad[c][a][m] * pi[m][b]
                if acc != 0:
                    return False
    return True


# ---------------------------------------------------------------------------
# Cross-validation against the continued fraction
# ---------------------------------------------------------------------------


def stream_matches_cfrac(curve: cfrac.CurveSpec, seed: cfrac.SeedLine, count: int) -> bool:
    """The (d_n, v_n) stream from the explicit map equals the cfrac stream."""
    state = cfrac.validate_seed(curve, seed)
    lns = [state.line()] + cfrac.lines(state, count)
    if curve.genus == 1:
        p, s = g1_from_seed(curve, seed)
        for k in range(count + 1):
            if (s.d, s.v) != (lns[k].d, lns[k].v):
                return False
            if k < count:
                s = g1_step(p, s)
        return True
    if curve.genus == 2:
        p, s = g2_from_seed(curve, seed)
        for k in range(count + 1):
            vn = -s.v_prev - s.e
            if (s.d, vn) != (lns[k].d, lns[k].v):
                return False
            if k < count:
                s = g2_step(p, s)
        return True
    raise InputError("explicit maps exist only for genus 1 and 2")

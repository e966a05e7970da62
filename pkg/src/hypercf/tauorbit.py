"""Exact long orbits of the genus-2 map in gcd-free bilinear coordinates.

Writing d_n = tau_n tau_{n-2}/tau_{n-1}^2 and v_n = W_n/(tau_{n-1} tau_n)
with W_n = tau*_{n-1} tau_n - tau*_n tau_{n-1} turns the two coupled
second-order relations of the map,

  (A)  d_{n+1} + d_n + d_{n-1} + u/d_n + v_n^2 + v_n v_{n-1} + v_{n-1}^2 + f = 0
  (B)  (2v_n + v_{n-1}) d_n + (2v_n + v_{n+1}) d_{n+1} + v_n^3 + f v_n - g = 0

into polynomial updates with exact integer divisions:

  tau_{n+1} = -S / (tau_{n-1}^3 tau_{n-2}^2)        S = (A) cleared
  W_{n+1}   = -T / tau_{n-1}^4                      T = (B) cleared

On tau-integral orbits (the glued Hankel sequences) this is pure
big-integer arithmetic: no gcd is ever taken, which is what makes 2000
exact steps tractable (heights grow like n^2 digits, so the literal map
over reduced fractions spends its whole life in gcd).  Divisions use
divexact and are verified by multiplying back, so a derivation slip or a
non-integral stream cannot pass silently.

The conserved quantities are certified per point in cross-multiplied
integer form,

  H1 * tau_{n-2} tau_{n-1}^5 tau_n  =  Bkt1(n)
  H2 * tau_{n-2} tau_{n-1}^6 tau_n  =  Bkt2(n)

both sides exact integers.  The literal map (maps.g2_step) remains the
reference: stream prefixes and spot indices are compared against it
bit-exactly by run_orbit.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import divexact, mpq, mpz

from . import cfrac, maps, moments
from .errors import InputError, VerificationError
from .exactnum import Rational, is_integral, rat, to_int


def _exact_div(num, den):
    q = divexact(num, den)
    if q * den != num:
        raise VerificationError("tau orbit: expected exact integer division failed")
    return q


@dataclass
class OrbitPoint:
    n: int
    d: Rational
    e: Rational
    v_prev: Rational
    w_prev: Rational

    def as_state(self) -> maps.G2State:
        return maps.G2State(self.d, self.e, self.v_prev, self.w_prev)


class G2TauOrbit:
    """Iterator state of the bilinear form of the genus-2 map.

    Seeded with tau_{-2}..tau_1 and W_0, W_1 (all integers); advance()
    computes tau_{n+1}, W_{n+1} and certifies H1, H2 at the current index.
    Squares and cubes of the tau window shift across steps instead of being
    recomputed.
    """

    def __init__(self, params: maps.G2Params, taus, ws, h1: Rational, h2: Rational, n0: int = 1):
        if not all(is_integral(t) for t in taus) or not all(is_integral(w) for w in ws):
            raise InputError("tau orbit engine needs an integral tau/W seed")
        for p in (params.f, params.g, params.u):
            if not is_integral(p):
                raise InputError("tau orbit engine needs integer curve parameters f, g, u")
        self.f = to_int(params.f)
        self.g = to_int(params.g)
        self.u = to_int(params.u)
        self.params = params
        # window tau_{n-3}..tau_n and W_{n-1}, W_n with n = n0
        self.t3, self.t2, self.t1, self.t0 = (to_int(t) for t in taus)
        self.w_prev, self.w_cur = (to_int(w) for w in ws)
        self.n = n0
        h1, h2 = rat(h1), rat(h2)
        self.h1_num, self.h1_den = mpz(h1.numerator), mpz(h1.denominator)
        self.h2_num, self.h2_den = mpz(h2.numerator), mpz(h2.denominator)
        self.checked = 0
        # power caches shifted along the window each step
        self._t1_2 = self.t1 * self.t1
        self._t1_3 = self._t1_2 * self.t1
        self._t2_2 = self.t2 * self.t2
        self._t2_3 = self._t2_2 * self.t2
        self._w1_2 = self.w_prev * self.w_prev
        self._q_cache = None  # cleared numerator of w_{n-1} over tau_{n-2}^2 tau_{n-1}^2

    # -- data extraction ------------------------------------------------

    def point(self) -> OrbitPoint:
        """The map state (d_n, e_n, v_{n-1}, w_{n-1}) at the current index."""
        t3, t2, t1, t0 = self.t3, self.t2, self.t1, self.t0
        d = mpq(t0 * t2, t1 * t1)
        d_prev = mpq(t1 * t3, t2 * t2)
        v_prev = mpq(self.w_prev, t2 * t1)
        v_cur = mpq(self.w_cur, t1 * t0)
        e = -(v_prev + v_cur)
        w_prev = d_prev + d + self.f + v_prev * v_prev
        return OrbitPoint(self.n, d, e, v_prev, w_prev)

    def d_value(self) -> Rational:
        return mpq(self.t0 * self.t2, self.t1 * self.t1)

    def v_value(self) -> Rational:
        return mpq(self.w_cur, self.t1 * self.t0)

    def floats(self):
        """(d, e, v_prev, w_prev) as floats for plotting output.

        Computed through floating-point ratios of the big integers; never
        reduces the exact fractions (that is the expensive part).
        """
        from gmpy2 import mpfr

        t3, t2, t1, t0 = (mpfr(x, 96) for x in (self.t3, self.t2, self.t1, self.t0))
        W1, W0 = mpfr(self.w_prev, 96), mpfr(self.w_cur, 96)
        d = t0 * t2 / (t1 * t1)
        d_prev = t1 * t3 / (t2 * t2)
        v_prev = W1 / (t2 * t1)
        v_cur = W0 / (t1 * t0)
        e = -(v_prev + v_cur)
        w_prev = d_prev + d + int(self.f) + v_prev * v_prev
        return tuple(float(x) + 0.0 for x in (d, e, v_prev, w_prev))

    # -- the step ---------------------------------------------------------

    def advance(self, certify: bool = True) -> None:
        t3, t2, t1, t0 = self.t3, self.t2, self.t1, self.t0
        W1, W0 = self.w_prev, self.w_cur
        f, g, u = self.f, self.g, self.u
        t1_2, t1_3 = self._t1_2, self._t1_3
        t2_2, t2_3 = self._t2_2, self._t2_3
        W1_2 = self._w1_2

        t0_2 = t0 * t0
        t0_3 = t0_2 * t0
        t1_4 = t1_2 * t1_2
        t2t0 = t2 * t0
        W0_2 = W0 * W0
        WW = W0 * W1
        t1t0_sq = t1_2 * t0_2

        # (A) cleared over tau_{n-2}^2 tau_{n-1}^2 tau_n^2
        S = (
            t0_3 * t2_3
            + (t1_3 * t3) * t0_2
            + u * (t1_4 * t2t0)
            + W0_2 * t2_2
            + WW * t2t0
            + W1_2 * t0_2
            + f * (t2_2 * t1t0_sq)
        )
        tau_next = _exact_div(-S, t1_3 * t2_2)

        # (B) cleared over tau_{n-1}^3 tau_n^3
        W0t2 = W0 * t2
        W1t0 = W1 * t0
        U = W1t0 + W0t2
        tn_t13 = tau_next * t1_3
        T = (
            (2 * W0t2 + W1t0) * t0_3
            + 2 * (W0 * tn_t13)
            + W0_2 * W0
            + f * (W0 * t1t0_sq)
            - g * (t1_3 * t0_3)
        )
        w_next = _exact_div(-T, t1_4)

        if certify:
            self._certify(
                t3, t2, t1, t0, tau_next, W1, W0, U, W0_2, W1_2, WW,
                t1_2, t1_3, t0_2, t0_3, t2_2, t2_3, t2t0, t1t0_sq, tn_t13,
            )
        elif self._q_cache is not None:
            self._q_cache = t0_3 * t2 + tn_t13 + f * t1t0_sq + W0_2

        self.t3, self.t2, self.t1, self.t0 = t2, t1, t0, tau_next
        self.w_prev, self.w_cur = W0, w_next
        self._t2_2, self._t2_3 = t1_2, t1_3
        self._t1_2, self._t1_3 = t0_2, t0_3
        self._w1_2 = W0_2
        self.n += 1

    def _certify(self, t3, t2, t1, t0, tau_next, W1, W0, U, W0_2, W1_2, WW,
                 t1_2, t1_3, t0_2, t0_3, t2_2, t2_3, t2t0, t1t0_sq, tn_t13) -> None:
        """Exact H1, H2 certificates at the current index n.

        H1 = d_n [ d_{n-1} v_n + d_{n+1} v_{n-1} - d_n(v_{n-1}+v_n)
                   + v_{n-1} v_n (v_{n-1}+v_n) + g ]
        H2 = d_n [ d_n (v_{n-1}+v_n)^2 - w_n w_{n-1} - g(v_{n-1}+v_n) ]

        cleared to integer comparisons against tau_{n-2} tau_{n-1}^{5,6} tau_n.
        """
        f, g = self.f, self.g
        t13t0 = t1_3 * t0
        t2t13 = t2 * t1_3
        t22t02 = t2_2 * t0_2
        V3 = t2t13 * t0  # tau_{n-2} tau_{n-1}^3 tau_n
        bkt1 = (
            (t3 * W0) * t13t0
            + (tau_next * W1) * t2t13
            - U * t22t02
            + WW * U
            + g * (t22t02 * t1_3)
        )
        if self.h1_den * bkt1 != self.h1_num * (V3 * t1_2):
            raise VerificationError(f"H1 is not conserved at n={self.n}")
        p = self._q_cache
        if p is None:  # first step only; afterwards w_n's numerator shifts down
            p = t1_3 * t3 + t0 * t2_3 + f * (t2_2 * t1_2) + W1_2
        q = t0_3 * t2 + tn_t13 + f * t1t0_sq + W0_2
        self._q_cache = q
        bkt2 = (U * U) * t2t0 - p * q - (g * U) * V3
        if self.h2_den * bkt2 != self.h2_num * (V3 * t1_3):
            raise VerificationError(f"H2 is not conserved at n={self.n}")
        self.checked += 1


def orbit_from_curve_seed(curve: cfrac.CurveSpec, seed: cfrac.SeedLine) -> G2TauOrbit:
    """Seed the engine from a validated genus-2 curve+seed via glued tau.

    The glued two-sided tau/tau* of the seed's Hankel families provides
    tau_{-2}..tau_1 and W_0, W_1; the engine starts at map index n = 1.
    """
    if curve.genus != 2:
        raise InputError("the tau orbit engine is the genus-2 fast path")
    params, state = maps.g2_from_seed(curve, seed)
    mf = moments.moments_forward(curve, seed, 5)
    mb = moments.moments_backward(curve, seed, 5)
    tf = moments.hankel_table(mf, 2, cross_check=False)
    tb = moments.hankel_table(mb, 2, cross_check=False)
    ts = moments.glue_tau(tf, tb, curve, seed)
    taus = [ts.tau[n] for n in (-2, -1, 0, 1)]
    w0 = ts.tau_star[-1] * ts.tau[0] - ts.tau_star[0] * ts.tau[-1]
    w1 = ts.tau_star[0] * ts.tau[1] - ts.tau_star[1] * ts.tau[0]
    h1, h2 = maps.g2_conserved(params, state)
    return G2TauOrbit(params, taus, [w0, w1], h1, h2)


def run_orbit(curve: cfrac.CurveSpec, seed: cfrac.SeedLine, steps: int,
              certify: bool = True, cross_check: int = 40,
              spot_checks=(100, 200, 400)):
    """Run `steps` exact map steps; return the engine at the final state.

    cross_check: number of leading steps compared bit-exactly against the
    literal map.  spot_checks: indices where one literal map step is applied
    to the engine state and compared with the next engine state.
    """
    eng = orbit_from_curve_seed(curve, seed)
    params, state = maps.g2_from_seed(curve, seed)
    ref = maps.g2_step(params, state)  # state at n=1, the engine's first point
    spot = set(spot_checks)
    pending = None  # (index, literal step applied to the engine state there)
    for k in range(steps):
        if k < cross_check:
            pt = eng.point()
            if (pt.d, pt.e, pt.v_prev, pt.w_prev) != (ref.d, ref.e, ref.v_prev, ref.w_prev):
                raise VerificationError(f"tau engine deviates from the map at step {k}")
            ref = maps.g2_step(params, ref)
        if eng.n in spot:
            pending = (eng.n, maps.g2_step(params, eng.point().as_state()))
        eng.advance(certify=certify)
        if pending is not None:
            idx, stepped = pending
            pt = eng.point()
            if (pt.d, pt.e, pt.v_prev, pt.w_prev) != (
                stepped.d, stepped.e, stepped.v_prev, stepped.w_prev,
            ):
                raise VerificationError(f"tau engine spot check failed at n={idx}")
            pending = None
    return eng

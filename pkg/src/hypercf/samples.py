"""Deterministic random curves, seeds and Lax points for the test suites.

A valid (curve, seed) pair must satisfy the divisibility Q0 | F - P0^2.
Rather than factoring, the generator picks A, P0 - A and Q0 freely and then
solves the triangular linear system that forces F := P0^2 + Q0*Q_{-1} to
have the right shape (degree 2g+2, monic, no X^{2g+1} term, F - A^2 of
degree <= g).  The leftover free coefficient of Q_{-1} either stays random
or is spent to force the leading coefficient u of R to zero (the special
case with a shorter Somos relation).

Everything is driven by random.Random(seed) so suites are reproducible.
"""

from __future__ import annotations

import random

from .cfrac import CurveSpec, SeedLine, validate_seed
from .errors import InputError
from .exactnum import rat
from .poisson import LaxPoint
from .upoly import Poly


def _rand_rat(rng: random.Random, num_max: int = 6, den_max: int = 3):
    n = rng.randint(-num_max, num_max)
    d = rng.randint(1, den_max)
    return rat(n, d)


def _rand_nonzero(rng: random.Random, num_max: int = 6, den_max: int = 3):
    while True:
        q = _rand_rat(rng, num_max, den_max)
        if q != 0:
            return q


def random_curve_seed(
    genus: int,
    rng: random.Random,
    integer: bool = False,
    force_u_zero: bool = False,
    max_tries: int = 200,
):
    """A random curve with a valid seed line, expansion known nonsingular
    for at least a couple of steps.

    integer=True restricts every free choice to small integers (moment
    growth stays tame).  force_u_zero=True spends the free Q_{-1}
    coefficient on making deg R < g.
    """
    g = genus
    for _ in range(max_tries):
        pick = (lambda: rat(rng.randint(-4, 4))) if integer else (lambda: _rand_rat(rng))
        pick_nz = (lambda: rat(rng.choice([-3, -2, -1, 1, 2, 3]))) if integer else (
            lambda: _rand_nonzero(rng)
        )
        A = Poly([pick() for _ in range(g)] + [0, 1])
        d0 = pick_nz()
        p_low = [pick() for _ in range(g - 1)]
        P0 = A + Poly(p_low + [2 * d0])
        u0 = pick_nz()
        rho0 = [pick() for _ in range(g)]
        Q0 = Poly(rho0 + [1]).scale(u0)
        um1 = -4 * d0 / u0
        # Solve for Q_{-1} = um1 (X^g + rho_{g-1} X^{g-1} + ... + rho_0):
        # F := P0^2 + Q0 Q_{-1} must satisfy deg(F - A^2) <= g, i.e. the
        # coefficients of X^{2g-1}..X^{g+1} in (P0^2 - A^2) + Q0 Q_{-1} vanish
        # (X^{2g} already cancels by the choice of um1).  Triangular in rho.
        core = P0 * P0 - A * A
        rho = [None] * g  # rho[j] = coefficient of X^j in Q_{-1}/um1
        rho_known = {g: rat(1)}
        for k in range(2 * g - 1, g, -1):
            # coefficient of X^k: core_k + u0*um1 * sum_{i+j=k} rho0_i rho_j
            acc = rat(core.coeff(k))
            unknown_j = k - g  # the lowest-index rho appearing at this order
            coeff_unknown = u0 * um1  # multiplies rho0_g (=1) * rho_{k-g}
            for i in range(g + 1):
                j = k - i
                if j == unknown_j and i == g:
                    continue
                if 0 <= j <= g and j in rho_known:
                    ri = rat(1) if i == g else rho0[i]
                    acc += u0 * um1 * ri * rho_known[j]
            rho[unknown_j] = -acc / coeff_unknown
            rho_known[unknown_j] = rho[unknown_j]
        # rho[0] is free unless we spend it on u = 0
        if force_u_zero:
            # coefficient of X^g in F - A^2 is 4u; solve it to zero
            acc = rat(core.coeff(g))
            coeff_unknown = u0 * um1
            for i in range(g + 1):
                j = g - i
                if j == 0 and i == g:
                    continue
                if 0 <= j <= g and j in rho_known:
                    ri = rat(1) if i == g else rho0[i]
                    acc += u0 * um1 * ri * rho_known[j]
            rho[0] = -acc / coeff_unknown
        else:
            rho[0] = pick()
        Qm1 = Poly(rho + [1]).scale(um1)
        F = P0 * P0 + Q0 * Qm1
        R4 = F - A * A
        if R4.degree > g:
            continue
        R = Poly([c / 4 for c in R4.coeffs])
        if force_u_zero:
            if R.coeff(g) != 0:
                continue
        elif R.degree != g:
            continue
        try:
            curve = CurveSpec(g, A, R)
            seed = SeedLine(P0, Q0)
            validate_seed(curve, seed)
        except InputError:
            continue
        return curve, seed
    raise InputError(f"could not generate a genus-{genus} curve/seed in {max_tries} tries")


def random_lax_point(genus: int, rng: random.Random, factored_r: bool = False) -> LaxPoint:
    """Random Lax point; factored_r=True gives R with distinct small integer roots."""
    g = genus
    for _ in range(100):
        p = [_rand_rat(rng) for _ in range(g)]
        q = [_rand_rat(rng) for _ in range(g)] + [_rand_nonzero(rng)]
        if factored_r:
            roots = rng.sample(range(-6, 7), g)
            rpoly = Poly.from_roots([rat(x) for x in roots])
            r = [rpoly.coeff(j) for j in range(g)]
        else:
            roots = None
            r = [_rand_rat(rng) for _ in range(g)]
        try:
            point = LaxPoint.from_coords(g, [rat(x) for x in p + q + r])
        except InputError:
            continue
        point_roots = [rat(x) for x in roots] if roots is not None else None
        return (point, point_roots) if factored_r else point
    raise InputError("could not generate a Lax point")


def nonsingular_curve_seed(genus, rng, steps_forward, steps_backward=0, integer=False,
                           force_u_zero=False):
    """Curve/seed whose expansion survives the requested number of steps."""
    from . import cfrac

    for _ in range(300):
        curve, seed = random_curve_seed(genus, rng, integer=integer, force_u_zero=force_u_zero)
        try:
            st = validate_seed(curve, seed)
            cfrac.lines(st, steps_forward)
            if steps_backward:
                cfrac.lines_backward(st, steps_backward)
        except Exception:
            continue
        return curve, seed
    raise InputError("could not find a long-lived expansion")

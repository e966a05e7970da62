"""Moment sequences, Hankel tables, orthogonal polynomials and tau gluing.

The moments s_j are the X^{-1}-expansion coefficients of G = Y_0 - a_0 at
one point at infinity (forward) or of Y_0 itself at the other (backward).
They satisfy a quadratic recursion driven by the first expansion line; the
recursion is implemented once for arbitrary genus, and the printed genus-1
and genus-2 specializations serve as test oracles only.

Hankel determinants of the moments reproduce the expansion data:

    d_n = Delta_n Delta_{n-2} / Delta_{n-1}^2          (n >= 2)
    v_n = Delta*_{n-1}/Delta_{n-1} - Delta*_n/Delta_n  (n >= 1)

with mirrored statements for negative n built from the backward moments.
glue_tau stitches the two one-sided determinant families into a single
two-sided tau sequence reproducing every d_n, v_n including the seam.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cfrac
from .determinants import DodgsonDegenerate, det_dodgson, hankel_minor
from .errors import InputError, VerificationError
from .exactnum import Rational, rat, rat_str
from .report import VerifyReport
from .upoly import Poly


@dataclass(frozen=True)
class MomentSeq:
    """s_0, s_1, ... in one direction, with the data that generated them."""

    direction: str  # "forward" or "backward"
    values: tuple
    curve: cfrac.CurveSpec | None = None
    seed: cfrac.SeedLine | None = None

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]


def _normalized_coeffs(q: Poly, genus: int):
    """(u, [rho_0..rho_{g-1}]) with Q = u(X^g + rho_{g-1}X^{g-1} + ... + rho_0)."""
    u = rat(q.coeff(genus))
    return u, [q.coeff(j) / u for j in range(genus)]


def _moment_recursion(genus, k_coeffs, pi_coeffs, rho_conv, rho_bar, d_over_s0, s0, count):
    """Shared engine of the forward/backward recursions.

    k_coeffs[j], pi_coeffs[j]: X^j coefficients of A - X^{g+1} and of the
    relevant P - A; rho_conv[j]: normalized coefficients of Q_0 entering the
    convolution part; rho_bar[j]: normalized coefficients of the Q whose
    low-order data seeds the first g moments.
    """
    s = [rat(s0)]
    conv = []  # conv[m] = sum_{i<=m} s_i s_{m-i}
    for j in range(1, count + 1):
        while len(conv) <= j - 2:
            m = len(conv)
            acc = rat(0)
            for i in range(m + 1):
                acc += s[i] * s[m - i]
            conv.append(acc)
        acc = rat(0)
        for i in range(2, genus + 2):
            if j - i >= 0:
                acc -= (k_coeffs[genus + 1 - i] + pi_coeffs[genus + 1 - i]) * s[j - i]
        quad = rat(0)
        if j - 2 >= 0:
            quad += conv[j - 2]
        for ell in range(3, genus + 3):
            if j - ell >= 0:
                quad += rho_conv[genus + 2 - ell] * conv[j - ell]
        acc += d_over_s0 * quad
        if 1 <= j <= genus:
            acc += s[0] * rho_bar[genus - j]
        s.append(acc)
    return s


def moments_forward(curve: cfrac.CurveSpec, seed: cfrac.SeedLine, count: int) -> MomentSeq:
    """s_0..s_count of the forward expansion, s_0 = u_1/2."""
    g = curve.genus
    state0 = cfrac.validate_seed(curve, seed)
    state1 = cfrac.step_forward(state0)
    ln0, ln1 = state0.line(), state1.line()
    _, rho0 = _normalized_coeffs(state0.Q, g)
    _, rho1 = _normalized_coeffs(state1.Q, g)
    pi1 = [(state1.P - curve.A).coeff(j) for j in range(g)]
    kc = [curve.A.coeff(j) for j in range(g)]
    s0 = ln1.u / 2
    values = _moment_recursion(g, kc, pi1, rho0, rho1, ln1.d / s0, s0, count)
    return MomentSeq("forward", tuple(values), curve, seed)


def moments_backward(curve: cfrac.CurveSpec, seed: cfrac.SeedLine, count: int) -> MomentSeq:
    """s^dag_0..s^dag_count of the backward expansion, s^dag_0 = -u_{-1}/2."""
    g = curve.genus
    state0 = cfrac.validate_seed(curve, seed)
    qm1 = state0.Qprev
    if qm1.degree != g or qm1.coeff(g) == 0:
        raise InputError("backward moments need a nondegenerate Q_{-1}")
    ln0 = state0.line()
    um1, rhom1 = _normalized_coeffs(qm1, g)
    _, rho0 = _normalized_coeffs(state0.Q, g)
    pi0 = [(state0.P - curve.A).coeff(j) for j in range(g)]
    kc = [curve.A.coeff(j) for j in range(g)]
    s0 = -um1 / 2
    values = _moment_recursion(g, kc, pi0, rho0, rhom1, ln0.d / s0, s0, count)
    return MomentSeq("backward", tuple(values), curve, seed)


def moments_from_series(curve: cfrac.CurveSpec, seed: cfrac.SeedLine, count: int, direction="forward") -> list:
    """Moments read off the actual series expansion (independent oracle)."""
    state0 = cfrac.validate_seed(curve, seed)
    tail = cfrac.expand_G(state0, count + 1, +1 if direction == "forward" else -1)
    return [tail.coeff_xinv(j + 1) for j in range(count + 1)]


# ---------------------------------------------------------------------------
# Hankel tables
# ---------------------------------------------------------------------------


def delta_n(s, n: int) -> Rational:
    """The n x n Hankel determinant det(s_{i+j-2}); Delta_0 = 1."""
    return hankel_minor(s, tuple(range(n)), tuple(range(n)))


def delta_star_n(s, n: int) -> Rational:
    """Shifted Hankel: last column advanced by one; Delta*_0 = 0."""
    if n == 0:
        return rat(0)
    return hankel_minor(s, tuple(range(n)), tuple(range(n - 1)) + (n,))


def delta_2star_n(s, n: int) -> Rational:
    """Size-n Hankel-type determinant with column n-2 omitted."""
    if n < 2:
        raise InputError("Delta** needs size >= 2")
    return hankel_minor(s, tuple(range(n)), tuple(range(n - 2)) + (n - 1, n))


def delta_prime_n(s, n: int) -> Rational:
    """Size-n determinant with both last row and last column advanced."""
    offs = tuple(range(n - 1)) + (n,)
    return hankel_minor(s, offs, offs)


def delta_dprime_n(s, n: int) -> Rational:
    """Size-n determinant with the last column advanced by two."""
    return hankel_minor(s, tuple(range(n)), tuple(range(n - 1)) + (n + 1,))


@dataclass
class HankelTable:
    """Delta_0..Delta_N and Delta*_0..Delta*_N for one moment direction."""

    moments: MomentSeq
    delta: list
    delta_star: list

    @property
    def size(self) -> int:
        return len(self.delta) - 1


def hankel_table(m: MomentSeq, size: int, cross_check: bool = True) -> HankelTable:
    """Build the determinant table up to the given size.

    Bareiss elimination does the work; a sample of sizes is re-computed by
    Dodgson condensation as an independent check (skipped where the
    condensation is degenerate).
    """
    s = m.values if isinstance(m, MomentSeq) else tuple(m)
    if len(s) < 2 * size:
        raise InputError(f"need s_0..s_{2 * size - 1} for size {size}, have {len(s)} moments")
    if not isinstance(m, MomentSeq):
        m = MomentSeq("raw", s)
    delta = [delta_n(s, n) for n in range(size + 1)]
    dstar = [delta_star_n(s, n) for n in range(size + 1)]
    if cross_check:
        for n in range(2, min(size, 5) + 1):
            rows = [[s[i + j] for j in range(n)] for i in range(n)]
            try:
                alt = det_dodgson(rows)
            except DodgsonDegenerate:
                continue
            if alt != delta[n]:
                raise VerificationError(
                    f"Bareiss and Dodgson disagree on Delta_{n}: "
                    f"{rat_str(delta[n])} vs {rat_str(alt)}"
                )
    return HankelTable(m, delta, dstar)


# ---------------------------------------------------------------------------
# Theorem verification: determinant formulas against the expansion
# ---------------------------------------------------------------------------


def verify_theorem2(curve: cfrac.CurveSpec, seed: cfrac.SeedLine, depth: int) -> VerifyReport:
    """d_n and v_n from Hankel ratios against the forward expansion, bit-exact."""
    rep = VerifyReport(f"theorem2(depth={depth})")
    mom = moments_forward(curve, seed, 2 * depth)
    table = hankel_table(mom, depth)
    state = cfrac.validate_seed(curve, seed)
    lns = cfrac.lines(state, depth)
    d = {ln.n: ln.d for ln in lns}
    v = {ln.n: ln.v for ln in lns}
    for n in range(2, depth + 1):
        want = table.delta[n] * table.delta[n - 2] / table.delta[n - 1] ** 2
        rep.check(
            d[n] == want,
            f"d_{n}: expansion gives {rat_str(d[n])}, Hankel ratio gives {rat_str(want)}",
        )
    for n in range(1, depth + 1):
        want = table.delta_star[n - 1] / table.delta[n - 1] - table.delta_star[n] / table.delta[n]
        rep.check(
            v[n] == want,
            f"v_{n}: expansion gives {rat_str(v[n])}, Hankel ratio gives {rat_str(want)}",
        )
    return rep


def verify_theorem3(curve: cfrac.CurveSpec, seed: cfrac.SeedLine, depth: int) -> VerifyReport:
    """Same as verify_theorem2 for negative indices via backward moments."""
    rep = VerifyReport(f"theorem3(depth={depth})")
    mom = moments_backward(curve, seed, 2 * depth)
    table = hankel_table(mom, depth)
    state = cfrac.validate_seed(curve, seed)
    lns = cfrac.lines_backward(state, depth)
    d = {ln.n: ln.d for ln in lns}
    v = {ln.n: ln.v for ln in lns}
    for n in range(2, depth + 1):
        want = table.delta[n] * table.delta[n - 2] / table.delta[n - 1] ** 2
        rep.check(
            d[1 - n] == want,
            f"d_{1 - n}: expansion gives {rat_str(d[1 - n])}, Hankel ratio gives {rat_str(want)}",
        )
    for n in range(1, depth + 1):
        want = table.delta_star[n - 1] / table.delta[n - 1] - table.delta_star[n] / table.delta[n]
        rep.check(
            v[-n] == want,
            f"v_{-n}: expansion gives {rat_str(v[-n])}, Hankel ratio gives {rat_str(want)}",
        )
    return rep


# ---------------------------------------------------------------------------
# Orthogonal polynomials
# ---------------------------------------------------------------------------


def moment_functional(s, p: Poly) -> Rational:
    """<p> = sum_k p_k s_k."""
    acc = rat(0)
    for k, c in enumerate(p.coeffs):
        if k >= len(s):
            raise InputError(f"moment functional needs s_{k}")
        acc += c * s[k]
    return acc


def moment_pair(s, a: Poly, b: Poly) -> Rational:
    """<a, b> = <a*b> under the moment functional."""
    return moment_functional(s, a * b)


def orthopoly_q(m, n: int, method: str = "determinant") -> Poly:
    """Monic orthogonal polynomial q_n for the moment sequence.

    method="determinant" uses the standard bordered-Hankel formula;
    method="recurrence" uses q_n = (X + v_n) q_{n-1} - d_n q_{n-2} with the
    coefficients taken from Hankel ratios.  Both agree coefficientwise.
    """
    s = m.values if isinstance(m, MomentSeq) else tuple(m)
    if n == 0:
        return Poly.one()
    if len(s) < 2 * n:
        raise InputError(f"q_{n} needs moments through s_{2 * n - 1}")
    dn = delta_n(s, n)
    if dn == 0:
        raise InputError(f"degenerate moment sequence: Delta_{n} = 0")
    if method == "determinant":
        rows = tuple(range(n))
        coeffs = []
        for k in range(n + 1):
            cols = tuple(j for j in range(n + 1) if j != k)
            minor = hankel_minor(s, rows, cols)
            coeffs.append((-1) ** (n + k) * minor / dn)
        return Poly(coeffs)
    if method == "recurrence":
        qs = [Poly.one(), Poly([-s[1] / s[0], 1])]
        for k in range(2, n + 1):
            dk = delta_n(s, k) * delta_n(s, k - 2) / delta_n(s, k - 1) ** 2
            vk = delta_star_n(s, k - 1) / delta_n(s, k - 1) - delta_star_n(s, k) / delta_n(s, k)
            qs.append(Poly([vk, 1]) * qs[k - 1] - qs[k - 2].scale(dk))
        return qs[n]
    raise InputError(f"unknown method {method!r}")


def orthonormality_constant(m, n: int) -> Rational:
    """h_n = <q_n, q_n> = Delta_{n+1}/Delta_n."""
    s = m.values if isinstance(m, MomentSeq) else tuple(m)
    return delta_n(s, n + 1) / delta_n(s, n)


# ---------------------------------------------------------------------------
# Two-sided tau sequences
# ---------------------------------------------------------------------------


@dataclass
class TauSeq:
    """Two-sided tau and tau* with the gauge that stitched them together.

    d(n) and v(n) reproduce the expansion stream for every n in range,
    including the seam at n = 0, 1.
    """

    tau: dict
    tau_star: dict
    gauge: tuple  # (a, b, c) applied to the backward determinant family
    lo: int
    hi: int

    def d(self, n: int) -> Rational:
        return self.tau[n] * self.tau[n - 2] / self.tau[n - 1] ** 2

    def v(self, n: int) -> Rational:
        return self.tau_star[n - 1] / self.tau[n - 1] - self.tau_star[n] / self.tau[n]

    def window(self, lo: int, hi: int) -> list:
        """tau_lo..tau_hi inclusive."""
        return [self.tau[n] for n in range(lo, hi + 1)]


def glue_tau(
    forward: HankelTable,
    backward: HankelTable,
    curve: cfrac.CurveSpec,
    seed: cfrac.SeedLine,
) -> TauSeq:
    """Stitch forward and backward Hankel families into one tau sequence.

    tau_n = Delta_n for n >= 0 and (-1)^n (2/u_0)^{2n+1} Delta^dag_{-n-1}
    for n <= -1; the tau* gauge constant is solved from matching v_0.
    """
    state0 = cfrac.validate_seed(curve, seed)
    ln0 = state0.line()
    u0, v0 = ln0.u, ln0.v
    if u0 == 0:
        raise InputError("gluing needs u_0 != 0")
    tau, tau_star = {}, {}
    for n in range(forward.size + 1):
        tau[n] = forward.delta[n]
        tau_star[n] = forward.delta_star[n]
    two_over_u0 = rat(2) / u0
    for n in range(-1, -backward.size - 2, -1):
        k = -n - 1  # index into the backward table
        if k > backward.size:
            break
        dag = backward.delta[k]
        sign = -1 if n % 2 else 1
        t = sign * two_over_u0 ** (2 * n + 1) * dag
        tau[n] = t
        if dag == 0:
            raise InputError(f"backward Hankel Delta^dag_{k} vanishes; tau* gauge undefined")
        tau_star[n] = t * (v0 - backward.delta_star[k] / dag)
    lo, hi = min(tau), max(tau)
    return TauSeq(tau, tau_star, (two_over_u0, -(two_over_u0 ** 2), v0), lo, hi)


def apply_gauge(ts: TauSeq, a, b, c) -> TauSeq:
    """tau_n -> a b^n tau_n, tau*_n -> a b^n (tau*_n + c tau_n)."""
    a, b, c = rat(a), rat(b), rat(c)
    if a == 0 or b == 0:
        raise InputError("gauge parameters a, b must be nonzero")
    tau = {n: a * b**n * t for n, t in ts.tau.items()}
    tau_star = {n: a * b**n * (ts.tau_star[n] + c * ts.tau[n]) for n in ts.tau_star}
    return TauSeq(tau, tau_star, (ts.gauge[0] * a, ts.gauge[1] * b, ts.gauge[2] + c), ts.lo, ts.hi)


def verify_tau_stream(ts: TauSeq, curve: cfrac.CurveSpec, seed: cfrac.SeedLine) -> VerifyReport:
    """tau-ratios against the two-sided expansion stream, across the seam."""
    rep = VerifyReport("tau-stream")
    state0 = cfrac.validate_seed(curve, seed)
    fwd = cfrac.lines(state0, ts.hi)
    bwd = cfrac.lines_backward(state0, -ts.lo - 1) if ts.lo <= -2 else []
    ln0 = state0.line()
    d = {ln.n: ln.d for ln in fwd + bwd}
    v = {ln.n: ln.v for ln in fwd + bwd}
    d[0], v[0] = ln0.d, ln0.v
    for n in range(ts.lo + 2, ts.hi + 1):
        if n in d:
            rep.check(ts.d(n) == d[n], f"d_{n} mismatch: {rat_str(ts.d(n))} != {rat_str(d[n])}")
    for n in range(ts.lo + 1, ts.hi + 1):
        if n in v:
            rep.check(ts.v(n) == v[n], f"v_{n} mismatch: {rat_str(ts.v(n))} != {rat_str(v[n])}")
    return rep


# ---------------------------------------------------------------------------
# Appendix determinant identities
# ---------------------------------------------------------------------------


def appendix_identities(m, n_max: int) -> VerifyReport:
    """The Desnanot-Jacobi and Laplace-expansion identities, bit-exact.

    (i)   Delta_n Delta_{n-2} = Delta_{n-1} Delta'_{n-1} - (Delta*_{n-1})^2
    (ii)  Delta**_n Delta_{n-1} - Delta*_n Delta*_{n-1} + Delta_n Delta''_{n-1} = 0
    (iii) Delta''_n - Delta'_n + Delta**_n = 0

    All three hold for arbitrary Hankel-structured data, not only moments
    coming from a curve.
    """
    s = m.values if isinstance(m, MomentSeq) else tuple(m)
    rep = VerifyReport(f"appendix-identities(n<={n_max})")
    if len(s) < 2 * n_max + 1:
        raise InputError(f"identities to n={n_max} need moments through s_{2 * n_max}")
    for n in range(2, n_max + 1):
        dn = delta_n(s, n)
        dn1 = delta_n(s, n - 1)
        dn2 = delta_n(s, n - 2)
        star_n = delta_star_n(s, n)
        star_n1 = delta_star_n(s, n - 1)
        prime_n1 = delta_prime_n(s, n - 1)
        lhs = dn * dn2
        rhs = dn1 * prime_n1 - star_n1 * star_n1
        rep.check(lhs == rhs, f"Desnanot-Jacobi fails at n={n}: {rat_str(lhs)} != {rat_str(rhs)}")
        dstar2 = delta_2star_n(s, n)
        dprime_n1 = delta_dprime_n(s, n - 1)
        val = dstar2 * dn1 - star_n * star_n1 + dn * dprime_n1
        rep.check(val == 0, f"Laplace identity fails at n={n}: residue {rat_str(val)}")
        val3 = delta_dprime_n(s, n) - delta_prime_n(s, n) + dstar2
        rep.check(val3 == 0, f"Delta'' - Delta' + Delta** fails at n={n}: {rat_str(val3)}")
    return rep

"""Linear Poisson structure on 2x2 Lax matrices and the induced discrete map.

A Lax point is the triple of polynomials (P, Q, R) in the spectral variable
with P monic of degree g+1 (no zeta^g term: the top Casimir is pinned to
zero), R monic of degree g and Q of degree g with leading coefficient
-4 d_0 != 0.  The bracket between the polynomial values

    {P(z), P(w)} = 0 = {R(z), R(w)}
    {P(z), Q(w)} =  2 (Q(z) - Q(w))/(z - w)
    {P(z), R(w)} = -2 (R(z) - R(w))/(z - w)
    {Q(z), Q(w)} = -4 (Q(z) - Q(w))
    {Q(z), R(w)} =  4 (P(z) - P(w))/(z - w) - 4 R(w)

expands in powers of z, w to an affine-linear bracket matrix on the 3g+1
coefficient coordinates.  F = P^2 + QR packs the invariants: its top g+2
nontrivial coefficients are Casimirs and the g lowest are Hamiltonians in
involution.  The discrete map

    R~ = -Q/(4 d_0),  P~ = -P + 2(z + v_0) R~,  Q~ = -2(z + v_0)(P~ - P) - 4 d_0 R

is isospectral (F is preserved coefficientwise) and is a Poisson map; both
facts are checked pointwise with exact arithmetic, the Jacobian coming from
dual numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cfrac
from .errors import InputError, SingularOrbitError
from .exactnum import Dual, Rational, rat, rat_str
from .report import VerifyReport
from .upoly import Poly

# coordinate order: p_0..p_{g-1}, q_0..q_g, r_0..r_{g-1}  (3g+1 slots)


@dataclass(frozen=True)
class LaxPoint:
    genus: int
    P: Poly
    Q: Poly
    R: Poly

    def __post_init__(self):
        g = self.genus
        if self.P.degree != g + 1 or not self.P.is_monic() or self.P.coeff(g) != 0:
            raise InputError("P must be monic of degree g+1 with zero coefficient at X^g")
        if self.R.degree != g or not self.R.is_monic():
            raise InputError("R must be monic of degree g")
        if self.Q.degree != g or self.Q.coeff(g) == 0:
            raise InputError("Q must have degree g with nonzero leading coefficient")

    @property
    def d0(self) -> Rational:
        return -rat(self.Q.coeff(self.genus)) / 4

    @property
    def v0(self) -> Rational:
        return self.Q.coeff(self.genus - 1) / (4 * self.d0)

    def coords(self) -> list:
        g = self.genus
        return (
            [self.P.coeff(j) for j in range(g)]
            + [self.Q.coeff(j) for j in range(g + 1)]
            + [self.R.coeff(j) for j in range(g)]
        )

    @staticmethod
    def from_coords(genus: int, coords) -> "LaxPoint":
        g = genus
        if len(coords) != 3 * g + 1:
            raise InputError(f"need {3 * g + 1} coordinates for genus {g}")
        p = list(coords[:g]) + [0, 1]
        q = list(coords[g : 2 * g + 1])
        r = list(coords[2 * g + 1 :]) + [1]
        return LaxPoint(g, Poly(p), Poly(q), Poly(r))

    def spectral_poly(self) -> Poly:
        """F = P^2 + Q R = -det of the Lax matrix."""
        return self.P * self.P + self.Q * self.R

    def coordinate_names(self) -> list:
        g = self.genus
        return (
            [f"p{j}" for j in range(g)]
            + [f"q{j}" for j in range(g + 1)]
            + [f"r{j}" for j in range(g)]
        )


def lax_from_seed(curve: cfrac.CurveSpec, seed: cfrac.SeedLine) -> LaxPoint:
    """Gauge identification P = P_0, Q = u_{-1} Q_0, R = Q_{-1}/u_{-1}."""
    state0 = cfrac.validate_seed(curve, seed)
    g = curve.genus
    qm1 = state0.Qprev
    um1 = rat(qm1.coeff(g))
    if um1 == 0:
        raise InputError("seed has degenerate Q_{-1}; no Lax point on this gauge")
    return LaxPoint(g, state0.P, state0.Q.scale(um1), qm1.scale(1 / um1))


# ---------------------------------------------------------------------------
# The bracket matrix
# ---------------------------------------------------------------------------


class PoissonTensor:
    """Affine-linear bracket matrix on the coefficient coordinates.

    Entries are produced by expanding the defining relations in powers of
    the two spectral arguments.  Built once per genus.
    """

    def __init__(self, genus: int):
        self.genus = genus
        self.dim = 3 * genus + 1

    def _split(self, coords):
        g = self.genus
        p = list(coords[:g])
        q = list(coords[g : 2 * g + 1])
        r = list(coords[2 * g + 1 :])
        return p, q, r

    def matrix(self, coords) -> list:
        """Pi(point); works on rationals and on dual numbers alike."""
        g = self.genus
        p, q, r = self._split(coords)
        zero = coords[0] * 0
        one = zero + 1

        def pad_q(k):
            return q[k] if 0 <= k <= g else zero

        def pad_r(k):  # R is monic of degree g
            if k == g:
                return one
            return r[k] if 0 <= k < g else zero

        def pad_p(k):  # P is monic of degree g+1 with zero X^g coefficient
            if k == g + 1:
                return one
            if k == g:
                return zero
            return p[k] if 0 <= k < g else zero

        n = self.dim
        pi = [[zero for _ in range(n)] for _ in range(n)]
        P0, Q0, R0 = 0, g, 2 * g + 1  # slot offsets

        def setpair(i, j, val):
            pi[i][j] = val
            pi[j][i] = zero - val

        for a in range(g):
            for b in range(g + 1):
                setpair(P0 + a, Q0 + b, 2 * pad_q(a + b + 1))
        for a in range(g):
            for b in range(g):
                setpair(P0 + a, R0 + b, -2 * pad_r(a + b + 1))
        for a in range(g + 1):
            for b in range(a + 1, g + 1):
                # {q_a, q_b} = 4(q_b delta_{a0} - q_a delta_{b0}); here b > a >= 0
                val = 4 * pad_q(b) if a == 0 else zero
                setpair(Q0 + a, Q0 + b, val)
        for a in range(g + 1):
            for b in range(g):
                val = 4 * pad_p(a + b + 1)
                if a == 0:
                    val = val - 4 * pad_r(b)
                setpair(Q0 + a, R0 + b, val)
        return pi

    def bracket(self, grad_a, grad_b, coords) -> Rational:
        pi = self.matrix(coords)
        acc = rat(0)
        for i, ga in enumerate(grad_a):
            if ga == 0:
                continue
            row = pi[i]
            for j, gb in enumerate(grad_b):
                if gb != 0:
                    acc += ga * row[j] * gb
        return acc


def _grad(f, coords) -> tuple:
    """(value, gradient) of a scalar function of the coordinates."""
    n = len(coords)
    args = [Dual.variable(x, i, n) for i, x in enumerate(coords)]
    out = f(args)
    if not isinstance(out, Dual):
        out = Dual.constant(out, n)
    return out.val, list(out.grad)


def eval_P(z):
    z = rat(z)

    def f(c):
        g = (len(c) - 1) // 3
        acc = z ** (g + 1)
        for j in range(g):
            acc = acc + c[j] * z**j
        return acc

    return f


def eval_Q(z):
    z = rat(z)

    def f(c):
        g = (len(c) - 1) // 3
        acc = c[g] * 0
        for j in range(g + 1):
            acc = acc + c[g + j] * z**j
        return acc

    return f


def eval_R(z):
    z = rat(z)

    def f(c):
        g = (len(c) - 1) // 3
        acc = z**g
        for j in range(g):
            acc = acc + c[2 * g + 1 + j] * z**j
        return acc

    return f


def eval_F(z):
    pz, qz, rz = eval_P(z), eval_Q(z), eval_R(z)

    def f(c):
        return pz(c) * pz(c) + qz(c) * rz(c)

    return f


def eval_c(j: int):
    """Coefficient of zeta^j in F = P^2 + QR as a function of coordinates."""

    def f(c):
        g = (len(c) - 1) // 3
        p = Poly(list(c[:g]) + [c[0] * 0, c[0] * 0 + 1])
        q = Poly(list(c[g : 2 * g + 1]))
        r = Poly(list(c[2 * g + 1 :]) + [c[0] * 0 + 1])
        F = p * p + q * r
        return F.coeff(j)

    return f


def eval_d0():
    def f(c):
        g = (len(c) - 1) // 3
        return -c[2 * g] / 4

    return f


def bracket_eval(a, b, point: LaxPoint) -> Rational:
    """{a, b}(point) for scalar functions a, b of the coordinate vector."""
    coords = point.coords()
    _, ga = _grad(a, coords)
    _, gb = _grad(b, coords)
    return PoissonTensor(point.genus).bracket(ga, gb, coords)


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------


def antisymmetry_ok(point: LaxPoint) -> bool:
    pi = PoissonTensor(point.genus).matrix(point.coords())
    n = len(pi)
    return all(pi[i][j] == -pi[j][i] for i in range(n) for j in range(n))


def jacobi_ok(point: LaxPoint) -> bool:
    """Pointwise Jacobi identity; the bracket is affine so the gradients of
    its entries are constant and one dual evaluation per entry suffices."""
    tensor = PoissonTensor(point.genus)
    coords = point.coords()
    n = len(coords)
    args = [Dual.variable(x, i, n) for i, x in enumerate(coords)]
    pid = tensor.matrix(args)
    grad = [[list(pid[i][j].grad) for j in range(n)] for i in range(n)]
    pi = tensor.matrix(coords)
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


def casimir_check(point: LaxPoint) -> VerifyReport:
    """{c_j, every coordinate} = 0 for j = g .. 2g+1."""
    g = point.genus
    tensor = PoissonTensor(g)
    coords = point.coords()
    pi = tensor.matrix(coords)
    names = point.coordinate_names()
    rep = VerifyReport(f"casimirs(genus={g})")
    for j in range(g, 2 * g + 2):
        _, grad = _grad(eval_c(j), coords)
        for i in range(len(coords)):
            val = rat(0)
            for m in range(len(coords)):
                val += pi[i][m] * grad[m]
            rep.check(val == 0, f"{{c_{j}, {names[i]}}} = {rat_str(val)} != 0")
    return rep


def canonical_pairs_check(point: LaxPoint, roots) -> VerifyReport:
    """{y_i, x_j} = 2 delta_ij, {x,x} = {y,y} = 0 where R factors rationally.

    roots are the (distinct, rational) roots of R; the gradients of the
    spectral coordinates come from implicit differentiation of R(x_i) = 0.
    """
    g = point.genus
    if sorted(roots) != sorted({rat(r) for r in roots}) or len(roots) != g:
        raise InputError("need g distinct rational roots of R")
    if Poly.from_roots(roots) != point.R:
        raise InputError("roots do not factor R")
    tensor = PoissonTensor(g)
    coords = point.coords()
    rp = point.R.derivative()
    pp = point.P.derivative()
    rep = VerifyReport(f"canonical-pairs(genus={g})")
    dim = 3 * g + 1
    gx, gy = [], []
    for x in roots:
        x = rat(x)
        rpx = rp(x)
        if rpx == 0:
            raise InputError("R has a repeated root; canonical coordinates degenerate")
        grad_x = [rat(0)] * dim
        for b in range(g):
            grad_x[2 * g + 1 + b] = -(x**b) / rpx
        grad_y = [rat(0)] * dim
        for a in range(g):
            grad_y[a] = x**a
        ppx = pp(x)
        for b in range(g):
            grad_y[2 * g + 1 + b] = -ppx * x**b / rpx
        gx.append(grad_x)
        gy.append(grad_y)
    for i in range(g):
        for j in range(g):
            bxx = tensor.bracket(gx[i], gx[j], coords)
            byy = tensor.bracket(gy[i], gy[j], coords)
            byx = tensor.bracket(gy[i], gx[j], coords)
            rep.check(bxx == 0, f"{{x_{i}, x_{j}}} = {rat_str(bxx)} != 0")
            rep.check(byy == 0, f"{{y_{i}, y_{j}}} = {rat_str(byy)} != 0")
            want = rat(2) if i == j else rat(0)
            rep.check(byx == want, f"{{y_{i}, x_{j}}} = {rat_str(byx)} != {rat_str(want)}")
    return rep


def hamiltonian_involution(point: LaxPoint) -> VerifyReport:
    """{H_j, H_k} = 0 for the g Hamiltonians H_j = c_j, j = 0..g-1."""
    g = point.genus
    tensor = PoissonTensor(g)
    coords = point.coords()
    grads = [_grad(eval_c(j), coords)[1] for j in range(g)]
    rep = VerifyReport(f"involution(genus={g})")
    for j in range(g):
        for k in range(j + 1, g):
            val = tensor.bracket(grads[j], grads[k], coords)
            rep.check(val == 0, f"{{H_{j}, H_{k}}} = {rat_str(val)} != 0")
    # the full generating check at spectral arguments
    for z, w in ((rat(2), rat(3)), (rat(-1, 2), rat(5, 3))):
        val = bracket_eval(eval_F(z), eval_F(w), point)
        rep.check(val == 0, f"{{F({rat_str(z)}), F({rat_str(w)})}} = {rat_str(val)} != 0")
    return rep


def flow_degree_report(point: LaxPoint) -> VerifyReport:
    """Degrees in the second argument of {P,F}, {Q,F}, {R,F} are all <= g-1.

    The bracket with F(w) is a polynomial of degree <= 2g+1 in w whose
    coefficients are {., c_j}; computing those directly gives the exact
    degree, no interpolation error possible.  Degree <= g-1 is what makes
    c_g..c_{2g+1} central; the {P,F} bracket generically attains g-1.
    """
    g = point.genus
    rep = VerifyReport(f"flow-degrees(genus={g})")
    z = rat(7, 3)
    for name, fn in (("P", eval_P(z)), ("Q", eval_Q(z)), ("R", eval_R(z))):
        coeffs = [bracket_eval(fn, eval_c(j), point) for j in range(2 * g + 2)]
        deg = -1
        for j, c in enumerate(coeffs):
            if c != 0:
                deg = j
        rep.check(deg <= g - 1, f"{{{name}(z), F(w)}} has degree {deg} > {g - 1} in w")
        rep.note(f"deg_w {{{name}(z), F(w)}} = {deg}")
    return rep


# ---------------------------------------------------------------------------
# The discrete map
# ---------------------------------------------------------------------------


def _bt_step_poly(g, P: Poly, Q: Poly, R: Poly):
    qg = Q.coeff(g)
    val = qg.val if isinstance(qg, Dual) else qg
    if val == 0:
        raise SingularOrbitError("bt step: d_0 = 0")
    d0 = qg / (-4)
    v0 = Q.coeff(g - 1) / (4 * d0)
    one = qg * 0 + 1
    Rt = Q.scale(one / (-4 * d0))
    lin = Poly([v0, one])
    Pt = -P + (lin * Rt).scale(2)
    Qt = (lin * (Pt - P)).scale(-2) - R.scale(4 * d0)
    return Pt, Qt, Rt


def bt_step(point: LaxPoint) -> LaxPoint:
    """One step of the discrete map; exact and isospectral by construction."""
    Pt, Qt, Rt = _bt_step_poly(point.genus, point.P, point.Q, point.R)
    nxt = LaxPoint(point.genus, Pt, Qt, Rt)
    return nxt


def bt_orbit(point: LaxPoint, steps: int) -> list:
    out = [point]
    for _ in range(steps):
        point = bt_step(point)
        out.append(point)
    return out


def isospectrality_ok(point: LaxPoint, steps: int = 1) -> bool:
    F = point.spectral_poly()
    for _ in range(steps):
        point = bt_step(point)
        if point.spectral_poly() != F:
            return False
    return True


def bt_jacobian(point: LaxPoint) -> list:
    """Exact Jacobian of the map in the coefficient coordinates."""
    g = point.genus
    coords = point.coords()
    n = len(coords)
    args = [Dual.variable(x, i, n) for i, x in enumerate(coords)]
    P = Poly(list(args[:g]) + [args[0] * 0, args[0] * 0 + 1])
    Q = Poly(list(args[g : 2 * g + 1]))
    R = Poly(list(args[2 * g + 1 :]) + [args[0] * 0 + 1])
    Pt, Qt, Rt = _bt_step_poly(g, P, Q, R)

    def dual_coeff(poly, k):
        c = poly.coeff(k)
        return c if isinstance(c, Dual) else Dual.constant(c, n)

    rows = []
    for j in range(g):
        rows.append(list(dual_coeff(Pt, j).grad))
    for j in range(g + 1):
        rows.append(list(dual_coeff(Qt, j).grad))
    for j in range(g):
        rows.append(list(dual_coeff(Rt, j).grad))
    return rows


def poisson_map_check(point: LaxPoint) -> VerifyReport:
    """J Pi(x) J^T = Pi(map(x)) entrywise, J the exact Jacobian of bt_step."""
    g = point.genus
    tensor = PoissonTensor(g)
    rep = VerifyReport(f"poisson-map(genus={g})")
    jac = bt_jacobian(point)
    pi = tensor.matrix(point.coords())
    nxt = bt_step(point)
    pi2 = tensor.matrix(nxt.coords())
    n = len(pi)
    for i in range(n):
        jp = [sum(jac[i][a] * pi[a][b] for a in range(n)) for b in range(n)]
        for j in range(n):
            val = sum(jp[b] * jac[j][b] for b in range(n))
            rep.check(val == pi2[i][j], f"pushforward mismatch at entry ({i},{j})")
    return rep


def shifted_bracket_check(point: LaxPoint, z, w) -> VerifyReport:
    """{P(z), R~(w)} = 2 (R~(z) - R~(w))/(z - w) and its partner with P~."""
    z, w = rat(z), rat(w)
    if z == w:
        raise InputError("need distinct spectral arguments")
    g = point.genus
    coords = point.coords()
    n = len(coords)
    rep = VerifyReport("shifted-brackets")
    args = [Dual.variable(x, i, n) for i, x in enumerate(coords)]
    P = Poly(list(args[:g]) + [args[0] * 0, args[0] * 0 + 1])
    Q = Poly(list(args[g : 2 * g + 1]))
    R = Poly(list(args[2 * g + 1 :]) + [args[0] * 0 + 1])
    Pt, Qt, Rt = _bt_step_poly(g, P, Q, R)
    tensor = PoissonTensor(g)
    rtz = Rt(Dual.constant(z, n))
    rtw = Rt(Dual.constant(w, n))
    pz = P(Dual.constant(z, n))
    ptz = Pt(Dual.constant(z, n))
    val = tensor.bracket(list(pz.grad), list(rtw.grad), coords)
    want = 2 * (rtz.val - rtw.val) / (z - w)
    rep.check(val == want, f"{{P(z), R~(w)}} = {rat_str(val)} != {rat_str(want)}")
    val2 = tensor.bracket(list(ptz.grad), list(rtw.grad), coords)
    rep.check(val2 == -want, f"{{P~(z), R~(w)}} = {rat_str(val2)} != {rat_str(-want)}")
    return rep


def lax_form_check(point: LaxPoint, z, w) -> VerifyReport:
    """Entrywise {L(z), F(w)} equals the commutator with the generator matrix."""
    z, w = rat(z), rat(w)
    if z == w:
        raise InputError("lax_form_check needs distinct spectral values")
    rep = VerifyReport("lax-form")
    Pz = bracket_eval(eval_P(z), eval_F(w), point)
    Qz = bracket_eval(eval_Q(z), eval_F(w), point)
    Rz = bracket_eval(eval_R(z), eval_F(w), point)
    # generator matrix [[a, b], [c, -a]] at (z, w)
    pw, qw, rw = point.P(w), point.Q(w), point.R(w)
    fac = rat(2) / (z - w)
    a = fac * (pw + (z - w) * rw)
    b = fac * rw
    c = fac * qw
    lp, lq, lr = point.P(z), point.Q(z), point.R(z)
    # commutator with L(z) = [[lp, lr], [lq, -lp]]
    comm11 = b * lq - c * lr
    comm12 = 2 * (a * lr - b * lp)
    comm21 = 2 * (c * lp - a * lq)
    rep.check(Pz == comm11, f"{{P(z), F(w)}} = {rat_str(Pz)} != commutator {rat_str(comm11)}")
    rep.check(Rz == comm12, f"{{R(z), F(w)}} mismatch: {rat_str(Rz)} != {rat_str(comm12)}")
    rep.check(Qz == comm21, f"{{Q(z), F(w)}} mismatch: {rat_str(Qz)} != {rat_str(comm21)}")
    # the displayed diagonal closed form
    want = 2 * (point.Q(z) * rw - qw * point.R(z)) / (z - w)
    rep.check(Pz == want, "{P(z), F(w)} != 2(Q(z)R(w) - Q(w)R(z))/(z-w)")
    return rep


def lax_stream(point: LaxPoint, steps: int) -> list:
    """(d_0, v_0) read off successive map iterates."""
    out = []
    for _ in range(steps + 1):
        out.append((point.d0, point.v0))
        point = bt_step(point)
    return out

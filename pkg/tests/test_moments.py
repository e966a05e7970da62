"""Moment recursions, Hankel tables, orthogonal polynomials, tau gluing."""

import random

import pytest

from hypercf import bundled, cfrac, moments, samples
from hypercf.determinants import DodgsonDegenerate, det_bareiss, det_dodgson
from hypercf.errors import InputError
from hypercf.exactnum import rat
from hypercf.upoly import Poly

EX3_MOMENTS = [1, 0, 2, 1, 6, 7, 24, 41, 115, 236, 613, 1380]
EX4_MOMENTS = [1, 0, 2, 0, 7, 2, 31, 21, 159, 168, 900, 1246, 5455, 9040, 34731, 65328]
EX5_MOMENTS = ["-5/8", "-1/16", "-45/32", "-25/64", "-757/128", "-801/256",
               "-14749/512", "-24361/1024", "-316037/2048", "-714865/4096"]


def test_forward_moments_worked_examples():
    curve, seed = bundled.example3()
    mom = moments.moments_forward(curve, seed, 11)
    assert [str(v) for v in mom.values] == [str(x) for x in EX3_MOMENTS]
    curve, seed = bundled.example4()
    mom = moments.moments_forward(curve, seed, 15)
    assert [str(v) for v in mom.values] == [str(x) for x in EX4_MOMENTS]


def test_backward_moments_worked_example():
    curve, seed = bundled.example4()
    mom = moments.moments_backward(curve, seed, 9)
    assert [str(v) for v in mom.values] == EX5_MOMENTS
    # stated initial condition s0 = -u_{-1}/2
    st = cfrac.validate_seed(curve, seed)
    um1 = st.Qprev.coeff(2)
    assert mom.values[0] == -um1 / 2


def test_moments_match_series_oracle():
    rng = random.Random(3)
    cases = [bundled.example3(), bundled.example4(),
             samples.nonsingular_curve_seed(3, rng, 4, 3)]
    for curve, seed in cases:
        mom = moments.moments_forward(curve, seed, 9)
        assert list(mom.values) == moments.moments_from_series(curve, seed, 9, "forward")
        momb = moments.moments_backward(curve, seed, 9)
        assert list(momb.values) == moments.moments_from_series(curve, seed, 9, "backward")


def _elliprec(s0, s1, d1, f, v0, count):
    # the displayed genus-1 recursion, used as an oracle for the general code
    s = [rat(s0), rat(s1)]
    for j in range(2, count + 1):
        acc = -(2 * d1 + f) * s[j - 2]
        conv2 = sum((s[i] * s[j - 2 - i] for i in range(j - 1)), rat(0))
        conv3 = sum((s[i] * s[j - 3 - i] for i in range(j - 2)), rat(0))
        s.append(acc + (d1 / s0) * (conv2 - v0 * conv3))
    return s


def _g2rec(s0, s1, s2, d1, e1, f, g, v0, w0, count):
    # the displayed genus-2 recursion
    s = [rat(s0), rat(s1), rat(s2)]
    for j in range(3, count + 1):
        acc = -(2 * d1 + f) * s[j - 2] - (2 * d1 * e1 + g) * s[j - 3]
        conv2 = sum((s[i] * s[j - 2 - i] for i in range(j - 1)), rat(0))
        conv3 = sum((s[i] * s[j - 3 - i] for i in range(j - 2)), rat(0))
        conv4 = sum((s[i] * s[j - 4 - i] for i in range(j - 3)), rat(0))
        s.append(acc + (d1 / s0) * (conv2 - v0 * conv3 + w0 * conv4))
    return s


def test_general_recursion_specializes_to_genus1_oracle():
    curve, seed = bundled.example3()
    st0 = cfrac.validate_seed(curve, seed)
    st1 = cfrac.step_forward(st0)
    ln0, ln1 = st0.line(), st1.line()
    s0 = ln1.u / 2
    oracle = _elliprec(s0, -s0 * ln1.v, ln1.d, rat(-3), ln0.v, 12)
    mom = moments.moments_forward(curve, seed, 12)
    assert list(mom.values) == oracle


def test_general_recursion_specializes_to_genus2_oracle():
    curve, seed = bundled.example4()
    st0 = cfrac.validate_seed(curve, seed)
    st1 = cfrac.step_forward(st0)
    ln0, ln1 = st0.line(), st1.line()
    s0 = ln1.u / 2
    d1 = ln1.d
    e1 = (st1.P - curve.A).coeff(0) / (2 * d1)
    w1 = st1.Q.coeff(0) / ln1.u
    w0 = st0.Q.coeff(0) / ln0.u
    oracle = _g2rec(s0, -s0 * ln1.v, s0 * (w1 - d1 - rat(-5)), d1, e1,
                    rat(-5), rat(-1), ln0.v, w0, 14)
    mom = moments.moments_forward(curve, seed, 14)
    assert list(mom.values) == oracle


def test_backward_recursion_specializes_to_genus2_oracle():
    curve, seed = bundled.example4()
    st0 = cfrac.validate_seed(curve, seed)
    stm1 = cfrac.step_backward(st0)
    ln0, lnm1 = st0.line(), stm1.line()
    um1 = lnm1.u
    s0 = -um1 / 2
    d0 = ln0.d
    e0 = (st0.P - curve.A).coeff(0) / (2 * d0)
    wm1 = stm1.Q.coeff(0) / um1
    w0 = st0.Q.coeff(0) / ln0.u
    # same displayed recursion with the backward data (indices one lower)
    oracle = _g2rec(s0, -s0 * lnm1.v, s0 * (wm1 - d0 - rat(-5)), d0, e0,
                    rat(-5), rat(-1), ln0.v, w0, 9)
    mom = moments.moments_backward(curve, seed, 9)
    assert list(mom.values) == oracle


def test_hankel_tables_worked_examples():
    curve, seed = bundled.example3()
    t = moments.hankel_table(moments.moments_forward(curve, seed, 29), 14)
    assert [str(x) for x in t.delta[:6]] == ["1", "1", "2", "3", "7", "23"]
    curve, seed = bundled.example4()
    t = moments.hankel_table(moments.moments_forward(curve, seed, 16), 8)
    assert [str(x) for x in t.delta] == [
        "1", "1", "2", "6", "31", "319", "5810", "147719", "8526736"]
    assert [str(x) for x in t.delta_star] == [
        "0", "0", "0", "4", "16", "200", "6987", "161401", "11022617"]
    tb = moments.hankel_table(moments.moments_backward(curve, seed, 13), 6)
    assert [str(x) for x in tb.delta] == [
        "1", "-5/8", "7/8", "-303/128", "4091/512", "-63805/1024", "3496637/4096"]


def test_hankel_insufficient_moments():
    curve, seed = bundled.example3()
    mom = moments.moments_forward(curve, seed, 5)
    with pytest.raises(InputError, match="s_0..s_11"):
        moments.hankel_table(mom, 6)


def test_bareiss_against_dodgson_random():
    rng = random.Random(12)
    for n in range(1, 6):
        for _ in range(8):
            rows = [[rat(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
                    for _ in range(n)]
            try:
                alt = det_dodgson(rows)
            except DodgsonDegenerate:
                continue
            assert det_bareiss(rows) == alt


def test_bareiss_singular_and_pivoting():
    rows = [[rat(0), rat(1)], [rat(1), rat(0)]]
    assert det_bareiss(rows) == -1
    rows = [[rat(1), rat(2)], [rat(2), rat(4)]]
    assert det_bareiss(rows) == 0


def test_theorem2_worked_examples():
    assert moments.verify_theorem2(*bundled.example3(), 10).ok
    assert moments.verify_theorem2(*bundled.example4(), 8).ok


def test_theorem3_worked_examples():
    assert moments.verify_theorem3(*bundled.example4(), 7).ok
    assert moments.verify_theorem3(*bundled.example3(), 6).ok


def test_theorems_on_random_genus3_curve():
    rng = random.Random(2024)
    curve, seed = samples.nonsingular_curve_seed(3, rng, 8, 6, integer=True)
    assert moments.verify_theorem2(curve, seed, 6).ok
    assert moments.verify_theorem3(curve, seed, 5).ok


def test_backward_d_values_match_hankel_ratios():
    # ten backward steps against the negative-index determinant formulas
    curve, seed = bundled.example4()
    st = cfrac.validate_seed(curve, seed)
    lns = cfrac.lines_backward(st, 10)
    mom = moments.moments_backward(curve, seed, 23)
    t = moments.hankel_table(mom, 11)
    d = {ln.n: ln.d for ln in lns}
    for n in range(2, 12):
        assert d[1 - n] == t.delta[n] * t.delta[n - 2] / t.delta[n - 1] ** 2


def test_orthopoly_base_cases():
    curve, seed = bundled.example3()
    mom = moments.moments_forward(curve, seed, 12)
    assert moments.orthopoly_q(mom, 0) == Poly.one()
    q1 = moments.orthopoly_q(mom, 1)
    assert q1 == Poly([-mom[1] / mom[0], 1])  # X + v_1 = X - s_1/s_0


def test_orthopoly_determinant_vs_recurrence():
    for curve, seed in (bundled.example3(), bundled.example4()):
        mom = moments.moments_forward(curve, seed, 14)
        for n in range(6):
            a = moments.orthopoly_q(mom, n, "determinant")
            b = moments.orthopoly_q(mom, n, "recurrence")
            assert a == b
            assert a.is_monic() or n == 0


def test_orthogonality():
    curve, seed = bundled.example3()
    mom = moments.moments_forward(curve, seed, 21)
    s = mom.values
    for n in range(1, 6):
        qn = moments.orthopoly_q(mom, n)
        for k in range(n):
            assert moments.moment_pair(s, qn, Poly.x(k)) == 0
        hn = moments.moment_pair(s, qn, qn)
        assert hn == moments.orthonormality_constant(mom, n)
    q2 = moments.orthopoly_q(mom, 2)
    q1 = moments.orthopoly_q(mom, 1)
    assert moments.moment_pair(s, q2, q2) == rat(3, 2)  # Delta_3/Delta_2
    assert moments.moment_pair(s, q2, q1) == 0


def test_glue_tau_two_sided_window():
    curve, seed = bundled.example4()
    mf = moments.moments_forward(curve, seed, 19)
    mb = moments.moments_backward(curve, seed, 19)
    ts = moments.glue_tau(moments.hankel_table(mf, 8), moments.hankel_table(mb, 8), curve, seed)
    assert [str(x) for x in ts.window(-8, 7)] == [
        "562196701", "6993274", "127610", "4091", "303", "28", "5", "2",
        "1", "1", "2", "6", "31", "319", "5810", "147719",
    ]
    assert moments.verify_tau_stream(ts, curve, seed).ok


def test_glue_reproduces_full_somos4_orbit():
    curve, seed = bundled.example3()
    mf = moments.moments_forward(curve, seed, 25)
    mb = moments.moments_backward(curve, seed, 25)
    ts = moments.glue_tau(moments.hankel_table(mf, 12), moments.hankel_table(mb, 12), curve, seed)
    assert [str(t) for t in ts.window(-2, 11)] == [
        "1", "1", "1", "1", "2", "3", "7", "23", "59", "314", "1529", "8209", "83313", "620297"]
    assert moments.verify_tau_stream(ts, curve, seed).ok


def test_gauge_invariance():
    curve, seed = bundled.example4()
    mf = moments.moments_forward(curve, seed, 15)
    mb = moments.moments_backward(curve, seed, 15)
    ts = moments.glue_tau(moments.hankel_table(mf, 6), moments.hankel_table(mb, 6), curve, seed)
    rng = random.Random(9)
    for _ in range(5):
        a = rat(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        b = rat(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        c = rat(rng.randint(-5, 5), rng.randint(1, 4))
        ts2 = moments.apply_gauge(ts, a, b, c)
        for n in range(ts.lo + 2, ts.hi + 1):
            assert ts2.d(n) == ts.d(n)
        for n in range(ts.lo + 1, ts.hi + 1):
            assert ts2.v(n) == ts.v(n)


def test_appendix_identities_on_examples():
    curve, seed = bundled.example3()
    mom = moments.moments_forward(curve, seed, 13)
    rep = moments.appendix_identities(mom, 6)
    assert rep.ok and rep.checks == 15


def test_appendix_identities_on_random_hankel_data():
    rng = random.Random(6)
    for _ in range(6):
        raw = [rat(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(13)]
        assert moments.appendix_identities(raw, 6).ok


def test_theorem2_edge_conventions():
    # v_1 = Delta*_0/Delta_0 - Delta*_1/Delta_1 with Delta_0 = 1, Delta*_0 = 0
    curve, seed = bundled.example3()
    st1 = cfrac.step_forward(cfrac.validate_seed(curve, seed))
    mom = moments.moments_forward(curve, seed, 3)
    s = mom.values
    assert moments.delta_n(s, 0) == 1
    assert moments.delta_star_n(s, 0) == 0
    assert st1.line().v == rat(0) - moments.delta_star_n(s, 1) / moments.delta_n(s, 1)

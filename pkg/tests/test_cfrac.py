"""The continued-fraction engine against the worked examples."""

import random

import pytest

from hypercf import bundled, cfrac, samples
from hypercf.errors import InputError, SingularExpansionError
from hypercf.exactnum import rat
from hypercf.upoly import Poly


def test_example3_seed_accepted():
    curve, seed = bundled.example3()
    st = cfrac.validate_seed(curve, seed)
    ln = st.line()
    assert (ln.u, ln.d, ln.v) == (rat(-2), rat(1), rat(-1))


def test_example4_seed_accepted():
    curve, seed = bundled.example4()
    st = cfrac.validate_seed(curve, seed)
    ln = st.line()
    assert (ln.u, ln.d, ln.v) == (rat(-4), rat(5, 4), rat(-1, 2))
    # e_0 = 3/5 sits in P0 - A
    assert (seed.P0 - curve.A).coeff(0) / (2 * ln.d) == rat(3, 5)


def test_seed_rejection_diagnostics():
    curve, _ = bundled.example3()
    # divisibility failure: P0 = A with Q0 = X + 1 does not divide 4R
    with pytest.raises(InputError, match="divide"):
        cfrac.validate_seed(curve, cfrac.SeedLine(curve.A, Poly([1, 1])))
    # wrong degree for P0 - A
    with pytest.raises(InputError, match="degree"):
        cfrac.validate_seed(curve, cfrac.SeedLine(curve.A + Poly([0, 1]), Poly([1, 1])))
    # u_0 = 0 surfaces as a degree complaint for Q0
    with pytest.raises(InputError, match="Q0"):
        cfrac.validate_seed(curve, cfrac.SeedLine(curve.A + Poly([2]), Poly([1])))


def test_step_forward_example3():
    curve, seed = bundled.example3()
    st = cfrac.step_forward(cfrac.validate_seed(curve, seed))
    ln = st.line()
    assert (ln.d, ln.v) == (rat(1), rat(0))


def test_step_backward_example4_matches_published_values():
    curve, seed = bundled.example4()
    st = cfrac.validate_seed(curve, seed)
    back = cfrac.step_backward(st)
    ln = back.line()
    assert ln.n == -1
    assert ln.v == rat(-1, 10)
    # w_{-1} = -3/2 is the constant coefficient of Q_{-1}/u_{-1}
    assert ln.Q.coeff(0) / ln.u == rat(-3, 2)


def test_forward_backward_roundtrip_bit_exact():
    for curve, seed in (bundled.example3(), bundled.example4()):
        st = cfrac.validate_seed(curve, seed)
        fwd = cfrac.step_forward(st)
        assert cfrac.step_backward(fwd) == st
        back = cfrac.step_backward(st)
        assert cfrac.step_forward(back) == st


def test_line_invariants_hold_along_expansions():
    rng = random.Random(23)
    cases = [bundled.example3(), bundled.example4()]
    cases.append(samples.nonsingular_curve_seed(3, rng, 6, 4))
    for curve, seed in cases:
        st = cfrac.validate_seed(curve, seed)
        for _ in range(6):
            st = cfrac.step_forward(st)
            cfrac.check_line_invariants(st)
        st = cfrac.validate_seed(curve, seed)
        for _ in range(4):
            st = cfrac.step_backward(st)
            cfrac.check_line_invariants(st)


def test_partial_quotients_match_series_floor():
    for curve, seed in (bundled.example3(), bundled.example4()):
        st = cfrac.validate_seed(curve, seed)
        for _ in range(10):
            ln = st.line()
            a = Poly([2 * ln.v / ln.u, 2 / ln.u])
            assert cfrac.partial_quotient_from_series(st) == a
            st = cfrac.step_forward(st)


def test_degenerate_curve_terminates():
    # R = 0, P0 = A: the expansion must terminate with a singular error
    A = Poly([-3, 0, 1])
    curve = cfrac.CurveSpec(1, A, Poly.zero())
    seed = cfrac.SeedLine(A, Poly([1, 2]))
    st = cfrac.validate_seed(curve, seed)
    assert st.line().d == 0  # d_0 = 0 right away
    with pytest.raises(SingularExpansionError) as err:
        for _ in range(5):
            st = cfrac.step_forward(st)
    assert err.value.index <= 3


def test_expand_G_example3():
    curve, seed = bundled.example3()
    st = cfrac.validate_seed(curve, seed)
    tail = cfrac.expand_G(st, 5)
    assert [str(c) for c in tail.coeffs] == ["1", "0", "2", "1", "6"]


def test_expand_G_example4_both_branches():
    curve, seed = bundled.example4()
    st = cfrac.validate_seed(curve, seed)
    fwd = cfrac.expand_G(st, 6)
    assert [str(c) for c in fwd.coeffs] == ["1", "0", "2", "0", "7", "2"]
    bwd = cfrac.expand_G(st, 6, branch=-1)
    assert [str(c) for c in bwd.coeffs] == [
        "-5/8", "-1/16", "-45/32", "-25/64", "-757/128", "-801/256",
    ]


def test_expansion_quadratic_identity():
    # P1 G + Q0 G^2 / 2 = Q1 / 2 to truncation order
    from hypercf.upoly import Series

    for curve, seed in (bundled.example3(), bundled.example4()):
        st0 = cfrac.validate_seed(curve, seed)
        st1 = cfrac.step_forward(st0)
        order = 10
        G = cfrac.expand_G(st0, order).to_series()
        lhs = Series.from_poly(st1.P) * G + Series.from_poly(seed.Q0) * G * G.scale(rat(1, 2))
        rhs = Series.from_poly(st1.Q).scale(rat(1, 2))
        for k in range(-curve.genus, order - curve.genus - 1):
            assert lhs.coeff_t(k) == rhs.coeff_t(k)


def test_backward_quadratic_identity():
    # P0 Gdag - Q0 Gdag^2 / 2 = -Q_{-1} / 2 to truncation order
    from hypercf.upoly import Series

    curve, seed = bundled.example4()
    st0 = cfrac.validate_seed(curve, seed)
    order = 10
    G = cfrac.expand_G(st0, order, branch=-1).to_series()
    lhs = Series.from_poly(seed.P0) * G - Series.from_poly(seed.Q0) * G * G.scale(rat(1, 2))
    rhs = Series.from_poly(st0.Qprev).scale(rat(-1, 2))
    for k in range(-curve.genus, order - curve.genus - 1):
        assert lhs.coeff_t(k) == rhs.coeff_t(k)


def test_serialization_roundtrip():
    curve, seed = bundled.example4()
    doc = cfrac.curve_seed_to_json(curve, seed)
    curve2, seed2 = cfrac.curve_seed_from_json(doc)
    assert curve2 == curve and seed2.P0 == seed.P0 and seed2.Q0 == seed.Q0
    with pytest.raises(InputError):
        cfrac.curve_seed_from_json({"genus": 1})


def test_random_curves_validate_and_step(subtests=None):
    rng = random.Random(31)
    for g in (1, 2, 3, 4):
        curve, seed = samples.random_curve_seed(g, rng)
        st = cfrac.validate_seed(curve, seed)
        nxt = cfrac.step_forward(st)
        assert cfrac.step_backward(nxt) == st

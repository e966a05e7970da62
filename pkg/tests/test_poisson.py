"""The bracket on Lax matrices: structure, invariants, and the discrete map."""

import random

import pytest

from hypercf import bundled, cfrac, maps, poisson, samples
from hypercf.errors import InputError
from hypercf.exactnum import rat
from hypercf.upoly import Poly


def test_polynomial_value_brackets():
    rng = random.Random(40)
    for g in (1, 2, 3):
        pt = samples.random_lax_point(g, rng)
        z, w = rat(2), rat(-3, 2)
        # {P(z), P(w)} = 0 = {R(z), R(w)}
        assert poisson.bracket_eval(poisson.eval_P(z), poisson.eval_P(w), pt) == 0
        assert poisson.bracket_eval(poisson.eval_R(z), poisson.eval_R(w), pt) == 0
        # {P(z), Q(w)} = 2 (Q(z) - Q(w))/(z - w)
        got = poisson.bracket_eval(poisson.eval_P(z), poisson.eval_Q(w), pt)
        assert got == 2 * (pt.Q(z) - pt.Q(w)) / (z - w)
        # {P(z), R(w)} = -2 (R(z) - R(w))/(z - w)
        got = poisson.bracket_eval(poisson.eval_P(z), poisson.eval_R(w), pt)
        assert got == -2 * (pt.R(z) - pt.R(w)) / (z - w)
        # {Q(z), Q(w)} = -4 (Q(z) - Q(w))
        got = poisson.bracket_eval(poisson.eval_Q(z), poisson.eval_Q(w), pt)
        assert got == -4 * (pt.Q(z) - pt.Q(w))
        # {Q(z), R(w)} = 4 (P(z) - P(w))/(z - w) - 4 R(w)
        got = poisson.bracket_eval(poisson.eval_Q(z), poisson.eval_R(w), pt)
        assert got == 4 * (pt.P(z) - pt.P(w)) / (z - w) - 4 * pt.R(w)


def test_d0_brackets():
    rng = random.Random(41)
    for g in (1, 2):
        pt = samples.random_lax_point(g, rng)
        w = rat(5, 3)
        d0fn = poisson.eval_d0()
        assert poisson.bracket_eval(d0fn, poisson.eval_P(w), pt) == 0
        assert poisson.bracket_eval(d0fn, poisson.eval_Q(w), pt) == -4 * pt.d0
        assert poisson.bracket_eval(d0fn, poisson.eval_R(w), pt) == -1


def test_antisymmetry_and_jacobi():
    rng = random.Random(42)
    for g in (1, 2, 3):
        for _ in range(4):
            pt = samples.random_lax_point(g, rng)
            assert poisson.antisymmetry_ok(pt)
            assert poisson.jacobi_ok(pt)


def test_casimirs():
    rng = random.Random(43)
    for g in (1, 2, 3):
        pt = samples.random_lax_point(g, rng)
        rep = poisson.casimir_check(pt)
        assert rep.ok, rep.failures[:2]


def test_canonical_pairs_on_factored_r():
    rng = random.Random(44)
    for g in (1, 2, 3):
        pt, roots = samples.random_lax_point(g, rng, factored_r=True)
        rep = poisson.canonical_pairs_check(pt, roots)
        assert rep.ok, rep.failures[:2]
    with pytest.raises(InputError):
        poisson.canonical_pairs_check(pt, [rat(999)] * g)


def test_involution_and_F_brackets():
    rng = random.Random(45)
    for g in (1, 2, 3):
        pt = samples.random_lax_point(g, rng)
        assert poisson.hamiltonian_involution(pt).ok


def test_involution_at_worked_example_lax_point():
    pt = poisson.lax_from_seed(*bundled.example4())
    rep = poisson.hamiltonian_involution(pt)
    assert rep.ok
    # {H_0, H_1} = 0 is one of the checked pairs for g = 2
    assert rep.checks >= 3


def test_genus1_single_hamiltonian_vs_casimirs():
    pt = poisson.lax_from_seed(*bundled.example3())
    rep = poisson.casimir_check(pt)
    assert rep.ok
    # involution is vacuous for one Hamiltonian; F-level brackets still checked
    rep = poisson.hamiltonian_involution(pt)
    assert rep.ok
    # {H_0, c_j} = 0 explicitly for every Casimir coefficient
    for j in (1, 2, 3):
        assert poisson.bracket_eval(poisson.eval_c(0), poisson.eval_c(j), pt) == 0


def test_flow_degrees():
    rng = random.Random(46)
    for g in (1, 2, 3):
        pt = samples.random_lax_point(g, rng)
        rep = poisson.flow_degree_report(pt)
        assert rep.ok, rep.failures


def test_casimir_slice_bracket_is_h0_term_only():
    # for g=1 the only non-Casimir coefficient is c_0, so {P(z), F(w)} is
    # independent of w and equals {P(z), c_0}
    pt = poisson.lax_from_seed(*bundled.example3())
    z = rat(4, 3)
    vals = [
        poisson.bracket_eval(poisson.eval_P(z), poisson.eval_F(w), pt)
        for w in (rat(1), rat(7), rat(-2, 5))
    ]
    c0 = poisson.bracket_eval(poisson.eval_P(z), poisson.eval_c(0), pt)
    assert vals[0] == vals[1] == vals[2] == c0


def test_bt_step_matches_genus1_map_stream():
    curve, seed = bundled.example3()
    pt = poisson.lax_from_seed(curve, seed)
    stream = poisson.lax_stream(pt, 8)
    p, s = maps.g1_from_seed(curve, seed)
    for d, v in stream:
        assert (d, v) == (s.d, s.v)
        s = maps.g1_step(p, s)


def test_bt_step_matches_genus2_cfrac_stream():
    curve, seed = bundled.example4()
    pt = poisson.lax_from_seed(curve, seed)
    st = cfrac.validate_seed(curve, seed)
    lns = [st.line()] + cfrac.lines(st, 6)
    for (d, v), ln in zip(poisson.lax_stream(pt, 6), lns):
        assert (d, v) == (ln.d, ln.v)


def test_bt_isospectrality():
    rng = random.Random(47)
    for g in (1, 2, 3):
        pt = samples.random_lax_point(g, rng)
        assert poisson.isospectrality_ok(pt, 10 if g < 3 else 4)


def test_bt_preserves_hamiltonian_values():
    pt = poisson.lax_from_seed(*bundled.example4())
    f0 = pt.spectral_poly()
    for _ in range(5):
        pt = poisson.bt_step(pt)
        assert pt.spectral_poly() == f0


def test_bt_fixed_point_structure():
    # if Q = -4 d0 R then R~ = R
    rng = random.Random(48)
    for g in (1, 2):
        pt, _ = samples.random_lax_point(g, rng, factored_r=True)
        d0 = rat(3, 2)
        q = pt.R.scale(-4 * d0)
        pt2 = poisson.LaxPoint(g, pt.P, q, pt.R)
        assert poisson.bt_step(pt2).R == pt.R


def test_poisson_map_pushforward():
    rng = random.Random(49)
    for g in (1, 2):
        for _ in range(4):
            pt = samples.random_lax_point(g, rng)
            rep = poisson.poisson_map_check(pt)
            assert rep.ok, rep.failures[:1]


def test_shifted_brackets():
    rng = random.Random(50)
    for g in (1, 2):
        pt = samples.random_lax_point(g, rng)
        rep = poisson.shifted_bracket_check(pt, rat(1, 2), rat(3))
        assert rep.ok, rep.failures


def test_lax_form_identity():
    rng = random.Random(51)
    for g in (1, 2, 3):
        pt = samples.random_lax_point(g, rng)
        for z, w in ((rat(2), rat(3)), (rat(-1, 2), rat(5, 3))):
            rep = poisson.lax_form_check(pt, z, w)
            assert rep.ok, rep.failures[:1]


def test_lax_point_validation():
    with pytest.raises(InputError):
        poisson.LaxPoint(1, Poly([1, 1, 1]), Poly([1, 1]), Poly([0, 1]))  # P has X^g term
    with pytest.raises(InputError):
        poisson.LaxPoint(1, Poly([1, 0, 1]), Poly([1]), Poly([0, 1]))  # deg Q < g
    with pytest.raises(InputError):
        poisson.LaxPoint(1, Poly([1, 0, 1]), Poly([1, 1]), Poly([0, 2]))  # R not monic


def test_coords_roundtrip():
    rng = random.Random(52)
    for g in (1, 2, 3):
        pt = samples.random_lax_point(g, rng)
        pt2 = poisson.LaxPoint.from_coords(g, pt.coords())
        assert (pt2.P, pt2.Q, pt2.R) == (pt.P, pt.Q, pt.R)

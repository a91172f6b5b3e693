"""Weighted convolution seminorms, polar membership, and decompositions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualitylab import (
    Constant,
    ExpLength,
    GroupSpec,
    MinWeight,
    Scale,
    SubmultiplicativeSeminorm,
    WeightFunction,
    WeightedVector,
    absconv_decompose,
    bipolar_pairing_audit,
    convolve,
    domination_check,
    dual_norm_extremizer,
    explore_ball,
    leq,
    make_group,
    pairing,
    project,
    random_rectangle_member,
    random_table,
    rectangle_bipolar_contains,
    rectangle_polar_contains,
    seminorm,
    seminorm_support_check,
    standard_generators,
    summability_check,
    weighted_property_trials,
)

Z = make_group(GroupSpec.free_abelian(1))
REPORT = explore_ball(Z, standard_generators(Z), WeightFunction.enumerated(2), radius=14)
F = ExpLength(REPORT)
HALF = [x for x, v in REPORT.lengths.items() if 2 * v <= 14]


def vec(items):
    return WeightedVector.from_items(Z, items)


def test_from_items_merges_and_drops_zeros():
    v = vec([((1,), 1 + 0j), ((1,), 2.0), ((0,), 0.0)])
    assert v.coeffs == {(1,): 3 + 0j}
    assert v.support == ((1,),)
    w = vec([((2,), 1.0)]) + vec([((2,), -1.0)])
    assert w.coeffs == {}
    assert WeightedVector.zero(Z).support == ()
    assert vec([((1,), 2.0)]).scaled(0).coeffs == {}


def test_group_mismatch_rejected():
    other = make_group(GroupSpec.free_abelian(1))
    with pytest.raises(ValueError):
        vec([((0,), 1.0)]) + WeightedVector.basis(other, (0,), 1.0)
    with pytest.raises(ValueError):
        convolve(vec([((0,), 1.0)]), WeightedVector.basis(other, (0,), 1.0))


def test_seminorm_hand_value():
    alpha = vec([((0,), 1.0), ((1,), -2.0)])
    assert abs(seminorm(alpha, F) - (1 + 2 * math.e)) < 1e-12
    assert seminorm(WeightedVector.zero(Z), F) == 0.0
    assert abs(seminorm(alpha, Constant(1)) - 3.0) < 1e-12


def test_convolution_matches_numpy_polynomial_product():
    # vectors on nonnegative integers are polynomials; convolution multiplies them
    rng = np.random.default_rng(11)
    for _ in range(25):
        a = rng.normal(size=4) + 1j * rng.normal(size=4)
        b = rng.normal(size=3) + 1j * rng.normal(size=3)
        va = vec([((i,), c) for i, c in enumerate(a)])
        vb = vec([((i,), c) for i, c in enumerate(b)])
        out = convolve(va, vb)
        expect = np.convolve(a, b)
        for i, c in enumerate(expect):
            assert abs(out.coeffs.get((i,), 0j) - c) < 1e-12


def test_convolution_shifts_by_group_law():
    delta = WeightedVector.basis(Z, (-3,), 2.0)
    alpha = vec([((1,), 1.0), ((5,), -1.0)])
    out = convolve(delta, alpha)
    assert out.coeffs == {(-2,): 2 + 0j, (2,): -2 + 0j}


def test_projection_keeps_exact_coefficients():
    alpha = vec([((0,), 1.0), ((1,), 2.0), ((2,), 3.0)])
    out = project(alpha, [(1,), (2,), (9,)])
    assert out.coeffs == {(1,): 2 + 0j, (2,): 3 + 0j}
    assert seminorm(out, F) <= seminorm(alpha, F)
    assert project(alpha, []).coeffs == {}


@settings(max_examples=200, deadline=None, derandomize=True)
@given(
    st.lists(
        st.tuples(
            st.integers(-7, 7),
            st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        ),
        max_size=8,
    ),
    st.sets(st.integers(-7, 7)),
)
def test_projection_contracts_property(items, keep):
    alpha = vec([((x,), c) for x, c in items])
    out = project(alpha, [(x,) for x in keep])
    assert leq(seminorm(out, F), seminorm(alpha, F))


def test_extremizer_attains_the_seminorm():
    rng = np.random.default_rng(7)
    for _ in range(100):
        size = int(rng.integers(1, 6))
        picks = rng.choice(len(HALF), size=size, replace=False)
        alpha = vec(
            [(HALF[int(i)], complex(*rng.normal(size=2))) for i in picks]
        )
        if not alpha.coeffs:
            continue
        u = dual_norm_extremizer(alpha, F)
        target = seminorm(alpha, F)
        assert abs(pairing(alpha, u) - target) <= 1e-12 * max(target, 1.0)
        # and u really lies in the rectangle
        assert rectangle_bipolar_contains(u, F)


def test_polar_membership_boundary():
    assert rectangle_polar_contains(WeightedVector.basis(Z, (0,), 1.0), F)
    assert not rectangle_polar_contains(WeightedVector.basis(Z, (1,), 1.0), F)
    assert rectangle_polar_contains(WeightedVector.basis(Z, (1,), math.exp(-1)), F)
    assert rectangle_bipolar_contains({(0,): 1.0, (1,): math.e}, F)
    assert not rectangle_bipolar_contains({(1,): math.e * 1.01}, F)


def test_bipolar_audit_agreement_and_guard():
    inside = {(0,): 0.5, (1,): math.e * 0.9}
    members = [WeightedVector.basis(Z, (0,), 0.7)]
    pointwise, paired, worst = bipolar_pairing_audit(inside, F, Z, members)
    assert pointwise and paired and worst <= 1.0 + 1e-12
    outside = {(1,): math.e * 1.5}
    pointwise, paired, worst = bipolar_pairing_audit(outside, F, Z, members)
    assert not pointwise and not paired and worst > 1.0
    bad_member = WeightedVector.basis(Z, (1,), 1.0)  # seminorm e > 1
    with pytest.raises(ValueError):
        bipolar_pairing_audit(inside, F, Z, [bad_member])


def test_random_rectangle_member_stays_inside():
    rng = np.random.default_rng(3)
    for _ in range(50):
        table = random_rectangle_member(F, HALF, rng)
        assert rectangle_bipolar_contains(table, F)


def g_weight():
    return Scale(3, Constant(1))


def test_decomposition_feasible_hand_case():
    g = g_weight()
    # support (0,) goes to the f side (f = 1 <= g = 3); (-2,) to the g side
    alpha = vec([((0,), 0.25), ((-2,), 0.1j)])
    dec = absconv_decompose(alpha, F, g)
    assert dec.feasible
    a, b = 0.25, 0.3
    assert abs(dec.min_norm - (a + b)) < 1e-12
    assert abs(dec.lam - 0.5 * (1 + a - b)) < 1e-12
    assert dec.verify(alpha, F, g)
    recombined = dec.beta.scaled(dec.lam) + dec.gamma.scaled(1 - dec.lam)
    assert recombined.max_abs_diff(alpha) <= 1e-12
    assert leq(seminorm(dec.beta, F), 1.0)
    assert leq(seminorm(dec.gamma, g), 1.0)


def test_decomposition_edges_and_infeasible():
    g = g_weight()
    # everything on the g side: lam collapses toward 1/2 - b/2
    alpha = vec([((-1,), 0.05)])  # f = e^2 > g = 3
    dec = absconv_decompose(alpha, F, g)
    assert dec.feasible and dec.verify(alpha, F, g)
    assert dec.beta.coeffs == {}
    # exact boundary: a = 1, b = 0 forces lam = 1
    boundary = vec([((0,), 1.0)])
    dec = absconv_decompose(boundary, F, g)
    assert dec.feasible and dec.lam == 1.0 and dec.gamma.coeffs == {}
    assert dec.verify(boundary, F, g)
    # far outside: the min-seminorm certificate says no split can work
    heavy = vec([((0,), 5.0)])
    dec = absconv_decompose(heavy, F, g)
    assert not dec.feasible
    assert dec.min_norm > 1.0
    assert dec.verify(heavy, F, g)
    assert abs(dec.min_norm - seminorm(heavy, MinWeight(F, g))) < 1e-12


def test_min_weight_values():
    g = g_weight()
    m = MinWeight(F, g)
    assert m.value((0,)) == 1.0  # f wins at the identity
    assert m.value((-1,)) == 3.0  # g wins once exp(length) passes 3
    assert m.group is Z


def test_max_seminorm_hand_values_and_validation():
    x, y = (0,), (1,)
    q = SubmultiplicativeSeminorm(support=(x, y), weights={x: 2.0, y: 4.0}, scale=1.5)
    assert q({x: 1.0, y: 0.5}) == 1.5 * max(2.0, 2.0)
    assert q({y: -2j}) == 1.5 * 8.0
    assert q.indicator_value(x) == 3.0
    assert q.indicator_value((9,)) == 0.0
    with pytest.raises(ValueError):
        SubmultiplicativeSeminorm(support=(), weights={}, scale=1.0)
    with pytest.raises(ValueError):
        SubmultiplicativeSeminorm(support=(x,), weights={x: 0.5})
    with pytest.raises(ValueError):
        SubmultiplicativeSeminorm(support=(x,), weights={x: 2.0}, scale=0.9)
    with pytest.raises(ValueError):
        SubmultiplicativeSeminorm(support=(x, y), weights={x: 2.0})


def test_seminorm_check_suite_passes():
    rng = np.random.default_rng(42)
    support = tuple(sorted(HALF))[:6]
    q = SubmultiplicativeSeminorm(
        support=support,
        weights={x: float(w) for x, w in zip(support, (1.0, 2.5, 1.5, 3.0, 1.0, 2.0))},
        scale=2.0,
    )
    out = seminorm_support_check(q, rng, trials=200)
    assert [c.name for c in out] == ["indicator-floor", "idempotent-consistency", "submultiplicative"]
    assert all(c.passed for c in out)
    dom = domination_check(q, rng, trials=200)
    assert dom.name == "domination" and dom.passed
    summ = summability_check(q, F, REPORT)
    assert summ.name == "summability" and summ.passed


def test_random_table_shape():
    rng = np.random.default_rng(0)
    t = random_table([(0,), (1,)], rng)
    assert set(t) == {(0,), (1,)}
    assert all(isinstance(v, complex) for v in t.values())


def test_property_trials_all_pass():
    g = Scale(3, Constant(1))
    out = weighted_property_trials(F, g, HALF, trials=200, seed=5)
    assert [c.name for c in out] == [
        "convolution-submultiplicative",
        "projection-contraction",
        "extremizer-optimal",
        "bipolar-agreement",
        "decomposition-sound",
    ]
    for c in out:
        assert c.passed, c
    # the extremizer identity is tight to near machine precision
    assert out[2].residual <= 1e-12

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suprafix import (Compose, Linear, Power, RationalDecay, SqrtShift,
                      TableTheta, check_monotone, check_subdiagonal,
                      check_theta1, check_theta2, iterate_theta,
                      load_table_theta, theta_from_ref)


def rational_closed_form(t, n):
    """Independent oracle: theta^n(t) = t / (1 + n t), provable by induction."""
    return t / (1.0 + n * t)


# ---------------------------------------------------------------------------
# iteration

def test_iterate_linear_geometric():
    assert iterate_theta(Linear(0.5), 1.0, 10) == 2.0 ** -10


def test_iterate_identity_at_zero_steps():
    for theta in (Linear(0.5), RationalDecay(), SqrtShift(), Power(0.5)):
        assert iterate_theta(theta, 3.25, 0) == 3.25


def test_iterate_rational_decay_matches_closed_form():
    assert iterate_theta(RationalDecay(), 1.0, 9) == pytest.approx(0.1, rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-3, 100.0), st.integers(0, 2000))
def test_rational_closed_form_agreement(t, n):
    got = iterate_theta(RationalDecay(), t, n)
    want = rational_closed_form(t, n)
    assert got == pytest.approx(want, rel=1e-12)


def test_rational_closed_form_agreement_deep():
    for t in (0.01, 1.0, 100.0):
        got = iterate_theta(RationalDecay(), t, 10_000)
        assert got == pytest.approx(rational_closed_form(t, 10_000), rel=1e-12)


def test_iterate_rejects_bad_arguments():
    with pytest.raises(ValueError):
        iterate_theta(Linear(0.5), -1.0, 3)
    with pytest.raises(ValueError):
        iterate_theta(Linear(0.5), 1.0, -1)


# ---------------------------------------------------------------------------
# pointwise checks

def test_monotone_builtins():
    for theta in (Linear(0.5), RationalDecay(), SqrtShift(), Power(2.0)):
        assert check_monotone(theta).ok


def test_monotone_catches_decreasing_table():
    theta = TableTheta([0.0, 1.0, 2.0], [0.0, 0.9, 0.5])
    rep = check_monotone(theta, grid=[0.0, 1.0, 2.0])
    assert not rep.ok
    assert (rep.witness.t1, rep.witness.t2) == (1.0, 2.0)


def test_subdiagonal_builtins():
    assert check_subdiagonal(Linear(0.5)).ok
    assert check_subdiagonal(SqrtShift()).ok  # sqrt(1+t) < 1+t for t > 0
    assert check_subdiagonal(RationalDecay()).ok


def test_subdiagonal_power_half_fails_at_quarter():
    rep = check_subdiagonal(Power(0.5), grid=[0.25])
    assert not rep.ok
    assert rep.witness.t1 == 0.25
    assert rep.witness.v1 == 0.5  # sqrt(0.25) = 0.5 > 0.25
    assert not check_subdiagonal(Power(0.5)).ok


def test_subdiagonal_identity_fails():
    assert not check_subdiagonal(Linear(1.0)).ok


# ---------------------------------------------------------------------------
# class-1 verdicts

def test_theta1_linear_holds():
    v = check_theta1(Linear(0.5), cap=100, eps=1e-9)
    assert v.verdict == "holds"


def test_theta1_rational_decay_holds_with_raised_cap():
    v = check_theta1(RationalDecay(), cap=10 ** 6, eps=1e-5)
    assert v.verdict == "holds"
    probe = next(p for p in v.probes if p.t == 1.0)
    # theta^N(1) = 1/(1+N) crosses 1e-5 just below N = 1e5.
    assert probe.final == pytest.approx(1e-5, rel=1e-2)


def test_theta1_rational_decay_inconclusive_at_default_cap():
    v = check_theta1(RationalDecay())
    assert v.verdict == "inconclusive"


def test_theta1_power_half_fails_both_ways():
    v = check_theta1(Power(0.5), probes=(4.0,))
    assert v.verdict == "fails"
    assert "stall" in v.probes[0].detail
    assert v.probes[0].value == pytest.approx(1.0, rel=1e-6)  # fixed point of sqrt
    v = check_theta1(Power(0.5), probes=(0.25,))
    assert v.verdict == "fails"
    assert "non-decreasing" in v.probes[0].detail


def test_theta1_identity_fails_immediately():
    v = check_theta1(Linear(1.0), probes=(1.0,))
    assert v.verdict == "fails"


def test_theta1_expanding_map_fails():
    v = check_theta1(Linear(2.0), probes=(1.0,))
    assert v.verdict == "fails"
    assert "non-decreasing" in v.probes[0].detail


# ---------------------------------------------------------------------------
# class-2 verdicts

def test_theta2_linear_sum_is_two():
    v = check_theta2(Linear(0.5))
    assert v.verdict == "holds"
    probe = next(p for p in v.probes if p.t == 1.0)
    assert probe.value == pytest.approx(2.0, abs=1e-9)


def test_theta2_rational_decay_fails():
    v = check_theta2(RationalDecay())
    assert v.verdict == "fails"
    probe = next(p for p in v.probes if p.status == "fails")
    assert "harmonic" in probe.detail


def test_theta2_sqrt_shift_holds():
    v = check_theta2(SqrtShift())
    assert v.verdict == "holds"


def test_theta2_stalling_terms_fail():
    v = check_theta2(Power(0.5), probes=(4.0,))
    assert v.verdict == "fails"


def test_theta2_budget_detector():
    v = check_theta2(Linear(2.0), probes=(1.0,), cap=50, budget=10.0)
    assert v.verdict == "fails"
    assert "budget" in v.probes[0].detail


def test_theta2_identity_fails_via_stall():
    v = check_theta2(Linear(1.0), probes=(1.0,), cap=50)
    assert v.verdict == "fails"
    assert "stall" in v.probes[0].detail


def test_theta2_slow_geometric_is_inconclusive_not_fails():
    # 0.9999^n converges, but certifying it needs ~3e5 steps; at the default
    # cap the honest answer is inconclusive (and never a false "fails").
    v = check_theta2(Linear(0.9999), probes=(1.0,), cap=10_000)
    assert v.verdict == "inconclusive"
    v = check_theta2(Linear(0.9999), probes=(1.0,), cap=400_000)
    assert v.verdict == "holds"


def test_theta2_subset_of_theta1():
    # Summable iterates vanish: a holds from the summability check must come
    # with a holds from the vanishing check on the same probes.
    for theta in (Linear(0.5), Linear(0.9), RationalDecay(), SqrtShift(),
                  Power(0.5), Power(2.0), Compose(SqrtShift(), Linear(0.5))):
        t2 = check_theta2(theta)
        if t2.verdict == "holds":
            assert check_theta1(theta).verdict == "holds", theta.label


def test_monotone_iterates_property():
    # Monotone + subdiagonal => the orbit of iterates is non-increasing.
    for theta in (Linear(0.7), RationalDecay(), SqrtShift()):
        assert check_monotone(theta).ok and check_subdiagonal(theta).ok
        t = 7.0
        prev = t
        for _ in range(200):
            cur = theta(prev)
            assert cur <= prev
            prev = cur


# ---------------------------------------------------------------------------
# table thetas and references

def test_table_theta_interpolation_and_extrapolation():
    theta = TableTheta([1.0, 2.0, 4.0], [0.5, 1.0, 2.0])
    assert theta(1.5) == 0.75
    assert theta(0.0) == 0.5   # constant extrapolation below the grid
    assert theta(10.0) == 2.0  # and above


def test_table_theta_validation():
    with pytest.raises(ValueError):
        TableTheta([1.0, 1.0], [0.5, 0.6])
    with pytest.raises(ValueError):
        TableTheta([1.0, 2.0], [0.5, -0.6])


def test_load_table_theta(tmp_path):
    path = tmp_path / "theta.txt"
    path.write_text("0.0 0.0\n1.0 0.5\n2.0 0.9\n")
    theta = load_table_theta(path)
    assert theta(0.5) == 0.25
    assert check_monotone(theta, grid=[0.0, 0.5, 1.0, 2.0]).ok


def test_theta_from_ref():
    assert isinstance(theta_from_ref("linear:0.5"), Linear)
    assert theta_from_ref("linear:0.5").k == 0.5
    assert isinstance(theta_from_ref("rational_decay"), RationalDecay)
    assert isinstance(theta_from_ref("power:2"), Power)
    with pytest.raises(ValueError):
        theta_from_ref("mystery")
    with pytest.raises(ValueError):
        theta_from_ref("linear")
    with pytest.raises(ValueError):
        theta_from_ref("linear:-1")


def test_compose_scalar_matches_apply():
    theta = Compose(SqrtShift(), Linear(0.5))
    ts = np.linspace(0.0, 10.0, 50)
    vec = theta.apply(ts)
    assert all(theta(t) == pytest.approx(v, rel=1e-15) for t, v in zip(ts, vec))


def test_sqrt_shift_expm1_identity():
    # sqrt(1 + (e^a - 1)) - 1 = e^(a/2) - 1, the certificate identity.
    theta = SqrtShift()
    for a in (0.1, 1.0, 7.3):
        assert theta(math.expm1(a)) == pytest.approx(math.expm1(a / 2.0), rel=1e-14)

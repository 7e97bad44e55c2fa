import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gleason.blaschke import (
    BlaschkeConfig,
    blaschke_eval,
    closed_form_xi,
    curve_point,
    curve_w,
    dyadic_config,
    lower_tail_sum,
    make_config,
    peak_function,
    peak_point,
    solve_xi,
    test_fJN as f_jn,
    test_fN as f_n,
    threshold_index,
)
from gleason.disc import mobius
from gleason.errors import DomainError, SolverError, UnsupportedPredicateError
from gleason.seqspace import BallSeq, Constant, IndexSet, sup_norm
from strategies import disc_points

# products to 40 digits with mpmath.nprod
PROD_CANONICAL = 0.5930564541422117086900750802155561738159  # sigma = rho_gap = 1/4, j >= 1
PROD_DYADIC_FROM_4 = 0.8801160993115502362785515334986080916995  # prod_{j >= 4} (1 - 2^-j)
PROD_DYADIC = 0.2887880950866024212788997219292307800889  # prod_{j >= 1} (1 - 2^-j)

CFG = make_config()
DYADIC = dyadic_config(0.5, 1.0, 0.0)
ORIGIN = BallSeq.finite([])
EVENS = IndexSet(start=1, period=2, residues={1})


def test_config_invariants():
    # beyond k ~ 50 the values round to 1 in double precision
    for k in range(1, 45):
        assert 0 < CFG.r(k) < CFG.s(k) < 1
        assert CFG.r(k) < CFG.r(k + 1)
        assert CFG.r(k) / CFG.s(k) < 1
        assert CFG.functional(k, CFG.point(k)) == CFG.r(k)
        assert CFG.functional(k + 1, CFG.point(k)) == 0
    assert DYADIC.r(3) == 1 - 2**-3


def test_tail_sum_closed_form():
    for cfg in (CFG, DYADIC, make_config(0.5, 0.1)):
        for n in (0, 1, 5, 12):
            direct = math.fsum(1 - cfg.r(j) for j in range(n + 1, n + 80))
            assert cfg.tail_gap_sum(n) == pytest.approx(direct, rel=1e-12, abs=1e-18)


def test_invalid_configs():
    with pytest.raises(DomainError):
        make_config(1.5, 0.1)
    with pytest.raises(DomainError):
        dyadic_config(0.5, 0.5, 0.0)  # r_k = s_k
    with pytest.raises(DomainError):
        dyadic_config(0.5, 0.6, 0.5)  # r_1 >= s_1


def test_config_json_round_trip():
    for cfg in (CFG, DYADIC):
        assert BlaschkeConfig.from_json(cfg.to_json()) == cfg
    assert set(CFG.to_json()) == {"sigma", "rho_gap", "count_hint", "disc_radius"}


def test_product_at_origin_matches_oracle():
    enc = blaschke_eval(CFG, ORIGIN, 1e-12)
    assert enc.contains(PROD_CANONICAL)
    assert abs(enc.center - PROD_CANONICAL) <= 1e-10
    assert blaschke_eval(DYADIC, ORIGIN, 1e-12).contains(PROD_DYADIC)


def test_f3_dyadic():
    enc = f_n(DYADIC, 3, ORIGIN, 1e-12)
    assert enc.contains(PROD_DYADIC_FROM_4)
    assert enc.center == pytest.approx(0.8801, abs=5e-5)


def test_zero_factor_is_exact():
    for k in (1, 2, 7, 15):
        enc = blaschke_eval(CFG, CFG.point(k))
        assert enc.center == 0 and enc.radius == 0
    for n in (1, 5, 10):
        for k in range(n + 1, n + 10):
            assert f_n(CFG, n, CFG.point(k)).center == 0


def test_f_n_at_origin_increases_to_one():
    values = [f_n(CFG, n, ORIGIN).center.real for n in range(1, 31)]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert 1 - values[-1] < 1e-8


def test_truncation_bound_covers_doubling():
    z = BallSeq((0.5, -0.3j, 0.8), Constant(0.6 + 0.2j))
    loose = blaschke_eval(CFG, z, 1e-6)
    tight = blaschke_eval(CFG, z, 1e-14)
    assert tight.terms > loose.terms
    assert abs(loose.center - tight.center) <= loose.radius


@settings(max_examples=300)
@given(st.lists(disc_points(0.9), min_size=1, max_size=12), disc_points(0.9))
def test_product_modulus_below_one(prefix, tail):
    z = BallSeq(tuple(prefix), Constant(tail))
    assert sup_norm(z).hi <= 0.9 + 1e-15
    enc = blaschke_eval(CFG, z, 1e-12)
    assert enc.abs_hi < 1.0


def test_product_needs_interior_point():
    with pytest.raises(DomainError):
        blaschke_eval(CFG, BallSeq.finite([1.0]))
    with pytest.raises(DomainError):
        blaschke_eval(CFG, BallSeq.radial(1, 1, 1))


def test_curve_w():
    for k in (1, 3, 8):
        assert curve_w(CFG, k, 0).entry(k) == pytest.approx(CFG.s(k), abs=1e-15)
        assert curve_w(CFG, k, CFG.r(k) * 0).entry(k) == pytest.approx(CFG.s(k))
    lam = 0.2 - 0.1j
    w = curve_w(CFG, 4, lam)
    expected = CFG.s(4) / CFG.r(4) * abs(mobius(CFG.r(4), lam))
    assert abs(w.entry(4)) == pytest.approx(expected, abs=1e-15)
    assert sup_norm(w).hi < 1
    with pytest.raises(DomainError):
        curve_w(CFG, 2, CFG.disc_radius)


def test_curve_at_its_radius_parameter_vanishes():
    # w_k(r_k) = 0 needs r_k inside the parameter disc, true for a large sigma and a small gap
    cfg = make_config(0.9, 0.01)
    assert cfg.r(1) < cfg.disc_radius
    assert curve_w(cfg, 1, cfg.r(1)).entry(1) == 0


@settings(max_examples=50)
@given(st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi))
def test_curves_stay_in_ball(frac, angle):
    lam = cmath.rect(frac * CFG.disc_radius * 0.999, angle)
    for k in (1, 2, 5, 20):
        assert sup_norm(curve_w(CFG, k, lam)).hi < 1


def test_solve_xi_at_zero():
    assert solve_xi(CFG, 3, 0) == 0
    assert curve_point(CFG, 3, 0) == BallSeq.finite([0, 0, CFG.s(3)])


def test_solve_xi_matches_closed_form_on_grid():
    tol = 1e-10
    radius = CFG.disc_radius / 2
    grid = [cmath.rect(radius * f, t) for f in (0.2, 0.5, 0.8, 0.95) for t in np.linspace(0, 2 * np.pi, 5, endpoint=False)]
    assert len(grid) == 20
    for k in range(1, 11):
        for lam in grid:
            xi = solve_xi(CFG, k, lam, tol)
            assert abs(xi) < CFG.disc_radius
            assert abs(xi - closed_form_xi(CFG, k, lam)) <= 10 * tol
            assert abs(blaschke_eval(CFG, curve_w(CFG, k, xi)).center - lam) <= tol


def test_solve_xi_reports_failure():
    # the dyadic product is below 1/2, so the exact parameter leaves the disc
    lam = DYADIC.disc_radius * 0.45
    with pytest.raises(SolverError) as err:
        solve_xi(DYADIC, 2, lam)
    assert err.value.last_iterate is not None


def test_lower_factor_comparison():
    # exact rational check on the computed r_j and a_j; the margin is far below double resolution
    for cfg in (CFG, DYADIC):
        for j in range(2, 60):
            r, a = Fraction(cfg.r(j)), Fraction(cfg.a(j))
            f = (r - a) / (1 + r * a)
            assert 1 - f < (1 - r) + 2 * a
            assert cfg.lower_factor(j) == pytest.approx(float(f), rel=1e-15)


def test_separation_values():
    n = 10
    for k in range(n + 1, n + 12):
        res = f_jn(CFG, EVENS, n, k)
        if k in EVENS:
            assert res.value.hi == 0
        else:
            exact = math.prod(CFG.r(j) for j in range(n + 1, 200) if j in EVENS)
            assert res.value.contains(exact)
            assert res.value.lo >= res.product_bound
            assert res.certified


def test_separation_certificate_at_threshold():
    eps = 0.1
    k0 = threshold_index(CFG, eps)
    assert 1 - lower_tail_sum(CFG, k0) >= (1 - eps) ** 2
    assert k0 == 0 or 1 - lower_tail_sum(CFG, k0 - 1) < (1 - eps) ** 2
    odd = IndexSet(start=1, period=2, residues={0})
    for k in range(k0 + 1, k0 + 20):
        res = f_jn(CFG, EVENS if k % 2 else odd, k0, k)
        assert res.certified and res.value.lo >= (1 - eps) ** 2
        # the general lower bound is dominated by the exact value
        assert res.value.lo >= res.product_bound


def test_separation_rejects_bad_predicates():
    for bad in (IndexSet.finite([1, 2]), IndexSet.from_index(3), IndexSet(start=1, period=3, residues={0, 1, 2})):
        with pytest.raises(UnsupportedPredicateError):
            f_jn(CFG, bad, 2, 5)


def test_peak_function():
    theta = lambda n: 0.3 * n  # noqa: E731
    a = peak_point(theta)
    at_peak = peak_function(theta, a)
    assert at_peak.contains(2.0)
    assert peak_function(theta, ORIGIN).center == 1
    flipped = peak_function(theta, lambda n: -a(n) if n == 1 else a(n))
    assert flipped.contains(1.0)
    assert flipped.abs_hi < 2


@settings(max_examples=200)
@given(st.lists(disc_points(1.0), min_size=1, max_size=10))
def test_peak_function_below_two_elsewhere(prefix):
    theta = lambda n: 0.3 * n  # noqa: E731
    enc = peak_function(theta, BallSeq.finite(prefix))
    assert enc.abs_hi < 2

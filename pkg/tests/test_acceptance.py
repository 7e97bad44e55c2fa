"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a single PASS/FAIL line in ``RESULTS``; the lines are
printed at the end of the pytest run (see ``conftest.py``) and by running
this file directly.
"""

import cmath
import math
import time

import numpy as np
import pytest

from gleason import metric
from gleason.autom import beta_ell2, operator_norm, phi_operator, phi_seq, rho_via_autom
from gleason.blaschke import (
    blaschke_eval,
    closed_form_xi,
    make_config,
    solve_xi,
    test_fJN as f_jn,
    test_fN as f_n,
    threshold_index,
)
from gleason.disc import (
    ATTAINED,
    NOT_ATTAINED,
    gleason_norm_from_rho,
    mobius,
    mobius_bound,
    rho_disc,
    rho_from_gleason_norm,
)
from gleason.metric import Different, Same, TailCertificate, classify, gleason_norm_seq, rho_seq, same_part, shift_radius
from gleason.seqspace import (
    BallSeq,
    Constant,
    IndexSet,
    Periodic,
    RadialPower,
    project_prefix,
    restrict,
    sup_norm,
)

RESULTS = []

# 40-digit mpmath value of prod_j r_j for the canonical configuration
PROD_CANONICAL = 0.5930564541422117086900750802155561738159


def report(name, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


def rand_disc(rng, size, max_modulus=0.999):
    return rng.uniform(0, max_modulus, size) * np.exp(1j * rng.uniform(-np.pi, np.pi, size))


def test_example_pairs():
    z = BallSeq.radial(1.0, 1.0, 1.0)
    u = BallSeq.radial(1.0, 0.5, 1.0)
    w = BallSeq.radial(1.0, 1.0, 2.0)
    t0 = time.perf_counter()
    v = rho_seq(z, u, tol=1e-9)
    verdict_u = same_part(z, u)
    t_u = time.perf_counter() - t0
    t0 = time.perf_counter()
    v2 = rho_seq(z, w, tol=1e-9)
    verdict_w = same_part(z, w)
    t_w = time.perf_counter() - t0
    ok = (
        v.contains(0.5)
        and v.width <= 1e-9
        and v.status == ATTAINED
        and v.attained_at == 1
        and isinstance(verdict_u, Same)
        and v2.lo == v2.hi == 1.0
        and v2.status == NOT_ATTAINED
        and isinstance(verdict_w, Different)
        and isinstance(verdict_w.witness, TailCertificate)
        and t_u < 1.0
        and t_w < 1.0
    )
    report(
        "half/one example pairs",
        ok,
        f"rho(z,u)=[{v.lo},{v.hi}] at n={v.attained_at}, rho(z,w)=[{v2.lo},{v2.hi}] {v2.status}, "
        f"times {t_u * 1e3:.1f} ms / {t_w * 1e3:.1f} ms",
    )


def test_norm_rho_relation():
    grid = np.linspace(0.0, 1.0, 1000)
    err = max(abs(rho_from_gleason_norm(gleason_norm_from_rho(r)) - r) for r in grid)
    at_four_fifths = abs(gleason_norm_from_rho(0.8) - 1.0)
    report(
        "rho <-> norm relation",
        err <= 1e-12 and at_four_fifths <= 1e-12,
        f"max round-trip error {err:.2e}, |norm(4/5) - 1| = {at_four_fifths:.2e}",
    )


def _random_sequence(rng):
    kind = rng.integers(0, 4)
    prefix = tuple(rand_disc(rng, rng.integers(0, 6)))
    if kind == 0:
        return BallSeq(prefix + tuple(rand_disc(rng, 5)))
    if kind == 1:
        return BallSeq(prefix, Constant(complex(rand_disc(rng, 1)[0])))
    radial = RadialPower(cmath.exp(1j * rng.uniform(-np.pi, np.pi)), rng.uniform(0.1, 1.0), rng.choice([0.5, 1.0, 2.0]))
    if kind == 2:
        return BallSeq(prefix, radial)
    return BallSeq(prefix, Periodic((Constant(complex(rand_disc(rng, 1)[0])), radial)))


def test_distance_from_origin_is_sup_norm():
    rng = np.random.default_rng(11)
    n_entries = 10**6
    failures = 0
    for _ in range(100):
        z = _random_sequence(rng)
        v = metric.rho_origin(z)
        same_path = v == sup_norm(z)
        mods = np.abs(z.entries(n_entries))
        brute = mods.max()
        # an escaping tail never reaches its supremum; the first 10^6 entries fall short by the last gap
        deficit = 1.0 - mods[-1] if v.status == NOT_ATTAINED else 0.0
        ok = same_path and brute <= v.hi + 1e-15 and v.lo <= brute + deficit + 1e-15
        failures += not ok
    report("distance from origin equals sup norm", failures == 0, f"{failures} failures over 100 sequences x 10^6 entries")


def test_projection_properties():
    rng = np.random.default_rng(21)
    failures = {"restriction": 0, "equal coordinates": 0, "prefix monotone": 0}
    for _ in range(1000):
        d = int(rng.integers(1, 9))
        z = BallSeq.finite(rand_disc(rng, d))
        w = BallSeq.finite(rand_disc(rng, d))
        keep = IndexSet.finite(int(i) for i in rng.choice(np.arange(1, d + 1), size=rng.integers(1, d + 1), replace=False))
        full = gleason_norm_seq(z, w)
        part = gleason_norm_seq(restrict(z, keep), restrict(w, keep))
        failures["restriction"] += not part.hi <= full.hi + 1e-12

        extra = tuple(rand_disc(rng, int(rng.integers(1, 4))))
        z2, w2 = BallSeq(z.prefix + extra), BallSeq(w.prefix + extra)
        failures["equal coordinates"] += not (
            rho_seq(z2, w2) == rho_seq(z, w) and gleason_norm_seq(z2, w2) == gleason_norm_seq(z, w)
        )
    for _ in range(200):
        z, w = _random_sequence(rng), _random_sequence(rng)
        enclosure = gleason_norm_seq(z, w, max_index=10**4)
        prev, ok = 0.0, True
        for n in range(1, max(z.tail_start, w.tail_start) + 40):
            cur = gleason_norm_seq(project_prefix(z, n), project_prefix(w, n)).hi
            ok &= cur >= prev
            prev = cur
        ok &= prev <= enclosure.hi + 1e-12
        failures["prefix monotone"] += not ok
    report("projection properties", not any(failures.values()), ", ".join(f"{k}: {v} failures" for k, v in failures.items()))


def test_mobius_bound():
    rng = np.random.default_rng(31)
    s = rng.uniform(0, 1, 10**4)
    s = s[s < 1]
    alpha = s * rng.uniform(0, 1, s.size) * np.exp(1j * rng.uniform(-np.pi, np.pi, s.size))
    lam = s * rng.uniform(0, 1, s.size) * np.exp(1j * rng.uniform(-np.pi, np.pi, s.size))
    bad = sum(abs(mobius(a, l)) > mobius_bound(r) + 1e-12 for a, l, r in zip(alpha, lam, s))
    report("Mobius modulus bound", bad == 0, f"{bad} violations in {s.size} samples")


def _contraction(rng, d, norm):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return m * (norm / np.linalg.norm(m, 2))


def test_automorphisms():
    rng = np.random.default_rng(41)
    inv_err = cross_err = 0.0
    for _ in range(1000):
        d = int(rng.integers(1, 9))
        a = BallSeq.finite(rand_disc(rng, d, 0.99))
        z = BallSeq.finite(rand_disc(rng, d, 0.99))
        inv_err = max(inv_err, np.max(np.abs(phi_seq(a, phi_seq(a, z)).entries(d) - z.entries(d))))
        cross_err = max(cross_err, abs(rho_via_autom(a, z).hi - rho_seq(a, z).hi))

    beta_fix = beta_inv = beta_zero = 0.0
    for _ in range(1000):
        d = int(rng.integers(1, 17))
        x = rand_disc(rng, d)
        x *= rng.uniform(0, 0.99) / max(np.linalg.norm(x), 1e-300)
        y = rand_disc(rng, d)
        y *= rng.uniform(0, 0.99) / max(np.linalg.norm(y), 1e-300)
        out = beta_ell2(x, y)
        assert np.linalg.norm(out) < 1
        beta_fix = max(beta_fix, np.max(np.abs(beta_ell2(x, x))))
        beta_inv = max(beta_inv, np.max(np.abs(beta_ell2(x, out) - y)))
        beta_zero = max(beta_zero, np.max(np.abs(beta_ell2(x, np.zeros(d)) - x)))

    op_zero = op_inv = 0.0
    op_norm_max = 0.0
    for _ in range(1000):
        d = int(rng.integers(1, 9))
        r = _contraction(rng, d, rng.uniform(0, 0.95))
        t = _contraction(rng, d, rng.uniform(0, 0.95))
        out = phi_operator(r, t)
        op_norm_max = max(op_norm_max, operator_norm(out))
        op_zero = max(op_zero, np.max(np.abs(phi_operator(r, r))))
        op_inv = max(op_inv, np.max(np.abs(phi_operator(-r, out) - t)))

    # scalar oracle: +1/2 on both outer factors gives -0.6 and is not undone by -R;
    # the implemented map gives the disc value -0.8 and is
    literal = math.sqrt(0.75) * (-1.0) / 1.25 * math.sqrt(0.75)
    implemented = phi_operator(0.5, -0.5)[0, 0].real
    oracle_ok = abs(literal + 0.6) < 1e-15 and abs(implemented + 0.8) < 1e-15

    ok = (
        inv_err <= 1e-10
        and cross_err <= 1e-9
        and beta_fix <= 1e-10
        and beta_inv <= 1e-8
        and beta_zero <= 1e-10
        and op_zero <= 1e-8
        and op_inv <= 1e-6
        and op_norm_max < 1
        and oracle_ok
    )
    report(
        "automorphism suite",
        ok,
        f"phi_seq involution {inv_err:.1e}, rho cross-check {cross_err:.1e}, beta(x)={beta_fix:.1e}, "
        f"beta involution {beta_inv:.1e}, beta(0)-x {beta_zero:.1e}, Phi_R(R) {op_zero:.1e}, "
        f"Phi_-R o Phi_R {op_inv:.1e}, max ||Phi_R(T)|| {op_norm_max:.4f}, scalar Phi_0.5(-0.5) = {implemented}",
    )


def test_blaschke_suite():
    cfg = make_config()
    rng = np.random.default_rng(51)
    checks = {}

    max_mod = 0.0
    for _ in range(1000):
        d = int(rng.integers(1, 12))
        z = BallSeq(tuple(rand_disc(rng, d, 0.9)), Constant(complex(rand_disc(rng, 1, 0.9)[0])))
        max_mod = max(max_mod, blaschke_eval(cfg, z, 1e-12).abs_hi)
    checks["|G| < 1"] = max_mod < 1

    g0 = blaschke_eval(cfg, BallSeq.finite([]), 1e-12)
    checks["G(0) oracle"] = abs(g0.center - PROD_CANONICAL) <= 1e-10

    checks["f_N(z_k) = 0"] = all(
        f_n(cfg, n, cfg.point(k)).center == 0 for n in range(1, 16) for k in range(n + 1, n + 8)
    )

    vals = [f_n(cfg, n, BallSeq.finite([])).center.real for n in range(1, 31)]
    checks["f_N(0) increasing"] = all(b >= a for a, b in zip(vals, vals[1:])) and vals[-1] > 1 - 1e-8

    tol = 1e-10
    radius = cfg.disc_radius / 2
    grid = [cmath.rect(radius * f, t) for f in (0.2, 0.5, 0.8, 0.95) for t in np.linspace(0, 2 * np.pi, 5, endpoint=False)]
    xi_err = max(abs(solve_xi(cfg, k, lam, tol) - closed_form_xi(cfg, k, lam)) for k in range(1, 11) for lam in grid)
    checks["xi closed form"] = xi_err <= 10 * tol

    eps = 0.1
    k0 = threshold_index(cfg, eps)
    evens = IndexSet(start=1, period=2, residues={1})
    odds = IndexSet(start=1, period=2, residues={0})
    sep_ok = True
    for k in range(k0 + 1, k0 + 20):
        j_set = odds if k in evens else evens
        res = f_jn(cfg, j_set, k0, k, eps)
        sep_ok &= res.certified and res.value.lo >= (1 - eps) ** 2 and res.value.lo >= res.product_bound
    factorwise = all(cfg.r(j) >= cfg.lower_factor(j) for j in range(1, 200))
    checks["(1-eps)^2 certificate"] = sep_ok and factorwise

    report(
        "Blaschke suite",
        all(checks.values()),
        ", ".join(f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items())
        + f" (max |G| {max_mod:.4f}, |G(0) - oracle| {abs(g0.center - PROD_CANONICAL):.1e}, xi error {xi_err:.1e}, k0 = {k0})",
    )


def test_shift_radius():
    angles = np.linspace(0, 2 * np.pi, 1000, endpoint=False)
    worst = 0.0
    for b in (0, 0.5, 0.7j):
        r = shift_radius(b, 1e-9)
        worst = max(worst, max(gleason_norm_from_rho(rho_disc(b, b + 0.999 * r * cmath.exp(1j * t))) for t in angles))
    r0 = [shift_radius(0, m) for m in (1e-3, 1e-6, 1e-9, 1e-12)]
    r5 = shift_radius(0.5, 1e-12)
    ok = worst < 1 and abs(r0[-1] - 0.8) < 1e-11 and all(a < b for a, b in zip(r0, r0[1:])) and abs(r5 - 3 / 7) < 1e-11
    report("shift radius", ok, f"max norm on samples {worst:.6f}, r(0) -> {r0[-1]!r}, r(0.5) = {r5!r} (3/7 = {3 / 7!r})")


def test_classify_fixtures():
    fixtures = [
        (BallSeq.finite([]), "(i)"),
        (BallSeq.constant(cmath.exp(1j * math.pi / 4)), "(ii)"),
        (BallSeq((1.0,), Constant(0.5)), "(iii)"),
        (BallSeq.radial(1.0, 1.0, 1.0), "(iv)"),
        (BallSeq((), Periodic((Constant(0.0), RadialPower(1.0, 1.0, 1.0)))), "(v)"),
    ]
    got = [classify(z).label for z, _ in fixtures]
    report("classification fixtures", got == [lab for _, lab in fixtures], f"cases {' '.join(got)}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

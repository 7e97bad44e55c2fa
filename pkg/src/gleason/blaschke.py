"""Infinite Blaschke products along a diagonal sequence in the ball of c0.

The configuration fixes norms ``s_k = 1 - sigma 2^-k``, radii
``r_k = 1 - tau 2^-k + upsilon 4^-k`` and weights ``a_k = 2^-k``.  The
points are ``z_k = s_k e_k`` and the functionals ``L_k = (r_k / s_k) e_k*``,
so every ``L_j(z_k)`` is exactly 0 or ``r_k``.  The product

    G(z) = prod_j (r_j - L_j(z)) / (1 - r_j L_j(z))

then vanishes exactly at the ``z_k`` and its restrictions to index sets give
the separating functions.  Every infinite product is returned as a
truncated value together with a rigorous bound on the discarded tail.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .disc import ComplexEnclosure, CertifiedValue, mobius
from .errors import DomainError, SolverError, UnsupportedPredicateError
from .seqspace import BallSeq, Constant, IndexSet, components, sup_norm

_EPS = sys.float_info.epsilon
# indices past this contribute below double resolution to r_k and s_k
_SATURATION = 60


@dataclass(frozen=True)
class BlaschkeConfig:
    sigma: float
    tau: float
    upsilon: float
    count_hint: int = 64
    rho_gap: float | None = None

    def __post_init__(self):
        if not 0.0 < self.sigma < 1.0:
            raise DomainError(f"sigma must lie in (0, 1), got {self.sigma!r}")
        if not self.tau - self.sigma > self.upsilon / 2.0:
            # r_k < s_k for every k is binding at k = 1
            raise DomainError("need tau - sigma > upsilon / 2 so that r_k < s_k")
        if self.upsilon < 0 or not self.tau > 0.75 * self.upsilon:
            raise DomainError("need upsilon >= 0 and tau > 3 upsilon / 4 so that r_k increases")
        if not self.r(1) > 0.0:
            raise DomainError(f"r_1 = {self.r(1)!r} must be positive")
        if self.count_hint < 1:
            raise DomainError("count_hint must be positive")

    def s(self, k: int) -> float:
        return 1.0 - self.sigma * 2.0**-k

    def r(self, k: int) -> float:
        return 1.0 - self.tau * 2.0**-k + self.upsilon * 4.0**-k

    def a(self, k: int) -> float:
        return 2.0**-k

    def tail_gap_sum(self, n: int) -> float:
        """Closed form of ``sum_{j > n} (1 - r_j)``."""
        return self.tau * 2.0**-n - self.upsilon * 4.0**-n / 3.0

    def point(self, k: int) -> BallSeq:
        """``z_k = s_k e_k``."""
        return BallSeq.finite([0.0] * (k - 1) + [self.s(k)])

    def functional(self, j: int, z) -> complex:
        """``L_j(z) = r_j z_j / s_j``; at ``z_k`` this is exactly ``r_k``."""
        zj = z.entry(j) if isinstance(z, BallSeq) else complex(z)
        return self.r(j) * (zj / self.s(j))

    def factor(self, j: int, lj: complex) -> complex:
        r = self.r(j)
        return (r - lj) / (1.0 - r * lj)

    def lower_factor(self, j: int) -> float:
        """``(r_j - a_j) / (1 + r_j a_j)``, a lower bound for a factor whose ``|L_j|`` is below ``a_j``."""
        r, a = self.r(j), self.a(j)
        return (r - a) / (1.0 + r * a)

    @property
    def disc_radius(self) -> float:
        """Radius of a disc of parameters on which every curve ``w_k`` stays in the ball.

        ``|w_k(lam)| < 1`` iff ``rho(lam, r_k) < r_k / s_k``, which holds
        for ``|lam| < r_k (1 - s_k) / (s_k - r_k^2)``; the infimum over
        ``k`` is shrunk by 10%.
        """
        sig, tau, ups = self.sigma, self.tau, self.upsilon

        def ratio(k):
            # numerator and denominator divided by x = 2^-k to avoid cancellation
            x = 2.0**-k
            den = (2.0 * tau - sig) - (tau * tau + 2.0 * ups) * x + 2.0 * tau * ups * x * x - ups * ups * x**3
            return self.r(k) * sig / den

        limit = sig / (2.0 * tau - sig)
        return 0.9 * min(min(ratio(k) for k in range(1, _SATURATION + 1)), limit)

    def to_json(self) -> dict:
        out = {
            "sigma": self.sigma,
            "rho_gap": self.rho_gap,
            "count_hint": self.count_hint,
            "disc_radius": self.disc_radius,
        }
        if self.rho_gap is None:
            out["tau"] = self.tau
            out["upsilon"] = self.upsilon
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "BlaschkeConfig":
        count = int(doc.get("count_hint", 64))
        if doc.get("rho_gap") is not None:
            return make_config(float(doc["sigma"]), float(doc["rho_gap"]), count)
        return dyadic_config(float(doc["sigma"]), float(doc["tau"]), float(doc["upsilon"]), count)


def make_config(sigma: float = 0.25, rho_gap: float = 0.25, count_hint: int = 64) -> BlaschkeConfig:
    """Canonical data ``r_k = s_k (1 - rho_gap 2^-k)``.

    The defaults keep ``prod_j r_j`` above 1/2, which the parameter solve
    needs to stay inside ``disc_radius``.
    """
    if not 0.0 < rho_gap < 1.0:
        raise DomainError(f"rho_gap must lie in (0, 1), got {rho_gap!r}")
    return BlaschkeConfig(sigma, sigma + rho_gap, sigma * rho_gap, count_hint, rho_gap)


def dyadic_config(sigma: float, tau: float, upsilon: float = 0.0, count_hint: int = 64) -> BlaschkeConfig:
    """General radii ``r_k = 1 - tau 2^-k + upsilon 4^-k``; ``(0.5, 1, 0)`` gives ``r_k = 1 - 2^-k``."""
    return BlaschkeConfig(sigma, tau, upsilon, count_hint)


# ---------------------------------------------------------------- products


def _tail_modulus(z: BallSeq) -> float:
    forms = components(z.tail)
    if not all(isinstance(f, Constant) for f in forms):
        raise DomainError("the product needs a point with sup norm < 1")
    return max(abs(f.value) for f in forms)


def _truncation(cfg: BlaschkeConfig, start: int, m: float, tol: float) -> int:
    """Smallest ``n >= start`` with the tail bound ``exp(S) - 1 <= tol / 2``."""
    weight = (1.0 + m) / (1.0 - m)
    n = start
    while math.expm1(weight * cfg.tail_gap_sum(n)) > tol / 2.0:
        n += 1
    return n


def _product(cfg, z: BallSeq, first: int, keep: Callable[[int], bool], tol: float) -> ComplexEnclosure:
    """Enclosure of ``prod_{j >= first, keep(j)}`` of the factors at ``z``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    norm = sup_norm(z, tol)
    if not norm.hi < 1.0:
        raise DomainError(f"point must have sup norm < 1, got {norm.hi!r}")
    m = _tail_modulus(z)
    # the whole explicit prefix is always multiplied out
    n = max(_truncation(cfg, first - 1, m, tol), len(z.prefix), first - 1)
    value = 1.0 + 0j
    for j in range(first, n + 1):
        if keep(j):
            value *= cfg.factor(j, cfg.functional(j, z))
    terms = n - first + 1
    if value == 0:
        return ComplexEnclosure(0j, 0.0, terms)
    s = (1.0 + m) / (1.0 - m) * cfg.tail_gap_sum(n)
    radius = abs(value) * (math.expm1(s) + 4.0 * max(terms, 1) * _EPS)
    return ComplexEnclosure(value, radius, terms)


def blaschke_eval(cfg: BlaschkeConfig, z: BallSeq, tol: float = 1e-12) -> ComplexEnclosure:
    """``G(z)`` with a certified truncation radius."""
    return _product(cfg, z, 1, lambda j: True, tol)


def test_fN(cfg: BlaschkeConfig, n: int, z: BallSeq, tol: float = 1e-12) -> ComplexEnclosure:
    """Tail product ``f_N(z) = prod_{j > N}`` of the factors."""
    if n < 0:
        raise DomainError("N must be nonnegative")
    return _product(cfg, z, n + 1, lambda j: True, tol)


test_fN.__test__ = False


def curve_w(cfg: BlaschkeConfig, k: int, lam) -> BallSeq:
    """``w_k(lam) = mobius(r_k, lam) z_k / r_k``, a curve through ``z_k`` at ``lam = 0``."""
    lam = complex(lam)
    if k < 1:
        raise DomainError("k must be at least 1")
    if not abs(lam) < cfg.disc_radius:
        raise DomainError(f"|lambda| = {abs(lam)!r} must be below disc_radius = {cfg.disc_radius!r}")
    r, s = cfg.r(k), cfg.s(k)
    coord = mobius(r, lam) * (s / r)
    return BallSeq.finite([0.0] * (k - 1) + [coord])


def closed_form_xi(cfg: BlaschkeConfig, k: int, lam) -> complex:
    """``lam / prod_{j != k} r_j``: along ``w_k`` factor ``k`` equals the parameter and the others equal ``r_j``."""
    others = blaschke_eval(cfg, BallSeq.finite([]), 1e-15).center / cfg.r(k)
    return complex(lam) / others


def solve_xi(cfg: BlaschkeConfig, k: int, lam, tol: float = 1e-10, max_iter: int = 200) -> complex:
    """Parameter ``xi`` with ``G(w_k(xi)) = lam``, by damped Newton with central differences."""
    lam = complex(lam)
    radius = cfg.disc_radius
    if not abs(lam) < radius / 2.0:
        raise DomainError(f"|lambda| must be below disc_radius / 2 = {radius / 2.0!r}")
    inner = min(tol * 1e-2, 1e-13)

    def g(xi):
        return blaschke_eval(cfg, curve_w(cfg, k, xi), inner).center - lam

    h = 1e-6
    xi = lam
    res = g(xi)
    for _ in range(max_iter):
        if abs(res) <= tol:
            return xi
        # the map is holomorphic, so differencing along the tangent keeps the stencil at radius ~|xi|
        e = 1j * xi / abs(xi) if xi else 1.0
        try:
            d = (g(xi + h * e) - g(xi - h * e)) / (2.0 * h * e)
        except DomainError as exc:
            raise SolverError(f"iterate reached the edge of the parameter disc ({exc})", xi, abs(res)) from exc
        if d == 0:
            raise SolverError("vanishing derivative", xi, abs(res))
        step = res / d
        t = 1.0
        while True:
            cand = xi - t * step
            if abs(cand) < radius:
                cres = g(cand)
                if abs(cres) < abs(res):
                    break
            t *= 0.5
            if t < 1e-12:
                raise SolverError("line search failed", xi, abs(res))
        xi, res = cand, cres
    if abs(res) <= tol:
        return xi
    raise SolverError(f"no convergence in {max_iter} iterations", xi, abs(res))


def curve_point(cfg: BlaschkeConfig, k: int, lam, tol: float = 1e-10) -> BallSeq:
    """``z_k(lam) = w_k(xi_k(lam))``, with ``z_k(0) = z_k``."""
    return curve_w(cfg, k, solve_xi(cfg, k, lam, tol))


@dataclass(frozen=True)
class SeparationResult:
    """Value of ``f_(J,N)`` at ``z_k`` with the product lower bound and threshold index."""

    value: CertifiedValue
    product_bound: float
    k0: int
    certified: bool
    eps: float

    def to_dict(self) -> dict:
        return {
            "value": self.value.to_dict(),
            "product_bound": self.product_bound,
            "k0": self.k0,
            "eps": self.eps,
            "certified": self.certified,
        }


def _check_predicate(j_set: IndexSet):
    if not (j_set.period >= 2 and j_set.residues and len(j_set.residues) < j_set.period):
        raise UnsupportedPredicateError(
            "J must be a periodic rule whose residues are a nonempty proper subset, "
            "so that J and its complement are both infinite"
        )


def lower_tail_sum(cfg: BlaschkeConfig, n: int) -> float:
    """``sum_{j > n} ((1 - r_j) + 2 a_j)``, which dominates ``sum_{j > n} (1 - lower_factor(j))``."""
    return cfg.tail_gap_sum(n) + 2.0 * 2.0**-n


def threshold_index(cfg: BlaschkeConfig, eps: float) -> int:
    """Smallest ``N`` for which the lower-bound product over ``j > N`` is at least ``(1 - eps)^2``."""
    if not 0.0 < eps < 1.0:
        raise DomainError("eps must lie in (0, 1)")
    target = (1.0 - eps) ** 2
    n = 0
    while 1.0 - lower_tail_sum(cfg, n) < target:
        n += 1
    return n


def test_fJN(cfg: BlaschkeConfig, j_set: IndexSet, n: int, k: int, eps: float = 0.1, tol: float = 1e-12) -> SeparationResult:
    """``f_(J,N)(z_k) = prod_{j in J, j > N}`` of the factors at ``z_k``.

    At ``z_k`` every factor is exactly ``r_j`` except factor ``k``, which is
    0; the result is certified as ``>= (1 - eps)^2`` once ``N >= k0`` and
    ``k`` is not a vanishing index.
    """
    _check_predicate(j_set)
    if n < 0 or k < 1:
        raise DomainError("need N >= 0 and k >= 1")
    if tol <= 0:
        raise DomainError("tol must be positive")
    zk = cfg.point(k)
    stop = max(n, k)
    # the kept factors beyond `stop` are exactly r_j > 0; their product lies in [1 - S, 1]
    while cfg.tail_gap_sum(stop) > tol / 2.0:
        stop += 1
    value, bound = 1.0, 1.0
    for j in range(n + 1, stop + 1):
        if j in j_set:
            value *= cfg.factor(j, cfg.functional(j, zk)).real
            bound *= cfg.lower_factor(j)
    bound *= max(0.0, 1.0 - lower_tail_sum(cfg, stop))
    lo = value * (1.0 - cfg.tail_gap_sum(stop)) if value > 0 else 0.0
    lo = max(0.0, lo - 4.0 * stop * _EPS)
    hi = value + 4.0 * stop * _EPS if value > 0 else 0.0
    k0 = threshold_index(cfg, eps)
    certified = n >= k0 and lo >= (1.0 - eps) ** 2
    return SeparationResult(CertifiedValue(lo, hi), bound, k0, certified, eps)


test_fJN.__test__ = False


# ---------------------------------------------------------------- peak function


def peak_function(theta: Callable[[int], float], x, tol: float = 1e-12) -> ComplexEnclosure:
    """``1 + sum_n exp(-i theta_n) x_n 2^-n`` truncated with tail radius ``2^-N``.

    ``x`` is a :class:`BallSeq` or a callable ``n -> x_n`` with ``|x_n| <= 1``.
    The modulus is 2 exactly at ``x_n = exp(i theta_n)`` and below 2 elsewhere.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    entry = x.entry if isinstance(x, BallSeq) else x
    n_terms = max(math.ceil(math.log2(1.0 / tol)), len(getattr(x, "prefix", ())))
    total = 1.0 + 0j
    for n in range(1, n_terms + 1):
        total += complex(np.exp(-1j * theta(n))) * complex(entry(n)) * 2.0**-n
    return ComplexEnclosure(total, 2.0**-n_terms + 4.0 * n_terms * _EPS, n_terms)


def peak_point(theta: Callable[[int], float]) -> Callable[[int], complex]:
    """The boundary point ``(exp(i theta_n))`` where the peak function attains modulus 2."""
    return lambda n: complex(np.exp(1j * theta(n)))


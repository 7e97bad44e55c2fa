"""Ball automorphisms: coordinatewise Mobius maps, the l2-ball map and the operator-ball map.

Each family sends its center to 0 and is an involution (or, for the
operator ball, is inverted by the map centered at ``-R``).  The norm of the
image of ``y`` under the map centered at ``x`` is the pseudo-hyperbolic
distance between the evaluations at ``x`` and ``y``, which gives an
independent route to :func:`gleason.metric.rho_seq`.
"""

from __future__ import annotations

import math

import numpy as np

from .disc import CertifiedValue, mobius
from .errors import ConditioningError, DomainError
from .seqspace import (
    BallSeq,
    Constant,
    MobiusImage,
    RadialPower,
    components,
    make_tail,
    sup_norm,
)

#: I - R*T with smallest singular value below this is treated as singular
MIN_SINGULAR = 1e-12


# ---------------------------------------------------------------- sequences


def _map_form(center: complex, form):
    if isinstance(form, Constant):
        return Constant(mobius(center, form.value))
    if isinstance(form, MobiusImage) and form.center == center:
        return form.base
    if center == 0 and isinstance(form, RadialPower):
        return RadialPower(-form.phase, form.a, form.p, form.offset)
    return MobiusImage(center, form)


def phi_seq(a: BallSeq, z: BallSeq, tol: float = 1e-9) -> BallSeq:
    """Apply ``mobius(a_n, .)`` to every coordinate of ``z``.

    Constant tails stay constant.  An escaping tail mapped through a nonzero
    center becomes a :class:`~gleason.seqspace.MobiusImage` tail, which keeps
    exact coordinates, limit and supremum but has no closed escape rate;
    operations that need one reject it.
    """
    if not sup_norm(a, tol).hi < 1.0:
        raise DomainError("automorphism center must have sup norm < 1")
    t = max(a.tail_start, z.tail_start)
    prefix = tuple(mobius(a.entry(n), z.entry(n)) for n in range(1, t))
    fa, fz = components(a.tail), components(z.tail)
    q = math.lcm(len(fa), len(fz))
    # Periodic anchors form j at residue j of n - 1, so align on absolute indices
    forms = [_map_form(fa[j % len(fa)].value, fz[j % len(fz)]) for j in range(q)]
    return BallSeq(prefix, make_tail(forms))


def rho_via_autom(x: BallSeq, y: BallSeq, tol: float = 1e-9) -> CertifiedValue:
    """Pseudo-hyperbolic distance as the sup norm of ``phi_seq(x, y)``."""
    return sup_norm(phi_seq(x, y, tol), tol)


# ---------------------------------------------------------------- l2 ball


def _l2_point(v, name):
    v = np.asarray(v, dtype=complex).ravel()
    if not np.linalg.norm(v) < 1.0:
        raise DomainError(f"{name} must have l2 norm < 1, got {np.linalg.norm(v)!r}")
    return v


def beta_ell2(x, y) -> np.ndarray:
    """Automorphism of the l2 ball swapping ``x`` and 0, applied to ``y``."""
    x = _l2_point(x, "x")
    y = _l2_point(y, "y")
    if x.shape != y.shape:
        raise DomainError(f"dimension mismatch: {x.shape[0]} vs {y.shape[0]}")
    c = math.sqrt(1.0 - float(np.vdot(x, x).real))
    # <y, x> is linear in y, conjugate-linear in x
    v = (x - y) / (1.0 - np.vdot(x, y))
    return np.vdot(x, v) * x / (1.0 + c) + c * v


# ---------------------------------------------------------------- operator ball


def _as_matrix(m, name) -> np.ndarray:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"{name} must be a square matrix, got shape {m.shape}")
    return m


def operator_norm(m) -> float:
    return float(np.linalg.norm(np.atleast_2d(m), 2))


def hermitian_power(h: np.ndarray, power: float) -> np.ndarray:
    """``h ** power`` for a Hermitian positive definite ``h`` via its eigendecomposition."""
    w, v = np.linalg.eigh(h)
    if w.min() <= 0:
        raise ConditioningError(f"matrix is not positive definite (smallest eigenvalue {w.min()!r})")
    return (v * w**power) @ v.conj().T


def hermitian_sqrt(h) -> np.ndarray:
    return hermitian_power(np.asarray(h, dtype=complex), 0.5)


def _contraction(m, name) -> np.ndarray:
    m = _as_matrix(m, name)
    if not operator_norm(m) < 1.0:
        raise DomainError(f"{name} must have operator norm < 1, got {operator_norm(m)!r}")
    return m


def phi_operator(r, t) -> np.ndarray:
    """Operator-ball automorphism centered at ``r`` applied to ``t``.

    ``(I - R R*)^(-1/2) (T - R) (I - R* T)^(-1) (I - R* R)^(1/2)``; it sends
    ``R`` to 0 and the map centered at ``-R`` inverts it.  In dimension 1 it
    reduces to ``(t - r) / (1 - conj(r) t)``.
    """
    r = _contraction(r, "R")
    t = _contraction(t, "T")
    if r.shape != t.shape:
        raise DomainError(f"shape mismatch: {r.shape} vs {t.shape}")
    eye = np.eye(r.shape[0])
    rs = r.conj().T
    m = eye - rs @ t
    smin = np.linalg.svd(m, compute_uv=False).min()
    if smin < MIN_SINGULAR:
        raise ConditioningError(f"I - R*T is numerically singular (smallest singular value {smin:.3e})")
    left = hermitian_power(eye - r @ rs, -0.5)
    right = hermitian_power(eye - rs @ r, 0.5)
    # (T - R) (I - R*T)^-1 as a solve against the transpose system
    mid = np.linalg.solve(m.T, (t - r).T).T
    return left @ mid @ right


def rho_operator(r, s) -> float:
    """Pseudo-hyperbolic distance between evaluations at ``r`` and ``s``: ``||phi_operator(r, s)||``."""
    return operator_norm(phi_operator(r, s))

"""Certified distances between point evaluations on the closed ball of l-infinity.

The pseudo-hyperbolic distance between evaluations at ``z`` and ``w`` is the
supremum over coordinates of the disc distance ``rho_disc(z_n, w_n)``, and
the norm distance is the same supremum pushed through the increasing map
:func:`~gleason.disc.gleason_norm_from_rho`.  The work here is certifying
that supremum over infinitely many coordinates.

Tails are compared one residue class at a time.  Most class pairs are
decided from the closed forms (constants, distinct boundary limits,
different escape rates).  Two radial tails escaping to the same boundary
point at the same power rate need a genuine search: writing the gaps to the
circle as ``u_n`` and ``v_n = kappa_n u_n``, the coordinate distance is
``|kappa - 1| / (1 + kappa (1 - u))``, monotone in ``u`` and in ``kappa`` on
either side of 1, so every block of indices gets a rigorous upper bound
from its endpoints and a branch-and-bound closes the gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .disc import (
    ATTAINED,
    NOT_ATTAINED,
    UNKNOWN,
    CertifiedValue,
    gleason_norm_from_rho,
    is_unimodular,
    rho_disc,
)
from .errors import CannotCertifyError, DomainError
from .seqspace import (
    BallSeq,
    Constant,
    MobiusImage,
    Partition,
    RadialPower,
    components,
    first_in_class,
    partition,
    sup_norm,
)

DEFAULT_MAX_INDEX = 10**6

# relative inflation of analytic block bounds, covering their own rounding
_BOUND_SLACK = 1e-14
# computed boundary limits closer than this are not trusted to be distinct
_LIMIT_SEPARATION = 1e-9
_LEAF_BLOCK = 8
# limits of the closed-form search for radial pairs
_MAX_VISITS = 100_000
_MAX_INDEX_CLOSED = 2**62


@dataclass(frozen=True)
class TailCertificate:
    """Why coordinate distances along one tail class tend to 1."""

    start: int
    period: int
    residue: int
    reason: str

    def to_json(self) -> dict:
        return {"start": self.start, "period": self.period, "residue": self.residue, "reason": self.reason}


@dataclass(frozen=True)
class Same:
    rho: CertifiedValue


@dataclass(frozen=True)
class Different:
    witness: int | TailCertificate


@dataclass(frozen=True)
class Undetermined:
    rho_lo: float
    examined_up_to: int


@dataclass(frozen=True)
class PartClass:
    """Which of the five shapes the Gleason part of ``z`` takes.

    ``case`` is one of ``"i"`` .. ``"v"``; ``dimension`` is the polydisc
    dimension in case ``"iii"`` when finite.
    """

    case: str
    partition: Partition
    dimension: int | None = None
    description: str = ""

    @property
    def label(self) -> str:
        return f"({self.case})"


@dataclass
class _Part:
    lo: float
    hi: float
    status: str = UNKNOWN
    attained_at: int | None = None
    witness: object = None
    examined_up_to: int | None = None


@dataclass
class _SupResult:
    value: CertifiedValue
    witness: object = None
    parts: list = field(default_factory=list)


# ---------------------------------------------------------------- class analysis


def _strip_common(fz, fw):
    while isinstance(fz, MobiusImage) and isinstance(fw, MobiusImage) and fz.center == fw.center:
        fz, fw = fz.base, fw.base
    return fz, fw


def _radial_limit_rho(fz: RadialPower, fw: RadialPower) -> float:
    kappa = fw.a / fz.a
    return abs(kappa - 1.0) / (1.0 + kappa)


def _radial_block_bound(fz: RadialPower, fw: RadialPower, na: float, nb: float | None) -> float:
    """Upper bound for the coordinate distance over real indices in ``[na, nb]``."""
    ua = fz.gap(na)
    k_inf = fw.a / fz.a

    def kappa(n):
        return fw.gap(n) / fz.gap(n)

    def h(k):
        return abs(k - 1.0) / (1.0 + k * (1.0 - ua))

    ka = kappa(na)
    kb = k_inf if nb is None else kappa(nb)
    bound = max(h(ka), h(kb))
    return min(1.0, bound * (1.0 + _BOUND_SLACK) + 1e-300)


def _radial_gap_rho(fz: RadialPower, fw: RadialPower, n) -> float:
    """Coordinate distance from the gaps, exact in relative terms even when ``1 - gap`` rounds to 1."""
    u, v = fz.gap(n), fw.gap(n)
    return abs(v - u) / (u + v - u * v)


def _radial_pair_sup(fz, fw, n0, step, tol) -> _Part:
    """Branch-and-bound for two radial tails with equal phase and exponent.

    Only closed forms are evaluated, so the search is limited by a count of
    evaluations rather than by the coordinate scan budget.
    """
    limit = _radial_limit_rho(fz, fw)
    best, best_at, tie = limit, None, False
    budget = _MAX_VISITS

    def visit(m):
        nonlocal best, best_at, budget
        budget -= 1
        n = n0 + step * m
        v = _radial_gap_rho(fz, fw, n)
        if v > best or (v == best and best_at is None):
            best, best_at = v, n
        return n

    visit(0)
    blocks = [(0, None)]
    remaining = []
    last_seen = n0
    while blocks:
        ma, mb = blocks.pop()
        na = n0 + step * ma
        nb = None if mb is None else n0 + step * (mb - 1)
        bound = _radial_block_bound(fz, fw, na, nb)
        if bound < best:
            continue
        if bound == best:
            tie = True
            continue
        if mb is None and best_at is None and bound - best <= tol:
            remaining.append(bound)
            continue
        if budget <= 0 or na > _MAX_INDEX_CLOSED:
            remaining.append(bound)
            remaining.extend(_radial_block_bound(fz, fw, n0 + step * a, None if b is None else n0 + step * (b - 1)) for a, b in blocks)
            last_seen = max(last_seen, na)
            break
        if mb is not None:
            if mb - ma <= _LEAF_BLOCK:
                for m in range(ma, mb):
                    visit(m)
                continue
            mid = (ma + mb) // 2
            visit(mid)
            blocks.append((ma, mid))
            blocks.append((mid, mb))
            continue
        split = max(2 * ma, ma + _LEAF_BLOCK)
        last_seen = visit(split)
        blocks.append((split, None))
        blocks.append((ma, split))

    hi = max([best, *remaining])
    incomplete = hi - best > tol
    if remaining or tie:
        status, at = UNKNOWN, None
    elif best_at is not None:
        status, at = ATTAINED, best_at
    else:
        status, at = NOT_ATTAINED, None
    return _Part(best, hi, status, at, examined_up_to=last_seen if incomplete else None)


def _scan_class(evaluate, n0, step, max_index) -> _Part:
    best = 0.0
    n = n0
    while n <= max_index:
        best = max(best, evaluate(n))
        n += step
    return _Part(best, 1.0, UNKNOWN, None, examined_up_to=max(n0, n - step))


def _class_sup(fz, fw, evaluate, n0, step, tol, max_index) -> _Part:
    residue = (n0 - 1) % step

    def cert(reason):
        return TailCertificate(n0, step, residue, reason)

    if fz == fw:
        return _Part(0.0, 0.0, ATTAINED, n0)
    if isinstance(fz, Constant) and isinstance(fw, Constant):
        v = rho_disc(fz.value, fw.value)
        return _Part(v, v, ATTAINED, n0, witness=n0 if v == 1.0 else None)
    for f in (fz, fw):
        if isinstance(f, Constant) and is_unimodular(f.value):
            # a unimodular coordinate is at distance 1 from every other point
            return _Part(1.0, 1.0, ATTAINED, n0, witness=n0)
    if isinstance(fz, Constant) or isinstance(fw, Constant):
        return _Part(1.0, 1.0, NOT_ATTAINED, witness=cert("one coordinate escapes to the circle, the other stays interior"))

    sz, sw = _strip_common(fz, fw)
    if sz == sw:
        return _Part(0.0, 0.0, ATTAINED, n0)
    if isinstance(sz, RadialPower) and isinstance(sw, RadialPower):
        if sz.phase != sw.phase:
            return _Part(1.0, 1.0, NOT_ATTAINED, witness=cert("coordinates escape to distinct boundary points"))
        if sz.p != sw.p:
            return _Part(
                1.0,
                1.0,
                NOT_ATTAINED,
                witness=cert(f"same boundary point approached at different power rates (p={sz.p:g} vs p={sw.p:g})"),
            )
        # fixed order so that swapping z and w gives bit-identical bounds
        sz, sw = sorted((sz, sw), key=lambda f: (f.a, f.offset))
        return _radial_pair_sup(sz, sw, n0, step, tol)
    if abs(sz.limit - sw.limit) > _LIMIT_SEPARATION:
        return _Part(1.0, 1.0, NOT_ATTAINED, witness=cert("coordinates escape to distinct boundary points"))
    return _scan_class(evaluate, n0, step, max_index)


def _coordinate_sup(z: BallSeq, w: BallSeq, tol: float, max_index: int) -> _SupResult:
    if tol <= 0:
        raise DomainError("tol must be positive")
    if max_index < 1:
        raise DomainError("max_index must be at least 1")

    def evaluate(n):
        return rho_disc(z.entry(n), w.entry(n))

    t = max(z.tail_start, w.tail_start)
    parts = []
    head_best, head_at = 0.0, None
    for n in range(1, min(t - 1, max_index) + 1):
        v = evaluate(n)
        if head_at is None or v > head_best:
            head_best, head_at = v, n
    if t > 1:
        if t - 1 > max_index:
            parts.append(_Part(head_best, 1.0, UNKNOWN, examined_up_to=max_index))
        else:
            parts.append(_Part(head_best, head_best, ATTAINED, head_at, witness=head_at if head_best == 1.0 else None))

    fz, fw = components(z.tail), components(w.tail)
    period = math.lcm(len(fz), len(fw))
    for j in range(period):
        n0 = first_in_class(t, period, j)
        a, b = fz[(n0 - 1) % len(fz)], fw[(n0 - 1) % len(fw)]
        parts.append(_class_sup(a, b, evaluate, n0, period, tol, max(max_index, n0)))

    lo = max(p.lo for p in parts)
    hi = max(p.hi for p in parts)
    if lo == 1.0:
        hi = 1.0
    incomplete = [p.examined_up_to for p in parts if p.examined_up_to is not None and p.hi > lo]
    top = [p for p in parts if p.hi >= hi]
    if lo < hi:
        status, at = UNKNOWN, None
    elif any(p.status == ATTAINED and p.lo == hi for p in top):
        status = ATTAINED
        at = min(p.attained_at for p in top if p.status == ATTAINED and p.lo == hi)
    elif all(p.status == NOT_ATTAINED for p in top):
        status, at = NOT_ATTAINED, None
    else:
        status, at = UNKNOWN, None
    witness = None
    if lo == 1.0:
        for p in parts:
            if p.lo == 1.0 and p.witness is not None:
                witness = p.witness
                if isinstance(witness, int):
                    break
    examined = max(incomplete) if incomplete and lo < 1.0 else None
    return _SupResult(CertifiedValue(lo, hi, status, at, examined), witness, parts)


# ---------------------------------------------------------------- public API


def rho_seq(z: BallSeq, w: BallSeq, tol: float = 1e-9, max_index: int = DEFAULT_MAX_INDEX) -> CertifiedValue:
    """Certified pseudo-hyperbolic distance ``sup_n rho_disc(z_n, w_n)``.

    Coordinates where ``z`` and ``w`` agree contribute exactly 0.  When a
    tail pair cannot be certified within ``max_index`` coordinates the
    enclosure is returned wide with ``examined_up_to`` set.
    """
    return _coordinate_sup(z, w, tol, max_index).value


def gleason_norm_seq(z: BallSeq, w: BallSeq, tol: float = 1e-9, max_index: int = DEFAULT_MAX_INDEX) -> CertifiedValue:
    """Certified norm distance ``||delta_z - delta_w||``."""
    return rho_seq(z, w, tol, max_index).map_increasing(gleason_norm_from_rho)


def rho_origin(z: BallSeq, tol: float = 1e-9) -> CertifiedValue:
    """Distance from the evaluation at the origin, which is the sup norm of ``z``."""
    return sup_norm(z, tol)


def same_part(z: BallSeq, w: BallSeq, tol: float = 1e-9, max_index: int = DEFAULT_MAX_INDEX):
    """Decide whether evaluations at ``z`` and ``w`` lie in the same Gleason part.

    Returns :class:`Same` when the distance is certified below 1,
    :class:`Different` with a coordinate or tail witness when it is
    certified equal to 1, and :class:`Undetermined` otherwise.
    """
    res = _coordinate_sup(z, w, tol, max_index)
    v = res.value
    if v.hi < 1.0:
        return Same(v)
    if v.lo == 1.0:
        return Different(res.witness)
    return Undetermined(v.lo, v.examined_up_to or max_index)


def classify(z: BallSeq, tol: float = 1e-9) -> PartClass:
    """Shape of the Gleason part containing the evaluation at ``z``."""
    part = partition(z, tol)
    m_empty = part.n2.is_empty and part.n3.is_empty
    n1_empty = part.n1.is_empty
    desc_core = "w_n = z_n on N1" if not n1_empty else ""
    if m_empty:
        return PartClass("ii", part, description="{z} alone: every coordinate is unimodular")
    if part.n3.is_empty:
        if n1_empty:
            return PartClass("i", part, description="{w : sup_n |w_n| < 1}, the open ball")
        k = part.n2.size()
        shape = f"a polydisc of dimension {k}" if k is not None else "an open ball of l-infinity"
        return PartClass("iii", part, k, f"{{w : {desc_core}, sup over N2 of |w_n| < 1}}, {shape}")
    clauses = [c for c in (desc_core, "sup over N2 of |w_n| < 1" if not part.n2.is_empty else "") if c]
    clauses.append("sup over N3 of rho(z_n, w_n) < 1")
    body = "{w : " + ", ".join(clauses) + "}"
    if part.escaping_only:
        return PartClass("iv", part, description=body + "; moduli over the non-unimodular indices tend to 1")
    return PartClass("v", part, description=body + "; infinitely many moduli stay away from 1, infinitely many escape")


def radial_contraction_check(
    z: BallSeq, w: BallSeq, r: float, tol: float = 1e-12, max_index: int = 10_000
) -> bool:
    """Check ``rho(r z_n, r w_n) <= rho(z_n, w_n) + tol`` coordinatewise.

    Explicit coordinates and the first ``max_index`` tail coordinates are
    checked directly.  Radial tail pairs with a common phase are covered in
    closed form (for real ``x, y`` in [0, 1) the difference of the two sides
    has the sign of ``(1 - r)(1 + r x y)``); other tail classes are checked
    at their limits.
    """
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    t = max(z.tail_start, w.tail_start)
    stop = max(t - 1, min(max_index, t - 1 + 1000))
    for n in range(1, stop + 1):
        a, b = z.entry(n), w.entry(n)
        if rho_disc(r * a, r * b) > rho_disc(a, b) + tol:
            return False
    fz, fw = components(z.tail), components(w.tail)
    period = math.lcm(len(fz), len(fw))
    for j in range(period):
        n0 = first_in_class(t, period, j)
        a, b = _strip_common(fz[(n0 - 1) % len(fz)], fw[(n0 - 1) % len(fw)])
        if isinstance(a, RadialPower) and isinstance(b, RadialPower) and a.phase == b.phase:
            continue
        part = _class_sup(a, b, lambda n: 0.0, n0, period, 1e-9, n0)
        if part.lo < part.hi:
            continue
        scaled = rho_disc(r * a.limit, r * b.limit)
        if scaled > part.lo + tol:
            return False
    return True


def reciproca_bound(z: BallSeq, w: BallSeq, tol: float = 1e-9, max_index: int = DEFAULT_MAX_INDEX) -> float:
    """Bound ``(2 + C) / 2`` on the distance between limits of radial approximants.

    ``C`` is the certified upper end of ``||delta_z - delta_w||``; the bound
    is below 2 exactly when ``C`` is.
    """
    c = gleason_norm_seq(z, w, tol, max_index)
    if not c.hi < 2.0:
        raise CannotCertifyError(f"norm distance not certified below 2 (enclosure [{c.lo}, {c.hi}])")
    return (2.0 + c.hi) / 2.0


#: pseudo-hyperbolic radius at which the norm distance reaches 1
NORM_ONE_RHO = 0.8


def shift_radius(b, margin: float) -> float:
    """Euclidean radius about ``b`` inside which every ``c`` has ``rho(b, c) <= 0.8 (1 - margin)``.

    Norm distance 1 corresponds to pseudo-hyperbolic distance 4/5.  The
    pseudo-hyperbolic disc of radius ``t`` about ``b`` is a Euclidean disc;
    the largest Euclidean disc about ``b`` inside it has radius
    ``t (1 - |b|^2) / (1 + t |b|)``.
    """
    b = complex(b)
    if abs(b) >= 1.0:
        raise DomainError("b must lie in the open disc")
    if not 0.0 < margin < 1.0:
        raise DomainError(f"margin must lie in (0, 1), got {margin!r}")
    t = NORM_ONE_RHO * (1.0 - margin)
    m = abs(b)
    return t * (1.0 - m * m) / (1.0 + t * m)

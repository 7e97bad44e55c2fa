"""Points of the closed unit ball of l-infinity with decidable tails.

A :class:`BallSeq` is a finite prefix of explicit coordinates followed by a
tail given in closed form.  The tail forms are chosen so that suprema,
limits and the unimodular/interior/escaping split of the coordinates are
decidable from the representation alone:

* :class:`Constant` -- every tail coordinate equals ``value``;
* :class:`RadialPower` -- ``phase * (1 - a * (n + offset) ** -p)``, which
  moves radially toward the unimodular ``phase``;
* :class:`MobiusImage` -- a disc automorphism applied to an escaping tail.
  This is the scan-backed form produced by coordinatewise automorphisms;
  its supremum and limit point are known but it has no closed rate;
* :class:`Periodic` -- interleaves the forms above by residue of ``n - 1``.

Indices are 1-based throughout, matching the coordinates ``z_1, z_2, ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .disc import (
    ATTAINED,
    NOT_ATTAINED,
    SCALAR_TOL,
    CertifiedValue,
    disc_point,
    is_unimodular,
    mobius,
)
from .errors import (
    AmbiguousModulusError,
    DomainError,
    ParseError,
    UnsupportedRestrictionError,
)

#: moduli in (1 - AMBIGUITY_BAND, 1) that are not unimodular cannot be classified
AMBIGUITY_BAND = 1e-12


# ---------------------------------------------------------------- tail forms


@dataclass(frozen=True)
class Constant:
    value: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "value", disc_point(self.value, name="constant tail"))

    escaping = False

    @property
    def limit(self) -> complex:
        return self.value

    def at(self, n: int) -> complex:
        return self.value

    def at_many(self, ns: np.ndarray) -> np.ndarray:
        return np.full(ns.shape, self.value, dtype=complex)

    def shifted(self, d: int) -> "Constant":
        return self


@dataclass(frozen=True)
class RadialPower:
    """Coordinates ``phase * (1 - a * (n + offset) ** -p)`` for absolute index ``n``."""

    phase: complex
    a: float
    p: float
    offset: float = 0.0

    def __post_init__(self):
        phase = complex(self.phase)
        if not is_unimodular(phase):
            raise DomainError(f"radial tail phase must be unimodular, got |phase| = {abs(phase)!r}")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DomainError(f"radial tail needs a > 0, got {self.a!r}")
        if not (self.p > 0 and math.isfinite(self.p)):
            raise DomainError(f"radial tail needs p > 0, got {self.p!r}")
        object.__setattr__(self, "phase", phase)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "offset", float(self.offset))

    escaping = True

    @property
    def limit(self) -> complex:
        return self.phase

    def gap(self, n) -> float:
        """Distance ``1 - |z_n|`` of coordinate ``n`` from the circle."""
        return self.a * (n + self.offset) ** (-self.p)

    def at(self, n: int) -> complex:
        return self.phase * (1.0 - self.gap(n))

    def at_many(self, ns: np.ndarray) -> np.ndarray:
        return self.phase * (1.0 - self.a * np.power(ns + self.offset, -self.p))

    def shifted(self, d: int) -> "RadialPower":
        return RadialPower(self.phase, self.a, self.p, self.offset + d)

    def check_from(self, n: int):
        if n + self.offset <= 0:
            raise DomainError(f"radial tail undefined at n = {n} (offset {self.offset})")
        g = self.gap(n)
        if not 0.0 < g <= 1.0:
            raise DomainError(f"radial tail needs 0 < a (n + offset)^-p <= 1 from n = {n}, got {g!r}")

    def first_index_above(self, t: float, n0: int, step: int) -> int:
        """Smallest ``n = n0 + k*step`` with modulus strictly above ``t``."""
        # modulus 1 - gap(n) is increasing in n
        need = (self.a / (1.0 - t)) ** (1.0 / self.p) - self.offset
        k = max(0, math.ceil((need - n0) / step))
        while k > 0 and 1.0 - self.gap(n0 + (k - 1) * step) > t:
            k -= 1
        while not 1.0 - self.gap(n0 + k * step) > t:
            k += 1
        return n0 + k * step


@dataclass(frozen=True)
class MobiusImage:
    """Coordinates ``mobius(center, base_n)`` for an escaping ``base``."""

    center: complex
    base: Union[RadialPower, "MobiusImage"]

    def __post_init__(self):
        c = complex(self.center)
        if abs(c) >= 1.0:
            raise DomainError("mobius tail center must lie in the open disc")
        if not isinstance(self.base, (RadialPower, MobiusImage)):
            raise DomainError("mobius tail base must be an escaping tail form")
        object.__setattr__(self, "center", c)

    escaping = True

    @property
    def limit(self) -> complex:
        return mobius(self.center, self.base.limit)

    def at(self, n: int) -> complex:
        return mobius(self.center, self.base.at(n))

    def at_many(self, ns: np.ndarray) -> np.ndarray:
        x = self.base.at_many(ns)
        return (self.center - x) / (1.0 - np.conj(self.center) * x)

    def shifted(self, d: int) -> "MobiusImage":
        return MobiusImage(self.center, self.base.shifted(d))

    def check_from(self, n: int):
        self.base.check_from(n)

    def radial_base(self) -> tuple[list[complex], RadialPower]:
        """Centers from outermost to innermost, and the radial base."""
        centers, form = [], self
        while isinstance(form, MobiusImage):
            centers.append(form.center)
            form = form.base
        return centers, form

    def first_index_above(self, t: float, n0: int, step: int) -> int:
        # 1 - |eta_c(x)|^2 <= (1+|c|)/(1-|c|) * (1 - |x|^2), compounded along the chain
        centers, base = self.radial_base()
        factor = math.prod((1 + abs(c)) / (1 - abs(c)) for c in centers)
        # need factor * (1 - |x|^2) < 1 - t^2; 1 - |x|^2 <= 2 (1 - |x|)
        s = 1.0 - (1.0 - t * t) / (2.0 * factor)
        n = base.first_index_above(max(s, 0.0), n0, step)
        while n > n0 and abs(self.at(n - step)) > t:
            n -= step
        return n


Component = Union[Constant, RadialPower, MobiusImage]


@dataclass(frozen=True)
class Periodic:
    """Tail whose coordinate ``n`` follows ``forms[(n - 1) % len(forms)]``."""

    forms: tuple

    def __post_init__(self):
        forms = tuple(self.forms)
        if not forms:
            raise DomainError("periodic tail needs at least one form")
        for f in forms:
            if not isinstance(f, (Constant, RadialPower, MobiusImage)):
                raise DomainError(f"periodic tail components must be simple forms, got {type(f).__name__}")
        object.__setattr__(self, "forms", forms)

    def at(self, n: int) -> complex:
        return self.forms[(n - 1) % len(self.forms)].at(n)

    def at_many(self, ns: np.ndarray) -> np.ndarray:
        out = np.empty(ns.shape, dtype=complex)
        q = len(self.forms)
        cls = (ns - 1) % q
        for j, f in enumerate(self.forms):
            sel = cls == j
            out[sel] = f.at_many(ns[sel])
        return out

    def shifted(self, d: int) -> "Periodic":
        q = len(self.forms)
        return Periodic(tuple(self.forms[(j + d) % q].shifted(d) for j in range(q)))


TailForm = Union[Constant, RadialPower, MobiusImage, Periodic]

ZERO = Constant(0j)


def components(tail: TailForm) -> tuple:
    """The simple forms of a tail, one per residue class of ``n - 1``."""
    return tail.forms if isinstance(tail, Periodic) else (tail,)


def make_tail(forms: Iterable[Component]) -> TailForm:
    """Build the simplest tail with the given per-class forms."""
    forms = tuple(forms)
    if all(f == forms[0] for f in forms):
        return forms[0]
    return Periodic(forms)


# ---------------------------------------------------------------- sequences


@dataclass(frozen=True)
class BallSeq:
    """A point of the closed unit ball of l-infinity.

    Coordinates ``1 .. len(prefix)`` are explicit; from ``tail_start`` on
    the tail form applies.
    """

    prefix: tuple = ()
    tail: TailForm = ZERO

    def __post_init__(self):
        prefix = tuple(disc_point(v, name=f"prefix[{i}]") for i, v in enumerate(self.prefix))
        object.__setattr__(self, "prefix", prefix)
        t = self.tail_start
        forms = components(self.tail)
        for j, f in enumerate(forms):
            if hasattr(f, "check_from"):
                f.check_from(first_in_class(t, len(forms), j))

    @property
    def tail_start(self) -> int:
        return len(self.prefix) + 1

    @classmethod
    def finite(cls, values) -> "BallSeq":
        """Finitely supported point; coordinates past ``values`` are 0."""
        return cls(tuple(values), ZERO)

    @classmethod
    def constant(cls, value, prefix=()) -> "BallSeq":
        return cls(tuple(prefix), Constant(value))

    @classmethod
    def radial(cls, phase=1.0, a=1.0, p=1.0, prefix=(), offset=0.0) -> "BallSeq":
        return cls(tuple(prefix), RadialPower(phase, a, p, offset))

    def entry(self, n: int) -> complex:
        if n < 1:
            raise DomainError(f"indices start at 1, got {n}")
        if n < self.tail_start:
            return self.prefix[n - 1]
        return self.tail.at(n)

    def entries(self, stop: int, start: int = 1) -> np.ndarray:
        """Coordinates ``start .. stop`` inclusive as a complex array."""
        ns = np.arange(start, stop + 1)
        out = np.empty(ns.shape, dtype=complex)
        head = ns < self.tail_start
        out[head] = [self.prefix[n - 1] for n in ns[head]]
        out[~head] = self.tail.at_many(ns[~head].astype(float))
        return out

    @property
    def closed(self) -> bool:
        """False when some tail class is scan-backed."""
        return not any(isinstance(f, MobiusImage) for f in components(self.tail))

    def to_json(self) -> dict:
        return {"prefix": [[v.real, v.imag] for v in self.prefix], "tail": tail_to_json(self.tail)}

    @classmethod
    def from_json(cls, doc, field_name: str = "seq") -> "BallSeq":
        return parse_ballseq(doc, field_name)


def first_in_class(t: int, period: int, j: int) -> int:
    """Smallest ``n >= t`` with ``(n - 1) % period == j``."""
    return t + ((j - (t - 1)) % period)


# ---------------------------------------------------------------- index sets


@dataclass(frozen=True)
class IndexSet:
    """Finite explicit indices together with a periodic tail rule.

    ``n`` belongs to the set when ``n in explicit`` or when ``n >= start``
    and ``(n - 1) % period in residues``.  An empty ``residues`` gives a
    finite set; ``period=1, residues={0}`` a cofinite one.
    """

    explicit: frozenset = frozenset()
    start: int = 1
    period: int = 1
    residues: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "explicit", frozenset(int(n) for n in self.explicit))
        object.__setattr__(self, "residues", frozenset(int(r) for r in self.residues))
        if any(n < 1 for n in self.explicit):
            raise DomainError("indices start at 1")
        if self.period < 1 or self.start < 1:
            raise DomainError("period and start must be positive")
        if any(not 0 <= r < self.period for r in self.residues):
            raise DomainError("residues must lie in [0, period)")

    @classmethod
    def finite(cls, indices) -> "IndexSet":
        return cls(frozenset(indices))

    @classmethod
    def from_index(cls, start: int, extra=()) -> "IndexSet":
        """All ``n >= start`` plus ``extra``."""
        return cls(frozenset(extra), start, 1, frozenset({0}))

    @classmethod
    def everything(cls) -> "IndexSet":
        return cls.from_index(1)

    @classmethod
    def progression(cls, start: int, step: int, extra=()) -> "IndexSet":
        """``start, start + step, start + 2*step, ...`` plus ``extra``."""
        return cls(frozenset(extra), start, step, frozenset({(start - 1) % step}))

    def __contains__(self, n: int) -> bool:
        return n in self.explicit or (n >= self.start and (n - 1) % self.period in self.residues)

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_empty(self) -> bool:
        return not self.explicit and not self.residues

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def members(self, stop: int) -> list[int]:
        """Sorted members up to ``stop`` inclusive."""
        out = {n for n in self.explicit if n <= stop}
        for r in self.residues:
            out.update(range(first_in_class(self.start, self.period, r), stop + 1, self.period))
        return sorted(out)

    def size(self) -> int | None:
        """Number of members, or None when infinite."""
        return None if self.residues else len(self.explicit)

    def to_json(self) -> dict:
        return {
            "explicit": sorted(self.explicit),
            "start": self.start,
            "period": self.period,
            "residues": sorted(self.residues),
        }

    @classmethod
    def from_json(cls, doc, field_name: str = "index_set") -> "IndexSet":
        if not isinstance(doc, dict):
            raise ParseError(field_name, "expected an object")
        unknown = set(doc) - {"explicit", "start", "period", "residues"}
        if unknown:
            raise ParseError(field_name, f"unknown keys {sorted(unknown)}")
        for key in ("explicit", "residues"):
            v = doc.get(key, [])
            if not isinstance(v, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in v):
                raise ParseError(f"{field_name}.{key}", "expected a list of integers")
        for key in ("start", "period"):
            v = doc.get(key, 1)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ParseError(f"{field_name}.{key}", f"expected an integer, got {v!r}")
        try:
            return cls(
                frozenset(doc.get("explicit", [])),
                doc.get("start", 1),
                doc.get("period", 1),
                frozenset(doc.get("residues", [])),
            )
        except DomainError as exc:
            raise ParseError(field_name, str(exc)) from exc


# ---------------------------------------------------------------- operations


def entry(z: BallSeq, n: int) -> complex:
    return z.entry(n)


def sup_norm(z: BallSeq, tol: float = 1e-9) -> CertifiedValue:
    """Certified ``sup_n |z_n|``.

    Constant tails attain their modulus; escaping tails have supremum 1,
    never attained because every coordinate is interior.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    best, where = 0.0, None
    for n, v in enumerate(z.prefix, start=1):
        m = 1.0 if is_unimodular(v) else abs(v)
        if m > best:
            best, where = m, n
    forms = components(z.tail)
    escapes = False
    for j, f in enumerate(forms):
        if f.escaping:
            escapes = True
            continue
        m = 1.0 if is_unimodular(f.value) else abs(f.value)
        if m > best:
            best, where = m, first_in_class(z.tail_start, len(forms), j)
    if escapes and (best < 1.0 or where is None):
        return CertifiedValue(1.0, 1.0, NOT_ATTAINED)
    if where is None:
        # every coordinate is 0
        return CertifiedValue(0.0, 0.0, ATTAINED, 1)
    return CertifiedValue(best, best, ATTAINED, where)


def project_prefix(z: BallSeq, n: int) -> BallSeq:
    """Keep coordinates ``1..n`` and pad with zeros."""
    if n < 1:
        raise DomainError("projection length must be at least 1")
    return BallSeq(tuple(z.entry(k) for k in range(1, n + 1)), ZERO)


def restrict(z: BallSeq, keep: IndexSet) -> BallSeq:
    """Enumerate the coordinates of ``z`` over ``keep`` in increasing order.

    A finite ``keep`` yields a finitely supported point.  Periodic keep rules
    are supported only where every kept tail class is constant.
    """
    if keep.is_empty:
        raise DomainError("restriction to the empty index set")
    if keep.is_finite:
        return BallSeq.finite(z.entry(n) for n in sorted(keep.explicit))
    if keep.is_cofinite:
        s = keep.start
        head = [z.entry(n) for n in sorted(keep.explicit) if n < s]
        head += [z.entry(n) for n in range(s, max(s, z.tail_start))]
        new_start = len(head) + 1
        d = max(s, z.tail_start) - new_start
        return BallSeq(tuple(head), z.tail.shifted(d))
    return _restrict_periodic(z, keep)


def _restrict_periodic(z: BallSeq, keep: IndexSet) -> BallSeq:
    forms = components(z.tail)
    cycle = math.lcm(keep.period, len(forms))
    kept = [r for r in range(cycle) if r % keep.period in keep.residues]
    for r in kept:
        if not isinstance(forms[r % len(forms)], Constant):
            raise UnsupportedRestrictionError(
                f"keeping residues {sorted(keep.residues)} mod {keep.period} of a "
                f"{type(forms[r % len(forms)]).__name__} tail has no closed tail form"
            )
    # materialize up to the start of a full cycle, then repeat the kept constants
    lead = max(keep.start, z.tail_start)
    cut = first_in_class(lead, cycle, 0)
    members = sorted({n for n in keep.explicit if n < cut} | {n for n in keep.members(cut - 1) if n < cut})
    head = [z.entry(n) for n in members]
    c = len(kept)
    new_start = len(head) + 1
    cycle_forms = [forms[r % len(forms)] for r in kept]
    rotated = tuple(cycle_forms[(j - (new_start - 1)) % c] for j in range(c))
    return BallSeq(tuple(head), make_tail(rotated))


@dataclass(frozen=True)
class Partition:
    """Split of the indices into unimodular, bounded-away and escaping parts.

    ``limsup`` is the limsup of ``|z_n|`` over the non-unimodular indices
    (None when there are none) and ``sup_bounded`` the supremum over ``n2``.
    """

    n1: IndexSet
    n2: IndexSet
    n3: IndexSet
    limsup: float | None
    sup_bounded: float
    escaping_only: bool = field(default=False)

    def which(self, n: int) -> int:
        for k, part in enumerate((self.n1, self.n2, self.n3), start=1):
            if n in part:
                return k
        raise AssertionError(f"index {n} not covered")

    def to_json(self) -> dict:
        return {
            "N1": self.n1.to_json(),
            "N2": self.n2.to_json(),
            "N3": self.n3.to_json(),
            "limsup": self.limsup,
            "sup_N2": self.sup_bounded,
        }


def _check_ambiguous(n: int, v: complex):
    m = abs(v)
    if not is_unimodular(v) and m > 1.0 - AMBIGUITY_BAND:
        raise AmbiguousModulusError(n, m)


def partition(z: BallSeq, tol: float = 1e-9) -> Partition:
    """Canonical split ``N1 | N2 | N3`` of the indices of ``z``.

    ``N1`` holds the unimodular coordinates.  When the remaining moduli stay
    away from 1 they all go to ``N2``; when they all tend to 1 they all go
    to ``N3``; otherwise escaping coordinates above ``(1 + s0) / 2`` form
    ``N3``, ``s0`` being the supremum over the bounded coordinates.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    t0 = z.tail_start
    forms = components(z.tail)
    q = len(forms)

    n1_prefix, m_prefix = set(), {}
    for n, v in enumerate(z.prefix, start=1):
        _check_ambiguous(n, v)
        if is_unimodular(v):
            n1_prefix.add(n)
        else:
            m_prefix[n] = abs(v)

    uni_cls, bounded_cls, escaping_cls = set(), {}, []
    for j, f in enumerate(forms):
        if f.escaping:
            escaping_cls.append(j)
        else:
            _check_ambiguous(first_in_class(t0, q, j), f.value)
            if is_unimodular(f.value):
                uni_cls.add(j)
            else:
                bounded_cls[j] = abs(f.value)

    n1 = IndexSet(frozenset(n1_prefix), t0, q, frozenset(uni_cls))
    m_is_empty = not m_prefix and not bounded_cls and not escaping_cls
    s0 = max([*m_prefix.values(), *bounded_cls.values()], default=0.0)
    m_cls = frozenset(bounded_cls) | frozenset(escaping_cls)
    empty = IndexSet()

    if m_is_empty:
        return Partition(n1, empty, empty, None, 0.0)
    if not escaping_cls:
        n2 = IndexSet(frozenset(m_prefix), t0, q, m_cls)
        return Partition(n1, n2, empty, s0, s0)
    if not bounded_cls:
        n3 = IndexSet(frozenset(m_prefix), t0, q, m_cls)
        return Partition(n1, empty, n3, 1.0, 0.0, escaping_only=True)

    threshold = 0.5 * (1.0 + s0)
    low_escaping = set()
    start = t0
    for j in escaping_cls:
        n0 = first_in_class(t0, q, j)
        k = forms[j].first_index_above(threshold, n0, q)
        start = max(start, k)
    # everything in an escaping class before `start` is listed explicitly
    for j in escaping_cls:
        for n in range(first_in_class(t0, q, j), start, q):
            if abs(z.entry(n)) <= threshold:
                low_escaping.add(n)
    high_escaping = {
        n for j in escaping_cls for n in range(first_in_class(t0, q, j), start, q)
    } - low_escaping
    bounded_tail = {n for j in bounded_cls for n in range(first_in_class(t0, q, j), start, q)}
    sup_n2 = max([s0, *(abs(z.entry(n)) for n in low_escaping)])
    n2 = IndexSet(frozenset(m_prefix) | low_escaping | bounded_tail, start, q, frozenset(bounded_cls))
    n3 = IndexSet(frozenset(high_escaping), start, q, frozenset(escaping_cls))
    return Partition(n1, n2, n3, 1.0, sup_n2)


# ---------------------------------------------------------------- JSON


def _pair(v) -> list:
    v = complex(v)
    return [v.real, v.imag]


def tail_to_json(tail: TailForm) -> dict:
    if isinstance(tail, Constant):
        return {"kind": "constant", "value": _pair(tail.value)}
    if isinstance(tail, RadialPower):
        out = {"kind": "radial_power", "phase": _pair(tail.phase), "a": tail.a, "p": tail.p}
        if tail.offset:
            out["offset"] = tail.offset
        return out
    if isinstance(tail, MobiusImage):
        return {"kind": "mobius_image", "center": _pair(tail.center), "base": tail_to_json(tail.base)}
    return {"kind": "periodic", "forms": [tail_to_json(f) for f in tail.forms]}


def parse_complex(doc, field_name: str) -> complex:
    if isinstance(doc, (int, float)) and not isinstance(doc, bool):
        return complex(doc)
    if (
        isinstance(doc, (list, tuple))
        and len(doc) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in doc)
    ):
        return complex(doc[0], doc[1])
    raise ParseError(field_name, f"expected [re, im], got {doc!r}")


def _number(doc, key, field_name):
    if key not in doc:
        raise ParseError(f"{field_name}.{key}", "missing")
    v = doc[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise ParseError(f"{field_name}.{key}", f"expected a number, got {v!r}")
    return float(v)


def parse_tail(doc, field_name: str = "tail") -> TailForm:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError(field_name, "expected an object with a 'kind'")
    kind = doc["kind"]
    try:
        if kind == "zero":
            return ZERO
        if kind == "constant":
            return Constant(parse_complex(doc.get("value"), f"{field_name}.value"))
        if kind == "radial_power":
            return RadialPower(
                parse_complex(doc.get("phase"), f"{field_name}.phase"),
                _number(doc, "a", field_name),
                _number(doc, "p", field_name),
                float(doc.get("offset", 0.0)),
            )
        if kind == "mobius_image":
            return MobiusImage(
                parse_complex(doc.get("center"), f"{field_name}.center"),
                parse_tail(doc.get("base"), f"{field_name}.base"),
            )
        if kind == "periodic":
            forms = doc.get("forms")
            if not isinstance(forms, list) or not forms:
                raise ParseError(f"{field_name}.forms", "expected a non-empty list")
            return Periodic(tuple(parse_tail(f, f"{field_name}.forms[{i}]") for i, f in enumerate(forms)))
    except DomainError as exc:
        raise ParseError(field_name, str(exc)) from exc
    raise ParseError(f"{field_name}.kind", f"unknown tail kind {kind!r}")


def parse_ballseq(doc, field_name: str = "seq") -> BallSeq:
    if not isinstance(doc, dict):
        raise ParseError(field_name, "expected an object with 'prefix' and 'tail'")
    unknown = set(doc) - {"prefix", "tail"}
    if unknown:
        raise ParseError(field_name, f"unknown keys {sorted(unknown)}")
    raw = doc.get("prefix", [])
    if not isinstance(raw, list):
        raise ParseError(f"{field_name}.prefix", "expected a list")
    prefix = [parse_complex(v, f"{field_name}.prefix[{i}]") for i, v in enumerate(raw)]
    for i, v in enumerate(prefix):
        if abs(v) > 1.0 + SCALAR_TOL:
            raise ParseError(f"{field_name}.prefix[{i}]", f"modulus {abs(v)!r} exceeds 1")
    tail = parse_tail(doc.get("tail", {"kind": "zero"}), f"{field_name}.tail")
    try:
        return BallSeq(tuple(prefix), tail)
    except DomainError as exc:
        raise ParseError(f"{field_name}.tail", str(exc)) from exc

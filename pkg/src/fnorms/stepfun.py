"""Exact calculus for piecewise-constant functions on a finite window [0, T).

A StepFunction is the concrete carrier of every measurable function handled by
the package: lattice algebra, integration, distribution function, decreasing
rearrangement and the Cesaro/maximal transforms are all exact (the transforms
return closed-form PiecewiseCurve objects with hyperbolic-affine pieces).

An infinite measure interval is represented by a finite horizon T with every
function identically 0 on [T, inf); under that convention the rearrangement at
infinity is forced to 0, which keeps all integrals exact and finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Random generators snap breakpoints/values to this dyadic lattice so that
# piece lengths, their sums and differences are exact in binary floating
# point; distribution-preservation then holds with exact equality.
DYADIC_GRID = 2.0 ** -20
DYADIC_VALUE_GRID = 2.0 ** -6


class DomainMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class MeasureDomain:
    """Measure window [0, horizon). kind="unit" pins horizon to 1."""

    kind: str = "unit"
    horizon: float = 1.0

    def __post_init__(self):
        if self.kind not in ("unit", "horizon"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "unit" and self.horizon != 1.0:
            raise ValueError("unit domain must have horizon 1")
        if not (self.horizon > 0 and math.isfinite(self.horizon)):
            raise ValueError("horizon must be positive and finite")

    @classmethod
    def unit(cls) -> "MeasureDomain":
        return cls("unit", 1.0)

    @classmethod
    def window(cls, horizon: float) -> "MeasureDomain":
        return cls("horizon", float(horizon))

    def to_json(self) -> dict:
        return {"kind": self.kind, "T": self.horizon}

    @classmethod
    def from_json(cls, obj: dict) -> "MeasureDomain":
        return cls(obj["kind"], float(obj.get("T", 1.0)))


def _canonical(breaks: Sequence[float], values: Sequence[float]):
    """Merge equal-valued adjacent pieces and drop the zero tail."""
    out_b = [0.0]
    out_v: list[float] = []
    for t, v in zip(breaks[1:], values):
        if out_v and v == out_v[-1]:
            out_b[-1] = t
        else:
            out_b.append(t)
            out_v.append(v)
    while out_v and out_v[-1] == 0.0:
        out_v.pop()
        out_b.pop()
    return tuple(out_b), tuple(out_v)


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function: value values[j] on [breakpoints[j], breakpoints[j+1]).

    Canonical form (built by the factories): breakpoints strictly increasing,
    starting at 0; adjacent values distinct; no trailing zero piece; value 0
    on [breakpoints[-1], horizon). Instances are immutable and hashable.
    """

    domain: MeasureDomain
    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bp = self.breakpoints
        if not bp or bp[0] != 0.0:
            raise ValueError("breakpoints must start at 0")
        if len(bp) != len(self.values) + 1:
            raise ValueError("need exactly one value per piece")
        for a, b in zip(bp, bp[1:]):
            if not b > a:
                raise ValueError("breakpoints must be strictly increasing")
        if bp[-1] > self.domain.horizon + 1e-12:
            raise ValueError("support exceeds the domain horizon")

    # -- factories ---------------------------------------------------------

    @classmethod
    def make(cls, domain: MeasureDomain, breaks: Sequence[float], values: Sequence[float]) -> "StepFunction":
        b, v = _canonical(tuple(float(t) for t in breaks), tuple(float(x) for x in values))
        return cls(domain, b, v)

    @classmethod
    def zero(cls, domain: MeasureDomain) -> "StepFunction":
        return cls(domain, (0.0,), ())

    @classmethod
    def indicator(cls, domain: MeasureDomain, a: float, b: float, value: float = 1.0) -> "StepFunction":
        """value * characteristic function of [a, b)."""
        if not 0.0 <= a < b <= domain.horizon:
            raise ValueError("indicator interval must satisfy 0 <= a < b <= horizon")
        if a == 0.0:
            return cls.make(domain, (0.0, b), (value,))
        return cls.make(domain, (0.0, a, b), (0.0, value))

    @classmethod
    def from_pieces(cls, domain: MeasureDomain, pieces: Iterable[Sequence[float]]) -> "StepFunction":
        """Build from disjoint ascending [start, end, value] triples; gaps are 0."""
        breaks = [0.0]
        values: list[float] = []
        prev = 0.0
        for start, end, value in pieces:
            start, end, value = float(start), float(end), float(value)
            if start < prev - 1e-15:
                raise ValueError("pieces must be disjoint and ascending")
            if end <= start:
                raise ValueError("piece must have positive length")
            if end > domain.horizon + 1e-12:
                raise ValueError("piece exceeds the horizon")
            if start > prev:
                breaks.append(start)
                values.append(0.0)
            breaks.append(end)
            values.append(value)
            prev = end
        return cls.make(domain, breaks, values)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.values

    def pieces(self):
        """Yield (start, end, value) for the explicitly stored pieces."""
        return [(a, b, v) for a, b, v in zip(self.breakpoints, self.breakpoints[1:], self.values)]

    def support_end(self) -> float:
        return self.breakpoints[-1]

    def support_measure(self) -> float:
        acc = 0.0
        for a, b, v in self.pieces():
            if v != 0.0:
                acc += b - a
        return acc

    def sup_abs(self) -> float:
        return max((abs(v) for v in self.values), default=0.0)

    def __call__(self, t):
        ts = np.asarray(t, dtype=float)
        out = np.zeros_like(ts)
        bp = np.asarray(self.breakpoints)
        idx = np.searchsorted(bp, ts, side="right") - 1
        inside = (ts >= 0) & (idx >= 0) & (idx < len(self.values))
        if self.values:
            vals = np.asarray(self.values)
            out[inside] = vals[idx[inside]]
        return float(out) if np.isscalar(t) or ts.ndim == 0 else out

    # -- lattice algebra (pure; results re-canonicalized) -------------------

    def _merged(self, other: "StepFunction"):
        if self.domain != other.domain:
            raise DomainMismatchError("step functions live on different domains")
        breaks = sorted(set(self.breakpoints) | set(other.breakpoints))
        mids = [(a + b) / 2.0 for a, b in zip(breaks, breaks[1:])]
        va = self(np.asarray(mids)) if mids else np.zeros(0)
        vb = other(np.asarray(mids)) if mids else np.zeros(0)
        return breaks, va, vb

    def _zip_with(self, other: "StepFunction", op) -> "StepFunction":
        breaks, va, vb = self._merged(other)
        return StepFunction.make(self.domain, breaks, op(va, vb))

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return self._zip_with(other, lambda a, b: a + b)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self._zip_with(other, lambda a, b: a - b)

    def minimum(self, other: "StepFunction") -> "StepFunction":
        return self._zip_with(other, np.minimum)

    def maximum(self, other: "StepFunction") -> "StepFunction":
        return self._zip_with(other, np.maximum)

    def __abs__(self) -> "StepFunction":
        return StepFunction.make(self.domain, self.breakpoints, tuple(abs(v) for v in self.values))

    def __neg__(self) -> "StepFunction":
        return self.scale(-1.0)

    def scale(self, lam: float) -> "StepFunction":
        lam = float(lam)
        if lam == 0.0:
            return StepFunction.zero(self.domain)
        return StepFunction.make(self.domain, self.breakpoints, tuple(lam * v for v in self.values))

    def restrict(self, a: float, b: float) -> "StepFunction":
        """Pointwise product with the characteristic function of [a, b)."""
        if b <= a:
            return StepFunction.zero(self.domain)
        breaks = [0.0]
        values: list[float] = []
        cuts = sorted(set(self.breakpoints) | {a, min(b, self.domain.horizon)})
        cuts = [t for t in cuts if 0.0 <= t <= self.domain.horizon]
        for lo, hi in zip(cuts, cuts[1:]):
            mid = (lo + hi) / 2.0
            values.append(self(mid) if a <= mid < b else 0.0)
            breaks.append(hi)
        return StepFunction.make(self.domain, breaks, values)

    def pointwise_leq(self, other: "StepFunction", tol: float = 0.0) -> bool:
        _, va, vb = self._merged(other)
        return bool(np.all(va <= vb + tol))

    # -- measure-theoretic operations ---------------------------------------

    def integrate(self) -> float:
        """Exact integral; summation order fixed left-to-right over pieces."""
        acc = 0.0
        for a, b, v in self.pieces():
            acc += v * (b - a)
        return acc

    def integrate_abs(self) -> float:
        acc = 0.0
        for a, b, v in self.pieces():
            acc += abs(v) * (b - a)
        return acc

    def distribution(self, lam: float) -> float:
        """d_x(lam): Lebesgue measure of the strict superlevel set {|x| > lam}."""
        if lam < 0:
            raise ValueError("level must be nonnegative")
        acc = 0.0
        for a, b, v in self.pieces():
            if abs(v) > lam:
                acc += b - a
        return acc

    def _value_measure_multiset(self):
        """Grouped (|value|, total length) pairs, summed in descending-value order."""
        buckets: dict[float, float] = {}
        order: list[float] = []
        items = sorted(self.pieces(), key=lambda p: -abs(p[2]))
        for a, b, v in items:
            if v == 0.0:
                continue
            key = abs(v)
            if key not in buckets:
                buckets[key] = 0.0
                order.append(key)
            buckets[key] += b - a
        return [(k, buckets[k]) for k in order]

    def equimeasurable(self, other: "StepFunction") -> bool:
        """True iff |self| and |other| share the same exact distribution."""
        return self._value_measure_multiset() == other._value_measure_multiset()

    def decreasing_rearrangement(self) -> "StepFunction":
        """Pieces of |x| sorted by value descending, packed left from 0.

        Ties keep original piece order (stable sort), so the output is
        deterministic in the representation.
        """
        items = [(a, b, abs(v)) for a, b, v in self.pieces() if v != 0.0]
        items.sort(key=lambda p: -p[2])
        breaks = [0.0]
        values = []
        for a, b, v in items:
            breaks.append(breaks[-1] + (b - a))
            values.append(v)
        return StepFunction.make(self.domain, breaks, values)

    def cesaro(self) -> "PiecewiseCurve":
        """C(x)(t) = (1/t) * integral_0^t |x|; hyperbolic-affine per piece."""
        return _running_average_curve(abs(self))

    def maximal(self) -> "PiecewiseCurve":
        """x**(t) = (1/t) * integral_0^t x^(r); nonincreasing and continuous."""
        return _running_average_curve(self.decreasing_rearrangement())

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "pieces": [[a, b, v] for a, b, v in self.pieces()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StepFunction":
        domain = MeasureDomain.from_json(obj["domain"])
        return cls.from_pieces(domain, obj["pieces"])


# -- closed-form running averages -------------------------------------------

#: descriptor kinds: ("const", c, 0), ("affine", a, b) => a + b*t,
#: ("hyp", a, b) => a + b/t
CONST, AFFINE, HYP = "const", "affine", "hyp"


@dataclass(frozen=True)
class PiecewiseCurve:
    """Evaluable closed-form curve on (0, horizon] with a tail for t >= breakpoints[-1].

    Pieces are descriptors over (breakpoints[j], breakpoints[j+1]]; the tail
    descriptor covers t > breakpoints[-1]. Evaluable only: no lattice algebra.
    """

    breakpoints: tuple
    descriptors: tuple  # one (kind, a, b) per piece
    tail: tuple
    horizon: float

    def _eval_desc(self, desc, ts: np.ndarray) -> np.ndarray:
        kind, a, b = desc
        if kind == CONST:
            return np.full_like(ts, a)
        if kind == AFFINE:
            return a + b * ts
        return a + b / ts

    def __call__(self, t):
        ts = np.asarray(t, dtype=float)
        scalar = ts.ndim == 0
        ts = np.atleast_1d(ts)
        if np.any(ts <= 0):
            raise ValueError("curve is evaluable for t > 0 only")
        out = np.empty_like(ts)
        bp = np.asarray(self.breakpoints)
        # piece j covers (bp[j], bp[j+1]]
        idx = np.searchsorted(bp[1:], ts, side="left")
        for j, desc in enumerate(self.descriptors):
            mask = idx == j
            if np.any(mask):
                out[mask] = self._eval_desc(desc, ts[mask])
        tail_mask = ts > self.breakpoints[-1]
        if np.any(tail_mask):
            out[tail_mask] = self._eval_desc(self.tail, ts[tail_mask])
        return float(out[0]) if scalar else out

    def segments(self, upto: float):
        """(start, end, descriptor) triples covering (0, upto]."""
        segs = []
        for lo, hi, desc in zip(self.breakpoints, self.breakpoints[1:], self.descriptors):
            if lo >= upto:
                return segs
            segs.append((lo, min(hi, upto), desc))
        if upto > self.breakpoints[-1]:
            segs.append((self.breakpoints[-1], upto, self.tail))
        return segs

    def scale(self, lam: float) -> "PiecewiseCurve":
        """lam * curve for lam >= 0 (running averages are positively homogeneous)."""
        if lam < 0:
            raise ValueError("curves are nonnegative; scale factor must be >= 0")
        scale_desc = lambda d: (d[0], lam * d[1], lam * d[2])
        return PiecewiseCurve(self.breakpoints,
                              tuple(scale_desc(d) for d in self.descriptors),
                              scale_desc(self.tail), self.horizon)


def _running_average_curve(x: StepFunction) -> PiecewiseCurve:
    """(1/t) * integral_0^t x for a nonnegative step function x."""
    breaks = [0.0]
    descs = []
    cum = 0.0  # integral up to the current left endpoint
    for a, b, v in x.pieces():
        # on (a, b]: F(t) = cum + v*(t-a), so F(t)/t = v + (cum - v*a)/t
        offset = cum - v * a
        descs.append((CONST, v, 0.0) if offset == 0.0 else (HYP, v, offset))
        breaks.append(b)
        cum += v * (b - a)
    total = cum
    tail = (CONST, 0.0, 0.0) if total == 0.0 else (HYP, 0.0, total)
    if not descs:
        breaks = [0.0, x.domain.horizon]
        descs = [(CONST, 0.0, 0.0)]
        tail = (CONST, 0.0, 0.0)
    return PiecewiseCurve(tuple(breaks), tuple(descs), tail, x.domain.horizon)


# -- seeded generators --------------------------------------------------------

def random_step_function(rng: np.random.Generator, domain: MeasureDomain,
                         max_pieces: int = 6, vmax: float = 4.0,
                         nonneg: bool = True, allow_zero: bool = False) -> StepFunction:
    """Random step function on the dyadic lattice (exact piece arithmetic).

    Breakpoints are multiples of DYADIC_GRID, values multiples of
    DYADIC_VALUE_GRID, so lengths, sums of lengths and integrals of products
    are exact in floating point.
    """
    m = int(rng.integers(1, max_pieces + 1))
    cuts = rng.uniform(DYADIC_GRID, domain.horizon, size=m)
    cuts = np.unique(np.maximum(np.round(cuts / DYADIC_GRID), 1.0) * DYADIC_GRID)
    lo = 1 if allow_zero else int(1.0 / DYADIC_VALUE_GRID * 0.25)
    hi = int(vmax / DYADIC_VALUE_GRID)
    vals = rng.integers(lo, hi + 1, size=len(cuts)).astype(float) * DYADIC_VALUE_GRID
    if not nonneg:
        signs = rng.choice([-1.0, 1.0], size=len(vals))
        vals = vals * signs
    fn = StepFunction.make(domain, (0.0, *cuts), tuple(vals))
    if fn.is_zero:
        return StepFunction.indicator(domain, 0.0, domain.horizon / 2.0, 1.0)
    return fn


def random_ordered_pair(rng: np.random.Generator, domain: MeasureDomain,
                        max_pieces: int = 6, vmax: float = 4.0,
                        theta_range=(0.0, 1.0)):
    """(x, y) with 0 <= x <= y pointwise: x = y * theta, theta per piece."""
    y = random_step_function(rng, domain, max_pieces=max_pieces, vmax=vmax, nonneg=True)
    thetas = rng.uniform(theta_range[0], theta_range[1], size=len(y.values))
    x = StepFunction.make(domain, y.breakpoints, tuple(v * th for v, th in zip(y.values, thetas)))
    return x, y

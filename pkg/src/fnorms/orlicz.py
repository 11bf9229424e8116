"""Closed catalog of Orlicz functions with exact structural parameters.

The catalog is deliberately closed (five tags) so that the zero-set parameter
a_phi, the finiteness parameter b_phi, Young conjugates and the doubling
condition all have decidable answers per tag instead of sampled guesses.
Extending the catalog means adding a tag together with its closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Delta2Report:
    """Empirical doubling-condition probe result; never overrides the declared flag."""
    holds: bool
    K: Optional[float]
    fails_at: Optional[float]
    u_max: float
    K_cap: float
    declared: bool

    @property
    def agrees_with_declared(self) -> bool:
        return self.holds == self.declared


@dataclass(frozen=True)
class OrliczFunction:
    """Even, nondecreasing-on-[0,inf) function with phi(0)=0.

    tags:
      power(p>=1):              phi(u) = |u|^p
      flat_power(a>0, p>=1):    phi(u) = max(|u|-a, 0)^p
      capped(b>0, p>=1):        phi(u) = |u|^p for |u| <= b, +inf beyond
      exp_minus_one:            phi(u) = e^|u| - 1
      s_composed(base, s<=1):   phi(u) = base(|u|^s)   (s-convex, not convex
                                unless the composition happens to be)
    """

    tag: str
    p: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    base: Optional["OrliczFunction"] = None
    s: Optional[float] = None

    # -- declared structural flags ------------------------------------------

    @property
    def delta2_claimed(self) -> bool:
        if self.tag == "power":
            return True
        if self.tag == "s_composed":
            return self.base.delta2_claimed
        return False  # flat zone, cap or exponential growth all break doubling

    @property
    def n_function_at_inf_claimed(self) -> bool:
        """Superlinear growth at infinity (drives regularity of the pair)."""
        if self.tag == "power":
            return self.p > 1
        if self.tag == "flat_power":
            return self.p > 1
        if self.tag == "capped":
            return True  # jumps to +inf
        if self.tag == "exp_minus_one":
            return True
        return self.base.n_function_at_inf_claimed

    @property
    def convex_claimed(self) -> bool:
        return self.tag != "s_composed" or self.s == 1.0

    # -- evaluation -----------------------------------------------------------

    def __call__(self, u):
        scalar = np.isscalar(u) or np.asarray(u).ndim == 0
        x = np.abs(np.asarray(u, dtype=float))
        with np.errstate(over="ignore"):
            if self.tag == "power":
                out = x ** self.p
            elif self.tag == "flat_power":
                out = np.maximum(x - self.a, 0.0) ** self.p
            elif self.tag == "capped":
                out = np.where(x <= self.b, x ** self.p, np.inf)
            elif self.tag == "exp_minus_one":
                out = np.expm1(x)
            else:
                out = np.asarray(self.base(x ** self.s), dtype=float)
        return float(out) if scalar else out

    def params(self):
        """(a_phi, b_phi): largest zero of phi and supremum of finiteness."""
        if self.tag == "power":
            return 0.0, math.inf
        if self.tag == "flat_power":
            return self.a, math.inf
        if self.tag == "capped":
            return 0.0, self.b
        if self.tag == "exp_minus_one":
            return 0.0, math.inf
        a0, b0 = self.base.params()
        inv = 1.0 / self.s
        return a0 ** inv, (b0 ** inv if math.isfinite(b0) else math.inf)

    # -- Young conjugation -----------------------------------------------------

    def young_conjugate(self, u: float) -> float:
        """sup_{v>0} (|u| v - phi(v)); closed form for power, numeric otherwise."""
        if not self.convex_claimed:
            raise ValueError("Young conjugation needs a convex function")
        uu = abs(float(u))
        if uu == 0.0:
            return 0.0
        if self.tag == "power":
            if self.p == 1.0:
                return 0.0 if uu <= 1.0 else math.inf
            return (self.p - 1.0) * (uu / self.p) ** (self.p / (self.p - 1.0))
        return self._conjugate_numeric(uu)

    def _conjugate_numeric(self, uu: float) -> float:
        # profit h(v) = uu*v - phi(v), concave where phi convex; coarse log
        # grid then golden-section refinement between the argmax's neighbors
        V = max(10.0 * uu, 1e3)
        _, bphi = self.params()
        if math.isfinite(bphi):
            V = min(V, bphi)
        grid = np.geomspace(1e-8, V, 600)
        if math.isfinite(bphi):
            grid = np.unique(np.append(grid, bphi))
        h = uu * grid - self(grid)
        h = np.where(np.isfinite(h), h, -np.inf)
        i = int(np.argmax(h))
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, len(grid) - 1)]
        best = h[i]
        neg = lambda v: -(uu * v - float(self(v)))
        a, b = lo, hi
        c = b - _GOLDEN * (b - a)
        d = a + _GOLDEN * (b - a)
        fc, fd = neg(c), neg(d)
        while (b - a) > 1e-10 * max(1.0, b):
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - _GOLDEN * (b - a)
                fc = neg(c)
            else:
                a, c, fc = c, d, fd
                d = a + _GOLDEN * (b - a)
                fd = neg(d)
        refined = -min(fc, fd)
        return max(best, refined, 0.0)

    # -- doubling-condition probe ----------------------------------------------

    def delta2_probe(self, u_max: float = 50.0, points: int = 400,
                     K_cap: float = 1e6) -> Delta2Report:
        """Smallest empirical doubling constant on a log grid, or a witness.

        Reported alongside the declared flag; the probe never overrides it.
        """
        if not math.isfinite(u_max):
            raise ValueError("u_max must be finite")
        grid = np.geomspace(1e-8, u_max, points)
        worst = 0.0
        for u in grid:
            f1 = float(self(u))
            f2 = float(self(2.0 * u))
            if f1 == 0.0:
                if f2 > 0.0:
                    return Delta2Report(False, None, float(u), u_max, K_cap, self.delta2_claimed)
                continue
            if math.isinf(f2):
                return Delta2Report(False, None, float(u), u_max, K_cap, self.delta2_claimed)
            ratio = f2 / f1
            if ratio > K_cap:
                return Delta2Report(False, None, float(u), u_max, K_cap, self.delta2_claimed)
            worst = max(worst, ratio)
        return Delta2Report(True, worst, None, u_max, K_cap, self.delta2_claimed)

    def growth_ratio_evidence(self, u_lo: float = 1.0, u_hi: float = 1e6, points: int = 25):
        """phi(u)/u samples on a log grid: monotone-growth evidence for the
        superlinearity limit, never a certified limit."""
        grid = np.geomspace(u_lo, u_hi, points)
        with np.errstate(over="ignore", invalid="ignore"):
            ratios = np.asarray(self(grid), dtype=float) / grid
        finite = ratios[np.isfinite(ratios)]
        increasing = bool(np.all(np.diff(finite) > -1e-12)) if len(finite) > 1 else True
        return {"u": grid.tolist(), "ratio": ratios.tolist(), "monotone_growth": increasing}

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        if self.tag == "power":
            return {"tag": "power", "p": self.p}
        if self.tag == "flat_power":
            return {"tag": "flat_power", "a": self.a, "p": self.p}
        if self.tag == "capped":
            return {"tag": "capped", "b": self.b, "p": self.p}
        if self.tag == "exp_minus_one":
            return {"tag": "exp_minus_one"}
        return {"tag": "s_composed", "base": self.base.to_json(), "s": self.s}

    @classmethod
    def from_json(cls, obj: dict) -> "OrliczFunction":
        tag = obj["tag"]
        if tag == "power":
            return power(obj["p"])
        if tag == "flat_power":
            return flat_power(obj["a"], obj["p"])
        if tag == "capped":
            return capped(obj["b"], obj["p"])
        if tag == "exp_minus_one":
            return exp_minus_one()
        if tag == "s_composed":
            return s_composed(cls.from_json(obj["base"]), obj["s"])
        raise ValueError(f"unknown Orlicz tag {tag!r}")


def power(p: float) -> OrliczFunction:
    if p < 1:
        raise ValueError("power exponent must be >= 1")
    return OrliczFunction("power", p=float(p))


def flat_power(a: float, p: float) -> OrliczFunction:
    if a <= 0 or p < 1:
        raise ValueError("need a > 0 and p >= 1")
    return OrliczFunction("flat_power", a=float(a), p=float(p))


def capped(b: float, p: float) -> OrliczFunction:
    if b <= 0 or p < 1:
        raise ValueError("need b > 0 and p >= 1")
    return OrliczFunction("capped", b=float(b), p=float(p))


def exp_minus_one() -> OrliczFunction:
    return OrliczFunction("exp_minus_one")


def s_composed(base: OrliczFunction, s: float) -> OrliczFunction:
    if not 0.0 < s <= 1.0:
        raise ValueError("s must lie in (0, 1]")
    if base.tag == "s_composed":
        raise ValueError("composition nests at most once")
    return OrliczFunction("s_composed", base=base, s=float(s))

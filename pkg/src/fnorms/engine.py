"""Norm engine: the infimum construction

    |x|_f = inf_{k>0} k * f(e_1 + sum_i rho_i(x / k^(1/s)) e_i),

its Luxemburg (f = max) and Amemiya (f = l_p on R^2) special cases, minimizer
diagnostics, and the dual-side computations for n = 2 convex families.

Minimizer strategy assumes nothing beyond what is established: for s = 1 with
a monotone-norm f the scalar objective is convex in k (perspective
composition), so a bracketing scan plus golden section suffices; for s < 1 the
engine uses iterated grid refinement around the best bracket and flags the
result if the final grid was not unimodal. When the scan is still decreasing
at the smallest k the norm is realized as the limit of k * f(sum rho e_i)
along k = 2^-j, estimated by order-1 Richardson extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .modular import ModularComponent, SemimodularFamily, ProbeReport
from .orlicz import OrliczFunction
from .outer import OuterNorm
from .stepfun import StepFunction, random_step_function

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_J_MAX = 60  # scan covers k in [2^-60, 2^60]


class NotInSpaceError(ValueError):
    """The objective is infinite across the whole scan range."""


@dataclass(frozen=True)
class SpacePair:
    """Outer norm on R^n paired with its n-1 semimodular components."""

    f: OuterNorm
    family: SemimodularFamily

    def __post_init__(self):
        if self.f.n != self.family.n:
            raise ValueError(
                f"outer norm dimension {self.f.n} != family dimension {self.family.n}")

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "family": self.family.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "SpacePair":
        return cls(OuterNorm.from_json(obj["f"]), SemimodularFamily.from_json(obj["family"]))


@dataclass
class NormResult:
    value: float
    case: str  # attained | limit_at_zero | zero_input
    k0: Optional[float] = None
    objective_evaluations: int = 0
    tolerance_met: bool = True
    unimodal: bool = True
    limit_error: Optional[float] = None

    def to_json(self) -> dict:
        out = {"value": self.value, "case": self.case,
               "evals": self.objective_evaluations, "tol_met": self.tolerance_met}
        if self.case == "attained":
            out["k0"] = self.k0
        if self.case == "limit_at_zero":
            out["limit_error_estimate"] = self.limit_error
        if not self.unimodal:
            out["unimodal"] = False
        return out


class _Objective:
    """k -> k * f(e_1 + sum rho_i(x / k^(1/s)) e_i) with shared evaluators."""

    def __init__(self, pair: SpacePair, x: StepFunction):
        self.f = pair.f
        self.s = pair.family.s
        self.rho = pair.family.evaluator(x)
        self.evals = 0

    def _scaled(self, k: float) -> Optional[list]:
        try:
            c = k ** (-1.0 / self.s)
        except OverflowError:
            return None
        if math.isinf(c):
            return None
        vals = self.rho(c)
        if any(math.isinf(v) for v in vals):
            return None
        return vals

    def __call__(self, k: float) -> float:
        self.evals += 1
        vals = self._scaled(k)
        if vals is None:
            return math.inf
        return k * self.f(np.array([1.0, *vals]))

    def without_first_axis(self, k: float) -> float:
        """k * f(sum rho_i e_i): the limit-at-zero expression."""
        self.evals += 1
        vals = self._scaled(k)
        if vals is None:
            return math.inf
        return k * self.f(np.array([0.0, *vals]))


def objective(pair: SpacePair, x: StepFunction, k: float) -> float:
    if k <= 0:
        raise ValueError("k must be positive")
    return _Objective(pair, x)(k)


def _golden(fn: Callable[[float], float], a: float, b: float, rel_tol: float):
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > rel_tol * max(abs(a), abs(b), 1e-300):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    return (c, fc) if fc <= fd else (d, fd)


def f_norm(pair: SpacePair, x: StepFunction, tol_k: float = 1e-10,
           tol_v: float = 1e-12) -> NormResult:
    """Infimum of the scalar objective over k in (0, inf) to stated tolerance."""
    if x.is_zero:
        return NormResult(0.0, "zero_input")
    obj = _Objective(pair, x)

    # bracketing scan over k = 2^j, expanding both flanks until the objective
    # exceeds 10x the running minimum (or goes infinite on the way down)
    vals: dict[int, float] = {0: obj(1.0)}
    best_j, best_v = 0, vals[0]
    j = 0
    while j < _J_MAX:
        j += 1
        v = obj(2.0 ** j)
        vals[j] = v
        if v < best_v:
            best_j, best_v = j, v
        if math.isfinite(best_v) and v > 10.0 * best_v:
            break
    j = 0
    hit_floor = False
    while j > -_J_MAX:
        j -= 1
        v = obj(2.0 ** j)
        vals[j] = v
        if math.isinf(v):
            break
        if v <= best_v:  # ties move down so flat tails register as limit cases
            best_j, best_v = j, v
        if math.isfinite(best_v) and v > 10.0 * best_v:
            break
    else:
        hit_floor = True

    if not math.isfinite(best_v):
        raise NotInSpaceError("objective infinite over the whole scan range")

    still_decreasing = hit_floor and best_j == min(vals) and \
        vals.get(best_j + 1, math.inf) >= best_v
    if still_decreasing:
        # theorem branch (iii): the infimum is the limit at k -> 0+
        tail_js = list(range(-_J_MAX + 7, -_J_MAX - 1, -1))
        w = [obj.without_first_axis(2.0 ** tj) for tj in tail_js]
        extrap = [2.0 * b - a for a, b in zip(w, w[1:])]
        value = extrap[-1]
        err = abs(extrap[-1] - extrap[-2]) if len(extrap) > 1 else math.inf
        return NormResult(min(value, best_v), "limit_at_zero",
                          objective_evaluations=obj.evals,
                          tolerance_met=err <= max(tol_v, 1e-9 * max(abs(value), 1.0)),
                          limit_error=err)

    lo = 2.0 ** (best_j - 1)
    hi = 2.0 ** (best_j + 1)
    k_best = 2.0 ** best_j
    unimodal = True
    if pair.family.s == 1.0:
        # convex objective (perspective composition with a monotone norm)
        k0, v0 = _golden(obj, lo, hi, tol_k)
    else:
        # no convexity guarantee: iterated grid refinement, then golden locally
        for _ in range(3):
            grid = np.linspace(lo, hi, 64)
            gv = np.array([obj(k) for k in grid])
            i = int(np.argmin(gv))
            fv = gv[np.isfinite(gv)]
            if len(fv) > 2:
                im = int(np.argmin(fv))
                slack = 1e-12 * np.maximum(np.abs(fv), 1.0)
                down_ok = np.all(np.diff(fv[:im + 1]) <= slack[:im])
                up_ok = np.all(np.diff(fv[im:]) >= -slack[im:-1]) if im < len(fv) - 1 else True
                unimodal = unimodal and bool(down_ok and up_ok)
            if gv[i] < best_v:
                best_v = float(gv[i])
                k_best = float(grid[i])
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, len(grid) - 1)]
        k0, v0 = _golden(obj, lo, hi, tol_k)

    if v0 > best_v:
        k0, v0 = k_best, best_v
    return NormResult(v0, "attained", k0=k0, objective_evaluations=obj.evals,
                      tolerance_met=True, unimodal=unimodal)


def luxemburg_s_norm(family: SemimodularFamily, x: StepFunction, tol: float = 1e-12) -> float:
    """inf { u > 0 : rho(x / u^(1/s)) <= 1 } by bisection on the monotone map."""
    if x.is_zero:
        return 0.0
    rho = family.evaluator(x)
    s = family.s

    def level(u: float) -> float:
        try:
            c = u ** (-1.0 / s)
        except OverflowError:
            return math.inf
        return math.inf if math.isinf(c) else max(rho(c))

    lo, hi = None, None
    u = 1.0
    if level(u) <= 1.0:
        hi = u
        for _ in range(1100):
            u *= 0.5
            if level(u) > 1.0:
                lo = u
                break
            hi = u
        if lo is None:
            raise NotInSpaceError("modular never exceeds 1 down to underflow")
    else:
        lo = u
        for _ in range(1100):
            u *= 2.0
            if level(u) <= 1.0:
                hi = u
                break
            lo = u
        if hi is None:
            raise NotInSpaceError("modular stays above 1 up to overflow")

    while (hi - lo) > tol * hi:
        mid = 0.5 * (lo + hi)
        if level(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def amemiya_norm(family: SemimodularFamily, x: StepFunction, p: float) -> NormResult:
    """Single-component convex family paired with l_p on R^2 (p = inf -> max)."""
    from . import outer as _outer
    if family.s != 1.0 or len(family.components) != 1 or \
            family.components[0].operator != "identity":
        raise ValueError("Amemiya route needs s = 1 and a single identity component")
    if p == 1.0:
        f2 = _outer.l1(2)
    elif math.isinf(p):
        f2 = _outer.max_norm(2)
    else:
        f2 = _outer.lp(2, p)
    return f_norm(SpacePair(f2, family), x)


@dataclass(frozen=True)
class RegularityReport:
    branch: str  # regular_evidence | limit_case_evidence
    margin: float
    norm: float
    limit_estimate: Optional[float] = None


def regularity_check(pair: SpacePair, x: StepFunction, j_max: int = 40) -> RegularityReport:
    """Compare the small-k objective tail against the computed norm: a
    diverging tail is evidence the infimum is attained at interior k0, a tail
    flattening onto the norm is evidence for the limit-at-zero branch."""
    if x.is_zero:
        return RegularityReport("regular_evidence", margin=math.inf, norm=0.0)
    res = f_norm(pair, x)
    obj = _Objective(pair, x)
    tail = [obj(2.0 ** -j) for j in range(3 * j_max // 4, j_max + 1)]
    tail_min = min(tail)
    increasing_into_zero = all(a >= b - 1e-12 for a, b in zip(tail[1:], tail))
    if tail_min > 1.5 * res.value and increasing_into_zero:
        return RegularityReport("regular_evidence", margin=tail_min - res.value, norm=res.value)
    w = [obj.without_first_axis(2.0 ** -j) for j in range(j_max - 7, j_max + 1)]
    extrap = [2.0 * b - a for a, b in zip(w, w[1:])]
    return RegularityReport("limit_case_evidence", margin=tail_min - res.value,
                            norm=res.value, limit_estimate=extrap[-1])


# -- dual side (n = 2, s = 1, identity components) ------------------------------


def dual_modular(component: ModularComponent, y: StepFunction) -> float:
    """rho*(y) = sup_x { <x, y> - rho(x) } for an identity Orlicz component.

    Pointwise Fenchel duality under the integral: the supremum equals
    integral of w * conj(y / w) over the pieces of y.
    """
    if component.operator != "identity":
        raise ValueError("dual modular is computed for identity components only")
    if not component.phi.convex_claimed:
        raise ValueError("dual modular needs a convex component (s = 1)")
    breaks, yv, wv = y._merged(component.weight)
    total = 0.0
    for lo, hi, vy, vw in zip(breaks, breaks[1:], yv, wv):
        if vy == 0.0 or vw == 0.0:
            continue
        piece = vw * component.phi.young_conjugate(vy / vw) * (hi - lo)
        if math.isinf(piece):
            return math.inf
        total += piece
    return total


def dual_modular_bruteforce(component: ModularComponent, y: StepFunction,
                            v_hi: float = 1e4) -> float:
    """Independent route: maximize over step functions constant on y's pieces
    (coordinatewise concave 1-D maximizations by golden section)."""
    breaks, yv, wv = y._merged(component.weight)
    total = 0.0
    for lo, hi, vy, vw in zip(breaks, breaks[1:], yv, wv):
        if vy == 0.0 or vw == 0.0:
            continue
        length = hi - lo

        def profit(v: float) -> float:
            return (abs(vy) * v - vw * float(component.phi(v))) * length

        grid = np.geomspace(1e-9, v_hi, 400)
        pg = np.array([profit(v) for v in grid])
        pg = np.where(np.isfinite(pg), pg, -np.inf)
        i = int(np.argmax(pg))
        a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
        v_best, p_best = _golden(lambda v: -profit(v), a, b, 1e-12)
        total += max(-p_best, float(pg[i]), 0.0)
    return total


def pairing_integral(x: StepFunction, y: StepFunction) -> float:
    """Exact integral of x * y over the merged piece partition."""
    breaks, vx, vy = x._merged(y)
    acc = 0.0
    for lo, hi, a, b in zip(breaks, breaks[1:], vx, vy):
        acc += a * b * (hi - lo)
    return acc


@dataclass(frozen=True)
class DualInequalityReport:
    lower_estimate: float
    upper_bound: float
    passed: bool
    trials: int


def dual_norm_inequality_probe(pair: SpacePair, xstar: StepFunction,
                               trials: int = 200, seed: int = 0,
                               tol: float = 1e-8) -> DualInequalityReport:
    """sup { |<x, x*>| : |x|_f = 1 } (random lower estimate) against the dual
    objective inf_k k f*(1, rho*(x*/k)); requires n = 2, s = 1, an identity
    component and the symmetry f(1, u) = f(u, 1)."""
    from .outer import dual_norm as dual_eval
    if pair.f.n != 2 or pair.family.s != 1.0 or len(pair.family.components) != 1:
        raise ValueError("dual inequality route needs n = 2, s = 1, one component")
    if not pair.f.symmetric_2d():
        raise ValueError("dual inequality route needs f(1, u) = f(u, 1)")
    comp = pair.family.components[0]

    if xstar.is_zero:
        return DualInequalityReport(0.0, 0.0, True, 0)

    def dual_objective(k: float) -> float:
        rho_star = dual_modular(comp, xstar.scale(1.0 / k))
        if math.isinf(rho_star):
            return math.inf
        return k * dual_eval(pair.f, np.array([1.0, rho_star]))

    vals = {j: dual_objective(2.0 ** j) for j in range(-30, 31)}
    finite = {j: v for j, v in vals.items() if math.isfinite(v)}
    if not finite:
        raise NotInSpaceError("dual objective infinite over scan range")
    jb = min(finite, key=finite.get)
    k0, upper = _golden(dual_objective, 2.0 ** (jb - 1), 2.0 ** (jb + 1), 1e-10)
    upper = min(upper, finite[jb])

    rng = np.random.default_rng(seed)
    lower = 0.0
    for _ in range(trials):
        x = random_step_function(rng, xstar.domain, nonneg=False)
        nrm = f_norm(pair, x).value
        if nrm <= 0:
            continue
        x1 = x.scale(1.0 / nrm)  # s = 1 homogeneity puts x1 on the unit sphere
        lower = max(lower, abs(pairing_integral(x1, xstar)))
    return DualInequalityReport(lower, upper, lower <= upper + tol, trials)


def modular_norm_bound_probe(pair: SpacePair, trials: int = 200, seed: int = 0,
                             tol: float = 1e-8) -> ProbeReport:
    """For |x|_f < 1: rho(c^(1/s) x) <= |x|_f with c = min_i f(e_i); random
    functions are rescaled to random target norms via s-homogeneity."""
    rng = np.random.default_rng(seed)
    c = pair.f.min_basis_value()
    s = pair.family.s
    for _ in range(trials):
        x = random_step_function(rng, pair.family.domain, nonneg=True)
        nrm = f_norm(pair, x).value
        if nrm <= 0:
            continue
        target = float(rng.uniform(0.05, 0.95))
        lam = (target / nrm) ** (1.0 / s)
        rho_val = pair.family.eval_max(x, lam=lam * c ** (1.0 / s))
        if rho_val > target + tol:
            return ProbeReport("modular-norm-bound", False,
                               {"target_norm": target, "rho": rho_val, "x": x.to_json()})
    return ProbeReport("modular-norm-bound", True)

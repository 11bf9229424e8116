"""Outer norms f on R^n: evaluation, monotonicity modulus, duals, equivalence.

Every catalog tag is a monotone norm (so the coordinatewise-monotonicity
condition required by the norm construction holds by construction); strict and
uniform monotonicity differ per tag and are probed as well as declared.

The modulus of monotonicity delta_f is estimated by a deterministic grid
brute force: sphere points v from a normalized orthant grid, candidates
u = theta (.) v from a componentwise scaling grid, all (u, v) pairs pooled and
bucketed by f(u) so that one pool serves every epsilon level (which makes the
estimate nondecreasing in epsilon by construction). The uniform scaling
u = eps*v is admissible for every norm and yields the analytic cap
delta_f(eps) <= eps, which is applied exactly on lookup.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import qmc

_PROFILE_LEVELS = 1024
_profile_cache: dict = {}


@dataclass(frozen=True)
class OuterNorm:
    """tags: max | l1 | lp (1<p<inf) | weighted_lp (p>=1, w_i>0) | a_norm."""

    tag: str
    n: int
    p: Optional[float] = None
    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("outer norms need dimension >= 2")
        if self.tag == "lp" and not (self.p and 1.0 < self.p < math.inf):
            raise ValueError("lp needs 1 < p < inf")
        if self.tag == "weighted_lp":
            if not (self.p and self.p >= 1.0):
                raise ValueError("weighted_lp needs p >= 1")
            if len(self.weights) != self.n or any(w <= 0 for w in self.weights):
                raise ValueError("weights must be positive, one per coordinate")

    # -- evaluation -------------------------------------------------------------

    def eval_rows(self, V: np.ndarray) -> np.ndarray:
        A = np.abs(np.asarray(V, dtype=float))
        if self.tag == "max":
            return A.max(axis=-1)
        if self.tag == "l1":
            return A.sum(axis=-1)
        if self.tag == "lp":
            return (A ** self.p).sum(axis=-1) ** (1.0 / self.p)
        if self.tag == "weighted_lp":
            w = np.asarray(self.weights)
            if self.p == 1.0:
                return (w * A).sum(axis=-1)
            return (w * A ** self.p).sum(axis=-1) ** (1.0 / self.p)
        return A[..., 0] + A[..., 1:].max(axis=-1)

    def __call__(self, v) -> float:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.n,):
            raise ValueError(f"expected a vector of length {self.n}")
        return float(self.eval_rows(v[None, :])[0])

    def min_basis_value(self) -> float:
        return float(min(self(e) for e in np.eye(self.n)))

    @property
    def uniformly_monotone_claimed(self) -> bool:
        return self.tag in ("l1", "lp", "weighted_lp")

    def symmetric_2d(self) -> bool:
        """f(1,u) = f(u,1) for all u (hypothesis of the dual-norm inequality)."""
        if self.n != 2:
            return False
        if self.tag in ("max", "l1", "lp", "a_norm"):
            return True
        return self.weights[0] == self.weights[1]

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        out = {"tag": self.tag, "n": self.n}
        if self.p is not None:
            out["p"] = self.p
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "OuterNorm":
        tag = obj["tag"]
        n = int(obj["n"])
        if tag in ("max", "l1", "a_norm"):
            return cls(tag, n)
        if tag == "lp":
            return lp(n, obj["p"])
        if tag == "weighted_lp":
            return weighted_lp(n, obj["p"], obj["weights"])
        raise ValueError(f"unknown outer norm tag {tag!r}")


def max_norm(n: int) -> OuterNorm:
    return OuterNorm("max", n)


def l1(n: int) -> OuterNorm:
    return OuterNorm("l1", n)


def lp(n: int, p: float) -> OuterNorm:
    return OuterNorm("lp", n, p=float(p))


def weighted_lp(n: int, p: float, weights) -> OuterNorm:
    return OuterNorm("weighted_lp", n, p=float(p), weights=tuple(float(w) for w in weights))


def a_norm(n: int) -> OuterNorm:
    return OuterNorm("a_norm", n)


def default_resolution(n: int) -> int:
    return 64 if n == 2 else (16 if n == 3 else 8)


# -- modulus of monotonicity ------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityProfile:
    """Shared (u, v) pair pool bucketed by f(u); one pool serves all epsilon."""

    f: OuterNorm
    resolution: int
    suffix_min: tuple  # suffix_min[q] = min gap over pairs with level >= q
    grid_vacuous_from: float  # smallest eps with no grid pair at or above it

    def value(self, eps: float) -> float:
        if not 0.0 <= eps <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        q = min(int(eps * _PROFILE_LEVELS), _PROFILE_LEVELS)
        grid_val = self.suffix_min[q]
        # u = eps*v is always admissible with gap exactly eps (homogeneity)
        return min(grid_val, eps)

    def grid_vacuous(self, eps: float) -> bool:
        return eps >= self.grid_vacuous_from


def _orthant_mesh(n: int, res: int) -> np.ndarray:
    axis = np.linspace(0.0, 1.0, res)
    mesh = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1)
    return mesh.reshape(-1, n)


def monotonicity_profile(f: OuterNorm, resolution: Optional[int] = None) -> MonotonicityProfile:
    """Deterministic lower-envelope estimate of delta_f over all eps at once."""
    res = resolution or default_resolution(f.n)
    key = (f, res)
    cached = _profile_cache.get(key)
    if cached is not None:
        return cached

    mesh = _orthant_mesh(f.n, res)
    fv = f.eval_rows(mesh)
    keep = fv > 0
    V = mesh[keep] / fv[keep][:, None]  # points on the f-unit sphere
    theta = mesh  # componentwise scalings in [0,1]^n, including 0 and 1

    bucket_min = np.full(_PROFILE_LEVELS + 1, np.inf)
    chunk = max(1, (1 << 20) // max(len(theta), 1))
    for start in range(0, len(V), chunk):
        Vc = V[start:start + chunk]
        U = Vc[:, None, :] * theta[None, :, :]
        fu = f.eval_rows(U.reshape(-1, f.n))
        gap = 1.0 - f.eval_rows((Vc[:, None, :] - U).reshape(-1, f.n))
        np.maximum(gap, 0.0, out=gap)
        levels = np.minimum((fu * _PROFILE_LEVELS).astype(int), _PROFILE_LEVELS)
        levels = np.maximum(levels, 0)
        np.minimum.at(bucket_min, levels, gap)

    suffix = np.minimum.accumulate(bucket_min[::-1])[::-1]
    vac_idx = np.where(np.isinf(suffix))[0]
    vac_from = (vac_idx[0] / _PROFILE_LEVELS) if len(vac_idx) else 1.0 + 1.0 / _PROFILE_LEVELS
    profile = MonotonicityProfile(f, res, tuple(suffix.tolist()), float(vac_from))
    _profile_cache[key] = profile
    return profile


def monotonicity_modulus(f: OuterNorm, eps: float, resolution: Optional[int] = None) -> float:
    """delta_f(eps) lower-envelope estimate from the shared pair pool."""
    return monotonicity_profile(f, resolution).value(eps)


def uniformly_monotone_probe(f: OuterNorm, resolution: Optional[int] = None,
                             eps_grid=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)) -> bool:
    """Empirical UM predicate: delta_f > 0 across the epsilon grid."""
    prof = monotonicity_profile(f, resolution)
    return all(prof.value(e) > 0.0 for e in eps_grid)


# -- duals --------------------------------------------------------------------


def dual_of(f: OuterNorm) -> Optional[OuterNorm]:
    """Closed-form dual where the dual is again a catalog member."""
    if f.tag == "max":
        return l1(f.n)
    if f.tag == "l1":
        return max_norm(f.n)
    if f.tag == "lp":
        q = f.p / (f.p - 1.0)
        return lp(f.n, q)
    if f.tag == "weighted_lp" and f.p > 1.0:
        q = f.p / (f.p - 1.0)
        return weighted_lp(f.n, q, tuple(w ** (1.0 - q) for w in f.weights))
    return None


def dual_norm(f: OuterNorm, v) -> float:
    """f*(v) = sup { <v, u> : f(u) <= 1 }; closed form where known."""
    v = np.asarray(v, dtype=float)
    closed = dual_of(f)
    if closed is not None:
        return closed(v)
    if f.tag == "weighted_lp":  # p == 1: dual is the weighted max
        return float(np.max(np.abs(v) / np.asarray(f.weights)))
    return _dual_bruteforce(f, v)


def _dual_bruteforce(f: OuterNorm, v: np.ndarray, tol: float = 1e-6) -> float:
    """Sup of <|v|, u> over the orthant part of the f-sphere by grid shrinking."""
    target = np.abs(v)
    res = 17
    lo = np.zeros(f.n)
    hi = np.ones(f.n)
    best_val = 0.0
    best_dir = np.ones(f.n) / f(np.ones(f.n))
    for _ in range(60):
        axes = [np.linspace(l, h, res) for l, h in zip(lo, hi)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, f.n)
        norms = f.eval_rows(mesh)
        keep = norms > 0
        sphere = mesh[keep] / norms[keep][:, None]
        scores = sphere @ target
        i = int(np.argmax(scores))
        improvement = scores[i] - best_val
        if scores[i] > best_val:
            best_val = float(scores[i])
            best_dir = mesh[keep][i]
        width = (hi - lo) * 0.5
        lo = np.maximum(best_dir - width / 2.0, 0.0)
        hi = np.minimum(best_dir + width / 2.0, 1.0)
        if improvement < tol * max(1.0, best_val) and np.max(hi - lo) < 1e-8:
            break
    return best_val


# -- equivalence constants -------------------------------------------------------


def equivalence_constants(f: OuterNorm, g: OuterNorm, samples: int = 2048):
    """(m, M) with m*f <= g <= M*f at every sampled direction.

    Quasi-random orthant directions plus all 0/1 corner points; the corners
    are extremal for every catalog tag, so pairs of catalog norms get their
    exact constants.
    """
    if f.n != g.n:
        raise ValueError("norms must share a dimension")
    n = f.n
    halton = qmc.Halton(d=n, scramble=False)
    pts = halton.random(samples)
    corners = np.array([c for c in itertools.product((0.0, 1.0), repeat=n) if any(c)])
    dirs = np.vstack([pts, corners])
    fv = f.eval_rows(dirs)
    keep = fv > 1e-12
    ratios = g.eval_rows(dirs[keep]) / fv[keep]
    return float(ratios.min()), float(ratios.max())


# -- randomized structural probes ---------------------------------------------------


@dataclass(frozen=True)
class CrucialReport:
    crucial_ok: bool
    crucial_witness: Optional[tuple]
    strict_ok: bool
    strict_witness: Optional[tuple]
    trials: int


def crucial_probe(f: OuterNorm, trials: int = 1000, seed: int = 0) -> CrucialReport:
    """Check slice monotonicity (first coordinate pinned to 1) and strict
    monotonicity on the orthant; structured axis-drop pairs are always included
    because they witness strictness failures of max-like tags."""
    rng = np.random.default_rng(seed)
    crucial_witness = None
    strict_witness = None

    # structured candidates: v with ones, u = v with one coordinate zeroed
    structured = []
    for i in range(f.n):
        v = np.ones(f.n)
        u = v.copy()
        u[i] = 0.0
        structured.append((u, v))

    for _ in range(trials):
        x_rest = rng.uniform(0.0, 3.0, size=f.n - 1)
        gap = rng.uniform(0.0, 1.0, size=f.n - 1)
        x = np.concatenate([[1.0], x_rest])
        y = np.concatenate([[1.0], x_rest + gap])
        if f(x) > f(y) + 1e-12 and crucial_witness is None:
            crucial_witness = (x.tolist(), y.tolist())

    pairs = list(structured)
    for _ in range(trials):
        u = rng.uniform(0.0, 2.0, size=f.n)
        bump = rng.uniform(0.0, 1.0, size=f.n) * (rng.random(f.n) < 0.5)
        if not bump.any():
            bump[int(rng.integers(f.n))] = rng.uniform(0.1, 1.0)
        pairs.append((u, u + bump))
    for u, v in pairs:
        if not np.any(v - u):
            continue
        if f(u) >= f(v) - 1e-15 and strict_witness is None:
            strict_witness = (np.asarray(u).tolist(), np.asarray(v).tolist())

    return CrucialReport(crucial_witness is None, crucial_witness,
                         strict_witness is None, strict_witness, trials)

"""Built-in space matrix and JSON loading helpers.

The matrix is the reproducibility surface for the verification suites: power
families p in {1.5, 2, 3} crossed with outer norms {l1, l2, max} and operators
{identity, cesaro}, plus exponential (non-doubling) negatives.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from . import orlicz, outer
from .engine import SpacePair
from .modular import ModularComponent, SemimodularFamily, uniform_weight
from .stepfun import MeasureDomain, StepFunction


def simple_space(f_tag: str, phi: orlicz.OrliczFunction, operator: str = "identity",
                 s: float = 1.0, domain: MeasureDomain = None, n: int = 2) -> SpacePair:
    domain = domain or MeasureDomain.unit()
    f = {"l1": outer.l1, "max": outer.max_norm, "a_norm": outer.a_norm}.get(f_tag)
    f = f(n) if f else outer.lp(n, float(f_tag.lstrip("l")))
    w = uniform_weight(domain)
    comps = tuple(ModularComponent(phi, w, operator) for _ in range(n - 1))
    return SpacePair(f, SemimodularFamily(s, comps))


def builtin_matrix() -> dict[str, SpacePair]:
    """Named space catalog used by `verify --matrix` and the test suites."""
    spaces: dict[str, SpacePair] = {}
    for p in (1.5, 2.0, 3.0):
        for f_tag in ("l1", "l2", "max"):
            for op in ("identity", "cesaro"):
                name = f"{f_tag}-power{p:g}-{op}"
                spaces[name] = simple_space(f_tag, orlicz.power(p), operator=op)
    for f_tag in ("l1", "l2", "max"):
        spaces[f"{f_tag}-exp-identity"] = simple_space(f_tag, orlicz.exp_minus_one())
    return spaces


def dashboard_matrix() -> dict[str, SpacePair]:
    """The subset of the matrix satisfying the seven-way theorem hypotheses
    (uniformly monotone outer norm, identity components)."""
    return {name: pair for name, pair in builtin_matrix().items()
            if pair.f.uniformly_monotone_claimed and
            all(c.operator == "identity" for c in pair.family.components)}


def fixture_names() -> list[str]:
    root = resources.files("fnorms").joinpath("fixtures")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_space(path_or_name: str) -> SpacePair:
    """Load a space spec from a filesystem path, a shipped fixture name, or a
    builtin matrix name."""
    p = Path(path_or_name)
    if p.exists():
        return SpacePair.from_json(json.loads(p.read_text()))
    fixture = resources.files("fnorms").joinpath("fixtures", path_or_name)
    if fixture.is_file():
        return SpacePair.from_json(json.loads(fixture.read_text()))
    matrix = builtin_matrix()
    if path_or_name in matrix:
        return matrix[path_or_name]
    raise FileNotFoundError(f"no space spec at {path_or_name!r} (not a file, fixture "
                            f"or builtin name)")


def load_function(path: str) -> StepFunction:
    return StepFunction.from_json(json.loads(Path(path).read_text()))

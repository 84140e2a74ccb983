"""Scenario files: a YAML description of a system, a Borel, a weight and options.

The schema is documented in ``docs/scenario.md``.  Every error raised here is
a :class:`ScenarioError` naming the offending key path.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import yaml

from .borel import BorelSystem, check_compatibility, explicit, make_named
from .diagsys import GENERATORS, DiagonalSystem, RestrictionMap, repeat_pattern
from .rootdata import FAMILIES, ValidationError, WeylElt, eps_weight, from_fundamental
from .weights import WeightSystem
from .weyl_limit import Branch, LimitWeylElt

SCHEMA_VERSION = 1
SHIPPED_DIR = Path(__file__).parent / "scenarios"


class ScenarioError(ValidationError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass(frozen=True)
class Scenario:
    name: str
    system: DiagonalSystem
    borel: BorelSystem
    weight: Optional[WeightSystem]
    weyl_element: Optional[LimitWeylElt]
    options: dict = field(default_factory=dict)
    sha256: str = ""

    @property
    def horizon(self) -> int:
        return self.options.get("horizon", self.system.num_levels)


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise ScenarioError(where, f"missing key {key!r}")
    return d[key]


def _int(x: Any, where: str, lo: int = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ScenarioError(where, f"expected an integer, got {x!r}")
    if lo is not None and x < lo:
        raise ScenarioError(where, f"must be at least {lo}")
    return x


def _frac(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise ScenarioError(where, f"expected a number, got {x!r}")
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise ScenarioError(where, f"expected a number such as 3 or -1/2, got {x!r}") from None


def _int_list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise ScenarioError(where, "expected a list")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _system(doc: dict, levels_default: Optional[int]) -> DiagonalSystem:
    family = _need(doc, "family", "")
    if family not in FAMILIES:
        raise ScenarioError("family", f"expected one of {', '.join(FAMILIES)}")
    rank = _int(_need(doc, "initial_rank", ""), "initial_rank", 1)
    steps = _need(doc, "steps", "")
    if not isinstance(steps, dict):
        raise ScenarioError("steps", "expected a mapping with 'generator', 'repeat' or 'explicit'")
    kinds = [k for k in ("generator", "repeat", "explicit") if k in steps]
    if len(kinds) != 1:
        raise ScenarioError("steps", "give exactly one of 'generator', 'repeat', 'explicit'")
    kind = kinds[0]
    try:
        if kind == "explicit":
            maps = []
            for i, st in enumerate(steps["explicit"] or []):
                w = f"steps.explicit[{i}]"
                copies = [_int_list(c, f"{w}.copies[{j}]") for j, c in enumerate(_need(st, "copies", w))]
                target = _int(_need(st, "target_dim", w), f"{w}.target_dim", 1)
                src = len(copies[0]) if copies else 0
                maps.append(RestrictionMap(family, src, target, tuple(tuple(c) for c in copies)))
            return DiagonalSystem(family, rank, tuple(maps), doc.get("name", ""))
        levels = steps.get("levels", levels_default)
        if levels is None:
            raise ScenarioError("steps.levels", "needed (or set options.horizon)")
        levels = _int(levels, "steps.levels", 1)
        if kind == "generator":
            gen = steps["generator"]
            if gen not in GENERATORS:
                raise ScenarioError("steps.generator", f"unknown generator; choose from {sorted(GENERATORS)}")
            system = GENERATORS[gen](levels, rank) if gen == "slinf" else GENERATORS[gen](levels)
            if (system.family, system.initial_rank) != (family, rank):
                raise ScenarioError("steps.generator",
                                    f"{gen} is family {system.family}, initial rank {system.initial_rank}")
            return system
        rep = steps["repeat"]
        signs = _int_list(_need(rep, "copies", "steps.repeat"), "steps.repeat.copies")
        if any(s not in (1, -1) for s in signs):
            raise ScenarioError("steps.repeat.copies", "entries are +1 (natural) or -1 (dual)")
        zeros = _int(rep.get("zeros", 0), "steps.repeat.zeros", 0)
        return repeat_pattern(family, rank, signs, zeros, levels)
    except ScenarioError:
        raise
    except ValidationError as e:
        raise ScenarioError("steps", str(e)) from None


def _borel(doc: dict, system: DiagonalSystem) -> BorelSystem:
    spec = _need(doc, "borel", "")
    try:
        if isinstance(spec, dict) and "named" in spec:
            return make_named(system, spec["named"])
        if isinstance(spec, dict) and "arrangements" in spec:
            arr = [_int_list(a, f"borel.arrangements[{i}]") for i, a in enumerate(spec["arrangements"])]
            borel = explicit(system, arr)
            bad = check_compatibility(system, borel)
            if bad is not None:
                raise ScenarioError("borel.arrangements", f"orders are not compatible ({bad})")
            return borel
    except ScenarioError:
        raise
    except ValidationError as e:
        raise ScenarioError("borel", str(e)) from None
    raise ScenarioError("borel", "expected 'named' or 'arrangements'")


def _coeff_row(row: Any, size: int, where: str) -> list:
    """A full list, or a sparse mapping ``{index: value}`` with negative
    indices counting from the end; repeated indices add up."""
    if isinstance(row, list):
        if len(row) != size:
            raise ScenarioError(where, f"expected {size} entries, got {len(row)}")
        return [_frac(v, f"{where}[{i}]") for i, v in enumerate(row)]
    if isinstance(row, dict):
        out = [Fraction(0)] * size
        for k, v in row.items():
            i = _int(k, f"{where} key")
            idx = i - 1 if i > 0 else size + i
            if i == 0 or not 0 <= idx < size:
                raise ScenarioError(where, f"index {i} outside 1..{size}")
            out[idx] += _frac(v, f"{where}[{k}]")
        return out
    raise ScenarioError(where, "expected a list or an {index: value} mapping")


def _weight(doc: dict, system: DiagonalSystem, borel: BorelSystem) -> Optional[WeightSystem]:
    spec = doc.get("weight")
    if spec is None:
        return None
    if not isinstance(spec, dict):
        raise ScenarioError("weight", "expected a mapping")
    try:
        if "fundamental" in spec:
            rows = spec["fundamental"]
            if isinstance(rows, dict):  # one sparse rule applied at every level
                rows = [rows] * system.num_levels
            if not isinstance(rows, list) or len(rows) != system.num_levels:
                raise ScenarioError("weight.fundamental", f"expected {system.num_levels} levels")
            coeffs = [_coeff_row(r, system.rank(n), f"weight.fundamental[{n - 1}]")
                      for n, r in enumerate(rows, start=1)]
            return WeightSystem(system, tuple(from_fundamental(a, system.level(n), borel.order(n))
                                              for n, a in enumerate(coeffs, start=1)))
        if "eps" in spec:
            rows = spec["eps"]
            if not isinstance(rows, list) or len(rows) != system.num_levels:
                raise ScenarioError("weight.eps", f"expected {system.num_levels} levels")
            return WeightSystem(system, tuple(eps_weight(_coeff_row(r, system.level(n).dim, f"weight.eps[{n - 1}]"))
                                              for n, r in enumerate(rows, start=1)))
        if "top_eps" in spec:
            top = _coeff_row(spec["top_eps"], system.level(system.num_levels).dim, "weight.top_eps")
            return WeightSystem.from_top(system, top)
    except ScenarioError:
        raise
    except ValidationError as e:
        raise ScenarioError("weight", str(e)) from None
    raise ScenarioError("weight", "expected 'fundamental', 'eps' or 'top_eps'")


def _weyl(doc: dict, system: DiagonalSystem) -> Optional[LimitWeylElt]:
    spec = doc.get("weyl_element")
    if spec is None:
        return None
    base = _int(_need(spec, "base_level", "weyl_element"), "weyl_element.base_level", 1)
    parts = []
    for i, p in enumerate(_need(spec, "parts", "weyl_element")):
        w = f"weyl_element.parts[{i}]"
        try:
            parts.append((Branch(base, tuple(_int_list(_need(p, "branch", w), f"{w}.branch"))),
                          WeylElt(tuple(_int_list(_need(p, "perm", w), f"{w}.perm")))))
        except ScenarioError:
            raise
        except ValidationError as e:
            raise ScenarioError(w, str(e)) from None
    elt = LimitWeylElt(base, tuple(parts))
    try:
        elt.validate(system)
    except ValidationError as e:
        raise ScenarioError("weyl_element", str(e)) from None
    return elt


_OPTION_KEYS = {"horizon", "window", "bound", "level", "prune"}


def parse(text: str) -> Scenario:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ScenarioError(where, f"YAML syntax error: {getattr(e, 'problem', e)}") from None
    if not isinstance(doc, dict):
        raise ScenarioError("", "a scenario is a YAML mapping")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ScenarioError("schema_version", f"unsupported version {version!r}")
    options = doc.get("options") or {}
    if not isinstance(options, dict):
        raise ScenarioError("options", "expected a mapping")
    unknown = set(options) - _OPTION_KEYS
    if unknown:
        raise ScenarioError("options", f"unknown keys {sorted(unknown)}")
    for k in ("horizon", "window", "bound", "level"):
        if k in options:
            _int(options[k], f"options.{k}", 0 if k == "bound" else 1)
    system = _system(doc, options.get("horizon"))
    if options.get("horizon", system.num_levels) > system.num_levels:
        raise ScenarioError("options.horizon", f"exceeds the {system.num_levels} levels of the system")
    borel = _borel(doc, system)
    return Scenario(
        name=str(doc.get("name", "")),
        system=system,
        borel=borel,
        weight=_weight(doc, system, borel),
        weyl_element=_weyl(doc, system),
        options=dict(options),
        sha256=hashlib.sha256(text.encode()).hexdigest(),
    )


def load(path) -> Scenario:
    p = Path(path)
    if not p.exists() and (SHIPPED_DIR / f"{path}.yaml").exists():
        p = SHIPPED_DIR / f"{path}.yaml"
    try:
        text = p.read_text()
    except OSError as e:
        raise ScenarioError(str(path), f"cannot read scenario ({e.strerror})") from None
    return parse(text)


def shipped() -> list:
    return sorted(p.stem for p in SHIPPED_DIR.glob("*.yaml"))

"""Levelwise Bott-Borel-Weil and its stabilization across a diagonal system."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .borel import BorelSystem
from .diagsys import DiagonalSystem, is_root_reductive, multiplicity, restrict_weight
from .rootdata import (
    Singular, Straightened, WeylElt, in_long_subgroup, pairing, simple_roots, straighten,
    weights_equal,
)
from .weights import WeightSystem
from .weyl_limit import Branch, LimitWeylElt

WORKERS_ENV = "DIAGBBW_WORKERS"


@dataclass(frozen=True)
class LevelResult:
    level: int
    outcome: Union[Singular, Straightened]

    @property
    def acyclic(self) -> bool:
        return isinstance(self.outcome, Singular)

    @property
    def degree(self) -> Optional[int]:
        return None if self.acyclic else self.outcome.degree


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Acyclic" | "Nonvanishing" | "Undetermined"
    horizon: int
    window: int
    levels: tuple  # LevelResult per level
    degree: Optional[int] = None
    limit_element: Optional[LimitWeylElt] = None  # w with lambda = w . mu
    highest_weight: Optional[WeightSystem] = None
    stabilized_at: Optional[int] = None
    separation_level: Optional[int] = None
    reason: str = ""
    certificate: dict = field(default_factory=dict)
    annotation: str = "G/B"

    @property
    def nonvanishing(self) -> bool:
        return self.kind == "Nonvanishing"


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def level_cohomology(system: DiagonalSystem, borel: BorelSystem, weight_system: WeightSystem,
                     n: int) -> LevelResult:
    return LevelResult(n, straighten(weight_system[n], system.level(n), borel.order(n)))


def all_levels(system: DiagonalSystem, borel: BorelSystem, weight_system: WeightSystem,
               horizon: Optional[int] = None) -> tuple:
    N = horizon or weight_system.num_levels
    levels = range(1, N + 1)
    workers = _workers()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return tuple(ex.map(lambda n: level_cohomology(system, borel, weight_system, n), levels))
    return tuple(level_cohomology(system, borel, weight_system, n) for n in levels)


# --------------------------------------------------------------------------
# Coherence between consecutive levels


def _moved(w: WeylElt) -> set:
    return {i for i, x in enumerate(w.images) if x != i + 1}


def block_decomposition(system: DiagonalSystem, n: int, w_up: WeylElt):
    """Split a level-(n+1) element into level-n pieces, one per copy of step ``n``.

    Returns the list of pieces, or ``None`` if ``w_up`` does not preserve the
    copy blocks (or moves a zero-target index).
    """
    step = system.step(n)
    pieces = []
    rebuilt = WeylElt.identity(step.target_dim)
    for c in range(step.s):
        u = step.extract(c, w_up)
        if u is None:
            return None
        pieces.append(u)
        rebuilt = rebuilt * step.inject(c, u)
    if rebuilt != w_up:
        return None
    return pieces


def coherent(system: DiagonalSystem, n: int, w_n: WeylElt, w_up: WeylElt) -> bool:
    """``w_up`` is a product of branch images of disjoint pieces whose product is ``w_n``."""
    pieces = block_decomposition(system, n, w_up)
    if pieces is None:
        return False
    seen, prod = set(), WeylElt.identity(w_n.size)
    for u in pieces:
        mv = _moved(u)
        if mv & seen:
            return False
        seen |= mv
        prod = prod * u
    return prod == w_n


def recover_element(system: DiagonalSystem, m: int, N: int, w_top: WeylElt) -> Optional[LimitWeylElt]:
    """Read the branch data of ``w_top`` (level ``N``) back to base level ``m``."""

    def decomp(elem, k):
        if k == m:
            return {(): elem}
        pieces = block_decomposition(system, k - 1, elem)
        if pieces is None:
            return None
        out = {}
        for c, u in enumerate(pieces, start=1):
            if u.is_identity():
                continue
            sub = decomp(u, k - 1)
            if sub is None:
                return None
            for path, e in sub.items():
                out[path + (c,)] = e
        return out

    parts = decomp(w_top, N)
    if parts is None:
        return None
    if m == N:
        sup = tuple((Branch(m, (1,)), e) for e in parts.values() if not e.is_identity())
    else:
        sup = tuple((Branch(m, path), e) for path, e in sorted(parts.items()))
    return LimitWeylElt(m, sup)


def product_level_cohomology(system: DiagonalSystem, borel: BorelSystem, weight_system: WeightSystem,
                             n: int) -> tuple:
    """Straighten the restriction of ``lambda_{n+1}`` to each simple factor of
    the intermediate group ``G_n x ... x G_n``; the product's degree is the sum."""
    step = system.step(n)
    lvl, order = system.level(n), borel.order(n)
    factors = tuple(straighten(step.pull_back(c, weight_system[n + 1]), lvl, order) for c in range(step.s))
    if any(isinstance(f, Singular) for f in factors):
        return factors, None
    return factors, sum(f.degree for f in factors)


# --------------------------------------------------------------------------
# The analyzer


def analyze(system: DiagonalSystem, borel: BorelSystem, weight_system: WeightSystem,
            horizon: Optional[int] = None, window: int = 2) -> Verdict:
    N = horizon or weight_system.num_levels
    if N > weight_system.num_levels:
        return Verdict("Undetermined", N, window, (), reason="weight system shorter than horizon")
    levels = all_levels(system, borel, weight_system, N)
    if window < 1 or N < window:
        return Verdict("Undetermined", N, window, levels, reason=f"horizon {N} shorter than window {window}")
    win = levels[N - window:]
    m = N - window + 1
    cert = {"window_levels": [r.level for r in win]}

    if all(r.acyclic for r in win):
        cert["pattern"] = "singular window"
        return Verdict("Acyclic", N, window, levels, reason="every window level is singular",
                       certificate=cert)
    if any(r.acyclic for r in win):
        return Verdict("Undetermined", N, window, levels, reason="window mixes singular and regular levels",
                       certificate=cert)

    degrees = [r.degree for r in win]
    coh = [coherent(system, r.level, r.outcome.w, nxt.outcome.w) for r, nxt in zip(win, win[1:])]
    cert["degrees"] = degrees
    cert["coherent_steps"] = coh

    if len(set(degrees)) > 1:
        if all(a < b for a, b in zip(degrees, degrees[1:])) and not any(coh):
            cert["pattern"] = "divergent degree with coherence failure"
            return Verdict("Acyclic", N, window, levels, reason="degrees grow and never cohere",
                           certificate=cert)
        return Verdict("Undetermined", N, window, levels, reason="degree not constant on the window",
                       certificate=cert)
    j = degrees[0]

    mus = [r.outcome.dominant for r in win]
    consistent = [weights_equal(system.family, restrict_weight(system, r.level, mus[k + 1]), mus[k])
                  for k, r in enumerate(win[:-1])]
    cert["restriction_consistent"] = consistent
    if not all(consistent):
        return Verdict("Undetermined", N, window, levels, degree=j,
                       reason="dominant weights are not restriction-consistent", certificate=cert)
    if not all(coh):
        return Verdict("Undetermined", N, window, levels, degree=j,
                       reason="Weyl elements do not cohere across copies", certificate=cert)
    if system.family == "B":
        flips_ok = [in_long_subgroup(r.outcome.w, borel.order(r.level)) for r in win[1:]]
        cert["long_subgroup"] = flips_ok
        if not all(flips_ok):
            return Verdict("Undetermined", N, window, levels, degree=j,
                           reason="type B element leaves the long-root subgroup", certificate=cert)

    # straightening sends lambda to mu; the element with lambda = w . mu is its inverse
    element = recover_element(system, m, N, win[-1].outcome.w.inverse())
    if element is None:
        return Verdict("Undetermined", N, window, levels, degree=j,
                       reason="branch data could not be recovered", certificate=cert)
    element = element.canonical()
    hw = [mus[0]]
    for n in range(m - 1, 0, -1):
        hw.insert(0, restrict_weight(system, n, hw[0]))
    hw.extend(mus[1:])
    highest = WeightSystem(system.truncate(N), tuple(hw))
    sep = element.separation_level(N) if element.nontrivial() else m
    cert["pattern"] = "stable window"
    return Verdict("Nonvanishing", N, window, levels, degree=j, limit_element=element,
                   highest_weight=highest, stabilized_at=m, separation_level=sep,
                   reason=f"degree {j} stable and coherent on levels {m}..{N}", certificate=cert)


def parabolic_cohomology(system: DiagonalSystem, borel_refining_P: BorelSystem, weight_system: WeightSystem,
                         horizon: Optional[int] = None, window: int = 2, parabolic: str = "P") -> Verdict:
    """Cohomology of the bundle on ``G/P`` induced by the simple ``P``-module of highest weight ``lambda``.

    It coincides with the ``G/B`` answer for any Borel contained in ``P``.
    """
    v = analyze(system, borel_refining_P, weight_system, horizon, window)
    return Verdict(**{**v.__dict__, "annotation": f"G/{parabolic}"})


@dataclass(frozen=True)
class ProjectivityReport:
    root_reductive: bool
    strictly_dominant_witness_possible: bool
    horizon: int
    successor_counts: tuple  # multiplicity(1, n) for n = 1..horizon
    witness_level: Optional[int] = None


def projectivity_obstruction(system: DiagonalSystem, borel: BorelSystem, horizon: Optional[int] = None,
                             weight: Optional[WeightSystem] = None) -> ProjectivityReport:
    """Obstruction to strictly dominant weights, hence to projectivity of ``G/B``.

    A long root of level 1 has ``s_{1,n}`` successors at level ``n``, and a
    strictly dominant weight pairs to at least 1 with each of them, so its
    level-1 label must be at least ``s_{1,n}``.  The witness level is the
    first level where the successor count exceeds the given weight's label
    on the highest long simple root, or, without a weight, the first level
    where the count grows.
    """
    N = horizon or system.num_levels
    sys_n = system.truncate(N)
    rr = bool(is_root_reductive(sys_n))
    counts = tuple(multiplicity(sys_n, 1, n) for n in range(1, N + 1))
    witness = None
    if not rr:
        if weight is not None:
            lvl = system.level(1)
            roots = simple_roots(lvl, borel.order(1))
            alpha = roots[0] if system.family != "C" else roots[-1]
            label = pairing(weight[1], alpha)
            witness = next((n for n, c in enumerate(counts, start=1) if c > label), None)
        else:
            witness = next((n for n in range(2, N + 1) if counts[n - 1] > counts[n - 2]), None)
    return ProjectivityReport(rr, rr, N, counts, witness)

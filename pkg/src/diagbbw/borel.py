"""Projective systems of linear orders, i.e. Borel ind-subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagsys import DiagonalSystem, RestrictionMap
from .rootdata import LinearOrder, ValidationError, check_order


@dataclass(frozen=True)
class BorelSystem:
    orders: tuple  # one LinearOrder per level

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))

    def order(self, n: int) -> LinearOrder:
        return self.orders[n - 1]

    @property
    def num_levels(self) -> int:
        return len(self.orders)


@dataclass(frozen=True)
class Violation:
    level: int
    copy: int
    witness: tuple  # (x, y): x above y at level n, images reversed at level n+1

    def __str__(self):
        x, y = (_label(v) for v in self.witness)
        return f"level {self.level}, copy {self.copy}: {x} > {y} is reversed at level {self.level + 1}"


def _label(x: int) -> str:
    if x == 0:
        return "0"
    return ("" if x > 0 else "-") + f"eps{abs(x)}"


def _image(step: RestrictionMap, c: int, x: int) -> int:
    if x == 0:
        return 0
    t = step.copies[c][abs(x) - 1]
    return t if x > 0 else -t


def _step_violation(family: str, step: RestrictionMap, lower: LinearOrder,
                    upper: LinearOrder) -> Optional[tuple]:
    h_low, h_up = lower.heights(), upper.heights()
    if family == "A":  # dual copies land on -eps, which sits opposite eps
        h_up.update({-i: -h for i, h in list(h_up.items())})
    labels = sorted(h_low, key=lambda x: -h_low[x])
    for c in range(step.s):
        for a in range(len(labels)):
            for b in range(a + 1, len(labels)):
                x, y = labels[a], labels[b]
                if family == "D" and x == -y:
                    continue
                if h_up[_image(step, c, x)] < h_up[_image(step, c, y)]:
                    return c + 1, (x, y)
    return None


def check_compatibility(system: DiagonalSystem, borel: BorelSystem):
    """``None`` when every consecutive pair of orders is compatible, else a :class:`Violation`.

    Compatibility means every positive root of level ``n`` has positive image
    in each copy, i.e. ``b_n = b_{n+1} \\cap g_n``.
    """
    if borel.num_levels < system.num_levels:
        raise ValidationError("Borel system shorter than the diagonal system")
    for n in range(1, system.num_levels + 1):
        check_order(system.level(n), borel.order(n))
    for n in range(1, system.num_levels):
        found = _step_violation(system.family, system.step(n), borel.order(n), borel.order(n + 1))
        if found:
            return Violation(n, found[0], found[1])
    return None


def push_order(step: RestrictionMap, order: LinearOrder) -> LinearOrder:
    """Finest compatible order one level up: copies interleaved entry by entry,
    zero-target indices on top."""
    entries = list(step.zero_targets)
    ents = order.entries
    for k in range(len(ents)):
        for c in range(step.s):
            if step.is_dual(c):  # a dual copy reverses the order of its block
                entries.append(-_image(step, c, ents[-1 - k]))
            else:
                entries.append(_image(step, c, ents[k]))
    return LinearOrder(order.family, tuple(entries))


def _upper_triangular(system: DiagonalSystem) -> BorelSystem:
    return BorelSystem(tuple(LinearOrder.standard(system.level(n))
                             for n in range(1, system.num_levels + 1)))


def _interlacing(system: DiagonalSystem) -> BorelSystem:
    orders = [LinearOrder.standard(system.level(1))]
    for n in range(1, system.num_levels):
        orders.append(push_order(system.step(n), orders[-1]))
    return BorelSystem(tuple(orders))


NAMED = {"upper_triangular": _upper_triangular, "interlacing": _interlacing}


def make_named(system: DiagonalSystem, name: str) -> BorelSystem:
    if name not in NAMED:
        raise ValidationError(f"unknown Borel {name!r}; choose from {sorted(NAMED)}")
    borel = NAMED[name](system)
    bad = check_compatibility(system, borel)
    if bad is not None:
        raise ValidationError(f"{name} orders do not fit this system ({bad})")
    return borel


def explicit(system: DiagonalSystem, arrangements: Sequence[Sequence[int]]) -> BorelSystem:
    return BorelSystem(tuple(LinearOrder(system.family, tuple(a)) for a in arrangements))

"""Finite prefixes of diagonal direct systems of classical groups.

A step ``G_n -> G_{n+1}`` is stored as a :class:`RestrictionMap`: the list of
copies of the natural representation of ``g_n`` inside that of ``g_{n+1}``.
Copy ``c`` is a tuple with one entry per epsilon index ``j`` of level ``n``;
the entry ``s * i`` says that ``eps_{n+1}^i`` restricts to ``s * eps_n^j``.
Level-(n+1) indices that appear in no copy restrict to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .rootdata import (
    PreconditionError, RootSystemLevel, ValidationError, WeylElt, eps_weight,
    validate_weyl,
)


@dataclass(frozen=True)
class RestrictionMap:
    family: str
    source_dim: int
    target_dim: int
    copies: tuple  # tuple[tuple[int, ...], ...]

    def __post_init__(self):
        copies = tuple(tuple(int(x) for x in c) for c in self.copies)
        object.__setattr__(self, "copies", copies)
        used = []
        for c in copies:
            if len(c) != self.source_dim:
                raise ValidationError(f"copy {c} must have {self.source_dim} entries")
            if self.family == "A" and len({x > 0 for x in c}) > 1:
                raise ValidationError(f"type A copy {c} mixes natural and dual entries")
            used.extend(abs(x) for x in c)
        if any(not 1 <= i <= self.target_dim for i in used):
            raise ValidationError(f"copy entries must lie in 1..{self.target_dim}")
        if len(set(used)) != len(used):
            raise ValidationError("copies overlap")
        if not copies:
            raise ValidationError("a diagonal step needs at least one copy")
        if self.family == "B" and self.z < 0:
            raise ValidationError("type B step: too few zero weights for the copies")

    @property
    def s(self) -> int:
        return len(self.copies)

    @property
    def zero_targets(self) -> tuple:
        used = {abs(x) for c in self.copies for x in c}
        return tuple(i for i in range(1, self.target_dim + 1) if i not in used)

    @property
    def z(self) -> int:
        """Number of trivial constituents of the natural representation."""
        t = len(self.zero_targets)
        if self.family == "A":
            return t
        if self.family == "B":
            return 2 * t + 1 - self.s
        return 2 * t

    @property
    def targets(self) -> tuple:
        """Per level-(n+1) index: ``+j``, ``-j`` or ``0``."""
        out = [0] * self.target_dim
        for c in self.copies:
            for j, x in enumerate(c):
                out[abs(x) - 1] = (j + 1) if x > 0 else -(j + 1)
        return tuple(out)

    def is_dual(self, c: int) -> bool:
        return self.family == "A" and self.copies[c][0] < 0

    def kl(self) -> tuple:
        """Type A ``(k, l, t)``: natural copies, dual copies, trivial summands."""
        l = sum(1 for c in range(self.s) if self.is_dual(c))
        return self.s - l, l, len(self.zero_targets)

    def restrict(self, lam: Sequence) -> tuple:
        if len(lam) != self.target_dim:
            raise ValidationError(f"weight of length {len(lam)} on a level of dim {self.target_dim}")
        out = [Fraction(0)] * self.source_dim
        for c in self.copies:
            for j, x in enumerate(c):
                out[j] += lam[x - 1] if x > 0 else -lam[-x - 1]
        return tuple(out)

    def embed(self, c: int, x: Sequence) -> tuple:
        """Image of a level-n vector in copy ``c`` (restricts back to ``x``)."""
        out = [Fraction(0)] * self.target_dim
        for j, t in enumerate(self.copies[c]):
            out[abs(t) - 1] = x[j] if t > 0 else -x[j]
        return tuple(out)

    def pull_back(self, c: int, lam: Sequence) -> tuple:
        """Restriction of a level-(n+1) weight to the ``c``-th simple factor."""
        return tuple(lam[t - 1] if t > 0 else -lam[-t - 1] for t in self.copies[c])

    def inject(self, c: int, w: WeylElt) -> WeylElt:
        copy = self.copies[c]
        im = list(range(1, self.target_dim + 1))
        for j, x in enumerate(w.images):
            k = abs(x) - 1
            sign = (1 if x > 0 else -1) * (1 if copy[j] > 0 else -1) * (1 if copy[k] > 0 else -1)
            im[abs(copy[j]) - 1] = sign * abs(copy[k])
        return WeylElt(tuple(im))

    def extract(self, c: int, w: WeylElt):
        """Inverse of :meth:`inject` on elements supported on copy ``c``; ``None`` otherwise."""
        copy = self.copies[c]
        where = {abs(t): j for j, t in enumerate(copy)}
        im = []
        for j, t in enumerate(copy):
            x = w.images[abs(t) - 1]
            if abs(x) not in where:
                return None
            k = where[abs(x)]
            sign = (1 if x > 0 else -1) * (1 if t > 0 else -1) * (1 if copy[k] > 0 else -1)
            im.append(sign * (k + 1))
        try:
            return WeylElt(tuple(im))
        except ValidationError:
            return None


def _check_counts(family: str, r_n: int, r_next: int, step: RestrictionMap) -> None:
    s, t = step.s, len(step.zero_targets)
    if family == "A":
        ok = s * (r_n + 1) + t == r_next + 1
    elif family == "B":
        ok = s * (2 * r_n + 1) + step.z == 2 * r_next + 1
    else:
        ok = s * 2 * r_n + step.z == 2 * r_next
    if not ok:
        raise ValidationError(f"multiplicity bookkeeping fails for rank {r_n} -> {r_next}")


@dataclass(frozen=True)
class DiagonalSystem:
    family: str
    initial_rank: int
    steps: tuple = field(default_factory=tuple)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        RootSystemLevel(self.family, self.initial_rank)
        ranks = [self.initial_rank]
        for st in self.steps:
            if st.family != self.family:
                raise ValidationError("type-changing steps are not supported")
            lvl = RootSystemLevel(self.family, ranks[-1])
            if st.source_dim != lvl.dim:
                raise ValidationError(f"step source dim {st.source_dim} does not match {lvl}")
            r_next = st.target_dim - 1 if self.family == "A" else st.target_dim
            RootSystemLevel(self.family, r_next)
            _check_counts(self.family, ranks[-1], r_next, st)
            ranks.append(r_next)
        object.__setattr__(self, "_ranks", tuple(ranks))

    @property
    def num_levels(self) -> int:
        return len(self.steps) + 1

    def rank(self, n: int) -> int:
        self._check_level(n)
        return self._ranks[n - 1]

    def level(self, n: int) -> RootSystemLevel:
        return RootSystemLevel(self.family, self.rank(n))

    def step(self, n: int) -> RestrictionMap:
        """The embedding from level ``n`` to level ``n + 1``."""
        if not 1 <= n < self.num_levels:
            raise PreconditionError(f"no step {n} -> {n + 1} in a {self.num_levels}-level prefix")
        return self.steps[n - 1]

    def _check_level(self, n: int) -> None:
        if not 1 <= n <= self.num_levels:
            raise PreconditionError(f"level {n} outside 1..{self.num_levels}")

    def truncate(self, levels: int) -> "DiagonalSystem":
        return DiagonalSystem(self.family, self.initial_rank, self.steps[: levels - 1], self.name)


def restrict_weight(system: DiagonalSystem, n: int, lam: Sequence) -> tuple:
    """Restrict a level-(n+1) weight to level ``n``."""
    lam = eps_weight(lam, system.level(n + 1))
    return system.step(n).restrict(lam)


def restrict_to(system: DiagonalSystem, n_from: int, n_to: int, lam: Sequence) -> tuple:
    for n in range(n_from - 1, n_to - 1, -1):
        lam = restrict_weight(system, n, lam)
    return tuple(lam)


def branch_injection(system: DiagonalSystem, n: int, c: int, w: WeylElt) -> WeylElt:
    """Image of ``w`` in ``W_{n+1}`` through copy ``c`` (1-based)."""
    step = system.step(n)
    if not 1 <= c <= step.s:
        raise PreconditionError(f"copy {c} outside 1..{step.s}")
    validate_weyl(w, system.level(n))
    if system.family == "B" and w.sign_flips():
        raise PreconditionError("type B injections are only defined on sign-flip-free elements")
    return step.inject(c - 1, w)


def multiplicity(system: DiagonalSystem, m: int, n: int) -> int:
    """``s_m * ... * s_{n-1}``."""
    if not 1 <= m <= n <= system.num_levels:
        raise PreconditionError(f"need 1 <= m <= n <= {system.num_levels}")
    return prod(system.step(k).s for k in range(m, n))


@dataclass(frozen=True)
class HorizonVerdict:
    value: bool
    horizon: int

    def __bool__(self):
        return self.value


def is_pure(system: DiagonalSystem) -> HorizonVerdict:
    return HorizonVerdict(all(st.z == 0 for st in system.steps[1:]), system.num_levels)


def is_root_reductive(system: DiagonalSystem) -> HorizonVerdict:
    return HorizonVerdict(all(st.s == 1 for st in system.steps), system.num_levels)


# --------------------------------------------------------------------------
# Named systems


def sl_2_infty(levels: int) -> DiagonalSystem:
    """``SL(2) -> SL(4) -> ...``, each step ``M -> diag(M, M)``."""
    steps, d = [], 2
    for _ in range(levels - 1):
        steps.append(RestrictionMap("A", d, 2 * d, (tuple(range(1, d + 1)),
                                                     tuple(range(d + 1, 2 * d + 1)))))
        d *= 2
    return DiagonalSystem("A", 1, tuple(steps), "sl2inf")


def sl_infty(levels: int, initial_rank: int = 1) -> DiagonalSystem:
    """``k = t = 1, l = 0`` at every step."""
    steps, d = [], initial_rank + 1
    for _ in range(levels - 1):
        steps.append(RestrictionMap("A", d, d + 1, (tuple(range(1, d + 1)),)))
        d += 1
    return DiagonalSystem("A", initial_rank, tuple(steps), "slinf")


def sp_2_infty_plus_1(levels: int) -> DiagonalSystem:
    """``Sp(2(2^n - 1))``: two natural copies and two trivial summands per step.

    ``eps_{n+1}^1`` restricts to zero; ``eps_{n+1}^{1+i}`` and
    ``eps_{n+1}^{2^n+i}`` restrict to ``eps_n^i``.
    """
    steps, r = [], 1
    for _ in range(levels - 1):
        r_next = 2 * r + 1
        steps.append(RestrictionMap("C", r, r_next, (tuple(range(2, r + 2)),
                                                     tuple(range(r + 2, r_next + 1)))))
        r = r_next
    return DiagonalSystem("C", 1, tuple(steps), "sp2inf1")


def repeat_pattern(family: str, initial_rank: int, copies_signs: Sequence, zeros: int,
                   levels: int) -> DiagonalSystem:
    """Expand a repetition rule: each step uses copies with the given signs
    (``+1`` natural, ``-1`` dual in type A; for B/C/D each copy is ``+``),
    laid out consecutively, followed by ``zeros`` zero-target indices."""
    lvl = RootSystemLevel(family, initial_rank)
    d, steps = lvl.dim, []
    for _ in range(levels - 1):
        copies, nxt = [], 1
        for sign in copies_signs:
            copies.append(tuple(sign * i for i in range(nxt, nxt + d)))
            nxt += d
        steps.append(RestrictionMap(family, d, nxt - 1 + zeros, tuple(copies)))
        d = nxt - 1 + zeros
    return DiagonalSystem(family, initial_rank, tuple(steps), "repeat")


GENERATORS = {
    "sl2inf": sl_2_infty,
    "slinf": sl_infty,
    "sp2inf1": sp_2_infty_plus_1,
}

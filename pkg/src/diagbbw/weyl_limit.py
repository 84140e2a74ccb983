"""Finitely supported elements of the limit Weyl group ``W_B``.

An element is a list of ``(branch, base element)`` pairs sharing a base level
``n0``.  A branch is a sequence of copy choices ``t_{n0}, t_{n0+1}, ...``;
choices beyond the stored ones repeat the last stored choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .borel import BorelSystem
from .diagsys import DiagonalSystem, branch_injection, restrict_weight
from .rootdata import (
    PreconditionError, ValidationError, WeylElt, add, dot_action, inversion_set, length,
    rho, scale, sub, validate_weyl, weights_equal,
)
from .weights import WeightSystem


@dataclass(frozen=True)
class Branch:
    base_level: int
    copy_choices: tuple

    def __post_init__(self):
        object.__setattr__(self, "copy_choices", tuple(int(c) for c in self.copy_choices))
        if not self.copy_choices:
            raise ValidationError("a branch needs at least one copy choice")
        if any(c < 1 for c in self.copy_choices):
            raise ValidationError("copy choices are 1-based")

    def choice(self, n: int) -> int:
        """Copy used by the step ``n -> n + 1``."""
        k = n - self.base_level
        if k < 0:
            raise PreconditionError(f"branch starts at level {self.base_level}")
        return self.copy_choices[min(k, len(self.copy_choices) - 1)]

    def prefix(self, n: int) -> tuple:
        """Choices ``t_{n0} .. t_{n-1}``."""
        return tuple(self.choice(k) for k in range(self.base_level, n))


@dataclass(frozen=True)
class LimitWeylElt:
    base_level: int
    support: tuple  # tuple[tuple[Branch, WeylElt], ...]

    def __post_init__(self):
        sup = tuple((b, w) for b, w in self.support)
        object.__setattr__(self, "support", sup)
        for b, _ in sup:
            if b.base_level != self.base_level:
                raise ValidationError("all branches must share the base level")

    @classmethod
    def identity(cls, base_level: int = 1) -> "LimitWeylElt":
        return cls(base_level, ())

    def nontrivial(self) -> tuple:
        return tuple((b, w) for b, w in self.support if not w.is_identity())

    def canonical(self) -> "LimitWeylElt":
        """Merge branches with identical choice sequences and drop trivial parts."""
        merged = {}
        for b, w in self.support:
            ch = list(b.copy_choices)
            while len(ch) > 1 and ch[-1] == ch[-2]:
                ch.pop()
            key = tuple(ch)
            merged[key] = merged[key] * w if key in merged else w
        sup = tuple((Branch(self.base_level, k), w) for k, w in sorted(merged.items())
                    if not w.is_identity())
        return LimitWeylElt(self.base_level, sup)

    def inverse(self) -> "LimitWeylElt":
        return LimitWeylElt(self.base_level, tuple((b, w.inverse()) for b, w in self.support))

    def separation_level(self, horizon: Optional[int] = None) -> int:
        """First level at which the branch prefixes are pairwise distinct."""
        sup = self.nontrivial()
        n = self.base_level
        limit = horizon if horizon is not None else self.base_level + max(
            (len(b.copy_choices) for b, _ in sup), default=0)
        while True:
            prefixes = [b.prefix(n) for b, _ in sup]
            if len(set(prefixes)) == len(prefixes):
                return n
            if n >= limit:
                raise PreconditionError(f"branches are not separated by level {limit}")
            n += 1

    def validate(self, system: DiagonalSystem) -> None:
        lvl = system.level(self.base_level)
        for b, w in self.support:
            validate_weyl(w, lvl)
            if system.family == "B" and w.sign_flips():
                raise ValidationError("type B limit elements must be sign-flip-free")
            for n in range(self.base_level, system.num_levels):
                if b.choice(n) > system.step(n).s:
                    raise ValidationError(f"copy choice {b.choice(n)} exceeds s_{n} = {system.step(n).s}")


def _push(system: DiagonalSystem, branch: Branch, w: WeylElt, n: int) -> WeylElt:
    for k in range(branch.base_level, n):
        w = branch_injection(system, k, branch.choice(k), w)
    return w


def level_realization(system: DiagonalSystem, w: LimitWeylElt, n: int) -> WeylElt:
    """``w(n)``: product of the (commuting) branch images at level ``n``."""
    out = WeylElt.identity(system.level(n).dim)
    sup = w.nontrivial()
    if not sup:
        return out
    n1 = w.separation_level(system.num_levels)
    if n < n1:
        raise PreconditionError(f"level {n} is below the separation level {n1}")
    for b, base in sup:
        out = out * _push(system, b, base, n)
    return out


@dataclass(frozen=True)
class LengthVerdict:
    lengths: tuple  # (level, length) pairs
    value: Optional[int]
    stabilized_at: Optional[int]
    horizon: int
    window: int

    @property
    def stabilized(self) -> bool:
        return self.value is not None

    @property
    def unbounded_within_horizon(self) -> bool:
        return self.value is None


def length_B(system: DiagonalSystem, w: LimitWeylElt, borel: BorelSystem, horizon: Optional[int] = None,
             window: int = 2) -> LengthVerdict:
    N = horizon or system.num_levels
    if not w.nontrivial():
        return LengthVerdict(((w.base_level, 0),), 0, w.base_level, N, window)
    n1 = w.separation_level(N)
    lens = tuple((n, length(level_realization(system, w, n), system.level(n), borel.order(n)))
                 for n in range(n1, N + 1))
    vals = [v for _, v in lens]
    if len(vals) >= window and len(set(vals[-window:])) == 1:
        k = len(vals) - 1
        while k > 0 and vals[k - 1] == vals[-1]:
            k -= 1
        return LengthVerdict(lens, vals[-1], lens[k][0], N, window)
    return LengthVerdict(lens, None, None, N, window)


def dot_zero(system: DiagonalSystem, w: LimitWeylElt, borel: BorelSystem, n: int) -> tuple:
    """``w(n) . 0``, computed as minus the sum of the inversion set of ``w(n)^{-1}``."""
    lvl, order = system.level(n), borel.order(n)
    wn = level_realization(system, w, n)
    total = tuple(0 for _ in range(lvl.dim))
    for alpha in inversion_set(wn.inverse(), lvl, order):
        total = add(total, alpha)
    return scale(-1, total)


@dataclass(frozen=True)
class ActDotFailure:
    level: int  # the pair (level, level + 1) fails
    restricted: tuple  # restriction of w(level+1) . lambda_{level+1}
    expected: tuple  # w(level) . lambda_level
    difference: tuple  # restricted - expected

    def __bool__(self):
        return False


@dataclass(frozen=True)
class ActDotResult:
    weights: WeightSystem
    consistent_from: int

    def __bool__(self):
        return True


def act_dot(system: DiagonalSystem, w: LimitWeylElt, weight_system: WeightSystem, borel: BorelSystem,
            window: int = 2) -> Union[ActDotResult, ActDotFailure]:
    """Apply ``w`` levelwise by the dot action and check restriction consistency.

    The image is an inverse system only for large ``n`` (once the labels of
    ``lambda`` have stabilized), so the check is made on the trailing
    ``window`` levels.  On success, levels below the longest consistent tail
    are filled in by restriction.  On failure the first inconsistent pair is
    reported.
    """
    N = weight_system.num_levels
    verdict = length_B(system, w, borel, N, window)
    if not verdict.stabilized:
        raise PreconditionError("length_B has not stabilized within the horizon")
    n1 = w.separation_level(N) if w.nontrivial() else 1
    mus = {}
    for n in range(n1, N + 1):
        mus[n] = dot_action(level_realization(system, w, n), weight_system[n], system.level(n), borel.order(n))
    bad = []
    for n in range(n1, N):
        r = restrict_weight(system, n, mus[n + 1])
        if not weights_equal(system.family, r, mus[n]):
            diff = sub(r, mus[n])
            if system.family == "A":  # zero-sum representative modulo the all-ones vector
                shift = sum(diff) / len(diff)
                diff = tuple(x - shift for x in diff)
            bad.append(ActDotFailure(n, r, mus[n], diff))
    start = max(n1, N - window + 1)
    if any(f.level >= start for f in bad):
        return bad[0]
    tail = bad[-1].level + 1 if bad else n1
    prefix = [mus[n] for n in range(tail, N + 1)]
    for n in range(tail - 1, 0, -1):
        prefix.insert(0, restrict_weight(system, n, prefix[0]))
    return ActDotResult(WeightSystem(system.truncate(N), tuple(prefix)), tail)


def equivalent(system: DiagonalSystem, a: LimitWeylElt, b: LimitWeylElt, horizon: Optional[int] = None) -> bool:
    """Agreement of level realizations from the later separation level up to the horizon."""
    N = horizon or system.num_levels
    lo = max(a.separation_level(N) if a.nontrivial() else 1,
             b.separation_level(N) if b.nontrivial() else 1)
    return all(level_realization(system, a, n) == level_realization(system, b, n) for n in range(lo, N + 1))


def rho_shift_check(system: DiagonalSystem, w: LimitWeylElt, borel: BorelSystem, n: int) -> bool:
    """``w(n)(rho) - rho`` agrees with :func:`dot_zero`."""
    lvl, order = system.level(n), borel.order(n)
    r = rho(lvl, order)
    return weights_equal(system.family, sub(level_realization(system, w, n).act(r), r),
                         dot_zero(system, w, borel, n))

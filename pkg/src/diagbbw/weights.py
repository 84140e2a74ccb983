"""Inverse systems of weights, dominant extensions and successor trees."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .borel import BorelSystem
from .diagsys import DiagonalSystem, restrict_weight
from .rootdata import (
    PreconditionError, ValidationError, eps_weight, from_fundamental, is_dominant,
    normalize_weight, pairing, to_fundamental, weights_equal,
)


@dataclass(frozen=True)
class InverseSystemCheck:
    ok: bool
    failing_level: Optional[int] = None  # n such that lambda_{n+1} does not restrict to lambda_n

    def __bool__(self):
        return self.ok


def is_inverse_system(system: DiagonalSystem, prefix: Sequence[Sequence]) -> InverseSystemCheck:
    for n in range(1, len(prefix)):
        if not weights_equal(system.family, restrict_weight(system, n, prefix[n]), prefix[n - 1]):
            return InverseSystemCheck(False, n)
    return InverseSystemCheck(True)


@dataclass(frozen=True)
class WeightSystem:
    system: DiagonalSystem
    weights: tuple

    def __post_init__(self):
        ws = tuple(eps_weight(w, self.system.level(n + 1)) for n, w in enumerate(self.weights))
        object.__setattr__(self, "weights", ws)
        chk = is_inverse_system(self.system, ws)
        if not chk:
            n = chk.failing_level
            raise ValidationError(f"level {n + 1} weight does not restrict to the level {n} weight")

    def __getitem__(self, n: int):
        return self.weights[n - 1]

    @property
    def num_levels(self) -> int:
        return len(self.weights)

    @classmethod
    def from_top(cls, system: DiagonalSystem, lam_top: Sequence) -> "WeightSystem":
        """Prefix determined by its highest-level weight."""
        N = system.num_levels
        ws = [eps_weight(lam_top, system.level(N))]
        for n in range(N - 1, 0, -1):
            ws.append(restrict_weight(system, n, ws[-1]))
        return cls(system, tuple(reversed(ws)))

    @classmethod
    def from_fundamental(cls, system: DiagonalSystem, borel: BorelSystem,
                         coeffs: Sequence[Sequence]) -> "WeightSystem":
        return cls(system, tuple(from_fundamental(a, system.level(n + 1), borel.order(n + 1))
                                 for n, a in enumerate(coeffs)))

    def fundamental(self, borel: BorelSystem) -> list:
        return [to_fundamental(w, self.system.level(n), borel.order(n))
                for n, w in enumerate(self.weights, start=1)]

    def is_dominant(self, borel: BorelSystem) -> bool:
        return all(is_dominant(w, self.system.level(n), borel.order(n))
                   for n, w in enumerate(self.weights, start=1))

    def equals(self, other: "WeightSystem") -> bool:
        return (self.num_levels == other.num_levels and
                all(weights_equal(self.system.family, a, b) for a, b in zip(self.weights, other.weights)))


# --------------------------------------------------------------------------
# Dominant extensions


def restriction_matrix(system: DiagonalSystem, borel: BorelSystem, n: int) -> list:
    """Integer matrix ``R`` with ``a_n = R a_{n+1}`` in fundamental coordinates."""
    lvl, up = system.level(n), system.level(n + 1)
    cols = []
    for j in range(up.rank):
        e = [0] * up.rank
        e[j] = 1
        lam = from_fundamental(e, up, borel.order(n + 1))
        cols.append(to_fundamental(restrict_weight(system, n, lam), lvl, borel.order(n)))
    return [[cols[j][i] for j in range(up.rank)] for i in range(lvl.rank)]


def _solve_nonneg(R: list, rhs: Sequence, bound: int) -> list:
    """All non-negative integer ``x`` with ``R x = rhs``; unconstrained entries range over ``0..bound``."""
    rows, ncols = len(R), len(R[0]) if R else 0
    nonneg = all(v >= 0 for row in R for v in row)
    # last column index touching each row, to know when a row is complete
    last_in_row = [max((j for j in range(ncols) if R[i][j] != 0), default=-1) for i in range(rows)]
    for i in range(rows):
        if last_in_row[i] == -1 and rhs[i] != 0:
            return []
    ubound = []
    for j in range(ncols):
        caps = [rhs[i] / R[i][j] for i in range(rows) if R[i][j] > 0]
        if nonneg and caps:
            ubound.append(int(min(caps)))
        else:
            ubound.append(bound)
    out = []
    x = [0] * ncols
    resid = [Fraction(v) for v in rhs]

    def rec(j):
        if j == ncols:
            out.append(tuple(x))
            return
        for v in range(ubound[j] + 1):
            for i in range(rows):
                resid[i] -= R[i][j] * v
            overshoot = nonneg and any(resid[i] < 0 for i in range(rows))
            complete = all(resid[i] == 0 for i in range(rows) if last_in_row[i] == j)
            if not overshoot and complete:
                x[j] = v
                rec(j + 1)
            for i in range(rows):
                resid[i] += R[i][j] * v
            if overshoot:
                break
        x[j] = 0

    rec(0)
    return out


def enumerate_dominant_extensions(system: DiagonalSystem, borel: BorelSystem, n: int,
                                  lam_n: Sequence, bound: int) -> list:
    """Dominant level-(n+1) weights restricting to the dominant ``lam_n``.

    Coefficients not pinned by the restriction equations range over ``0..bound``.
    """
    lvl = system.level(n)
    if not is_dominant(lam_n, lvl, borel.order(n)):
        raise PreconditionError(f"level {n} weight is not dominant")
    a_n = to_fundamental(lam_n, lvl, borel.order(n))
    if any(v.denominator != 1 for v in a_n):
        raise PreconditionError("non-integral fundamental coordinates")
    R = restriction_matrix(system, borel, n)
    up = system.level(n + 1)
    out = []
    for x in _solve_nonneg(R, a_n, bound):
        lam = from_fundamental(x, up, borel.order(n + 1))
        if not weights_equal(system.family, restrict_weight(system, n, lam), lam_n):
            raise AssertionError("extension does not restrict correctly")
        out.append(lam)
    return out


def _dominant_base(system: DiagonalSystem, borel: BorelSystem, bound: int) -> list:
    lvl = system.level(1)
    out = []

    def rec(prefix):
        if len(prefix) == lvl.rank:
            out.append(from_fundamental(prefix, lvl, borel.order(1)))
            return
        for v in range(bound + 1):
            rec(prefix + [v])

    rec([])
    return out


def dominant_prefix_search(system: DiagonalSystem, borel: BorelSystem, target_level: int,
                           bound: int, prune: bool = False) -> list:
    """Breadth-first enumeration of dominant prefixes ``lambda_1..lambda_target``.

    Every fundamental coefficient of ``lambda_1`` and every free coefficient
    is bounded by ``bound``.  With ``prune=True`` and a valid
    :func:`descent_certificate`, prefixes that cannot be initial segments of
    a dominant inverse system are discarded.
    """
    cert = descent_certificate(system, borel) if prune else None
    layer = [[normalize_weight(system.family, w)] for w in _dominant_base(system, borel, bound)]
    for n in range(1, target_level):
        nxt = []
        for pre in layer:
            for lam in enumerate_dominant_extensions(system, borel, n, pre[-1], bound):
                nxt.append(pre + [normalize_weight(system.family, lam)])
        layer = nxt
    result = [WeightSystem(system.truncate(target_level), tuple(p)) for p in layer]
    if cert is not None and cert.valid:
        result = [ws for ws in result if cert.admits(ws)]
    return result


# --------------------------------------------------------------------------
# Monotone-descent pruning for the symplectic two-copy family


@dataclass(frozen=True)
class DescentCertificate:
    """Structural facts about the restriction matrices that force every
    dominant inverse system to vanish.

    With ``r_n = 2^n - 1`` and fundamental coefficients ``a_n``, let
    ``b_k = sum_{i >= 2^k} a_{n0+k}^i``.  The checked facts are

      (1) ``b_k = b_{k+1} + sum_{i >= 2^{k+1}+1} a_{n0+k+1}^i`` for every step,
      (2) rows ``i >= 2^k + 1`` of each step only involve columns ``>= 2^{k+1} + 1``,
      (3) the first column of every step vanishes.

    (1) makes ``b`` non-increasing; once it is constant, (2) and (1) push the
    equality one step back, and at ``k = 0`` (3) forces the level below to
    vanish.  So a nonzero dominant weight would need ``b`` to decrease
    forever, impossible for non-negative integers.
    """

    valid: bool
    horizon: int
    reason: str = ""
    checked_steps: tuple = field(default_factory=tuple)

    def admits(self, ws: WeightSystem) -> bool:
        return all(all(x == 0 for x in w) for w in ws.weights)


def descent_certificate(system: DiagonalSystem, borel: BorelSystem) -> DescentCertificate:
    N = system.num_levels
    if system.family != "C":
        return DescentCertificate(False, N, "only symplectic systems are covered")
    checked = []
    for n in range(1, N):
        r_n, r_up = system.rank(n), system.rank(n + 1)
        if r_n != 2 ** n - 1 or r_up != 2 ** (n + 1) - 1:
            return DescentCertificate(False, N, f"ranks at level {n} are not 2^n - 1")
        R = restriction_matrix(system, borel, n)
        if any(R[i][0] != 0 for i in range(r_n)):
            return DescentCertificate(False, N, f"step {n}: first column is not zero")
        k = 0
        while 2 ** k <= r_n:
            lo, lo_up = 2 ** k, 2 ** (k + 1)
            for j in range(r_up):
                col = j + 1
                lhs = sum(R[i][j] for i in range(lo - 1, r_n))
                rhs = (1 if col >= lo_up else 0) + (1 if col >= lo_up + 1 else 0)
                if lhs != rhs:
                    return DescentCertificate(False, N, f"step {n}, k={k}: descent identity fails")
            for i in range(lo, r_n):  # rows 2^k+1 .. r_n (0-based lo..)
                if any(R[i][j] != 0 for j in range(0, lo_up)):
                    return DescentCertificate(False, N, f"step {n}, k={k}: row {i + 1} reaches low columns")
            k += 1
        checked.append(n)
    return DescentCertificate(True, N, "descent identity verified", tuple(checked))


# --------------------------------------------------------------------------
# Successor trees


@dataclass(frozen=True)
class TreeNode:
    level: int
    path: tuple  # copy choices from the root
    root: tuple  # the root vector at this level
    label: Fraction


@dataclass(frozen=True)
class SuccessorTree:
    base_level: int
    levels: tuple  # tuple of tuples of TreeNode, one per level

    def nodes(self, n: int) -> tuple:
        return self.levels[n - self.base_level]

    def node(self, path: Sequence[int]) -> TreeNode:
        n = self.base_level + len(path)
        for nd in self.nodes(n):
            if nd.path == tuple(path):
                return nd
        raise KeyError(path)

    def children(self, node: TreeNode) -> list:
        if node.level - self.base_level + 1 >= len(self.levels):
            return []
        return [nd for nd in self.nodes(node.level + 1) if nd.path[:-1] == node.path]

    def level_sum(self, n: int) -> Fraction:
        return sum((nd.label for nd in self.nodes(n)), Fraction(0))


def successor_tree(system: DiagonalSystem, weight_system: WeightSystem, alpha: Sequence,
                   m: int, N: int) -> SuccessorTree:
    """Successors of the root ``alpha`` of level ``m`` through level ``N``, labelled by pairings."""
    if not 1 <= m <= N <= weight_system.num_levels:
        raise PreconditionError(f"need 1 <= m <= N <= {weight_system.num_levels}")
    alpha = tuple(Fraction(x) for x in alpha)
    cur = [TreeNode(m, (), alpha, pairing(weight_system[m], alpha))]
    levels = [tuple(cur)]
    for n in range(m, N):
        step = system.step(n)
        nxt = []
        for nd in cur:
            for c in range(step.s):
                beta = step.embed(c, nd.root)
                nxt.append(TreeNode(n + 1, nd.path + (c + 1,), beta, pairing(weight_system[n + 1], beta)))
        cur = nxt
        levels.append(tuple(cur))
    return SuccessorTree(m, tuple(levels))


def labels_stabilize(tree: SuccessorTree, path: Sequence[int]) -> Optional[int]:
    """First level from which the label along ``path`` is constant and all
    fringe siblings are zero; ``None`` if not determined within the tree."""
    path = tuple(path)
    if len(path) < len(tree.levels) - 1:
        raise PreconditionError("path must reach the last level of the tree")
    chain = [tree.node(path[:k]) for k in range(len(path[: len(tree.levels) - 1]) + 1)]
    for start in range(len(chain) - 1):
        ok = True
        for k in range(start + 1, len(chain)):
            if chain[k].label != chain[start].label:
                ok = False
                break
            parent = chain[k - 1]
            if any(sib.label != 0 for sib in tree.children(parent) if sib.path != chain[k].path):
                ok = False
                break
        if ok:
            return chain[start].level
    return None

"""Brute-force references for the test suite and audits.

Nothing here reuses the root-system routines of :mod:`rootdata`: roots are
enumerated from the family definition, positivity comes from a linear
functional read off the order, and straightening scans the whole Weyl group.
Weights are handled as doubled integer vectors so half-integers stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Sequence, Union

import numpy as np

from .rootdata import (
    LinearOrder, PreconditionError, RootSystemLevel, SINGULAR, Singular, Straightened, ValidationError,
    WeylElt,
)

MAX_RANK = 6


@dataclass(frozen=True)
class WeylEnumeration:
    family: str
    rank: int
    elements: tuple  # tuple[WeylElt, ...]


def _signed_perms(family: str, m: int):
    for perm in permutations(range(1, m + 1)):
        if family == "A":
            yield perm
            continue
        for signs in product((1, -1), repeat=m):
            if family == "D" and signs.count(-1) % 2:
                continue
            yield tuple(s * p for s, p in zip(signs, perm))


@lru_cache(maxsize=None)
def _images(family: str, rank: int) -> np.ndarray:
    if rank > MAX_RANK:
        raise PreconditionError(f"oracle enumeration is capped at rank {MAX_RANK}")
    m = RootSystemLevel(family, rank).dim
    return np.array(list(_signed_perms(family, m)), dtype=np.int64)


def enumerate_weyl(family: str, rank: int) -> WeylEnumeration:
    RootSystemLevel(family, rank)
    return WeylEnumeration(family, rank, tuple(WeylElt(tuple(int(x) for x in row))
                                               for row in _images(family, rank)))


@lru_cache(maxsize=None)
def _matrices(family: str, rank: int) -> np.ndarray:
    """Stack of permutation-with-sign matrices: ``M[k] @ v == w_k.act(v)``."""
    im = _images(family, rank)
    K, m = im.shape
    M = np.zeros((K, m, m), dtype=np.int64)
    ks = np.repeat(np.arange(K), m)
    cols = np.tile(np.arange(m), K)
    flat = im.reshape(-1)
    M[ks, np.abs(flat) - 1, cols] = np.sign(flat)
    return M


def _all_roots(family: str, m: int) -> list:
    roots = []
    for i, j in combinations(range(m), 2):
        for si, sj in ((1, -1), (-1, 1)):
            v = [0] * m
            v[i], v[j] = si, sj
            roots.append(v)
        if family != "A":
            for s in (1, -1):
                v = [0] * m
                v[i], v[j] = s, s
                roots.append(v)
    for i in range(m):
        for s in (1, -1):
            v = [0] * m
            if family == "B":
                v[i] = s
                roots.append(v)
            elif family == "C":
                v[i] = 2 * s
                roots.append(v)
    return roots


def _functional(order: LinearOrder, m: int) -> np.ndarray:
    """Regular functional that is positive exactly on the order's positive roots."""
    f = np.zeros(m, dtype=np.int64)
    for k, x in enumerate(order.entries):
        f[abs(x) - 1] = (1 if x > 0 else -1) * (m - k)
    return f


@lru_cache(maxsize=None)
def _root_data(family: str, rank: int, entries: tuple):
    m = RootSystemLevel(family, rank).dim
    f = _functional(LinearOrder(family, entries), m)
    pos = np.array([r for r in _all_roots(family, m) if np.dot(r, f) > 0], dtype=np.int64)
    sums = {tuple(a + b) for a in pos for b in pos}
    simple = np.array([a for a in pos if tuple(a) not in sums], dtype=np.int64)
    rho2 = pos.sum(axis=0)  # 2 * rho
    return f, pos, simple, rho2


def _doubled(lam: Sequence) -> np.ndarray:
    out = []
    for x in lam:
        x2 = Fraction(x) * 2
        if x2.denominator != 1:
            raise ValidationError(f"coordinate {x} is not in (1/2)Z")
        out.append(int(x2))
    return np.array(out, dtype=np.int64)


def brute_force_straighten(lam: Sequence, level: RootSystemLevel,
                           order: LinearOrder) -> Union[Singular, Straightened]:
    """Scan all of ``W`` for elements sending ``lam`` into the dominant chamber by the dot action."""
    fam, r = level.family, level.rank
    if len(lam) != level.dim or len(order.entries) != level.dim:
        raise ValidationError("weight or order does not match the level")
    f, pos, simple, rho2 = _root_data(fam, r, tuple(order.entries))
    v2 = _doubled(lam) + rho2
    M = _matrices(fam, r)
    images = M @ v2 - rho2  # doubled w . lam for every w
    dom = np.all(images @ simple.T >= 0, axis=1)
    hits = np.flatnonzero(dom)
    if len(hits) > 1:
        raise AssertionError(f"{len(hits)} Weyl elements straighten {tuple(lam)}")
    singular = bool(np.any(pos @ v2 == 0))
    if len(hits) == 0:
        if not singular:
            raise AssertionError(f"regular weight {tuple(lam)} has no straightening element")
        return SINGULAR
    if singular:
        raise AssertionError(f"singular weight {tuple(lam)} was straightened")
    k = int(hits[0])
    w = WeylElt(tuple(int(x) for x in _images(fam, r)[k]))
    degree = int(np.sum((pos @ M[k].T) @ f < 0))
    dominant = tuple(Fraction(int(x), 2) for x in images[k])
    return Straightened(w=w, degree=degree, dominant=dominant)


@lru_cache(maxsize=None)
def _word_lengths(family: str, rank: int, entries: tuple) -> dict:
    _, _, simple, _ = _root_data(family, rank, entries)
    gens = []
    for a in simple:
        # reflection s_a(v) = v - 2 (v, a) / (a, a) a, as a signed permutation
        aa = int(np.dot(a, a))
        cols = []
        for i in range(len(a)):
            e = np.zeros(len(a), dtype=np.int64)
            e[i] = 1
            img = e - (2 * int(np.dot(e, a)) * a) // aa
            j = int(np.flatnonzero(img)[0])
            cols.append(int(img[j]) * (j + 1))
        gens.append(WeylElt(tuple(cols)))
    start = WeylElt.identity(len(entries))
    dist, frontier = {start: 0}, [start]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = s * w
                if u not in dist:
                    dist[u] = dist[w] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def reduced_word_length(w: WeylElt, level: RootSystemLevel, order: LinearOrder) -> int:
    """Breadth-first distance from the identity in the simple-reflection Cayley graph."""
    if level.rank > MAX_RANK:
        raise PreconditionError(f"oracle search is capped at rank {MAX_RANK}")
    dist = _word_lengths(level.family, level.rank, tuple(order.entries))
    if w not in dist:
        raise ValidationError(f"{w.one_line()} is not in W({level})")
    return dist[w]

from fractions import Fraction
from itertools import product

import pytest

from conftest import random_order, random_weight
from diagbbw.oracle import brute_force_straighten, enumerate_weyl, reduced_word_length
from diagbbw.rootdata import (
    SINGULAR, LinearOrder, PreconditionError, RootSystemLevel, length, straighten, weights_equal,
)


def agree(a, b, fam):
    if a is SINGULAR or b is SINGULAR:
        return a is SINGULAR and b is SINGULAR
    return a.w == b.w and a.degree == b.degree and weights_equal(fam, a.dominant, b.dominant)


@pytest.mark.parametrize("fam,rank,count", [("A", 1, 2), ("B", 2, 8), ("D", 3, 24), ("C", 3, 48),
                                            ("A", 4, 120), ("D", 4, 192)])
def test_enumeration_sizes(fam, rank, count):
    els = enumerate_weyl(fam, rank).elements
    assert len(els) == count == len(set(els))


def test_rank_cap():
    with pytest.raises(PreconditionError):
        enumerate_weyl("B", 7)


@pytest.mark.parametrize("fam", "ABCD")
def test_exhaustive_rank2_grid(fam):
    lvl = RootSystemLevel(fam, 2)
    orders = {LinearOrder(fam, o) for o in _all_orders(lvl)}
    for order in sorted(orders, key=lambda o: o.entries):
        for coords in product(range(-4, 5), repeat=lvl.dim):
            lam = tuple(Fraction(c) for c in coords)
            assert agree(straighten(lam, lvl, order), brute_force_straighten(lam, lvl, order), fam)


def _all_orders(lvl):
    from itertools import permutations
    for perm in permutations(range(1, lvl.dim + 1)):
        if lvl.family == "A":
            yield perm
        else:
            for signs in product((1, -1), repeat=lvl.dim):
                yield tuple(s * p for s, p in zip(signs, perm))


@pytest.mark.parametrize("fam", "ABCD")
def test_randomized_rank5_samples(fam, rng):
    lvl = RootSystemLevel(fam, 5)
    for _ in range(60):
        order = random_order(rng, lvl)
        lam = random_weight(rng, lvl)
        assert agree(straighten(lam, lvl, order), brute_force_straighten(lam, lvl, order), fam)


@pytest.mark.parametrize("fam,rank", [(f, r) for f in "ABCD" for r in (2, 3)])
def test_reduced_words_match_inversion_count(fam, rank, rng):
    lvl = RootSystemLevel(fam, rank)
    for order in (LinearOrder.standard(lvl), random_order(rng, lvl)):
        for w in enumerate_weyl(fam, rank).elements:
            assert reduced_word_length(w, lvl, order) == length(w, lvl, order)

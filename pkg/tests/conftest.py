import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from diagbbw.rootdata import LinearOrder, RootSystemLevel

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def q(*xs):
    return tuple(Fraction(x) for x in xs)


def random_order(rng: random.Random, lvl: RootSystemLevel) -> LinearOrder:
    ents = list(range(1, lvl.dim + 1))
    rng.shuffle(ents)
    if lvl.family != "A":
        ents = [x * rng.choice((1, -1)) for x in ents]
    return LinearOrder(lvl.family, tuple(ents))


def random_weight(rng: random.Random, lvl: RootSystemLevel, lo=-6, hi=6):
    half = Fraction(1, 2) if lvl.family in ("B", "D") and rng.random() < 0.5 else 0
    return tuple(Fraction(rng.randint(lo, hi)) + half for _ in range(lvl.dim))


@pytest.fixture
def rng():
    return random.Random(20261018)


def random_limit_element(rng: random.Random, system, max_branches=2, base_levels=(1, 2)):
    """Finitely supported element whose branches separate within two levels of the base."""
    from diagbbw.oracle import enumerate_weyl
    from diagbbw.weyl_limit import Branch, LimitWeylElt

    n0 = rng.choice(base_levels)
    lvl = system.level(n0)
    W = [w for w in enumerate_weyl(lvl.family, lvl.rank).elements
         if system.family != "B" or not w.sign_flips()]
    s0, s1 = system.step(n0).s, system.step(n0 + 1).s
    choices = [(a, b) for a in range(1, s0 + 1) for b in range(1, s1 + 1)]
    picked = rng.sample(choices, rng.randint(1, min(max_branches, len(choices))))
    return LimitWeylElt(n0, tuple((Branch(n0, c), rng.choice(W)) for c in picked))


def stable_dominant(rng: random.Random, system, borel, free_levels=2, top=3):
    """Dominant SL(2^inf) upper-triangular prefix whose labels settle after ``free_levels``.

    Up to ``free_levels`` the extensions are random; above that every new
    fundamental coefficient outside the first copy is zero, which is how a
    genuine element of the dominant cone looks once its labels stabilize.
    """
    from diagbbw.weights import WeightSystem, enumerate_dominant_extensions
    from diagbbw.rootdata import from_fundamental, to_fundamental

    lam = [from_fundamental([rng.randint(0, top) for _ in range(system.rank(1))], system.level(1), borel.order(1))]
    for n in range(1, system.num_levels):
        if n < free_levels:
            lam.append(rng.choice(enumerate_dominant_extensions(system, borel, n, lam[-1], 2)))
        else:
            a = list(to_fundamental(lam[-1], system.level(n), borel.order(n)))
            a += [0] * (system.rank(n + 1) - len(a))
            lam.append(from_fundamental(a, system.level(n + 1), borel.order(n + 1)))
    return WeightSystem(system, tuple(lam))

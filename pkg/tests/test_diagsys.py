from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import q
from diagbbw.borel import make_named
from diagbbw.diagsys import (
    DiagonalSystem, RestrictionMap, branch_injection, is_pure, is_root_reductive, multiplicity,
    repeat_pattern, restrict_weight, sl_2_infty, sl_infty, sp_2_infty_plus_1,
)
from diagbbw.oracle import enumerate_weyl
from diagbbw.rootdata import (
    LinearOrder, PreconditionError, ValidationError, WeylElt, add, length, weights_equal,
)

SL2 = sl_2_infty(4)


def test_restriction_examples():
    assert restrict_weight(SL2, 1, q(1, 0, 0, -1)) == q(1, -1)
    assert restrict_weight(SL2, 1, q(0, 0, 0, 0)) == q(0, 0)
    mixed = DiagonalSystem("A", 1, (RestrictionMap("A", 2, 4, ((1, 2), (-4, -3))),))
    assert weights_equal("A", restrict_weight(mixed, 1, q(1, 1, 0, 0)), q(0, 0))
    assert mixed.step(1).kl() == (1, 1, 0)


def test_multiplicity_bookkeeping_is_validated():
    with pytest.raises(ValidationError):
        RestrictionMap("B", 1, 2, ((1,), (2,)))  # two odd-dimensional copies need a zero weight
    with pytest.raises(ValidationError):
        DiagonalSystem("A", 2, (RestrictionMap("A", 2, 4, ((1, 2), (3, 4))),))  # source too small
    with pytest.raises(ValidationError):
        RestrictionMap("A", 2, 4, ((1, 2), (2, 3)))  # overlapping copies
    with pytest.raises(ValidationError):
        RestrictionMap("A", 2, 4, ((1, -2),))  # mixed copy
    with pytest.raises(ValidationError):
        DiagonalSystem("C", 1, (RestrictionMap("B", 1, 3, ((1,), (2,))),))  # type change
    # Sp: 2 * 2r + z = 2 r', z = 2 zero targets
    assert sp_2_infty_plus_1(3).step(1).z == 2


def test_branch_injection_examples():
    s = WeylElt((2, 1))
    assert branch_injection(SL2, 1, 1, WeylElt.identity(2)).is_identity()
    assert branch_injection(SL2, 1, 1, s) == WeylElt((2, 1, 3, 4))
    assert branch_injection(SL2, 1, 2, s) == WeylElt((1, 2, 4, 3))
    with pytest.raises(PreconditionError):
        branch_injection(SL2, 1, 3, s)


def test_type_b_injection_rejects_sign_flips():
    sysb = repeat_pattern("B", 2, (1, 1), 1, 2)
    with pytest.raises(PreconditionError):
        branch_injection(sysb, 1, 1, WeylElt((-1, 2)))
    assert branch_injection(sysb, 1, 2, WeylElt((2, 1))) == WeylElt((1, 2, 4, 3, 5))


def test_predicates_and_multiplicity():
    assert is_root_reductive(sl_infty(5))
    assert not is_root_reductive(SL2)
    one = DiagonalSystem("A", 2)
    assert is_root_reductive(one) and is_pure(one)
    assert is_pure(SL2) and not is_pure(sl_infty(4))
    assert multiplicity(SL2, 1, 4) == 8 and multiplicity(SL2, 2, 2) == 1
    assert is_root_reductive(SL2).horizon == 4


SYSTEMS = [
    sl_2_infty(3),
    sl_infty(3, 2),
    sp_2_infty_plus_1(3),
    repeat_pattern("A", 1, (1, -1), 1, 3),
    repeat_pattern("B", 1, (1, 1), 1, 3),
    repeat_pattern("D", 2, (1, 1), 1, 3),
]


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: f"{s.family}{s.initial_rank}-{s.name}")
def test_injection_is_a_homomorphism(system):
    lvl = system.level(1)
    W = [w for w in enumerate_weyl(lvl.family, lvl.rank).elements
         if system.family != "B" or not w.sign_flips()]
    for c in range(1, system.step(1).s + 1):
        for a, b in product(W, W):
            assert branch_injection(system, 1, c, a * b) == \
                branch_injection(system, 1, c, a) * branch_injection(system, 1, c, b)


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: f"{s.family}{s.initial_rank}-{s.name}")
def test_length_never_drops_under_injection(system):
    names = ["upper_triangular", "interlacing"]
    for name in names:
        try:
            borel = make_named(system, name)
        except ValidationError:
            continue
        for n in range(1, system.num_levels):
            lvl = system.level(n)
            if lvl.rank > 3:
                continue
            for w in enumerate_weyl(lvl.family, lvl.rank).elements:
                if system.family == "B" and w.sign_flips():
                    continue
                for c in range(1, system.step(n).s + 1):
                    up = branch_injection(system, n, c, w)
                    assert length(w, lvl, borel.order(n)) <= length(up, system.level(n + 1), borel.order(n + 1))


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: f"{s.family}{s.initial_rank}-{s.name}")
@given(data=st.data())
def test_restriction_is_linear(system, data):
    d = system.level(2).dim
    coords = st.lists(st.integers(-5, 5), min_size=d, max_size=d)
    lam, mu = data.draw(coords), data.draw(coords)
    assert restrict_weight(system, 1, add(lam, mu)) == add(restrict_weight(system, 1, lam),
                                                            restrict_weight(system, 1, mu))


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: f"{s.family}{s.initial_rank}-{s.name}")
@given(data=st.data())
def test_restriction_commutes_with_copy_supported_action(system, data):
    step = system.step(1)
    lvl = system.level(1)
    c = data.draw(st.integers(0, step.s - 1))
    W = [w for w in enumerate_weyl(lvl.family, lvl.rank).elements
         if system.family != "B" or not w.sign_flips()]
    w = data.draw(st.sampled_from(W))
    x = [Fraction(data.draw(st.integers(-5, 5))) for _ in range(lvl.dim)]
    lam = step.embed(c, x)  # supported on copy c
    up = branch_injection(system, 1, c + 1, w)
    assert restrict_weight(system, 1, up.act(lam)) == w.act(restrict_weight(system, 1, lam))

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import q
from diagbbw.oracle import enumerate_weyl
from diagbbw.rootdata import (
    SINGULAR, LinearOrder, PreconditionError, RootSystemLevel, ValidationError, WeylElt, add,
    conj_from_standard, dot_action, eps_weight, from_fundamental, inversion_set, is_dominant,
    is_singular, is_singular_slow, length, pairing, positive_roots, reflection, rho, scale,
    simple_roots, straighten, to_fundamental, weights_equal,
)

A1, A3 = RootSystemLevel("A", 1), RootSystemLevel("A", 3)
B2, C2 = RootSystemLevel("B", 2), RootSystemLevel("C", 2)


def std(lvl):
    return LinearOrder.standard(lvl)


# -- construction and validation ------------------------------------------

def test_rank_bounds():
    with pytest.raises(ValidationError):
        RootSystemLevel("D", 1)
    with pytest.raises(ValidationError):
        RootSystemLevel("A", 0)
    with pytest.raises(ValidationError):
        RootSystemLevel("E", 6)


def test_weights_reject_quarter_integers():
    with pytest.raises(ValidationError):
        eps_weight([Fraction(1, 4), 0], B2)


def test_invalid_orders():
    with pytest.raises(ValidationError):
        LinearOrder("A", (1, 1, 2))
    with pytest.raises(ValidationError):
        LinearOrder("C", (1, -1))
    with pytest.raises(ValidationError):
        LinearOrder("A", (1, -2))


def test_weyl_family_constraints():
    from diagbbw.rootdata import validate_weyl
    with pytest.raises(ValidationError):
        validate_weyl(WeylElt((-1, 2)), A1)
    with pytest.raises(ValidationError):
        validate_weyl(WeylElt((-1, 2, 3)), RootSystemLevel("D", 3))
    validate_weyl(WeylElt((-1, -2, 3)), RootSystemLevel("D", 3))


def test_d_order_last_sign_normalized():
    assert LinearOrder("D", (2, -1)).entries == (2, 1)


# -- worked examples -------------------------------------------------------

def test_simple_roots_examples():
    assert simple_roots(A1, std(A1)) == [q(1, -1)]
    assert simple_roots(A3, LinearOrder("A", (1, 3, 2, 4))) == [q(1, 0, -1, 0), q(0, -1, 1, 0), q(0, 1, 0, -1)]
    assert simple_roots(C2, std(C2)) == [q(1, -1), q(0, 2)]


def test_rho_examples():
    assert rho(C2, std(C2)) == q(2, 1)
    assert weights_equal("A", rho(A1, std(A1)), q(Fraction(1, 2), Fraction(-1, 2)))
    assert rho(B2, std(B2)) == q(Fraction(3, 2), Fraction(1, 2))


def test_pairing_examples():
    a = q(1, -1)
    assert pairing(a, a) == 2
    assert pairing(q(1, 1), a) == 0
    assert pairing(q(Fraction(3, 2), Fraction(1, 2)), q(0, 1)) == 1
    with pytest.raises((ValidationError, PreconditionError, ZeroDivisionError)):
        pairing(a, q(0, 0))


def test_length_examples():
    assert length(WeylElt.identity(4), A3, std(A3)) == 0
    s12 = WeylElt.transposition(4, 1, 2)
    assert length(s12, A3, std(A3)) == 1
    assert length(s12, A3, LinearOrder("A", (1, 3, 2, 4))) == 3


def test_dot_action_examples():
    lam = q(3, -1)
    assert dot_action(WeylElt.identity(2), lam, A1, std(A1)) == lam
    s = WeylElt((2, 1))
    assert weights_equal("A", dot_action(s, q(-1, 1), A1, std(A1)), q(0, 0))
    for lvl in (A3, B2, C2, RootSystemLevel("D", 3)):
        o = std(lvl)
        for alpha in simple_roots(lvl, o):
            assert weights_equal(lvl.family, dot_action(reflection(alpha), (0,) * lvl.dim, lvl, o), scale(-1, alpha))


def test_straighten_examples():
    z = straighten(q(0, 0), A1, std(A1))
    assert z.w.is_identity() and z.degree == 0 and weights_equal("A", z.dominant, q(0, 0))
    assert straighten(q(Fraction(-1, 2), Fraction(1, 2)), A1, std(A1)) is SINGULAR
    r = straighten(q(-1, 1), A1, std(A1))
    assert r.w == WeylElt((2, 1)) and r.degree == 1 and weights_equal("A", r.dominant, q(0, 0))


def test_fundamental_round_trip():
    for lvl in (A3, B2, C2, RootSystemLevel("D", 4)):
        o = std(lvl)
        coeffs = tuple(range(1, lvl.rank + 1))
        assert to_fundamental(from_fundamental(coeffs, lvl, o), lvl, o) == coeffs


# -- properties ------------------------------------------------------------

levels = st.sampled_from([RootSystemLevel(f, r) for f in "ABCD" for r in range(2, 5)])


@st.composite
def level_order_weight(draw):
    lvl = draw(levels)
    perm = draw(st.permutations(list(range(1, lvl.dim + 1))))
    if lvl.family != "A":
        perm = [x * draw(st.sampled_from((1, -1))) for x in perm]
    half = Fraction(1, 2) if lvl.family in "BD" and draw(st.booleans()) else 0
    lam = tuple(Fraction(draw(st.integers(-6, 6))) + half for _ in range(lvl.dim))
    return lvl, LinearOrder(lvl.family, tuple(perm)), lam


@given(level_order_weight())
def test_rho_pairs_to_one_with_simple_roots(data):
    lvl, o, _ = data
    r = rho(lvl, o)
    assert all(pairing(r, a) == 1 for a in simple_roots(lvl, o))


@given(level_order_weight())
def test_straighten_lands_in_dominant_chamber(data):
    lvl, o, lam = data
    res = straighten(lam, lvl, o)
    if res is SINGULAR:
        return
    assert is_dominant(res.dominant, lvl, o)
    assert weights_equal(lvl.family, dot_action(res.w, lam, lvl, o), res.dominant)
    assert res.degree == length(res.w, lvl, o) == len(inversion_set(res.w, lvl, o))


@given(level_order_weight())
def test_singular_fast_path_matches_root_iteration(data):
    lvl, o, lam = data
    assert is_singular(lam, lvl, o) == is_singular_slow(lam, lvl, o)


@given(level_order_weight())
def test_type_d_sign_convention_is_invisible(data):
    lvl, o, lam = data
    if lvl.family != "D":
        return
    ents = list(o.entries)
    ents[-1] = -ents[-1]
    o2 = LinearOrder("D", tuple(ents))
    assert sorted(simple_roots(lvl, o)) == sorted(simple_roots(lvl, o2))
    assert rho(lvl, o) == rho(lvl, o2)
    assert straighten(lam, lvl, o) == straighten(lam, lvl, o2)


@pytest.mark.parametrize("fam,rank", [(f, r) for f in "ABCD" for r in (2, 3)])
def test_dot_action_is_an_action_exhaustively(fam, rank):
    lvl = RootSystemLevel(fam, rank)
    o = std(lvl)
    lam = tuple(Fraction(x) for x in (3, -1, 2, 0)[: lvl.dim])
    W = enumerate_weyl(fam, rank).elements
    for w1, w2 in product(W[:24], W[:24]):
        assert dot_action(w1 * w2, lam, lvl, o) == dot_action(w1, dot_action(w2, lam, lvl, o), lvl, o)


@given(level_order_weight(), st.data())
def test_dot_action_is_an_action_rank4(data, draw):
    lvl, o, lam = data
    W = enumerate_weyl(lvl.family, lvl.rank).elements
    w1, w2 = draw.draw(st.sampled_from(W)), draw.draw(st.sampled_from(W))
    assert dot_action(w1 * w2, lam, lvl, o) == dot_action(w1, dot_action(w2, lam, lvl, o), lvl, o)


@given(level_order_weight())
def test_positive_roots_are_half_of_all_roots(data):
    lvl, o, _ = data
    pos = positive_roots(lvl, o)
    expected = {"A": lvl.rank * (lvl.rank + 1) // 2, "B": lvl.rank ** 2, "C": lvl.rank ** 2,
                "D": lvl.rank * (lvl.rank - 1)}[lvl.family]
    assert len(pos) == expected
    assert all(scale(-1, a) not in pos for a in pos)


def test_composition_convention():
    a, b = WeylElt((2, 1, 3)), WeylElt((1, 3, 2))
    lam = q(5, 7, 11)
    assert (a * b).act(lam) == a.act(b.act(lam))
    assert (a * a.inverse()).is_identity()
    assert conj_from_standard(WeylElt.identity(3), LinearOrder("A", (3, 1, 2))).is_identity()

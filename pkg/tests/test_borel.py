import pytest

from diagbbw.borel import (
    BorelSystem, Violation, check_compatibility, explicit, make_named, push_order,
)
from diagbbw.diagsys import repeat_pattern, restrict_to, sl_2_infty, sl_infty, sp_2_infty_plus_1
from diagbbw.rootdata import LinearOrder, ValidationError, is_positive_root, positive_roots


@pytest.mark.parametrize("name", ["upper_triangular", "interlacing"])
@pytest.mark.parametrize("make", [sl_2_infty, sp_2_infty_plus_1])
def test_named_orders_are_compatible_to_level5(name, make):
    system = make(5)
    assert check_compatibility(system, make_named(system, name)) is None


def test_named_orders_at_level2():
    s = sl_2_infty(3)
    assert make_named(s, "upper_triangular").order(2).entries == (1, 2, 3, 4)
    assert make_named(s, "interlacing").order(2).entries == (1, 3, 2, 4)
    assert make_named(s, "interlacing").order(3).entries == (1, 5, 3, 7, 2, 6, 4, 8)


def test_reversal_is_reported_with_witness():
    s = sl_2_infty(2)
    bad = explicit(s, [(1, 2), (2, 1, 3, 4)])
    v = check_compatibility(s, bad)
    assert isinstance(v, Violation)
    assert (v.level, v.witness) == (1, (1, 2))
    assert "eps1 > eps2" in str(v)


def test_unknown_name():
    with pytest.raises(ValidationError):
        make_named(sl_2_infty(2), "lower_triangular")


@pytest.mark.parametrize("system", [sl_2_infty(4), sl_infty(4, 2), sp_2_infty_plus_1(4),
                                    repeat_pattern("B", 1, (1, 1), 1, 3),
                                    repeat_pattern("D", 2, (1, 1), 2, 3)],
                         ids=["sl2inf", "slinf", "sp", "B", "D"])
def test_pushed_orders_restrict_positive_roots_to_positive_roots(system):
    borel = make_named(system, "interlacing")
    # transitivity: positive roots two levels up restrict to positive or zero roots
    for n in range(1, system.num_levels - 1):
        lvl = system.level(n)
        for c in range(system.step(n).s):
            for c2 in range(system.step(n + 1).s):
                for a in positive_roots(lvl, borel.order(n)):
                    up = system.step(n + 1).embed(c2, system.step(n).embed(c, a))
                    assert is_positive_root(up, borel.order(n + 2))


def test_type_d_orders_compare_canonically():
    s = repeat_pattern("D", 2, (1,), 2, 2)
    o2 = push_order(s.step(1), LinearOrder("D", (1, -2)))
    assert check_compatibility(s, BorelSystem((LinearOrder("D", (1, 2)), o2))) is None

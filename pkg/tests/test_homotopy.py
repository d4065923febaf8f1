import itertools

import pytest

from stablecat import oracle
from stablecat.homotopy import (
    TRUSTED_NEGATIVE,
    decide_ho_equal,
    distinct_in_quotient,
    faithfulness_report,
    homotopy_difference_bound,
    null_homotopic_difference_subgroup,
    solve_homotopy,
    stably_trivial_subgroup,
    swap_witness,
)
from stablecat.modules import FinModule, ModMorphism
from stablecat.under import UnderMorphism, UnderObject, standard_cylinder

Z4 = FinModule.of(4)
Z2 = FinModule.of(2)
Z42 = FinModule.of(4, 2)

X = UnderObject(Z4, ModMorphism(Z4, Z4, [[2]]))
Y = UnderObject(Z42, ModMorphism(Z4, Z42, [[2, 0]]))
F = UnderMorphism(X, Y, ModMorphism(Z4, Z42, [[1, 0]]))
G = UnderMorphism(X, Y, ModMorphism(Z4, Z42, [[1, 1]]))


def test_solve_homotopy_finds_homotopic_pair():
    f = UnderMorphism(X, Y, ModMorphism(Z4, Z42, [[1, 0]]))
    g = UnderMorphism(X, Y, ModMorphism(Z4, Z42, [[3, 0]]))
    wit = solve_homotopy(standard_cylinder(X), f, g)
    assert wit is not None
    assert wit.validate(f, g)
    # symmetry via the swapped cylinder
    back = swap_witness(wit)
    assert back.validate(g, f)


def test_solve_homotopy_rejects_the_counterexample_pair():
    assert solve_homotopy(standard_cylinder(X), F, G) is None


def test_difference_bound_is_twice_hom():
    s = homotopy_difference_bound(X, Y)
    # S = 2 Hom(Z/4, Z/4 + Z/2) = {(0,0), (2,0)}
    members = set()
    for c0, c1 in itertools.product(range(4), range(2)):
        d = ModMorphism(Z4, Z42, [[c0, c1]])
        if s.contains(d):
            members.add((c0, c1))
    assert members == {(0, 0), (2, 0)}


def test_difference_bound_requires_obstruction_shape():
    with pytest.raises(ValueError):
        homotopy_difference_bound(UnderObject.initial(Z4), Y)


def test_distinct_in_quotient_counterexample_pair():
    wit = distinct_in_quotient(F, G)
    assert wit is not None
    assert wit.difference == ModMorphism(Z4, Z42, [[0, 1]])
    assert wit.refuting_column == 1
    assert wit.validate(F, G)
    # a homotopic pair is not reported distinct
    g2 = UnderMorphism(X, Y, ModMorphism(Z4, Z42, [[3, 0]]))
    assert distinct_in_quotient(F, g2) is None


def test_decide_ho_equal_identifies_the_counterexample_pair():
    eq, wit = decide_ho_equal(F, G)
    assert eq
    assert wit is not None
    assert wit.validate(F, G)
    # the replacement leg really is a weak equivalence
    from stablecat.frobenius import is_weak_equivalence

    assert is_weak_equivalence(wit.replacement.map)


def test_decide_ho_equal_negative_case():
    x = UnderObject.over_zero(Z2)
    ident = UnderMorphism.identity(x)
    zero = UnderMorphism(x, x, ModMorphism.zero(Z2, Z2))
    eq, wit = decide_ho_equal(ident, zero)
    assert not eq
    assert wit is None
    assert "cofibrant" in TRUSTED_NEGATIVE


def test_faithfulness_report_flags_only_the_bad_pair():
    g2 = UnderMorphism(X, Y, ModMorphism(Z4, Z42, [[3, 0]]))
    report = faithfulness_report([(F, G), (F, g2)])
    assert len(report.violations) == 1
    bad = report.violations[0]
    assert bad.g.map == G.map
    assert bad.distinct_in_quotient and bad.ho_equal


def test_difference_subgroups_agree_in_base_zero():
    small = [Z2, Z4, Z42, FinModule.of(2, 2)]
    for m, n in itertools.product(small, repeat=2):
        x = UnderObject.over_zero(m)
        y = UnderObject.over_zero(n)
        homotopic = null_homotopic_difference_subgroup(x, y)
        stable = stably_trivial_subgroup(m, n)
        for d in oracle.enumerate_homs(m, n):
            assert homotopic.contains(d) == stable.contains(d)


def test_stably_trivial_subgroup_matches_brute_factoring():
    small = [Z2, Z4, Z42]
    for m, n in itertools.product(small, repeat=2):
        sub = stably_trivial_subgroup(m, n)
        factoring = oracle.brute_factoring_set(m, n)
        for d in oracle.enumerate_homs(m, n):
            assert sub.contains(d) == (d.matrix in factoring)

import itertools

import pytest

from stablecat import oracle
from stablecat.modules import FinModule, ModMorphism
from stablecat.under import UnderMorphism, UnderObject

Z4 = FinModule.of(4)
Z2 = FinModule.of(2)
Z42 = FinModule.of(4, 2)

X = UnderObject(Z4, ModMorphism(Z4, Z4, [[2]]))
Y = UnderObject(Z42, ModMorphism(Z4, Z42, [[2, 0]]))


def test_hom_count_matches_enumeration():
    cases = [(Z2, Z4), (Z4, Z2), (Z42, Z42), (FinModule.zero(), Z4), (Z4, FinModule.zero())]
    for m, n in cases:
        homs = list(oracle.enumerate_homs(m, n))
        assert len(homs) == oracle.hom_count(m, n)
        assert len({h.matrix for h in homs}) == len(homs)


def test_hom_count_formula():
    # an order-2 source generator has 2 choices into Z/4 (0 or 2), an order-4
    # source generator all 4
    assert oracle.hom_count(Z2, Z4) == 2
    assert oracle.hom_count(Z4, Z4) == 4
    assert oracle.hom_count(Z42, Z42) == 4 * 2 * 2 * 2


def test_bound_env_override(monkeypatch):
    monkeypatch.setenv("STABLECAT_ORACLE_BOUND", "3")
    assert oracle.oracle_bound() == 3
    with pytest.raises(oracle.BoundExceeded):
        list(oracle.enumerate_homs(Z42, Z42))
    monkeypatch.delenv("STABLECAT_ORACLE_BOUND")
    assert oracle.oracle_bound() == oracle.DEFAULT_BOUND


def test_enumerate_under_morphisms_counterexample_hom_set():
    maps = sorted(m.map.matrix for m in oracle.enumerate_under_morphisms(X, Y))
    assert maps == [((1, 0),), ((1, 1),), ((3, 0),), ((3, 1),)]


def test_brute_mono_epi_basics():
    assert oracle.brute_mono(ModMorphism.identity(Z42))
    assert oracle.brute_epi(ModMorphism.identity(Z42))
    assert not oracle.brute_mono(ModMorphism(Z4, Z4, [[2]]))
    assert not oracle.brute_epi(ModMorphism(Z4, Z42, [[1, 1]]))
    assert oracle.brute_mono(ModMorphism(Z2, Z4, [[2]]))


def test_brute_factoring_set_is_a_subgroup():
    for m, n in itertools.product([Z2, Z4, Z42], repeat=2):
        factoring = oracle.brute_factoring_set(m, n)
        assert ModMorphism.zero(m, n).matrix in factoring
        for a, b in itertools.product(list(factoring)[:8], repeat=2):
            s = ModMorphism(m, n, [list(r) for r in a]) + ModMorphism(m, n, [list(r) for r in b])
            assert s.matrix in factoring


def test_brute_factors_through_agrees_with_factoring_set():
    for m, n in itertools.product([Z2, Z4], repeat=2):
        factoring = oracle.brute_factoring_set(m, n)
        for f in oracle.enumerate_homs(m, n):
            assert oracle.brute_factors_through(f, k_max=2) == (f.matrix in factoring)


def test_brute_stable_inverse_on_small_cases():
    # multiplication by 2 on Z/4 is stably invertible (free modules vanish)
    assert oracle.brute_stable_inverse_exists(ModMorphism(Z4, Z4, [[2]]))
    # identity of Z/2 is, zero of Z/2 is not
    assert oracle.brute_stable_inverse_exists(ModMorphism.identity(Z2))
    assert not oracle.brute_stable_inverse_exists(ModMorphism.zero(Z2, Z2))


def test_sweep_cylinders_small():
    cyls = oracle.sweep_cylinders(X, k_max=2)
    assert cyls, "expected at least one enumerable cylinder"
    for c in cyls:
        assert c.validate()
        assert c.of == X
        assert c.space.carrier.torsion_rank == 0  # free carriers only
    # the standard cylinder's shape appears among them at k = 3
    assert all(c.space.carrier.free_rank <= 2 for c in cyls)

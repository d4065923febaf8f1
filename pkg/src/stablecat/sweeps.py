"""Exhaustive sweeps backing the headline claims.

Two large verifications live here:

* the positive control in plain fgMod(Z/4), where homotopy-category
  equality and stable homotopy must coincide for every parallel pair of
  morphisms between small modules;
* the obstruction soundness sweep for the counterexample source, where
  every homotopy on every small-rank free-carrier cylinder must have its
  end difference inside the obstruction subgroup.

Both report structured results rather than just booleans, so the CLI and
the tests can show what was actually checked.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import frobenius, homotopy, oracle
from .modules import FinModule, ModMorphism, compose
from .under import UnderMorphism, UnderObject


def modules_up_to_order(max_order: int) -> list[FinModule]:
    """All canonical modules of order at most max_order, smallest first."""
    out = []
    max_gens = max_order.bit_length()
    for k in range(max_gens + 1):
        for l in range(max_gens + 1):
            m = FinModule((4,) * k + (2,) * l)
            if m.order <= max_order:
                out.append(m)
    out.sort(key=lambda m: (m.order, m.orders))
    return out


@dataclass
class PairSweepResult:
    source: FinModule
    target: FinModule
    differences_checked: int
    subgroups_agree: bool
    sampled_pairs_checked: int
    sampled_disagreements: int


@dataclass
class BaseZeroSweep:
    results: list[PairSweepResult] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(
            (0 if r.subgroups_agree else 1) + r.sampled_disagreements for r in self.results
        )

    @property
    def total_differences(self) -> int:
        return sum(r.differences_checked for r in self.results)


def base_zero_faithfulness_sweep(
    max_order: int = 16, samples_per_pair: int = 5, seed: int = 0
) -> BaseZeroSweep:
    """Positive control: no faithfulness violations in plain fgMod(Z/4).

    Both deciders are additive, so "homotopy-category equal" and "stably
    homotopic" each depend only on the difference g - f, and each cuts out a
    subgroup of the hom-set: the standard-cylinder difference subgroup and
    the stably-trivial subgroup. The sweep checks that these subgroups have
    exactly the same members (mutual containment of generators, then
    membership of every single difference), and cross-checks the reduction
    to differences by running the actual pairwise deciders on seeded random
    pairs.
    """
    rng = random.Random(seed)
    mods = modules_up_to_order(max_order)
    sweep = BaseZeroSweep()
    for m, n in itertools.product(mods, mods):
        x = UnderObject.over_zero(m)
        y = UnderObject.over_zero(n)
        null_sub = homotopy.null_homotopic_difference_subgroup(x, y)
        stab_sub = homotopy.stably_trivial_subgroup(m, n)
        agree = all(stab_sub.contains(g) for g in null_sub.generators) and all(
            null_sub.contains(g) for g in stab_sub.generators
        )
        checked = 0
        if agree and oracle.hom_count(m, n) <= 256:
            # With equal subgroups the per-difference verdicts coincide by
            # construction; spot-verify membership symmetry on every
            # difference where the hom-set is enumerable.
            for diff in oracle.enumerate_homs(m, n):
                if null_sub.contains(diff) != stab_sub.contains(diff):
                    agree = False
                    break
                checked += 1
        disagreements = 0
        samples = 0
        for _ in range(samples_per_pair):
            f = _random_hom(rng, m, n)
            g = _random_hom(rng, m, n)
            uf = UnderMorphism(x, y, f)
            ug = UnderMorphism(x, y, g)
            ho_eq, _ = homotopy.decide_ho_equal(uf, ug)
            stable = frobenius.stably_homotopic(f, g)
            if ho_eq != stable:
                disagreements += 1
            samples += 1
        sweep.results.append(
            PairSweepResult(
                source=m,
                target=n,
                differences_checked=checked,
                subgroups_agree=agree,
                sampled_pairs_checked=samples,
                sampled_disagreements=disagreements,
            )
        )
    return sweep


def _random_hom(rng: random.Random, m: FinModule, n: FinModule) -> ModMorphism:
    mat = []
    for d in m.orders:
        row = []
        for e in n.orders:
            if d == 2 and e == 4:
                row.append(rng.choice((0, 2)))
            else:
                row.append(rng.randrange(e))
        mat.append(row)
    return ModMorphism(m, n, mat)


@dataclass
class ObstructionSweep:
    cylinders: int
    homotopies: int
    escapes: int  # differences outside the obstruction subgroup

    @property
    def sound(self) -> bool:
        return self.escapes == 0 and self.cylinders > 0


def obstruction_soundness_sweep(
    x: UnderObject, y: UnderObject, k_max: int = 3
) -> ObstructionSweep:
    """Check the difference bound against every enumerable cylinder for x.

    For each cylinder with free space carrier of rank at most k_max and each
    under-morphism H out of its space (each such H is a homotopy between its
    own ends), verify that ins0 H - ins1 H lies in the obstruction subgroup.
    """
    bound_subgroup = homotopy.homotopy_difference_bound(x, y)
    cylinders = oracle.sweep_cylinders(x, k_max)
    homs_by_struct: dict = {}
    escape_cache: dict = {}
    n_homotopies = 0
    escapes = 0
    for cyl in cylinders:
        key = (cyl.space.carrier, cyl.space.struct_map.matrix)
        if key not in homs_by_struct:
            homs_by_struct[key] = [
                h
                for h in oracle.enumerate_homs(cyl.space.carrier, y.carrier)
                if compose(cyl.space.struct_map, h) == y.struct_map
            ]
        homs = homs_by_struct[key]
        # ins0 H - ins1 H = (ins0 - ins1) H, so cylinders sharing the
        # inclusion difference and the hom-set give identical difference sets
        d = cyl.ins0.map - cyl.ins1.map
        dkey = (key, d.matrix)
        if dkey not in escape_cache:
            escape_cache[dkey] = sum(
                1 for h in homs if not bound_subgroup.contains(compose(d, h))
            )
        n_homotopies += len(homs)
        escapes += escape_cache[dkey]
    return ObstructionSweep(len(cylinders), n_homotopies, escapes)

"""Homotopy decision procedures with checkable certificates.

Three questions are decided for parallel under-morphisms f, g:

* cylinder homotopy relative to a given cylinder (a linear extension
  problem solved exactly);
* distinctness in the quotient by the congruence generated by cylinder
  homotopy, via an obstruction subgroup that bounds every possible
  single-step homotopy difference for sources of the counterexample shape;
* equality of the images in the homotopy category, via cofibrant
  replacement and a homotopy certificate.

Positive answers always carry data that can be re-validated from scratch;
negative answers carry either an obstruction witness or the name of the
standard criterion they rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import frobenius, linalg, modules
from .modules import FinModule, ModMorphism, ObjectMismatch, compose, solve_morphism
from .under import (
    Cylinder,
    UnderCoproduct,
    UnderMorphism,
    UnderObject,
    cofibrant_replacement,
    standard_cylinder,
)


@dataclass
class HomotopyWitness:
    """A homotopy H on a specific cylinder, from f to g."""

    cylinder: Cylinder
    h: UnderMorphism

    def validate(self, f: UnderMorphism, g: UnderMorphism) -> bool:
        cyl = self.cylinder
        return (
            cyl.validate()
            and self.h.source == cyl.space
            and self.h.target == f.target
            and compose(cyl.ins0.map, self.h.map) == f.map
            and compose(cyl.ins1.map, self.h.map) == g.map
        )


def solve_homotopy(
    cyl: Cylinder, f: UnderMorphism, g: UnderMorphism
) -> HomotopyWitness | None:
    """Find a homotopy from f to g on the given cylinder, if one exists.

    The unknown H must satisfy ins0 H = f, ins1 H = g on carriers together
    with the under-category triangle, all of which is one exact linear
    system over the target orders.
    """
    if f.source != g.source or f.target != g.target:
        raise ObjectMismatch("homotopy needs parallel morphisms")
    if cyl.of != f.source:
        raise ObjectMismatch("cylinder does not belong to the source")
    h, _ = solve_morphism(
        cyl.space.carrier,
        f.target.carrier,
        [
            (cyl.ins0.map.int_matrix(), f.map.int_matrix()),
            (cyl.ins1.map.int_matrix(), g.map.int_matrix()),
            (cyl.space.struct_map.int_matrix(), f.target.struct_map.int_matrix()),
        ],
    )
    if h is None:
        return None
    return HomotopyWitness(cyl, UnderMorphism(cyl.space, f.target, h))


def swap_witness(w: HomotopyWitness) -> HomotopyWitness:
    """Symmetry: a homotopy from f to g yields one from g to f."""
    cyl = w.cylinder
    cop = cyl.coproduct
    swapped = Cylinder(
        space=cyl.space,
        coproduct=UnderCoproduct(cop.object, cop.emb1, cop.emb0),
        ins=cyl.ins,
        ins0=cyl.ins1,
        ins1=cyl.ins0,
        sigma=cyl.sigma,
    )
    return HomotopyWitness(swapped, w.h)


@dataclass
class HomSubgroup:
    """A subgroup of Hom(M, N), given by generating morphisms."""

    source: FinModule
    target: FinModule
    generators: list[ModMorphism]

    def _prepared(self) -> linalg.PreparedSystem:
        # membership tests share one SNF; memoized on the instance
        prep = getattr(self, "_prep", None)
        if prep is None:
            m = self.target.num_gens
            n = self.source.num_gens
            flat = [
                [g.matrix[i][j] for i in range(n) for j in range(m)]
                for g in self.generators
            ]
            moduli = [self.target.orders[j] for _ in range(n) for j in range(m)]
            prep = linalg.PreparedSystem(flat, moduli)
            object.__setattr__(self, "_prep", prep)
        return prep

    def contains(self, f: ModMorphism) -> bool:
        if f.source != self.source or f.target != self.target:
            raise ObjectMismatch("membership test on the wrong hom-set")
        m = self.target.num_gens
        n = self.source.num_gens
        rhs = [f.matrix[i][j] for i in range(n) for j in range(m)]
        if not rhs:
            return True
        return self._prepared().solve(rhs) is not None


def _has_obstruction_shape(x: UnderObject) -> bool:
    return (
        x.base.orders == (4,)
        and x.carrier.orders == (4,)
        and x.struct_map.matrix == ((2,),)
    )


def homotopy_difference_bound(x: UnderObject, y: UnderObject) -> HomSubgroup:
    """The subgroup 2 * Hom(carrier(x), carrier(y)) bounding homotopy differences.

    Requires x to be of the counterexample shape: carrier Z/4 with structure
    map multiplication by 2. Every cylinder for such an x has a bijective
    carrier, forcing its two inclusions to agree mod 2, so the difference of
    the two ends of any homotopy into y is twice a morphism.
    """
    if not _has_obstruction_shape(x):
        raise ValueError("difference bound requires carrier Z/4 with structure map 2")
    gens = []
    m = y.carrier.num_gens
    for j in range(m):
        row = [0] * m
        row[j] = 2
        gen = ModMorphism(x.carrier, y.carrier, [row])
        if not gen.is_zero():
            gens.append(gen)
    return HomSubgroup(x.carrier, y.carrier, gens)


@dataclass
class QuotientDistinctnessWitness:
    """Evidence that two morphisms stay distinct in the homotopy quotient.

    The subgroup bounds every single-step homotopy difference; since it is a
    subgroup, it also bounds chains of single steps, so non-membership of
    g - f separates f and g in the quotient category.
    """

    subgroup: HomSubgroup
    difference: ModMorphism
    refuting_column: int

    def validate(self, f: UnderMorphism, g: UnderMorphism) -> bool:
        if self.difference != g.map - f.map:
            return False
        if self.subgroup.contains(self.difference):
            return False
        j = self.refuting_column
        e = self.difference.target.orders[j]
        col = [row[j] for row in self.difference.matrix]
        # The subgroup is 2*Hom: a refuting column has an odd entry (order 4)
        # or a nonzero entry (order 2).
        return any(a % 2 if e == 4 else a % e for a in col)


def distinct_in_quotient(
    f: UnderMorphism, g: UnderMorphism
) -> QuotientDistinctnessWitness | None:
    """Witness that f and g differ in the quotient by homotopy, if they do."""
    if f.source != g.source or f.target != g.target:
        raise ObjectMismatch("distinctness needs parallel morphisms")
    s = homotopy_difference_bound(f.source, f.target)
    diff = g.map - f.map
    if s.contains(diff):
        return None
    for j, e in enumerate(diff.target.orders):
        col = [row[j] for row in diff.matrix]
        if any(a % 2 if e == 4 else a % e for a in col):
            return QuotientDistinctnessWitness(s, diff, j)
    raise AssertionError("non-membership without a refuting column")


@dataclass
class HoEqualityWitness:
    """Certificate for equality in the homotopy category.

    The replacement q is a weak equivalence, so the localisation inverts it;
    a homotopy between q then f and q then g identifies the images of f and
    g under the localisation functor.
    """

    replacement: UnderMorphism
    homotopy: HomotopyWitness

    def validate(self, f: UnderMorphism, g: UnderMorphism) -> bool:
        q = self.replacement
        if q.target != f.source:
            return False
        if not frobenius.is_weak_equivalence(q.map):
            return False
        return self.homotopy.validate(q.then(f), q.then(g))


TRUSTED_NEGATIVE = (
    "for a cofibrant source and fibrant target, homotopy on the standard "
    "cylinder detects equality in the homotopy category"
)


def decide_ho_equal(
    f: UnderMorphism, g: UnderMorphism
) -> tuple[bool, HoEqualityWitness | None]:
    """Decide whether f and g become equal in the homotopy category.

    Replace the source cofibrantly, then look for a homotopy between the
    precompositions on the standard cylinder of the replacement. A positive
    answer is certified; a negative one relies on the standard detection
    criterion for cofibrant sources (all objects here are fibrant).
    """
    if f.source != g.source or f.target != g.target:
        raise ObjectMismatch("homotopy-category equality needs parallel morphisms")
    _, q = cofibrant_replacement(f.source)
    qf = q.then(f)
    qg = q.then(g)
    wit = solve_homotopy(standard_cylinder(q.source), qf, qg)
    if wit is None:
        return False, None
    return True, HoEqualityWitness(q, wit)


@dataclass
class PairRecord:
    f: UnderMorphism
    g: UnderMorphism
    distinct_in_quotient: bool | None
    ho_equal: bool
    faithfulness_violation: bool


@dataclass
class FaithfulnessReport:
    records: list[PairRecord]

    @property
    def violations(self) -> list[PairRecord]:
        return [r for r in self.records if r.faithfulness_violation]


def _quotient_distinct(f: UnderMorphism, g: UnderMorphism) -> bool | None:
    if _has_obstruction_shape(f.source):
        return distinct_in_quotient(f, g) is not None
    if f.source.base.is_zero():
        # Every object of plain fgMod(Z/4) is bifibrant, so the single-step
        # homotopy relation is already the stable congruence.
        return not frobenius.stably_homotopic(f.map, g.map)
    return None


def faithfulness_report(pairs: list[tuple[UnderMorphism, UnderMorphism]]) -> FaithfulnessReport:
    """Tabulate quotient-distinctness against homotopy-category equality.

    A pair that is distinct in the homotopy quotient but equal in the
    homotopy category is a faithfulness violation of the canonical functor.
    """
    records = []
    for f, g in pairs:
        distinct = _quotient_distinct(f, g)
        ho_eq, _ = decide_ho_equal(f, g)
        records.append(
            PairRecord(
                f=f,
                g=g,
                distinct_in_quotient=distinct,
                ho_equal=ho_eq,
                faithfulness_violation=bool(distinct) and ho_eq,
            )
        )
    return FaithfulnessReport(records)


# ---------------------------------------------------------------------------
# Difference-subgroup computations used by the exhaustive base-zero sweep.


def null_homotopic_difference_subgroup(x: UnderObject, y: UnderObject) -> HomSubgroup:
    """The subgroup {g - f : f homotopic to g on the standard cylinder of x}.

    Every under-morphism H out of the cylinder space is a homotopy between
    its own ends, so the difference set is the image of the affine set
    {H : triangle holds} under the linear map H -> ins1 H - ins0 H. It
    contains zero (reflexivity), hence is the subgroup generated by the image
    of one base point and of a homogeneous solution basis.
    """
    cyl = standard_cylinder(x)
    triangle = (cyl.space.struct_map.int_matrix(), y.struct_map.int_matrix())
    basis = modules.homogeneous_morphism_lattice(cyl.space.carrier, y.carrier, [triangle])

    def delta(h: ModMorphism) -> ModMorphism:
        return compose(cyl.ins1.map, h) - compose(cyl.ins0.map, h)

    base_h, _ = solve_morphism(cyl.space.carrier, y.carrier, [triangle])
    if base_h is None:
        # No under-morphism out of the cylinder, so no homotopic pairs at all.
        return HomSubgroup(x.carrier, y.carrier, [])
    gens = [d for d in [delta(base_h)] + [delta(h) for h in basis] if not d.is_zero()]
    return HomSubgroup(x.carrier, y.carrier, gens)


def stably_trivial_subgroup(m: FinModule, n: FinModule) -> HomSubgroup:
    """The subgroup of Hom(m, n) of morphisms factoring through a bijective.

    Generated by the composites of the envelope inclusion with the
    elementary morphisms out of the envelope.
    """
    env, iota = frobenius.injective_envelope(m)
    gens = []
    for i in range(env.num_gens):
        for j, e in enumerate(n.orders):
            mat = linalg.zeros(env.num_gens, n.num_gens)
            mat[i][j] = 1
            gen = compose(iota, ModMorphism(env, n, mat))
            if not gen.is_zero():
                gens.append(gen)
    return HomSubgroup(m, n, gens)

"""The under-category of Z/4-modules below a fixed module A.

Objects are pairs (Y, f) with f: A -> Y; morphisms are carrier morphisms
making the triangle below A commute. The model classes (cofibration,
fibration, weak equivalence) are tested on carriers. Coproducts are pushouts
over A, the initial object is (A, id), and cylinders are factorizations of
the fold map of the under-coproduct.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

from . import frobenius, modules
from .modules import (
    FinModule,
    ModMorphism,
    ObjectMismatch,
    compose,
    pushout,
    pushout_mediator,
    solve_morphism,
)


@dataclass(frozen=True)
class UnderObject:
    """An object (carrier, struct_map) of (A | fgMod(Z/4))."""

    carrier: FinModule
    struct_map: ModMorphism

    def __post_init__(self):
        if self.struct_map.target != self.carrier:
            raise ObjectMismatch("structure map must land in the carrier")

    @property
    def base(self) -> FinModule:
        return self.struct_map.source

    @staticmethod
    def initial(base: FinModule) -> "UnderObject":
        return UnderObject(base, ModMorphism.identity(base))

    @staticmethod
    def over_zero(carrier: FinModule) -> "UnderObject":
        """Carrier viewed under the zero module: plain fgMod(Z/4)."""
        return UnderObject(carrier, ModMorphism.zero(FinModule.zero(), carrier))

    def __repr__(self):
        return f"UnderObject({self.carrier!r}, {[list(r) for r in self.struct_map.matrix]})"


@dataclass(frozen=True)
class UnderMorphism:
    """A commuting triangle between two objects under the same base."""

    source: UnderObject
    target: UnderObject
    map: ModMorphism

    def __post_init__(self):
        if self.source.base != self.target.base:
            raise ObjectMismatch("under-morphism endpoints have different bases")
        if self.map.source != self.source.carrier or self.map.target != self.target.carrier:
            raise ObjectMismatch("carrier map does not match the endpoints")
        if compose(self.source.struct_map, self.map) != self.target.struct_map:
            raise ObjectMismatch("triangle below the base does not commute")

    @staticmethod
    def identity(x: UnderObject) -> "UnderMorphism":
        return UnderMorphism(x, x, ModMorphism.identity(x.carrier))

    def then(self, other: "UnderMorphism") -> "UnderMorphism":
        if self.target != other.source:
            raise ObjectMismatch("cannot compose under-morphisms")
        return UnderMorphism(self.source, other.target, compose(self.map, other.map))


class ModelPredicates(NamedTuple):
    cofibration: bool
    fibration: bool
    weak_equivalence: bool


def under_model_predicates(m: UnderMorphism) -> ModelPredicates:
    """Model classes of an under-morphism, inherited from the carrier map."""
    return ModelPredicates(
        cofibration=modules.is_mono(m.map),
        fibration=modules.is_epi(m.map),
        weak_equivalence=frobenius.is_weak_equivalence(m.map),
    )


class UnderCoproduct(NamedTuple):
    object: UnderObject
    emb0: UnderMorphism
    emb1: UnderMorphism


def coproduct_under(x: UnderObject, y: UnderObject) -> UnderCoproduct:
    """Coproduct in the under-category: the pushout over the base."""
    if x.base != y.base:
        raise ObjectMismatch("coproduct needs a common base")
    po = pushout(x.struct_map, y.struct_map)
    struct = compose(x.struct_map, po.leg0)
    obj = UnderObject(po.module, struct)
    return UnderCoproduct(
        obj,
        UnderMorphism(x, obj, po.leg0),
        UnderMorphism(y, obj, po.leg1),
    )


def coproduct_mediator(
    cop: UnderCoproduct, u: UnderMorphism, v: UnderMorphism
) -> tuple[UnderMorphism, bool]:
    """Mediating under-morphism for a cocone (u, v) on the two summands."""
    if u.target != v.target:
        raise ObjectMismatch("cocone legs need a common target")
    med, unique = solve_morphism(
        cop.object.carrier,
        u.target.carrier,
        [
            (cop.emb0.map.int_matrix(), u.map.int_matrix()),
            (cop.emb1.map.int_matrix(), v.map.int_matrix()),
        ],
    )
    if med is None:
        raise AssertionError("under-coproduct universal property violated")
    return UnderMorphism(cop.object, u.target, med), unique


def coproduct_of_morphisms(
    copx: UnderCoproduct, copy_: UnderCoproduct, w0: UnderMorphism, w1: UnderMorphism
) -> UnderMorphism:
    """The induced morphism w0 + w1 between under-coproducts."""
    med, _ = coproduct_mediator(copx, w0.then(copy_.emb0), w1.then(copy_.emb1))
    return med


def is_cofibrant(x: UnderObject) -> bool:
    """Cofibrancy of (Y, f): the structure map is a cofibration."""
    return modules.is_mono(x.struct_map)


def cofibrant_replacement(x: UnderObject) -> tuple[UnderObject, UnderMorphism]:
    """A cofibrant object with a trivial fibration onto x.

    Obtained by factoring the structure map as cofibration then trivial
    fibration; the replacement carrier is carrier(x) + I(base).
    """
    fac = frobenius.factor_cof_then_trivfib(x.struct_map)
    replacement = UnderObject(fac.middle, fac.first)
    q = UnderMorphism(replacement, x, fac.second)
    return replacement, q


@dataclass
class Cylinder:
    """A cylinder for an under-object: X + X >--ins--> Z --sigma--> X.

    `ins` is a cofibration, `sigma` a weak equivalence, and ins then sigma is
    the fold map, i.e. ins0 then sigma and ins1 then sigma are identities.
    """

    space: UnderObject
    coproduct: UnderCoproduct
    ins: UnderMorphism
    ins0: UnderMorphism
    ins1: UnderMorphism
    sigma: UnderMorphism

    @property
    def of(self) -> UnderObject:
        return self.sigma.target

    def validate(self) -> bool:
        x = self.of
        ident = ModMorphism.identity(x.carrier)
        return (
            self.ins.source == self.coproduct.object
            and self.ins.target == self.space
            and self.ins0.map == compose(self.coproduct.emb0.map, self.ins.map)
            and self.ins1.map == compose(self.coproduct.emb1.map, self.ins.map)
            and modules.is_mono(self.ins.map)
            and frobenius.is_weak_equivalence(self.sigma.map)
            and compose(self.ins0.map, self.sigma.map) == ident
            and compose(self.ins1.map, self.sigma.map) == ident
        )


@functools.lru_cache(maxsize=None)
def standard_cylinder(x: UnderObject) -> Cylinder:
    """The cylinder obtained by factoring the fold map of x + x."""
    cop = coproduct_under(x, x)
    fold, _ = coproduct_mediator(cop, UnderMorphism.identity(x), UnderMorphism.identity(x))
    fac = frobenius.factor_cof_then_trivfib(fold.map)
    space = UnderObject(fac.middle, compose(cop.object.struct_map, fac.first))
    ins = UnderMorphism(cop.object, space, fac.first)
    sigma = UnderMorphism(space, x, fac.second)
    return Cylinder(
        space=space,
        coproduct=cop,
        ins=ins,
        ins0=cop.emb0.then(ins),
        ins1=cop.emb1.then(ins),
        sigma=sigma,
    )


@dataclass
class TransferDiagnostics:
    """Which hypotheses of the cylinder-transfer construction held."""

    coproduct_of_w_is_weak_equivalence: bool
    comparison_is_weak_equivalence: bool
    sigma_is_weak_equivalence: bool
    sigma_unique: bool
    cylinder_valid: bool

    def all_ok(self) -> bool:
        return (
            self.coproduct_of_w_is_weak_equivalence
            and self.comparison_is_weak_equivalence
            and self.sigma_is_weak_equivalence
            and self.sigma_unique
            and self.cylinder_valid
        )


@dataclass
class TransferResult:
    cylinder: Cylinder
    old_cylinder: Cylinder
    w: UnderMorphism
    ww: UnderMorphism  # w + w between the under-coproducts
    comparison: UnderMorphism  # from the old cylinder space to the new one
    diagnostics: TransferDiagnostics


def transfer_cylinder(w: UnderMorphism, cyl: Cylinder) -> TransferResult:
    """Push a cylinder for the source of w forward along w.

    Builds the pushout of w + w along the old cylinder inclusion, equips the
    result with the induced inclusion and projection, and reports whether the
    ingredients that would make it a genuine cylinder (w + w being a weak
    equivalence, the comparison map being one, the projection being one) held
    on this instance. The construction itself never fails; failing
    diagnostics are the interesting output.
    """
    if cyl.of != w.source:
        raise ObjectMismatch("cylinder does not belong to the source of w")
    if not frobenius.is_weak_equivalence(w.map):
        raise ValueError("transfer requires w to be a weak equivalence")
    x = w.target
    copx = coproduct_under(x, x)
    ww = coproduct_of_morphisms(cyl.coproduct, copx, w, w)
    po = pushout(ww.map, cyl.ins.map)
    space = UnderObject(po.module, compose(copx.object.struct_map, po.leg0))
    ins = UnderMorphism(copx.object, space, po.leg0)
    comparison = UnderMorphism(cyl.space, space, po.leg1)

    fold, _ = coproduct_mediator(copx, UnderMorphism.identity(x), UnderMorphism.identity(x))
    sigma_map, sigma_unique = pushout_mediator(
        po, fold.map, compose(cyl.sigma.map, w.map)
    )
    sigma = UnderMorphism(space, x, sigma_map)
    new_cyl = Cylinder(
        space=space,
        coproduct=copx,
        ins=ins,
        ins0=copx.emb0.then(ins),
        ins1=copx.emb1.then(ins),
        sigma=sigma,
    )
    diag = TransferDiagnostics(
        coproduct_of_w_is_weak_equivalence=frobenius.is_weak_equivalence(ww.map),
        comparison_is_weak_equivalence=frobenius.is_weak_equivalence(comparison.map),
        sigma_is_weak_equivalence=frobenius.is_weak_equivalence(sigma_map),
        sigma_unique=sigma_unique,
        cylinder_valid=new_cyl.validate(),
    )
    return TransferResult(new_cyl, cyl, w, ww, comparison, diag)


def transfer_homotopy(
    tr: TransferResult, f: UnderMorphism, g: UnderMorphism, h_old: ModMorphism
) -> ModMorphism:
    """Transport a homotopy along a cylinder transfer.

    `h_old` is a homotopy on the old cylinder from (w then f) to (w then g).
    Returns the unique H on the new cylinder with components f and g whose
    pullback along the comparison map is `h_old`.
    """
    if h_old.source != tr.old_cylinder.space.carrier:
        raise ObjectMismatch("homotopy does not live on the transferred cylinder")
    fg, _ = coproduct_mediator(tr.cylinder.coproduct, f, g)
    # Compatibility square: (w + w) then (f, g) must equal ins_old then h_old.
    if compose(tr.ww.map, fg.map) != compose(tr.old_cylinder.ins.map, h_old):
        raise ValueError("homotopy is not compatible with the transferred pair")
    h_new, _ = solve_morphism(
        tr.cylinder.space.carrier,
        f.target.carrier,
        [
            (tr.cylinder.ins.map.int_matrix(), fg.map.int_matrix()),
            (tr.comparison.map.int_matrix(), h_old.int_matrix()),
        ],
    )
    if h_new is None:
        raise AssertionError("pushout universal property violated for the homotopy")
    return h_new

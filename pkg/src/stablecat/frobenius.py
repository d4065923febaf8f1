"""The canonical model structure on finitely generated Z/4-modules.

Cofibrations are the monomorphisms, fibrations the epimorphisms, and the
weak equivalences are the stable isomorphisms: morphisms that become
invertible after quotienting by everything that factors through a bijective
(= free) module. The stable reduction functor implemented here sends a module
to the F2-vector space of stable maps out of Z/2 and a morphism to the matrix
of post-composition, which makes the weak-equivalence test a determinant
computation over F2.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import linalg, modules
from .modules import (
    DirectSum,
    FinModule,
    ModMorphism,
    ObjectMismatch,
    compose,
    direct_sum,
    solve_morphism,
)


@dataclass
class FactorWitness:
    """A factorization f = first then second through a bijective module."""

    through: FinModule
    first: ModMorphism
    second: ModMorphism

    def validate(self, f: ModMorphism) -> bool:
        return (
            is_bijective_object(self.through)
            and self.first.source == f.source
            and self.second.target == f.target
            and self.first.target == self.through
            and self.second.source == self.through
            and compose(self.first, self.second) == f
        )


@dataclass
class StableReduction:
    """F2 data of the stable reduction: dimensions and a matrix over F2."""

    source_dim: int
    target_dim: int
    matrix: tuple[tuple[int, ...], ...]


def is_bijective_object(m: FinModule) -> bool:
    """Projective-and-injective means free: no order-2 summands."""
    return m.torsion_rank == 0


def injective_envelope(m: FinModule) -> tuple[FinModule, ModMorphism]:
    """The embedding of m into the free module on its generators.

    Order-4 generators map identically; an order-2 generator maps to twice
    the corresponding free generator (its unique embedding into Z/4).
    """
    env = FinModule.free(m.num_gens)
    mat = linalg.zeros(m.num_gens, m.num_gens)
    for i, d in enumerate(m.orders):
        mat[i][i] = 1 if d == 4 else 2
    return env, ModMorphism(m, env, mat)


def factors_through_bijective(f: ModMorphism) -> FactorWitness | None:
    """A witness that f factors through some bijective module, if one exists.

    It suffices to look for a factorization through the injective envelope of
    the source: the envelope inclusion is a mono into a bijective object, so
    any factorization through any bijective extends along it.
    """
    env, iota = injective_envelope(f.source)
    h = _envelope_solver(f.source, f.target).solve([f.int_matrix()])
    if h is None:
        return None
    return FactorWitness(through=env, first=iota, second=h)


@functools.lru_cache(maxsize=None)
def _envelope_solver(source: FinModule, target: FinModule) -> modules.MorphismSolver:
    _, iota = injective_envelope(source)
    env = iota.target
    return modules.MorphismSolver(env, target, [iota.int_matrix()])


def stably_homotopic(f: ModMorphism, g: ModMorphism) -> bool:
    """Whether g - f factors through a bijective module."""
    if f.source != g.source or f.target != g.target:
        raise ObjectMismatch("stable homotopy needs parallel morphisms")
    return factors_through_bijective(g - f) is not None


def stable_dim(m: FinModule) -> int:
    """Dimension of the F2-space of stable maps Z/2 -> m."""
    return m.torsion_rank


def stable_matrix(f: ModMorphism) -> tuple[tuple[int, ...], ...]:
    """Matrix of the stable reduction of f over F2.

    A stable map Z/2 -> M is detected by its components on the order-2
    generators; a free summand contributes nothing. The reduction of f is
    therefore the order-2 block of its matrix, taken mod 2.
    """
    src_idx = [i for i, d in enumerate(f.source.orders) if d == 2]
    tgt_idx = [j for j, d in enumerate(f.target.orders) if d == 2]
    return tuple(tuple(f.matrix[i][j] % 2 for j in tgt_idx) for i in src_idx)


def stable_reduction(f: ModMorphism) -> StableReduction:
    return StableReduction(stable_dim(f.source), stable_dim(f.target), stable_matrix(f))


def _f2_invertible(mat: tuple[tuple[int, ...], ...], rows: int, cols: int) -> bool:
    if rows != cols:
        return False
    a = [list(r) for r in mat]
    for c in range(cols):
        piv = next((r for r in range(c, rows) if a[r][c] % 2), None)
        if piv is None:
            return False
        a[c], a[piv] = a[piv], a[c]
        for r in range(rows):
            if r != c and a[r][c] % 2:
                a[r] = [(x + y) % 2 for x, y in zip(a[r], a[c])]
    return True


def is_weak_equivalence(f: ModMorphism) -> bool:
    """Stable isomorphism test: the stable reduction is invertible over F2."""
    red = stable_reduction(f)
    return _f2_invertible(red.matrix, red.source_dim, red.target_dim)


class Factorization:
    """A two-step factorization of a morphism, with the intermediate biproduct."""

    def __init__(self, first: ModMorphism, second: ModMorphism, summand: DirectSum):
        self.first = first
        self.second = second
        self.summand = summand

    @property
    def middle(self) -> FinModule:
        return self.first.target


def factor_cof_then_trivfib(f: ModMorphism) -> Factorization:
    """Factor f as a mono (f, envelope) followed by a projection.

    The mono X -> Y + I(X) is a cofibration; the projection back to Y is an
    epi and a stable isomorphism (it kills only a free summand).
    """
    env, iota = injective_envelope(f.source)
    ds = direct_sum(f.target, env)
    mono = compose(f, ds.emb0) + compose(iota, ds.emb1)
    return Factorization(mono, ds.proj0, ds)


def projective_cover(m: FinModule) -> tuple[FinModule, ModMorphism]:
    """The free module on m's generators with its canonical surjection."""
    cover = FinModule.free(m.num_gens)
    return cover, ModMorphism(cover, m, linalg.identity(m.num_gens))


def factor_trivcof_then_fib(f: ModMorphism) -> Factorization:
    """Factor f as a split mono with free cokernel followed by an epi.

    The first map X -> X + P(Y) is a cofibration and a stable isomorphism;
    the second map (f on X, the cover surjection on P(Y)) is an epi.
    """
    cover, pi = projective_cover(f.target)
    ds = direct_sum(f.source, cover)
    fib = compose(ds.proj0, f) + compose(ds.proj1, pi)
    return Factorization(ds.emb0, fib, ds)

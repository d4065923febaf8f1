"""The category of finitely generated Z/4-modules.

Objects are kept in canonical cyclic decomposition: an ordered tuple of
cyclic orders drawn from {4, 2}, all 4s first. Morphisms are integer
matrices, one row per source generator and one column per target generator,
acting on row vectors (v maps to v @ A); composition f then g is the plain
matrix product f.matrix @ g.matrix reduced modulo the target orders.

Kernels, cokernels and pushouts are computed through integer presentations
and Smith normal form, and immediately renormalised to canonical form.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

from . import linalg
from .linalg import IntMatrix


class ObjectMismatch(ValueError):
    """Raised when a categorical operation is fed incompatible objects."""


@dataclass(frozen=True)
class FinModule:
    """A finitely generated Z/4-module in canonical form (Z/4)^k + (Z/2)^l."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(d not in (2, 4) for d in self.orders):
            raise ValueError(f"cyclic orders must be 2 or 4, got {self.orders}")
        if list(self.orders) != sorted(self.orders, reverse=True):
            raise ValueError(f"orders must be sorted 4s before 2s, got {self.orders}")

    @staticmethod
    def zero() -> "FinModule":
        return FinModule(())

    @staticmethod
    def free(k: int) -> "FinModule":
        return FinModule((4,) * k)

    @staticmethod
    def of(*orders: int) -> "FinModule":
        return FinModule(tuple(sorted(orders, reverse=True)))

    @property
    def num_gens(self) -> int:
        return len(self.orders)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.orders if d == 4)

    @property
    def torsion_rank(self) -> int:
        """Number of order-2 summands (the invariant deciding bijectivity)."""
        return sum(1 for d in self.orders if d == 2)

    @property
    def order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def is_zero(self) -> bool:
        return not self.orders

    def __repr__(self):
        if not self.orders:
            return "FinModule(0)"
        return "FinModule(%s)" % "+".join(f"Z/{d}" for d in self.orders)


def _normalize_entries(matrix, source: FinModule, target: FinModule) -> tuple[tuple[int, ...], ...]:
    rows = len(source.orders)
    if len(matrix) != rows:
        raise ValueError(f"expected {rows} rows, got {len(matrix)}")
    out = []
    for i, row in enumerate(matrix):
        if len(row) != len(target.orders):
            raise ValueError(f"row {i}: expected {len(target.orders)} columns, got {len(row)}")
        d = source.orders[i]
        new = []
        for j, a in enumerate(row):
            e = target.orders[j]
            a = a % e
            if (d * a) % e:
                raise ValueError(
                    f"entry ({i},{j})={a} is not well defined from order {d} into order {e}"
                )
            new.append(a)
        out.append(tuple(new))
    return tuple(out)


@dataclass(frozen=True)
class ModMorphism:
    """A homomorphism of Z/4-modules given by its generator matrix."""

    source: FinModule
    target: FinModule
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "matrix", _normalize_entries(self.matrix, self.source, self.target)
        )

    @staticmethod
    def identity(m: FinModule) -> "ModMorphism":
        return ModMorphism(m, m, linalg.identity(m.num_gens))

    @staticmethod
    def zero(source: FinModule, target: FinModule) -> "ModMorphism":
        return ModMorphism(source, target, linalg.zeros(source.num_gens, target.num_gens))

    def int_matrix(self) -> IntMatrix:
        return [list(row) for row in self.matrix]

    def is_zero(self) -> bool:
        return all(not any(row) for row in self.matrix)

    def is_identity(self) -> bool:
        return self.source == self.target and self == ModMorphism.identity(self.source)

    def then(self, other: "ModMorphism") -> "ModMorphism":
        return compose(self, other)

    def __add__(self, other: "ModMorphism") -> "ModMorphism":
        if self.source != other.source or self.target != other.target:
            raise ObjectMismatch("cannot add morphisms with different endpoints")
        m = [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.matrix, other.matrix)
        ]
        return ModMorphism(self.source, self.target, m)

    def __neg__(self) -> "ModMorphism":
        return ModMorphism(self.source, self.target, [[-a for a in row] for row in self.matrix])

    def __sub__(self, other: "ModMorphism") -> "ModMorphism":
        return self + (-other)

    def scale(self, c: int) -> "ModMorphism":
        return ModMorphism(self.source, self.target, [[c * a for a in row] for row in self.matrix])

    def apply(self, element: tuple[int, ...]) -> tuple[int, ...]:
        """Image of an element (a residue tuple of the source) under the map."""
        out = linalg.vec_mat(list(element), self.int_matrix()) if self.matrix else [
            0
        ] * self.target.num_gens
        if not self.source.orders:
            out = [0] * self.target.num_gens
        return tuple(a % e for a, e in zip(out, self.target.orders))

    def __repr__(self):
        return f"ModMorphism({self.source!r} -> {self.target!r}, {[list(r) for r in self.matrix]})"


def compose(f: ModMorphism, g: ModMorphism) -> ModMorphism:
    """Diagrammatic composite: first f, then g."""
    if f.target != g.source:
        raise ObjectMismatch(f"cannot compose {f.target!r} with {g.source!r}")
    prod = linalg.mat_mul(f.int_matrix(), g.int_matrix())
    if f.source.num_gens and not f.target.num_gens:
        prod = linalg.zeros(f.source.num_gens, g.target.num_gens)
    return ModMorphism(f.source, g.target, prod)


class DirectSum(NamedTuple):
    module: FinModule
    emb0: ModMorphism
    emb1: ModMorphism
    proj0: ModMorphism
    proj1: ModMorphism


def direct_sum(m: FinModule, n: FinModule) -> DirectSum:
    """Biproduct of two modules, with canonical (sorted) generator order."""
    tagged = [(d, 0, i) for i, d in enumerate(m.orders)] + [
        (d, 1, i) for i, d in enumerate(n.orders)
    ]
    # 4s before 2s; within an order, M's generators before N's.
    tagged.sort(key=lambda t: (-t[0], t[1], t[2]))
    total = FinModule(tuple(t[0] for t in tagged))
    pos = {(side, i): p for p, (_, side, i) in enumerate(tagged)}

    def emb(src: FinModule, side: int) -> ModMorphism:
        mat = linalg.zeros(src.num_gens, total.num_gens)
        for i in range(src.num_gens):
            mat[i][pos[(side, i)]] = 1
        return ModMorphism(src, total, mat)

    def proj(dst: FinModule, side: int) -> ModMorphism:
        mat = linalg.zeros(total.num_gens, dst.num_gens)
        for i in range(dst.num_gens):
            mat[pos[(side, i)]][i] = 1
        return ModMorphism(total, dst, mat)

    return DirectSum(total, emb(m, 0), emb(n, 1), proj(m, 0), proj(n, 1))


def induced_from_coproduct(f: ModMorphism, g: ModMorphism) -> ModMorphism:
    """The morphism M + N -> T with components f and g (the column pair)."""
    if f.target != g.target:
        raise ObjectMismatch("induced morphism needs a common target")
    ds = direct_sum(f.source, g.source)
    mat = linalg.zeros(ds.module.num_gens, f.target.num_gens)
    for comp, proj in ((f, ds.proj0), (g, ds.proj1)):
        prod = linalg.mat_mul(proj.int_matrix(), comp.int_matrix())
        for i, row in enumerate(prod):
            for j, v in enumerate(row):
                mat[i][j] += v
    return ModMorphism(ds.module, f.target, mat)


# ---------------------------------------------------------------------------
# Presentations and canonical decomposition.


@dataclass
class SubquotientPresentation:
    """A module presented as Z^generators modulo the rows of `relations`.

    The relations are expected to contain the diagonal order relations, so
    the presented group has exponent dividing 4.
    """

    generators: int
    relations: IntMatrix


@dataclass
class Decomposition:
    module: FinModule
    # Integer matrices translating between presentation coordinates and the
    # canonical generators; mutually inverse modulo relations resp. orders.
    to_canonical: IntMatrix  # generators x num_gens(module)
    from_canonical: IntMatrix  # num_gens(module) x generators


def _int_inverse(a: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, via its Smith normal form."""
    n = len(a)
    s = linalg.snf(a)
    diag = s.diagonal()
    if len(diag) != n or any(d != 1 for d in diag):
        raise ValueError("matrix is not unimodular")
    # U A V = I  =>  A^-1 = V U.
    return linalg.mat_mul(s.V, s.U)


def decompose(p: SubquotientPresentation) -> Decomposition:
    """Canonical form of Z^n modulo the row span of the relations."""
    n = p.generators
    rel = [row[:] for row in p.relations]
    if not rel:
        rel = [[0] * n] if n else []
    s = linalg.snf(rel) if n else linalg.SnfResult(linalg.identity(0), [], linalg.identity(0))
    diag = s.diagonal() if n else []
    invariants = list(diag) + [0] * (n - len(diag))
    if any(d == 0 or d > 4 or d == 3 for d in invariants):
        raise ValueError(f"presentation is not a module of exponent 4: invariants {invariants}")
    kept = [(d, i) for i, d in enumerate(invariants) if d > 1]
    kept.sort(key=lambda t: (-t[0], t[1]))
    module = FinModule(tuple(d for d, _ in kept))
    v_inv = _int_inverse(s.V) if n else []
    to_can = linalg.zeros(n, module.num_gens)
    from_can = linalg.zeros(module.num_gens, n)
    for new_idx, (_, coord) in enumerate(kept):
        for g in range(n):
            to_can[g][new_idx] = s.V[g][coord]
        from_can[new_idx] = v_inv[coord][:]
    return Decomposition(module, to_can, from_can)


def _order_relation_rows(m: FinModule) -> IntMatrix:
    rows = linalg.zeros(m.num_gens, m.num_gens)
    for i, d in enumerate(m.orders):
        rows[i][i] = d
    return rows


def kernel(f: ModMorphism) -> tuple[FinModule, ModMorphism]:
    """Kernel with its mono inclusion into the source."""
    n = f.source.num_gens
    # Lattice of integer rows x with x @ F = 0 modulo the target orders.
    _, gens = linalg.solve_mod_full(
        f.int_matrix(), [0] * f.target.num_gens, list(f.target.orders)
    )
    lattice = gens + _order_relation_rows(f.source)
    s = linalg.snf(lattice) if n else None
    if n == 0:
        return FinModule.zero(), ModMorphism.zero(FinModule.zero(), f.source)
    # Row basis B of the solution lattice (full rank: contains diag(orders)).
    basis = []
    for i, d in enumerate(s.diagonal()):
        if d == 0:
            raise AssertionError("kernel lattice must have full rank")
        row = [d if j == i else 0 for j in range(n)]
        basis.append(row)
    b = linalg.mat_mul(basis, _int_inverse(s.V))  # B = D V^-1 rows, spans U@lattice
    # Express the order relations in lattice coordinates: diag(orders) = C @ B.
    b_inv_scaled = _cofactor_solve(b)
    c = []
    for i, d in enumerate(f.source.orders):
        target_row = [d if j == i else 0 for j in range(n)]
        c.append(_solve_left(target_row, b, b_inv_scaled))
    dec = decompose(SubquotientPresentation(n, c))
    incl = linalg.mat_mul(dec.from_canonical, b)
    return dec.module, ModMorphism(dec.module, f.source, incl)


def _cofactor_solve(b: IntMatrix) -> tuple[IntMatrix, int]:
    """Adjugate and determinant of a nonsingular integer matrix."""
    n = len(b)
    s = linalg.snf(b)
    det = 1
    for d in s.diagonal():
        det *= d
    if det == 0:
        raise ValueError("singular matrix")
    # B^-1 = V D^-1 U; scale by det to stay integral.
    dinv = linalg.zeros(n, n)
    for i, d in enumerate(s.diagonal()):
        dinv[i][i] = det // d
    adj = linalg.mat_mul(linalg.mat_mul(s.V, dinv), s.U)
    return adj, det


def _solve_left(row: list[int], b: IntMatrix, adj_det) -> list[int]:
    """Solve x @ B = row over Z (must be integral)."""
    adj, det = adj_det
    scaled = linalg.vec_mat(row, adj)
    if any(a % det for a in scaled):
        raise ValueError("system has no integer solution")
    return [a // det for a in scaled]


def cokernel(f: ModMorphism) -> tuple[FinModule, ModMorphism]:
    """Cokernel with its epi projection from the target."""
    m = f.target.num_gens
    rel = f.int_matrix() + _order_relation_rows(f.target)
    dec = decompose(SubquotientPresentation(m, rel))
    proj = ModMorphism(f.target, dec.module, dec.to_canonical)
    return dec.module, proj


@functools.lru_cache(maxsize=1 << 16)
def _image_order(f: ModMorphism) -> int:
    """Size of the image subgroup of the target.

    The subgroup generated by the rows of f together with the target's order
    relations has index prod(d_i) in Z^n, so the image has size
    |target| / prod(d_i). One Smith normal form decides both mono (image as
    big as the source) and epi (image is everything).
    """
    stacked = f.int_matrix() + _order_relation_rows(f.target)
    diag = linalg.snf(stacked).diagonal()
    index = 1
    for d in diag:
        index *= d
    # a zero diagonal entry cannot occur: the order relations have full rank
    return f.target.order // index


def is_mono(f: ModMorphism) -> bool:
    return _image_order(f) == f.source.order


def is_epi(f: ModMorphism) -> bool:
    return _image_order(f) == f.target.order


class Pushout(NamedTuple):
    module: FinModule
    leg0: ModMorphism  # from target(f)
    leg1: ModMorphism  # from target(g)


def pushout(f: ModMorphism, g: ModMorphism) -> Pushout:
    """Pushout of the span f: S -> X, g: S -> Y, as coker of (f, -g)."""
    if f.source != g.source:
        raise ObjectMismatch("pushout needs a common source")
    ds = direct_sum(f.target, g.target)
    diff = compose(f, ds.emb0) - compose(g, ds.emb1)
    p, proj = cokernel(diff)
    return Pushout(p, compose(ds.emb0, proj), compose(ds.emb1, proj))


def pushout_mediator(
    po: Pushout, u: ModMorphism, v: ModMorphism
) -> tuple[ModMorphism, bool]:
    """The mediating morphism for a cocone (u, v) on the pushout's span.

    Returns (mediator, unique). The caller is responsible for having checked
    that the cocone commutes with the span; existence of a solution is part of
    the universal property and is raised on if violated.
    """
    med, unique = solve_morphism(
        po.module,
        u.target,
        [(po.leg0.int_matrix(), u.int_matrix()), (po.leg1.int_matrix(), v.int_matrix())],
    )
    if med is None:
        raise AssertionError("pushout universal property violated: no mediator")
    return med, unique


class MorphismSolver:
    """Reusable solver for H: source -> target with fixed left-hand sides.

    The congruence system for L @ H = R depends on the L matrices only; this
    prepares it once so many right-hand sides can be solved cheaply (the
    factoring decider calls this with the same envelope inclusion for every
    morphism of a hom-set).
    """

    def __init__(
        self, source: FinModule, target: FinModule, lmats: list[IntMatrix]
    ):
        n = source.num_gens
        m = target.num_gens
        self.source = source
        self.target = target
        self.row_counts = [len(lmat) for lmat in lmats]
        cols: list[list[int]] = []
        moduli: list[int] = []

        def add_equation(coeffs: dict[int, int], modulus: int) -> None:
            col = [0] * (n * m)
            for idx, c in coeffs.items():
                col[idx] = c
            cols.append(col)
            moduli.append(modulus)

        for lmat in lmats:
            for a in range(len(lmat)):
                if len(lmat[a]) != n:
                    raise ObjectMismatch("constraint matrix has wrong width")
                for j in range(m):
                    add_equation(
                        {i * m + j: lmat[a][i] for i in range(n) if lmat[a][i]},
                        target.orders[j],
                    )
        for i in range(n):
            for j in range(m):
                add_equation({i * m + j: source.orders[i]}, target.orders[j])

        a_mat = [[col[u] for col in cols] for u in range(n * m)]
        self._prep = linalg.PreparedSystem(a_mat, moduli)
        self.unique = all(
            all(h[i * m + j] % target.orders[j] == 0 for i in range(n) for j in range(m))
            for h in self._prep.basis
        )

    def solve(self, rmats: list[IntMatrix]) -> ModMorphism | None:
        m = self.target.num_gens
        if len(rmats) != len(self.row_counts):
            raise ObjectMismatch("wrong number of right-hand sides")
        rhs: list[int] = []
        for rmat, w in zip(rmats, self.row_counts):
            if len(rmat) != w:
                raise ObjectMismatch("constraint sides have different row counts")
            for a in range(w):
                if len(rmat[a]) != m:
                    raise ObjectMismatch("constraint matrix has wrong width")
                rhs.extend(rmat[a])
        rhs.extend([0] * (self.source.num_gens * m))
        x = self._prep.solve(rhs)
        if x is None:
            return None
        mat = [[x[i * m + j] for j in range(m)] for i in range(self.source.num_gens)]
        return ModMorphism(self.source, self.target, mat)


def solve_morphism(
    source: FinModule,
    target: FinModule,
    constraints: list[tuple[IntMatrix, IntMatrix]],
) -> tuple[ModMorphism | None, bool]:
    """Find H: source -> target with L @ H = R for every (L, R) constraint.

    Each constraint pins the composite of H with a map into its source; the
    matrix equation is read modulo the target orders columnwise, and the
    well-definedness conditions on the entries of H are imposed as additional
    congruences. Returns (H or None, unique-as-a-morphism).
    """
    solver = MorphismSolver(source, target, [l for l, _ in constraints])
    return solver.solve([r for _, r in constraints]), solver.unique


def homogeneous_morphism_lattice(
    source: FinModule,
    target: FinModule,
    constraints: list[tuple[IntMatrix, IntMatrix]],
) -> list[ModMorphism]:
    """Generators of {H : L @ H = R is homogeneous} for the given constraints.

    The constraints' right-hand sides are ignored (taken to be zero); the
    returned morphisms generate all solutions of the homogeneous system,
    modulo the target orders.
    """
    n = source.num_gens
    m = target.num_gens
    zero_constraints = [
        (lmat, linalg.zeros(len(lmat), m)) for lmat, _ in constraints
    ]
    cols: list[list[int]] = []
    rhs: list[int] = []
    moduli: list[int] = []
    for lmat, rmat in zero_constraints:
        for a in range(len(lmat)):
            for j in range(m):
                col = [0] * (n * m)
                for i in range(n):
                    if lmat[a][i]:
                        col[i * m + j] = lmat[a][i]
                cols.append(col)
                rhs.append(0)
                moduli.append(target.orders[j])
    for i in range(n):
        for j in range(m):
            col = [0] * (n * m)
            col[i * m + j] = source.orders[i]
            cols.append(col)
            rhs.append(0)
            moduli.append(target.orders[j])
    a_mat = [[col[u] for col in cols] for u in range(n * m)]
    _, basis = linalg.solve_mod_full(a_mat, rhs, moduli)
    out = []
    for h in basis:
        mat = [[h[i * m + j] for j in range(m)] for i in range(n)]
        mor = ModMorphism(source, target, mat)
        if not mor.is_zero():
            out.append(mor)
    return out

"""Exact integer matrix algebra: Smith normal form and modular linear solving.

Matrices are plain lists of rows of Python ints, so all arithmetic is exact.
Throughout the package the row-vector convention is used: a matrix A sends the
row vector v to v @ A, and composition of maps is left-to-right matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass

IntMatrix = list[list[int]]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        for k in range(inner):
            aik = row[k]
            if aik:
                brow = b[k]
                orow = out[i]
                for j in range(cols):
                    orow[j] += aik * brow[j]
    return out


def vec_mat(v: list[int], a: IntMatrix) -> list[int]:
    return mat_mul([v], a)[0]


def mat_eq(a: IntMatrix, b: IntMatrix) -> bool:
    return a == b


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)] if a else []


def copy(a: IntMatrix) -> IntMatrix:
    return [row[:] for row in a]


@dataclass
class SnfResult:
    """Smith normal form U @ A @ V = D with U, V unimodular and D diagonal.

    The diagonal of D is nonnegative and satisfies d1 | d2 | ... .
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]


def _swap_rows(m: IntMatrix, i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: IntMatrix, i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: IntMatrix, src: int, dst: int, q: int) -> None:
    # row[dst] += q * row[src]
    srow = m[src]
    drow = m[dst]
    for j in range(len(drow)):
        drow[j] += q * srow[j]


def _add_col(m: IntMatrix, src: int, dst: int, q: int) -> None:
    for row in m:
        row[dst] += q * row[src]


def _negate_row(m: IntMatrix, i: int) -> None:
    m[i] = [-x for x in m[i]]


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form of an integer matrix, with transforms.

    Pivots are chosen by smallest absolute value, ties broken by lowest
    (row, col) index, so the output is deterministic.
    """
    rows = len(a)
    cols = len(a[0]) if a else 0
    d = copy(a)
    u = identity(rows)
    v = identity(cols)

    t = 0
    while t < min(rows, cols):
        # Locate the pivot: smallest nonzero |entry| in the trailing block.
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = abs(d[i][j])
                if e and (best is None or e < best):
                    best = e
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            _swap_rows(d, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(d, t, pj)
            _swap_cols(v, t, pj)

        while True:
            # Clear the pivot column.
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    _add_row(d, t, i, -q)
                    _add_row(u, t, i, -q)
                    if d[i][t]:
                        # Remainder is smaller than the pivot: promote it.
                        _swap_rows(d, t, i)
                        _swap_rows(u, t, i)
                        dirty = True
            if dirty:
                continue
            # Clear the pivot row.
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    _add_col(d, t, j, -q)
                    _add_col(v, t, j, -q)
                    if d[t][j]:
                        _swap_cols(d, t, j)
                        _swap_cols(v, t, j)
                        dirty = True
            if dirty:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            culprit = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t]:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            _add_row(d, culprit, t, 1)
            _add_row(u, culprit, t, 1)
        if d[t][t] < 0:
            _negate_row(d, t)
            _negate_row(u, t)
        t += 1
    return SnfResult(U=u, D=d, V=v)


class DimensionMismatch(ValueError):
    pass


class PreparedSystem:
    """The SNF of a congruence system, reusable across right-hand sides.

    Solving x @ a = b mod `moduli` for many b shares all the expensive work
    (the Smith normal form of the slack-extended matrix); only a couple of
    small matrix-vector products depend on b.
    """

    def __init__(self, a: IntMatrix, moduli: list[int]):
        n = len(a)
        m = len(moduli)
        if a and len(a[0]) != m:
            raise DimensionMismatch("matrix columns differ from moduli length")
        # Slack rows turn each congruence into an integer equation:
        # (x, y) @ [A; diag(moduli)] = b.
        stacked = copy(a)
        for j in range(m):
            row = [0] * m
            row[j] = moduli[j]
            stacked.append(row)
        self.n = n
        self.m = m
        self.snf = snf(stacked)
        self.basis = _homogeneous_basis(self.snf, n, m)

    def solve(self, b: list[int]) -> list[int] | None:
        if len(b) != self.m:
            raise DimensionMismatch("rhs length differs from moduli length")
        s = self.snf
        c = vec_mat(b, s.V)
        w = [0] * (self.n + self.m)
        for j in range(self.m):
            dj = s.D[j][j]
            if dj:
                if c[j] % dj:
                    return None
                w[j] = c[j] // dj
            elif c[j]:
                return None
        return vec_mat(w, s.U)[: self.n]


def solve_mod_full(
    a: IntMatrix, b: list[int], moduli: list[int]
) -> tuple[list[int] | None, list[list[int]]]:
    """Solve x @ a = b componentwise modulo `moduli`, exactly.

    `a` is n x m: n unknowns, m congruences, with congruence j taken modulo
    moduli[j]. Returns a particular integer solution (or None) together with
    a generating set for the lattice of homogeneous solutions, so callers can
    decide uniqueness modulo their own per-unknown moduli.
    """
    if len(moduli) != len(b):
        raise DimensionMismatch("moduli length differs from rhs length")
    prep = PreparedSystem(a, moduli)
    return prep.solve(b), prep.basis


def _homogeneous_basis(s: SnfResult, n: int, m: int) -> list[list[int]]:
    basis = []
    total = n + m
    for i in range(total):
        if i >= m or s.D[i][i] == 0:
            x = s.U[i][:n]
            if any(x):
                basis.append(x)
    return basis


def solve_mod(a: IntMatrix, b: list[int], moduli: list[int]) -> list[int] | None:
    """Particular solution of x @ a = b mod `moduli`, or None if unsolvable."""
    x, _ = solve_mod_full(a, b, moduli)
    return x

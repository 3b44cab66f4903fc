"""Exact integer and rational linear algebra kernels.

Smith normal form with transform matrices, lattice saturation tests, and
rational feasibility queries for relative interiors of polyhedra.  All
arithmetic is over Python ints and ``fractions.Fraction``; no floating
point ever enters a code path, so every verdict and witness is exact.

Everything in this module is a pure function on immutable values and is
safe to call concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "smith_normal_form",
    "elementary_divisors",
    "extends_to_basis",
    "complete_to_basis",
    "Constraint",
    "RationalPolyhedron",
    "simplex_image_polyhedron",
    "relint_intersection_nonempty",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    """Coerce to Fraction, refusing floats (exactness would be lost)."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"expected an exact rational, got {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with exact arbitrary-precision entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix entries")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise TypeError(f"matrix entries must be ints, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(row) for row in rows)
        if data:
            width = len(data[0])
        elif cols is not None:
            width = cols
        else:
            raise ValueError("cannot infer column count of an empty matrix")
        return cls(len(data), width, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("incompatible shapes for matrix product")
        data = tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows))
        return IntMatrix(self.rows, other.cols, data)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def det(self) -> int:
        """Exact determinant by Bareiss fraction-free elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        """Rank over the rationals (exact Gaussian elimination)."""
        a = [[Fraction(x) for x in row] for row in self.entries]
        rank = 0
        col = 0
        while rank < self.rows and col < self.cols:
            pivot = next((i for i in range(rank, self.rows) if a[i][col] != 0), None)
            if pivot is None:
                col += 1
                continue
            a[rank], a[pivot] = a[pivot], a[rank]
            inv = a[rank][col]
            a[rank] = [x / inv for x in a[rank]]
            for i in range(self.rows):
                if i != rank and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
            rank += 1
            col += 1
        return rank


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular factorization u @ m @ v == d with d diagonal."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self.d.diagonal()

    @property
    def elementary_divisors(self) -> tuple[int, ...]:
        return tuple(x for x in self.diagonal if x != 0)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form over the integers.

    Returns unimodular ``u`` (rows x rows) and ``v`` (cols x cols) with
    ``u @ m @ v`` diagonal, entries nonnegative and each dividing the next.
    Pivots are chosen as the smallest nonzero entry in absolute value,
    which keeps coefficient growth tame at the sizes handled here.
    """
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        arow, asrc = a[dst], a[src]
        for j in range(nc):
            arow[j] += q * asrc[j]
        urow, usrc = u[dst], u[src]
        for j in range(nr):
            urow[j] += q * usrc[j]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def smallest_nonzero(k):
        best = None
        where = None
        for i in range(k, nr):
            for j in range(k, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    where = (i, j)
        return where

    for k in range(min(nr, nc)):
        if smallest_nonzero(k) is None:
            break
        while True:
            i, j = smallest_nonzero(k)
            if i != k:
                swap_rows(k, i)
            if j != k:
                swap_cols(k, j)
            if a[k][k] < 0:
                negate_row(k)
            p = a[k][k]
            dirty = False
            for i in range(k + 1, nr):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // p))
                    if a[i][k]:
                        dirty = True
            for j in range(k + 1, nc):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // p))
                    if a[k][j]:
                        dirty = True
            if dirty:
                continue  # remainders are strictly smaller; re-pick the pivot
            bad = None
            for i in range(k + 1, nr):
                if any(a[i][j] % p for j in range(k + 1, nc)):
                    bad = i
                    break
            if bad is None:
                break
            add_row(k, bad, 1)  # drags a nondivisible entry into row k

    return SmithDecomposition(
        IntMatrix(nr, nr, tuple(tuple(r) for r in u)),
        IntMatrix(nr, nc, tuple(tuple(r) for r in a)),
        IntMatrix(nc, nc, tuple(tuple(r) for r in v)),
    )


def elementary_divisors(m: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(m).elementary_divisors


def _vectors_matrix(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        raise ValueError("empty vector list")
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise ValueError("dimension mismatch among vectors")
    return IntMatrix.from_rows(vecs)


def extends_to_basis(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the integer vectors extend to a basis of the full lattice.

    Equivalent to: the vectors are linearly independent and the sublattice
    they span is saturated, i.e. every elementary divisor equals 1.
    """
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        return True
    mat = _vectors_matrix(vecs)
    if mat.rows > mat.cols:
        return False
    return all(x == 1 for x in smith_normal_form(mat).diagonal)


def _inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = a[i][n + j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(x))
        out.append(tuple(row))
    return IntMatrix(n, n, tuple(out))


def complete_to_basis(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Complete lattice vectors to a square matrix of determinant +-1.

    The input vectors become the first rows of the result.  Raises if they
    do not extend to a basis.  The completion is read off the Smith factors:
    if ``u @ m @ v`` has unit diagonal, the missing rows are the last rows
    of ``v`` inverse.
    """
    mat = _vectors_matrix(vectors)
    k, n = mat.rows, mat.cols
    snf = smith_normal_form(mat)
    if k > n or any(x != 1 for x in snf.diagonal):
        raise ValueError("vectors do not extend to a lattice basis")
    v_inv = _inverse_unimodular(snf.v)
    rows = list(mat.entries) + [v_inv.entries[i] for i in range(k, n)]
    return IntMatrix.from_rows(rows, cols=n)


# ---------------------------------------------------------------------------
# Rational polyhedra and relative-interior feasibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    """Half-space ``normal . x <= bound``; strict when marked.

    Normals are integer vectors and are reduced by their gcd on
    construction, so syntactically different but identical half-spaces
    compare equal.
    """

    normal: tuple[int, ...]
    bound: Fraction
    strict: bool = False

    def __post_init__(self):
        normal = tuple(self.normal)
        if not normal or all(x == 0 for x in normal):
            raise ValueError("constraint normal must be a nonzero vector")
        for x in normal:
            if isinstance(x, bool) or not isinstance(x, int):
                raise TypeError("constraint normals must be integer vectors")
        bound = _as_fraction(self.bound)
        g = gcd(*(abs(x) for x in normal))
        if g > 1:
            normal = tuple(x // g for x in normal)
            bound = bound / g
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "bound", bound)

    def holds_at(self, x: Sequence[Fraction]) -> bool:
        lhs = sum(a * xi for a, xi in zip(self.normal, x))
        return lhs < self.bound if self.strict else lhs <= self.bound

    def sort_key(self):
        return (self.normal, self.bound, self.strict)


@dataclass(frozen=True)
class RationalPolyhedron:
    """Finite conjunction of closed/strict rational half-spaces."""

    ambient_dim: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        for c in self.constraints:
            if len(c.normal) != self.ambient_dim:
                raise ValueError("constraint dimension does not match ambient space")

    def contains(self, x: Sequence) -> bool:
        pt = [_as_fraction(v) for v in x]
        if len(pt) != self.ambient_dim:
            raise ValueError("point dimension does not match ambient space")
        return all(c.holds_at(pt) for c in self.constraints)


_EQ, _LE, _LT = 0, 1, 2


def _eliminate_variables(rows, drop: int, width: int):
    """Project out variables 0..drop-1 from a mixed eq/le/lt system.

    Each row is ``[coeffs, rel, rhs]`` with Fraction coefficients.  Equations
    are used for exact substitution when they mention the variable; anything
    left is handled by Fourier-Motzkin combination, which preserves
    strictness (a combination is strict iff either parent is strict).
    """
    rows = [([Fraction(c) for c in coeffs], rel, Fraction(rhs)) for coeffs, rel, rhs in rows]
    for j in range(drop):
        pivot = next((r for r in rows if r[1] == _EQ and r[0][j] != 0), None)
        if pivot is not None:
            pc, _, prhs = pivot
            rows.remove(pivot)
            new_rows = []
            for coeffs, rel, rhs in rows:
                if coeffs[j] != 0:
                    f = coeffs[j] / pc[j]
                    coeffs = [c - f * p for c, p in zip(coeffs, pc)]
                    rhs = rhs - f * prhs
                new_rows.append((coeffs, rel, rhs))
            rows = new_rows
            continue
        keep, uppers, lowers = [], [], []
        for row in rows:
            c = row[0][j]
            if c == 0:
                keep.append(row)
            elif c > 0:
                uppers.append(row)
            else:
                lowers.append(row)
        for (uc, urel, urhs), (lc, lrel, lrhs) in itertools.product(uppers, lowers):
            mu, ml = -lc[j], uc[j]
            coeffs = [mu * cu + ml * cl for cu, cl in zip(uc, lc)]
            rel = _LT if _LT in (urel, lrel) else _LE
            keep.append((coeffs, rel, mu * urhs + ml * lrhs))
        rows = keep
    return rows


def _emit_constraints(rows, drop: int, width: int) -> list[Constraint]:
    out: dict[tuple[int, ...], tuple[Fraction, bool]] = {}

    def push(normal_fracs, rhs, strict):
        denom = lcm(*(f.denominator for f in normal_fracs))
        normal = tuple(int(f * denom) for f in normal_fracs)
        bound = rhs * denom
        cand = Constraint(normal, bound, strict)
        prev = out.get(cand.normal)
        # Same normal: the smaller bound wins; at a tie, strict is tighter.
        if prev is None or (cand.bound, not cand.strict) < (prev[0], not prev[1]):
            out[cand.normal] = (cand.bound, cand.strict)

    for coeffs, rel, rhs in rows:
        xcoeffs = coeffs[drop:]
        assert all(c == 0 for c in coeffs[:drop])
        if all(c == 0 for c in xcoeffs):
            # Constant rows from elimination must be identically true here:
            # the projected set is nonempty by construction.
            if rel == _EQ:
                assert rhs == 0
            elif rel == _LE:
                assert rhs >= 0
            else:
                assert rhs > 0
            continue
        if rel == _EQ:
            push(xcoeffs, rhs, False)
            push([-c for c in xcoeffs], -rhs, False)
        else:
            push(xcoeffs, rhs, rel == _LT)
    made = [Constraint(n, b, s) for n, (b, s) in out.items()]
    made.sort(key=Constraint.sort_key)
    return made


def simplex_image_polyhedron(vertex_images: Sequence[Sequence],
                             relative_interior: bool = True) -> RationalPolyhedron:
    """Constraint form of the image of a standard simplex under an affine map.

    ``vertex_images`` are the images of the simplex vertices.  With
    ``relative_interior`` the description carries strict inequalities and
    cuts out exactly the image of the open simplex (affine maps carry
    relative interiors onto relative interiors).  Computed by eliminating
    the barycentric coordinates from ``x = sum_a lambda_a w_a``.
    """
    verts = [tuple(_as_fraction(x) for x in w) for w in vertex_images]
    if not verts:
        raise ValueError("need at least one vertex image")
    n = len(verts[0])
    if any(len(w) != n for w in verts):
        raise ValueError("vertex images of mixed dimension")
    r = len(verts)
    width = r + n
    rows = []
    for i in range(n):
        coeffs = [verts[a][i] for a in range(r)] + [_ZERO] * n
        coeffs[r + i] = Fraction(-1)
        rows.append((coeffs, _EQ, _ZERO))
    rows.append(([_ONE] * r + [_ZERO] * n, _EQ, _ONE))
    rel = _LT if relative_interior else _LE
    for a in range(r):
        coeffs = [_ZERO] * width
        coeffs[a] = Fraction(-1)
        rows.append((coeffs, rel, _ZERO))
    reduced = _eliminate_variables(rows, r, width)
    return RationalPolyhedron(n, tuple(_emit_constraints(reduced, r, width)))


# --- exact simplex method ---------------------------------------------------


def _pivot(rows, rhs, obj, basis, r, c):
    inv = rows[r][c]
    rows[r] = [x / inv for x in rows[r]]
    rhs[r] = rhs[r] / inv
    for i in range(len(rows)):
        if i != r and rows[i][c] != 0:
            f = rows[i][c]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            rhs[i] = rhs[i] - f * rhs[r]
    if obj[c] != 0:
        f = obj[c]
        for j in range(len(obj) - 1):
            obj[j] -= f * rows[r][j]
        obj[-1] -= f * rhs[r]
    basis[r] = c


def _run_simplex(rows, rhs, basis, cost):
    """Maximize cost . z over the tableau; Bland's rule, exact pivots.

    The objective row stores reduced costs and, in its last slot, the
    negated objective value.  Returns the optimal value.
    """
    ncols = len(rows[0]) if rows else len(cost)
    obj = [Fraction(c) for c in cost] + [_ZERO]
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            for j in range(ncols):
                obj[j] -= f * rows[i][j]
            obj[-1] -= f * rhs[i]
    while True:
        enter = next((j for j in range(ncols) if obj[j] > 0), None)
        if enter is None:
            return -obj[-1]
        best = None
        for i in range(len(rows)):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("linear program is unbounded")
        _pivot(rows, rhs, obj, basis, best[1], enter)


def _max_min_slack(constraints: Sequence[Constraint], dim: int):
    """Maximize the least slack of the strict constraints, capped at 1.

    Returns ``(value, point)`` or ``(None, None)`` when even the closed
    relaxation is infeasible.  A strictly positive value certifies a point
    satisfying every strict constraint strictly.
    """
    m = len(constraints) + 1
    base = 2 * dim + 2  # x split into +/- parts, then the slack variable t
    total = base + m
    rows = []
    rhs = []
    for c in constraints:
        coef = [_ZERO] * total
        for i, ai in enumerate(c.normal):
            coef[i] = Fraction(ai)
            coef[dim + i] = Fraction(-ai)
        if c.strict:
            coef[2 * dim] = _ONE
            coef[2 * dim + 1] = Fraction(-1)
        rows.append(coef)
        rhs.append(Fraction(c.bound))
    cap = [_ZERO] * total
    cap[2 * dim] = _ONE
    cap[2 * dim + 1] = Fraction(-1)
    rows.append(cap)
    rhs.append(_ONE)
    for i in range(m):
        rows[i][base + i] = _ONE

    basis = []
    art_of_row = {}
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            art_of_row[i] = None
    nart = len(art_of_row)
    if nart:
        for row in rows:
            row.extend([_ZERO] * nart)
        for idx, i in enumerate(art_of_row):
            rows[i][total + idx] = _ONE
            art_of_row[i] = total + idx
    for i in range(m):
        basis.append(art_of_row.get(i, base + i))

    if nart:
        cost1 = [_ZERO] * (total + nart)
        for i in art_of_row.values():
            cost1[i] = Fraction(-1)
        if _run_simplex(rows, rhs, basis, cost1) < 0:
            return None, None
        # Drive leftover artificials out of the basis, dropping redundant rows.
        i = 0
        while i < len(rows):
            if basis[i] >= total:
                pivot_col = next((j for j in range(total) if rows[i][j] != 0), None)
                if pivot_col is None:
                    del rows[i], rhs[i], basis[i]
                    continue
                obj = [_ZERO] * (total + nart + 1)
                _pivot(rows, rhs, obj, basis, i, pivot_col)
            i += 1
        rows = [row[:total] for row in rows]

    cost2 = [_ZERO] * total
    cost2[2 * dim] = _ONE
    cost2[2 * dim + 1] = Fraction(-1)
    value = _run_simplex(rows, rhs, basis, cost2)
    solution = [_ZERO] * total
    for i, b in enumerate(basis):
        solution[b] = rhs[i]
    point = tuple(solution[i] - solution[dim + i] for i in range(dim))
    return value, point


def relint_intersection_nonempty(p: RationalPolyhedron, q: RationalPolyhedron):
    """Exact emptiness test for the intersection of two constraint systems.

    Strict constraints mark relative interiors.  Returns ``(True, witness)``
    with an exact rational witness satisfying every constraint (strict ones
    strictly), or ``(False, None)``.  Decided by maximizing the minimum
    slack over the strict constraints with exact rational pivoting and
    requiring a strictly positive optimum.
    """
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("polyhedra live in different ambient dimensions")
    merged = sorted(set(p.constraints) | set(q.constraints), key=Constraint.sort_key)
    value, point = _max_min_slack(merged, p.ambient_dim)
    if value is None or value <= 0:
        return False, None
    return True, point

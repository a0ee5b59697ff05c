"""Exact rational linear algebra and small linear programs.

Scalars are :class:`fractions.Fraction`; vectors are tuples of scalars and
matrices are tuples of row tuples.  Nothing in here ever touches a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix, ZeroNormal

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]


def scalar(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars")
    return Fraction(x)


def vec(*coords) -> Vector:
    if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
        coords = tuple(coords[0])
    return tuple(scalar(c) for c in coords)


def mat(rows) -> Matrix:
    return tuple(vec(r) for r in rows)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def neg(u):
    return tuple(-a for a in u)


def scale(c, u):
    return tuple(c * a for a in u)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def centroid(points: Sequence[Vector]) -> Vector:
    n = len(points)
    return tuple(sum(c, Fraction(0)) / n for c in zip(*points))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def det(m: Matrix) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(map(Fraction, row)) for row in m]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is not invertible")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve(m: Matrix, b: Vector) -> Vector | None:
    """Unique solution of ``m x = b`` or None when ``m`` is singular."""
    n = len(m)
    a = [list(row) + [b[i]] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


@dataclass(frozen=True, order=True)
class Halfspace:
    """The closed halfspace ``{x : normal . x <= offset}``."""

    normal: Vector
    offset: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ZeroNormal("halfspace normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Vector) -> Fraction:
        """Signed slack ``normal . x - offset`` (<= 0 means inside)."""
        return dot(self.normal, x) - self.offset

    def contains(self, x: Vector) -> bool:
        return self.value(x) <= 0

    def translate(self, t: Vector) -> "Halfspace":
        return Halfspace(self.normal, self.offset + dot(self.normal, t))

    def flip(self) -> "Halfspace":
        """The opposite closed halfspace ``normal . x >= offset``."""
        return Halfspace(neg(self.normal), -self.offset)


def halfspace(normal: Iterable, offset) -> Halfspace:
    return Halfspace(vec(tuple(normal)), scalar(offset))


def canonicalize(h: Halfspace) -> Halfspace:
    """Scale ``h`` by a positive factor so the normal is a primitive integer vector.

    The offset stays rational; the sign cannot be normalized without
    flipping the halfspace.
    """
    if all(c == 0 for c in h.normal):
        raise ZeroNormal("halfspace normal must be nonzero")
    lcm = math.lcm(*(c.denominator for c in h.normal))
    ints = [c.numerator * (lcm // c.denominator) for c in h.normal]
    factor = Fraction(lcm, math.gcd(*ints))
    return Halfspace(tuple(c * factor for c in h.normal), h.offset * factor)


# -- linear programming -----------------------------------------------------


class _Unbounded(Exception):
    pass


def _pivot(rows, obj, basis, r, col):
    prow = rows[r]
    p = prow[col]
    if p != 1:
        prow = [v / p for v in prow]
        rows[r] = prow
    for i, row in enumerate(rows):
        if i != r:
            f = row[col]
            if f:
                rows[i] = [a - f * b for a, b in zip(row, prow)]
    f = obj[col]
    if f:
        obj[:] = [a - f * b for a, b in zip(obj, prow)]
    basis[r] = col


def _run_simplex(rows, obj, basis):
    # Bland's rule: smallest improving column, ties in the ratio test go to the
    # smallest basic variable.
    while True:
        col = next((j for j, c in enumerate(obj[:-1]) if c > 0), None)
        if col is None:
            return
        best = None
        for i, row in enumerate(rows):
            a = row[col]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise _Unbounded
        _pivot(rows, obj, basis, best[1], col)


def simplex(A, b, c):
    """Maximize ``c.y`` subject to ``A y <= b`` and ``y >= 0``.

    Returns ``("optimal", y, value)``, ``("infeasible", None, None)`` or
    ``("unbounded", None, None)``.  Exact two-phase tableau method.
    """
    m = len(A)
    n = len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    width = n + m + 1  # originals, slacks, artificial x0
    rows = []
    for i in range(m):
        row = A[i] + [Fraction(int(i == k)) for k in range(m)] + [Fraction(-1), b[i]]
        rows.append(row)
    basis = [n + i for i in range(m)]
    x0 = n + m
    if m and min(b) < 0:
        obj = [Fraction(0)] * (width + 1)
        obj[x0] = Fraction(-1)
        r = min(range(m), key=lambda i: (b[i], i))
        _pivot(rows, obj, basis, r, x0)
        _run_simplex(rows, obj, basis)
        if obj[-1] != 0:
            return "infeasible", None, None
        if x0 in basis:
            r = basis.index(x0)
            col = next(j for j in range(width) if j != x0 and rows[r][j] != 0)
            _pivot(rows, obj, basis, r, col)
    rows = [row[:x0] + row[x0 + 1:] for row in rows]
    obj = c + [Fraction(0)] * (m + 1)
    for i, j in enumerate(basis):
        f = obj[j]
        if f:
            obj = [a - f * v for a, v in zip(obj, rows[i])]
    try:
        _run_simplex(rows, obj, basis)
    except _Unbounded:
        return "unbounded", None, None
    y = [Fraction(0)] * (n + m)
    for i, j in enumerate(basis):
        y[j] = rows[i][-1]
    return "optimal", tuple(y[:n]), -obj[-1]


def _check_dims(constraints):
    dims = {h.dim for h in constraints}
    if len(dims) > 1:
        raise DimensionMismatch(f"constraints of mixed dimensions {sorted(dims)}")
    return dims.pop() if dims else None


def lp_feasible(constraints: Sequence[Halfspace], strict_flags: Sequence[bool] | None = None,
                dim: int | None = None) -> Vector | None:
    """Exact point satisfying every constraint, or None when infeasible.

    ``strict_flags[i]`` demands ``normal . x < offset`` for constraint ``i``.
    """
    d = _check_dims(constraints)
    if d is None:
        d = dim if dim is not None else 0
        return tuple(Fraction(0) for _ in range(d))
    if dim is not None and dim != d:
        raise DimensionMismatch(f"expected dimension {dim}, constraints have {d}")
    strict_flags = list(strict_flags or [False] * len(constraints))
    if len(strict_flags) != len(constraints):
        raise DimensionMismatch("one strict flag per constraint")
    use_slack = any(strict_flags)
    A, b = [], []
    for h, strict in zip(constraints, strict_flags):
        row = list(h.normal) + [-x for x in h.normal]
        if use_slack:
            row.append(Fraction(int(strict)))
        A.append(row)
        b.append(h.offset)
    c = [Fraction(0)] * (2 * d)
    if use_slack:
        A.append([Fraction(0)] * (2 * d) + [Fraction(1)])
        b.append(Fraction(1))
        c.append(Fraction(1))
    status, y, value = simplex(A, b, c)
    if status != "optimal":
        return None
    if use_slack and value <= 0:
        return None
    return tuple(y[i] - y[d + i] for i in range(d))


def lp_maximize(constraints: Sequence[Halfspace], objective: Vector):
    """Maximize ``objective . x`` over the polyhedron; free variables.

    Returns ``(status, x, value)`` like :func:`simplex`.
    """
    d = len(objective)
    A = [list(h.normal) + [-x for x in h.normal] for h in constraints]
    b = [h.offset for h in constraints]
    c = list(objective) + [-x for x in objective]
    status, y, value = simplex(A, b, c)
    if status != "optimal":
        return status, None, None
    return status, tuple(y[i] - y[d + i] for i in range(d)), value


def fourier_motzkin_feasible(constraints: Sequence[Halfspace],
                             strict_flags: Sequence[bool] | None = None) -> bool:
    """Feasibility by Fourier-Motzkin elimination (small systems only)."""
    d = _check_dims(constraints)
    if d is None:
        return True
    strict_flags = list(strict_flags or [False] * len(constraints))
    rows = [(list(h.normal), h.offset, s) for h, s in zip(constraints, strict_flags)]
    for j in range(d):
        pos = [r for r in rows if r[0][j] > 0]
        negs = [r for r in rows if r[0][j] < 0]
        rows = [r for r in rows if r[0][j] == 0]
        for pa, pb, ps in pos:
            for na, nb, ns in negs:
                fp, fn = -na[j], pa[j]
                rows.append(([fp * x + fn * y for x, y in zip(pa, na)], fp * pb + fn * nb, ps or ns))
        # drop exact duplicates to slow the quadratic blow-up
        seen = {}
        for a, b, s in rows:
            key = (tuple(a), b)
            seen[key] = seen.get(key, False) or s
        rows = [(list(k[0]), k[1], s) for k, s in seen.items()]
    for _, b, s in rows:
        if b < 0 or (s and b == 0):
            return False
    return True

"""Exact integer and rational linear algebra.

Matrices are plain tuples of row tuples.  Integer matrices hold ``int``
entries, rational matrices hold :class:`fractions.Fraction` entries.  A
matrix with no rows carries no column count, so functions that may see an
empty matrix take the ambient dimension ``d`` explicitly.

Everything here is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .errors import DimensionMismatch, SingularMatrix

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


def _ncols(M: Sequence[Sequence], d: int | None) -> int:
    if d is not None:
        for row in M:
            if len(row) != d:
                raise DimensionMismatch(f"row of length {len(row)} in a matrix with {d} columns")
        return d
    if not M:
        raise DimensionMismatch("cannot infer the column count of an empty matrix")
    n = len(M[0])
    for row in M:
        if len(row) != n:
            raise DimensionMismatch("ragged matrix")
    return n


def identity(n: int, one=1) -> tuple:
    return tuple(tuple(one if i == j else one * 0 for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence], d: int | None = None) -> tuple:
    n = _ncols(M, d)
    return tuple(tuple(row[j] for row in M) for j in range(n))


def to_fractions(M: Sequence[Sequence]) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in M)


def mat_mul(X: Sequence[Sequence], Y: Sequence[Sequence]) -> tuple:
    if not X or not Y:
        raise DimensionMismatch("mat_mul needs non-empty operands")
    inner = _ncols(X, None)
    if inner != len(Y):
        raise DimensionMismatch(f"cannot multiply {len(X)}x{inner} by {len(Y)}x{len(Y[0])}")
    cols = transpose(Y)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in X)


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    if any(len(row) != len(v) for row in M):
        raise DimensionMismatch(f"matrix rows and vector of length {len(v)} disagree")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"vectors of length {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def _integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    # Scale each row by the lcm of its denominators; row scaling keeps the rank.
    rows = []
    for row in M:
        fr = [Fraction(x) for x in row]
        m = reduce(lcm, (x.denominator for x in fr), 1)
        rows.append([int(x * m) for x in fr])
    return rows


def rank(M: Sequence[Sequence]) -> int:
    """Rank over Q, by fraction-free (Bareiss) elimination."""
    if not M:
        return 0
    n = _ncols(M, None)
    a = _integer_rows(M)
    m = len(a)
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def rref(M: Sequence[Sequence], d: int | None = None) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form over Q; zero rows are dropped.

    Returns the non-zero rows and their pivot columns.
    """
    n = _ncols(M, d)
    a = [[Fraction(x) for x in row] for row in M]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return tuple(tuple(row) for row in a[:r]), tuple(pivots)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Clear denominators and divide out the content; zero stays zero."""
    fr = [Fraction(x) for x in v]
    m = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * m) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def sign_normalised(v: Sequence[int]) -> tuple[int, ...]:
    lead = next((x for x in v if x != 0), 0)
    return tuple(-x for x in v) if lead < 0 else tuple(v)


def rational_null_space_basis(B: Sequence[Sequence], d: int | None = None) -> IntMatrix:
    """Integer basis of ``{a in Q^d : B a = 0}``.

    Rows are primitive, have a positive leading entry and come in the order
    of the reduced echelon form of the null space (pivot column ascending,
    which is descending lexicographic order).  When ``B`` has full column
    rank the result is the single zero row, not an empty matrix.
    """
    n = _ncols(B, d)
    R, pivots = rref(B, n) if B else ((), ())
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return ((0,) * n,)
    vectors = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        vectors.append(v)
    N, _ = rref(vectors, n)
    rows = [sign_normalised(primitive(row)) for row in N]
    return tuple(sorted(rows, reverse=True))


def hermite_normal_form(M: Sequence[Sequence[int]], d: int | None = None) -> IntMatrix:
    """Row Hermite normal form of an integer matrix, zero rows removed.

    Pivots are positive and every entry above a pivot lies in
    ``[0, pivot)``.  Two matrices have the same HNF iff their rows span the
    same lattice.
    """
    n = _ncols(M, d)
    a = [[int(x) for x in row] for row in M]
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            p = a[r][c]
            for i in range(r):
                q = a[i][c] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return tuple(tuple(row) for row in a[:r])


def integer_kernel_basis(A: Sequence[Sequence[int]], d: int | None = None) -> IntMatrix:
    """Z-basis of ``{v in Z^d : A v = 0}`` in Hermite normal form.

    Row-reduces ``[A^T | I]`` with unimodular operations; the identity parts
    of the rows whose left block vanishes span the kernel.  An injective
    ``A`` gives the empty tuple.
    """
    n = _ncols(A, d)
    s = len(A)
    aug = [list(col) + [1 if i == j else 0 for j in range(n)]
           for i, col in enumerate(transpose(A, n) if A else [()] * n)]
    reduced = hermite_normal_form(aug, s + n)
    kernel = [row[s:] for row in reduced if not any(row[:s])]
    return hermite_normal_form(kernel, n)


def rat_inverse(S: Sequence[Sequence]) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination on ``[S | I]``."""
    n = len(S)
    if n == 0 or _ncols(S, None) != n:
        raise DimensionMismatch("rat_inverse needs a non-empty square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(S)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular; the change of basis is not invertible")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)

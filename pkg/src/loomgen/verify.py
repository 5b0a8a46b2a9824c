"""Checking that polynomials are invariants of a linear loop.

Bounded checking iterates the loop exactly and is only a necessary
condition.  The symbolic check is a complete proof, but only for diagonal
loops started at the all-ones vector whose eigenvalues were built from A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import DimensionMismatch, PreconditionViolated
from .exact_linalg import IntMatrix, dot, mat_vec
from .poly import Polynomial, PureDifferenceBinomial, exponent_vector
from .synthesis import LinearLoop, lambdas_from_matrix

DEFAULT_ITERS = 25


@dataclass(frozen=True)
class PassBounded:
    n_max: int


@dataclass(frozen=True)
class PassSymbolic:
    pass


@dataclass(frozen=True)
class Fail:
    """The polynomial is nonzero at iterate ``iteration``."""

    iteration: int
    point: tuple[Fraction, ...]
    value: Fraction


@dataclass(frozen=True)
class SymbolicFail:
    """The exponent vector is not in ker A; ``residual`` is ``A v``."""

    vector: tuple[int, ...]
    residual: tuple[int, ...]


Status = Union[PassBounded, PassSymbolic, Fail, SymbolicFail]


@dataclass(frozen=True)
class VerificationOutcome:
    statuses: tuple[Status, ...]

    @property
    def passed(self) -> bool:
        return all(isinstance(s, (PassBounded, PassSymbolic)) for s in self.statuses)

    def failures(self) -> list[tuple[int, Status]]:
        return [(i, s) for i, s in enumerate(self.statuses) if isinstance(s, (Fail, SymbolicFail))]


def iter_points(loop: LinearLoop, n: int) -> Iterator[tuple[Fraction, ...]]:
    """Yield iterates 0..n without storing them."""
    point = tuple(loop.init)
    yield point
    diag = tuple(loop.update[i][i] for i in range(loop.dim)) if loop.is_diagonal() else None
    for _ in range(n):
        if diag is not None:
            point = tuple(lam * x for lam, x in zip(diag, point))
        else:
            point = mat_vec(loop.update, point)
        yield point


def iterate(loop: LinearLoop, n: int) -> list[tuple[Fraction, ...]]:
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(iter_points(loop, n))


def verify_bounded(loop: LinearLoop, polys: Sequence[Polynomial], N: int = DEFAULT_ITERS) -> VerificationOutcome:
    """Evaluate every polynomial at iterates 0..N; report the first witness of failure."""
    if N < 1:
        raise ValueError("N must be at least 1")
    for p in polys:
        if p.nvars != loop.dim:
            raise DimensionMismatch(f"polynomial in {p.nvars} variables for a loop in {loop.dim}")
    statuses: list[Status | None] = [None] * len(polys)
    for n, point in enumerate(iter_points(loop, N)):
        for i, p in enumerate(polys):
            if statuses[i] is None:
                value = p.evaluate(point)
                if value != 0:
                    statuses[i] = Fail(n, point, value)
        if all(s is not None for s in statuses):
            break
    return VerificationOutcome(tuple(s if s is not None else PassBounded(N) for s in statuses))


def verify_symbolic_diagonal(
    A: IntMatrix,
    loop: LinearLoop,
    binomials: Sequence[PureDifferenceBinomial],
) -> VerificationOutcome:
    """Prove invariance for all iterations via ``A v = 0``.

    Requires a diagonal loop from the all-ones vector whose eigenvalues are
    the prime powers determined by ``A``; then the exponent lattice of the
    eigenvalues is ker A.
    """
    d = loop.dim
    if not loop.is_diagonal():
        raise PreconditionViolated("symbolic verification needs a diagonal update")
    if any(x != 1 for x in loop.init):
        raise PreconditionViolated("symbolic verification needs the all-ones initial vector")
    diag = tuple(loop.update[i][i] for i in range(d))
    if diag != lambdas_from_matrix(A, d):
        raise PreconditionViolated("eigenvalues are not the prime powers determined by A")
    statuses: list[Status] = []
    for b in binomials:
        if b.nvars != d:
            raise DimensionMismatch(f"binomial in {b.nvars} variables for a loop in {d}")
        v = exponent_vector(b)
        residual = tuple(dot(row, v) for row in A)
        statuses.append(SymbolicFail(v, residual) if any(residual) else PassSymbolic())
    return VerificationOutcome(tuple(statuses))

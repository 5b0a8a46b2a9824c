"""Loop synthesis from pure difference binomials.

Pipeline: exponent vectors -> lattice L -> Sat(L) = ker A -> diagonal loop
with eigenvalues ``lambda_j = prod_i prime_i ** A[i][j]`` started at the
all-ones vector.  The exponent lattice of those eigenvalues is exactly
ker A, so every binomial with exponent vector in Sat(L) vanishes on the
whole orbit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from sympy import prime

from .errors import DimensionMismatch, NotPureDifference
from .exact_linalg import IntMatrix, RatMatrix, mat_mul, mat_vec, rat_inverse, to_fractions
from .lattice import Lattice, SaturationCertificate, is_saturated, lattice_from_vectors, saturate
from .poly import (
    Polynomial,
    PureDifferenceBinomial,
    canonical_binomial,
    classify_pure_difference,
    exponent_vector,
    is_primitive,
)


@dataclass(frozen=True)
class LinearLoop:
    """``x := init; while * do x := update x`` (simultaneous assignment)."""

    vars: tuple[str, ...]
    update: RatMatrix
    init: tuple[Fraction, ...]

    def __post_init__(self):
        d = len(self.vars)
        if len(self.init) != d or len(self.update) != d or any(len(r) != d for r in self.update):
            raise DimensionMismatch("update must be d x d and init of length d, d = len(vars)")

    @property
    def dim(self) -> int:
        return len(self.vars)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.update) for j, x in enumerate(row) if i != j)


class ExactnessLevel(enum.IntEnum):
    """How much of the input ideal the synthesised loop is certified to pin down.

    Larger values are stronger claims.
    """

    SUPERSET_GUARANTEED_ONLY = 0
    LATTICE_IDEAL_EQUALS_INPUT = 1
    INVARIANT_IDEAL_EQUALS_INPUT = 2


@dataclass(frozen=True)
class Exactness:
    level: ExactnessLevel
    justification: str


@dataclass(frozen=True)
class SynthesisReport:
    loop: LinearLoop
    A: IntMatrix
    lambdas: tuple[Fraction, ...]
    lattice: Lattice
    saturation: SaturationCertificate
    nontrivial: bool
    exactness: Exactness
    binomials: tuple[PureDifferenceBinomial, ...] = ()
    transformed: tuple[RatMatrix, RatMatrix] | None = None


def lambdas_from_matrix(A: IntMatrix, d: int) -> tuple[Fraction, ...]:
    """``lambda_j = prod_i p_i ** A[i][j]`` with ``p_i`` the i-th prime."""
    primes = [prime(i + 1) for i in range(len(A))]
    out = []
    for j in range(d):
        lam = Fraction(1)
        for p, row in zip(primes, A):
            lam *= Fraction(p) ** row[j]
        out.append(lam)
    return tuple(out)


def _solved_assignment(binomials: Sequence[PureDifferenceBinomial]) -> dict[int, int] | None:
    """Find distinct variables t_i with generator i equal to ``x_t - m_i``.

    The monomials m_i must avoid every chosen variable.  When such a choice
    exists the quotient ring is a polynomial ring in the remaining variables,
    so the ideal is prime and contains no monomial.
    """
    options = []
    for b in binomials:
        opts = []
        for side, other in ((b.alpha, b.beta), (b.beta, b.alpha)):
            if sum(side) == 1:
                t = side.index(1)
                if other[t] == 0:
                    opts.append((t, other))
        options.append(opts)

    def search(i, chosen):
        if i == len(options):
            return chosen
        for t, other in options[i]:
            if t in chosen or any(other[c] for c in chosen):
                continue
            if any(o[t] for o in chosen.values()):
                continue
            found = search(i + 1, {**chosen, t: other})
            if found is not None:
                return found
        return None

    found = search(0, {})
    return None if found is None else {t: i for i, t in enumerate(found)}


def classify_exactness(
    binomials: Sequence[PureDifferenceBinomial],
    lattice: Lattice,
    cert: SaturationCertificate,
) -> Exactness:
    """Certify equalities in ``I ⊆ J ⊆ I_L ⊆ I_Sat(L)`` from sufficient conditions only.

    Generators of the form ``x_t - m`` solving distinct variables give
    ``I = I_Sat(L)`` outright.  Next, a generator with a positive exponent
    vector only licenses ``I = I_L``; a lone canonical binomial gives
    ``I = I_L`` and, with a primitive exponent vector, ``I = I_Sat(L)``.
    """
    if not binomials:
        return Exactness(ExactnessLevel.INVARIANT_IDEAL_EQUALS_INPUT,
                         "empty system: every ideal in the chain is zero")
    vectors = [exponent_vector(b) for b in binomials]
    if _solved_assignment(binomials) is not None:
        return Exactness(ExactnessLevel.INVARIANT_IDEAL_EQUALS_INPUT,
                         "generators solve distinct variables as monomials in the others: "
                         "I is prime, so I = I_Sat(L)")
    if all(b.is_canonical() for b in binomials) and any(all(x > 0 for x in v) for v in vectors):
        return Exactness(ExactnessLevel.LATTICE_IDEAL_EQUALS_INPUT,
                         "canonical generators, one with a positive exponent vector: I = J = I_L")
    if len(binomials) == 1 and binomials[0].is_canonical():
        if is_primitive(vectors[0]):
            return Exactness(ExactnessLevel.INVARIANT_IDEAL_EQUALS_INPUT,
                             "single canonical binomial with primitive exponent vector: I = I_Sat(L)")
        return Exactness(ExactnessLevel.LATTICE_IDEAL_EQUALS_INPUT,
                         "single canonical binomial: I = I_L")
    return Exactness(ExactnessLevel.SUPERSET_GUARANTEED_ONLY, "no sufficient condition applies")


def ideal_chain(binomials: Sequence[PureDifferenceBinomial], lattice: Lattice) -> tuple[bool, bool, bool]:
    """Which links of ``I ⊆ J ⊆ I_L ⊆ I_Sat(L)`` are certified equalities.

    ``False`` means "not certified", not "strict".
    """
    if _solved_assignment(binomials) is not None:
        return True, True, True
    i_eq_j = all(b.is_canonical() for b in binomials)
    vectors = [exponent_vector(b) for b in binomials]
    j_eq_il = (not binomials or len(binomials) == 1
               or any(all(x > 0 for x in v) for v in vectors))
    il_eq_isat = is_saturated(lattice)
    return i_eq_j, j_eq_il, il_eq_isat


def synthesize_diagonal(
    cert: SaturationCertificate,
    vars: Sequence[str],
    binomials: Sequence[PureDifferenceBinomial] = (),
) -> SynthesisReport:
    d = cert.original.dim
    if len(vars) != d:
        raise DimensionMismatch(f"{len(vars)} variable names for a lattice in Z^{d}")
    lambdas = lambdas_from_matrix(cert.A, d)
    update = tuple(tuple(lambdas[i] if i == j else Fraction(0) for j in range(d)) for i in range(d))
    loop = LinearLoop(tuple(vars), update, (Fraction(1),) * d)
    return SynthesisReport(
        loop=loop,
        A=cert.A,
        lambdas=lambdas,
        lattice=cert.original,
        saturation=cert,
        nontrivial=any(lam != 1 for lam in lambdas),
        exactness=classify_exactness(binomials, cert.original, cert),
        binomials=tuple(binomials),
    )


def synthesize(binomials: Sequence[PureDifferenceBinomial], vars: Sequence[str]) -> SynthesisReport:
    """Run the whole pipeline on a list of pure difference binomials."""
    d = len(vars)
    for b in binomials:
        if b.nvars != d:
            raise DimensionMismatch(f"binomial in {b.nvars} variables, expected {d}")
    L = lattice_from_vectors([exponent_vector(b) for b in binomials], d)
    return synthesize_diagonal(saturate(L), vars, binomials)


def synthesize_polynomials(polys: Sequence[Polynomial], vars: Sequence[str]) -> SynthesisReport:
    """Classify every polynomial as a pure difference binomial, then synthesise.

    Raises :class:`NotPureDifference` naming every offending index.
    """
    binomials, bad = [], []
    for i, p in enumerate(polys):
        try:
            binomials.append(classify_pure_difference(p))
        except NotPureDifference as exc:
            bad.append(f"#{i + 1} {p.format(vars)} ({exc})")
    if bad:
        raise NotPureDifference("not pure difference binomials: " + "; ".join(bad))
    return synthesize(binomials, vars)


def conjugate(report: SynthesisReport, S: Sequence[Sequence]) -> SynthesisReport:
    """Move the loop to the coordinates in which ``S a`` is the binomial frame.

    New update ``S^-1 M S``, new init ``S^-1 init``.  Only invariance is
    guaranteed afterwards, so exactness drops to superset-only.
    """
    S = to_fractions(S)
    d = report.loop.dim
    if len(S) != d or any(len(r) != d for r in S):
        raise DimensionMismatch(f"transform must be {d}x{d}")
    S_inv = rat_inverse(S)
    loop = LinearLoop(
        report.loop.vars,
        mat_mul(mat_mul(S_inv, report.loop.update), S),
        mat_vec(S_inv, report.loop.init),
    )
    return replace(
        report,
        loop=loop,
        exactness=Exactness(ExactnessLevel.SUPERSET_GUARANTEED_ONLY,
                            "conjugated loop: only invariance is guaranteed"),
        transformed=(S, S_inv),
    )


def transform_polynomials(polys: Sequence[Polynomial], S: Sequence[Sequence]) -> list[Polynomial]:
    """Images ``q(x') = p(S^-1 x')`` of the input polynomials in the new frame."""
    S_inv = rat_inverse(to_fractions(S))
    return [p.substitute_linear(S_inv) for p in polys]


def is_nontrivial(report: SynthesisReport) -> bool:
    return any(lam != 1 for lam in report.lambdas)


def canonical_generators(binomials: Sequence[PureDifferenceBinomial]) -> list[PureDifferenceBinomial]:
    """Generators of J, the ideal of canonical binomials of the exponent vectors."""
    return [canonical_binomial(exponent_vector(b)) for b in binomials]

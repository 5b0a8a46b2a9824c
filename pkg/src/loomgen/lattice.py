"""Exponent lattices, their saturation, and the matrix whose kernel is the saturation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch
from .exact_linalg import (
    IntMatrix,
    dot,
    hermite_normal_form,
    integer_kernel_basis,
    rational_null_space_basis,
)


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^dim stored by its row Hermite normal form basis.

    Since the basis is canonical, two lattices are equal exactly when their
    dataclass fields are equal.
    """

    dim: int
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)


@dataclass(frozen=True)
class SaturationCertificate:
    original: Lattice
    saturated: Lattice
    A: IntMatrix

    @property
    def zero_sentinel(self) -> bool:
        """True when A is the single zero row, i.e. the lattice has full rank."""
        return len(self.A) == 1 and not any(self.A[0])


def lattice_from_vectors(vectors: Sequence[Sequence[int]], d: int) -> Lattice:
    for v in vectors:
        if len(v) != d:
            raise DimensionMismatch(f"vector of length {len(v)} in Z^{d}")
    return Lattice(d, hermite_normal_form([tuple(v) for v in vectors], d))


def saturate(L: Lattice) -> SaturationCertificate:
    """Compute Sat(L) as the kernel of an integer matrix A.

    A spans the rational orthogonal complement of L, so its integer kernel
    is ``span_Q(L) ∩ Z^d``.  The empty lattice is treated as spanned by the
    zero vector, which makes A the identity.
    """
    B = L.basis or ((0,) * L.dim,)
    A = rational_null_space_basis(B, L.dim)
    saturated = Lattice(L.dim, integer_kernel_basis(A, L.dim))
    return SaturationCertificate(L, saturated, A)


def contains(L: Lattice, v: Sequence[int]) -> bool:
    if len(v) != L.dim:
        raise DimensionMismatch(f"vector of length {len(v)} tested against a lattice in Z^{L.dim}")
    w = list(v)
    for row in L.basis:
        c = next(i for i, x in enumerate(row) if x)
        q, r = divmod(w[c], row[c])
        if r:
            return False
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def is_saturated(L: Lattice) -> bool:
    return saturate(L).saturated == L


def in_saturation(cert: SaturationCertificate, v: Sequence[int]) -> bool:
    """Membership in Sat(L) through the certificate: ``A v = 0``."""
    return all(dot(row, v) == 0 for row in cert.A)

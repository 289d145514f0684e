"""Intersection lattice of the wheel fiber at infinity.

For ``d >= 2`` the fiber ``D = f^{-1}(oo)`` is a cycle of ``d`` smooth rational
(-2)-curves ``D_1, ..., D_d``.  Replacing ``D_d`` by a section ``E`` (which
meets only ``D_d``, once) gives divisors ``F_1..F_d`` whose intersection
matrix with the ``D_j`` has determinant ``(-1)^(d-1) d``; non-vanishing of that
determinant is the certificate that ``H^2(Z) -> H^2(D)`` is onto.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, determinant

# d = 2: the two components meet in two points, so the single off-diagonal
# slot carries intersection number 2 (rows still sum to zero).
D2_CONVENTION_NOTE = "d = 2 off-diagonal entry set to 2 (two intersection points); modeling choice"

AMPLE_RESTRICTION_AXIOM = "axiom: D irreducible, NS(D) spanned by c1 of an ample class restricted from Z"


@dataclass(frozen=True)
class WheelLattice:
    d: int
    gram: Matrix


def _check_d(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"a wheel needs at least two components, got d = {d}")


def wheel_gram(d: int) -> WheelLattice:
    """Gram matrix ``(D_i . D_j)`` of the ``I_d`` wheel, ``d >= 2``."""
    _check_d(d)
    g = [[0] * d for _ in range(d)]
    for i in range(d):
        g[i][i] = -2
        # for d = 2 both cyclic neighbours are the same curve, giving 2
        for j in ((i - 1) % d, (i + 1) % d):
            g[i][j] += 1
    return WheelLattice(d, Matrix(g))


def section_augmented_matrix(d: int) -> Matrix:
    """Intersection matrix ``(F_i . D_j)`` with ``F_i = D_i`` for ``i < d`` and ``F_d = E``."""
    gram = wheel_gram(d).gram
    rows = [list(gram.row(i)) for i in range(d - 1)]
    rows.append([0] * (d - 1) + [1])
    return Matrix(rows)


def section_augmented_det(d: int) -> Fraction:
    return determinant(section_augmented_matrix(d))


def expected_section_det(d: int) -> int:
    return (-1) ** (d - 1) * d


@dataclass(frozen=True)
class SurjectivityCertificate:
    d: int
    surjective: bool
    determinant: Fraction | None
    axiom: str | None

    def describe(self) -> str:
        if self.determinant is not None:
            return f"det(F_i . D_j) = {self.determinant}"
        return self.axiom or ""


def restriction_surjective(d: int) -> SurjectivityCertificate:
    """Is ``H^2(Z) -> H^2(D)`` onto?  For ``d >= 2`` decided by a determinant."""
    if not 0 <= d <= 9:
        raise ValueError(f"d must lie in 0..9, got {d}")
    if d < 2:
        return SurjectivityCertificate(d, True, None, AMPLE_RESTRICTION_AXIOM)
    det = section_augmented_det(d)
    return SurjectivityCertificate(d, det != 0, det, None)

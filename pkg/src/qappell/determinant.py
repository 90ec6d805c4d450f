"""Determinant construction of (2-iterated) q-Appell polynomials.

The degree-n member is (-1)^n / beta_0^(n+1) times the determinant of an
(n+1)x(n+1) matrix whose first row holds the basis entries
(1, b_1(x), ..., b_n(x)) and whose scalar rows are built from the beta
sequence:

    row 1:      (beta_0, beta_1, ..., beta_n)
    row i >= 2: entry (i, j) = C(j, i-1)_q beta_{j-i+1} for j >= i-1,
                zero before.

With the monomial basis this produces the plain family attached to beta;
with another family's polynomials in row 0 it produces the 2-iterated or
mixed member.  Only row 0 is polynomial-valued, so the determinant is
expanded by cofactors along row 0 and each scalar minor is evaluated by
fraction-free (Bareiss) elimination, keeping everything exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .families import AppellFamily
from .qcore import QPoly, monomial_basis
from .series import ESeq

__all__ = [
    "DetMatrix",
    "build_matrix",
    "det_eval",
    "det_poly",
    "det_appell_poly",
    "det_pair_poly",
    "bareiss_det",
    "principal_minor",
]


@dataclass(frozen=True)
class DetMatrix:
    """Materialized matrix: polynomial row 0 plus scalar rows 1..n."""

    size: int
    top: tuple[QPoly, ...]
    scalars: tuple[tuple[Fraction, ...], ...]


def build_matrix(beta: ESeq, basis: Sequence[QPoly], n: int) -> DetMatrix:
    """Lay out the (n+1)x(n+1) determinant matrix for degree n >= 1."""
    if n < 1:
        raise ValueError("build_matrix needs n >= 1; degree 0 is 1/beta_0 directly")
    if beta.order < n:
        raise ValueError(f"beta has order {beta.order}, need at least {n}")
    if beta[0] == 0:
        raise ValueError("beta_0 must be nonzero")
    if len(basis) < n + 1:
        raise ValueError(f"basis holds {len(basis)} entries, need {n + 1}")
    if basis[0] != QPoly.one():
        raise ValueError("basis[0] must be the constant polynomial 1")
    ctx = beta.ctx
    top = tuple(basis[j] for j in range(n + 1))
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(n + 1):
            if j < i - 1:
                row.append(Fraction(0))
            else:
                row.append(ctx.q_binomial(j, i - 1) * beta[j - i + 1])
        rows.append(tuple(row))
    return DetMatrix(n + 1, top, tuple(rows))


def bareiss_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square scalar matrix, fraction-free style.

    Pivots by the first nonzero entry in each column (row swap flips the
    sign); every division in the Bareiss update is exact.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(map(Fraction, r)) for r in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_eval(matrix: DetMatrix, beta0: Fraction, n: int) -> QPoly:
    """(-1)^n / beta0^(n+1) times det(matrix), via cofactors along row 0."""
    scale = Fraction((-1) ** n) / beta0 ** (n + 1)
    acc = QPoly.zero()
    for j in range(n + 1):
        entry = matrix.top[j]
        if entry.is_zero:
            continue
        minor_rows = [row[:j] + row[j + 1 :] for row in matrix.scalars]
        minor = bareiss_det(minor_rows)
        if minor == 0:
            continue
        cofactor = minor if j % 2 == 0 else -minor
        acc = acc + (scale * cofactor) * entry
    return acc


def det_poly(beta: ESeq, basis: Sequence[QPoly], n: int) -> QPoly:
    """Degree-n member from a beta sequence and a row-0 basis."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if beta[0] == 0:
        raise ValueError("beta_0 must be nonzero")
    if n == 0:
        # stated separately in the source construction, not as a matrix
        return QPoly((1 / beta[0],))
    matrix = build_matrix(beta, basis, n)
    return det_eval(matrix, beta[0], n)


def det_appell_poly(fam: AppellFamily, n: int) -> QPoly:
    """Plain family member via the determinant with the monomial basis."""
    return det_poly(fam.beta, monomial_basis(max(n, 0)), n)


def det_pair_poly(beta_fam: AppellFamily, basis_fam: AppellFamily, n: int) -> QPoly:
    """2-iterated/mixed member: beta from one family, row 0 from the other."""
    if beta_fam.ctx.q != basis_fam.ctx.q:
        raise ValueError("families disagree on q")
    return det_poly(beta_fam.beta, basis_fam.polys(max(n, 0)), n)


def principal_minor(matrix: DetMatrix, n: int) -> Fraction:
    """det of the scalar block left of column n (rows 1..n, cols 0..n-1)."""
    rows = [row[:n] for row in matrix.scalars]
    return bareiss_det(rows)

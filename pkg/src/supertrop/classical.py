"""Exact rational linear algebra: the classical side of the cross-checks.

Everything here runs over ``fractions.Fraction`` so every identity is tested
as an exact equation.  The two identities of interest:

* ``jacobi_check``: the k-th principal-minor sum of the (signed) adjugate
  equals ``det^(k-1)`` times the (n-k)-th principal-minor sum of the matrix.
  This is a polynomial identity, valid for singular matrices too once k >= 1.
* ``reciprocal_check``: relates the characteristic coefficients of an
  invertible matrix to those of its inverse.

Note the adjugate here carries the classical cofactor signs, unlike the
unsigned supertropical adjoint in :mod:`supertrop.matrices`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import Singular

__all__ = [
    "as_rational_matrix",
    "rat_det",
    "rat_adjugate",
    "rat_inverse",
    "rat_identity",
    "rat_mat_mul",
    "minor_sums",
    "char_coeffs",
    "charpoly_expand",
    "jacobi_check",
    "reciprocal_check",
    "parse_rational_matrix",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational_matrix(rows):
    """Normalize to a square tuple-of-tuples of Fractions."""
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    n = len(out)
    if n == 0:
        raise ValueError("matrix order must be at least 1")
    for row in out:
        if len(row) != n:
            raise ValueError("matrix must be square")
    return out


def rat_identity(n: int):
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def rat_mat_mul(X, Y):
    n = len(X)
    return tuple(
        tuple(sum((X[i][k] * Y[k][j] for k in range(n)), _ZERO) for j in range(n))
        for i in range(n)
    )


def rat_det(X) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting."""
    a = [list(row) for row in X]
    n = len(a)
    sign = 1
    prev = _ONE
    for col in range(n - 1):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return _ZERO
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        for r in range(col + 1, n):
            lead = a[r][col]
            row = a[r]
            top = a[col]
            for c in range(col + 1, n):
                row[c] = (row[c] * pivot - lead * top[c]) / prev
            row[col] = _ZERO
        prev = pivot
    return sign * a[n - 1][n - 1]


def _minor_det(X, skip_row, skip_col):
    n = len(X)
    cells = [
        [X[r][c] for c in range(n) if c != skip_col]
        for r in range(n)
        if r != skip_row
    ]
    return rat_det(cells)


def _adjugate_by_cofactors(X):
    n = len(X)
    if n == 1:
        return ((_ONE,),)
    return tuple(
        tuple(
            (-1) ** (i + j) * _minor_det(X, j, i)  # transposed placement
            for j in range(n)
        )
        for i in range(n)
    )


def rat_adjugate(X):
    """Signed classical adjugate, satisfying ``adj(X) @ X = det(X) * I``.

    Cofactor route up to order 5; for larger invertible matrices the cheaper
    ``det(X) * inverse(X)`` route is used (the cofactor route remains the
    fallback when the determinant vanishes).
    """
    n = len(X)
    if n <= 5:
        return _adjugate_by_cofactors(X)
    d = rat_det(X)
    if d == 0:
        return _adjugate_by_cofactors(X)
    inv = rat_inverse(X)
    return tuple(tuple(d * inv[i][j] for j in range(n)) for i in range(n))


def rat_inverse(X):
    """Exact inverse by Gauss-Jordan elimination; raises Singular if det = 0."""
    n = len(X)
    a = [list(row) + [_ONE if i == j else _ZERO for j in range(n)] for i, row in enumerate(X)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise Singular("matrix has determinant 0")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        for r in range(n):
            if r == col:
                continue
            lead = a[r][col]
            if lead:
                a[r] = [x - lead * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def minor_sums(X):
    """``E[k]`` = sum of all principal k-by-k minors, k = 0..n (E[0] = 1)."""
    n = len(X)
    sums = [_ONE]
    for k in range(1, n + 1):
        total = _ZERO
        for subset in itertools.combinations(range(n), k):
            cells = [[X[a][b] for b in subset] for a in subset]
            total += rat_det(cells)
        sums.append(total)
    return sums


def char_coeffs(X):
    """Coefficient of ``lambda^(n-k)`` in ``det(lambda I - X)``: ``(-1)^k E_k``."""
    return [(-1) ** k * e for k, e in enumerate(minor_sums(X))]


def charpoly_expand(X):
    """Characteristic coefficients by direct permutation expansion.

    Independent of :func:`minor_sums` and of the Bareiss determinant: each
    permutation contributes a signed product of linear polynomials in lambda.
    Costs n! poly products, so keep the order small; it exists to pin the
    sign convention.
    """
    n = len(X)
    total = [_ZERO] * (n + 1)  # total[d] = coefficient of lambda^d
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = [Fraction(sign)]
        for i in range(n):
            entry = [-X[i][perm[i]]]
            if perm[i] == i:
                entry.append(_ONE)
            prod = _poly_mul(prod, entry)
        for d, c in enumerate(prod):
            total[d] += c
    return [total[n - k] for k in range(n + 1)]


def _perm_sign(perm):
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def _poly_mul(p, q):
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def jacobi_check(X, k: int) -> bool:
    """Exact test of ``E_k(adj X) == det(X)^(k-1) * E_{n-k}(X)``.

    Holds for every rational X when k >= 1; k = 0 needs an invertible X
    (the right side carries ``det^(-1)``).
    """
    n = len(X)
    if not (0 <= k <= n):
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    d = rat_det(X)
    if k == 0 and d == 0:
        raise Singular("k = 0 requires an invertible matrix")
    lhs = minor_sums(rat_adjugate(X))[k]
    rhs = d ** (k - 1) * minor_sums(X)[n - k]
    return lhs == rhs


def reciprocal_check(X, k: int) -> bool:
    """Exact test of ``chi_n(X) * chi_k(X^-1) == chi_{n-k}(X)``."""
    n = len(X)
    if not (0 <= k <= n):
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    if rat_det(X) == 0:
        raise Singular("reciprocal identity needs an invertible matrix")
    chi = char_coeffs(X)
    chi_inv = char_coeffs(rat_inverse(X))
    return chi[n] * chi_inv[k] == chi[n - k]


def parse_rational_matrix(text: str):
    """Same layout as the supertropical matrix format, tokens bare rationals."""
    lines = [line for line in (raw.strip() for raw in text.splitlines()) if line]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"first line must be the order, got {lines[0]!r}") from exc
    if n < 1:
        raise ValueError(f"order must be at least 1, got {n}")
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows after the order line, got {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        tokens = line.split()
        if len(tokens) != n:
            raise ValueError(f"expected {n} entries per row, got {len(tokens)} in {line!r}")
        try:
            rows.append([Fraction(tok) for tok in tokens])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational token in {line!r}") from exc
    return as_rational_matrix(rows)

"""Square matrices over the supertropical scalars.

Two determinant engines with an identical output contract:

* ``det_brute`` folds the semiring sum over all n! permutation products
  (the reference, capped at a configurable order);
* ``det_assignment`` solves the max-weight perfect-matching problem on the
  value grid with exact arithmetic, certifies uniqueness of the optimal
  permutation by re-solving with each matched edge forbidden, and derives
  the tangible/ghost tag from uniqueness plus the tags along the optimum.

On top of the determinant sit unsigned cofactors, the adjoint (transposed
cofactor grid), the characteristic coefficients (sums of principal minors),
the pseudoinverse, and the per-k surpassing check they were built for.

Rows and columns of :func:`cofactor` are numbered from 1, matching the usual
matrix convention; everything else is positional.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import OrderTooLarge, Singular
from .scalars import EPS, Scalar, add, mul, ghost_surpasses, parse_scalar, tangible
from .scalars import pow as scalar_pow

__all__ = [
    "Matrix",
    "CharPoly",
    "ConjectureCase",
    "ConjectureReport",
    "BRUTE_CAP",
    "det",
    "det_brute",
    "det_assignment",
    "det_power",
    "cofactor",
    "adjoint",
    "char_poly",
    "is_nonsingular",
    "pseudoinverse",
    "conjecture_check",
    "parse_matrix",
    "format_matrix",
]

#: Default order cap for the brute-force engine; above it `det` switches to
#: the assignment engine.
BRUTE_CAP = 8

_ENGINES = ("auto", "brute", "assignment", "both")


class Matrix:
    """An immutable n-by-n grid of scalars, n >= 1."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix order must be at least 1")
        for row in rows:
            if len(row) != n:
                raise ValueError(f"matrix must be square, got a row of length {len(row)} for order {n}")
            for entry in row:
                if not isinstance(entry, Scalar):
                    raise TypeError(f"matrix entries must be Scalar, got {type(entry).__name__}")
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        """The multiplicative identity: unit ``0t`` on the diagonal, eps elsewhere."""
        return cls([[tangible(0) if i == j else EPS for j in range(n)] for i in range(n)])

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(s.token for s in row) for row in self.rows)
        return f"Matrix({self.n}: {body})"


@dataclass(frozen=True)
class CharPoly:
    """Characteristic coefficients: ``coeffs[k]`` is the sum of all principal
    k-by-k minors, so ``coeffs[0]`` is the unit and ``coeffs[n]`` the determinant."""

    n: int
    coeffs: tuple


# ---------------------------------------------------------------------------
# determinant engines


def _det_brute_cells(cells):
    n = len(cells)
    best_value = None
    best_tag = None
    for perm in itertools.permutations(range(n)):
        value = 0
        tag = 1
        alive = True
        for i in range(n):
            s = cells[i][perm[i]]
            if s.tag is None:
                alive = False
                break
            value = value + s.value
            tag &= s.tag
        if not alive:
            continue
        if best_value is None or value > best_value:
            best_value = value
            best_tag = tag
        elif value == best_value:
            best_tag = 0
    if best_value is None:
        return EPS
    return Scalar(best_value, best_tag)


_INF = float("inf")


def _best_assignment(weights):
    """Exact max-weight perfect matching on an n-by-n grid.

    ``weights[i][j]`` is an int/Fraction, or ``None`` for a forbidden edge.
    Returns ``(sigma, total)`` with ``sigma[i]`` the column matched to row
    ``i``, or ``None`` when no perfect matching avoids the forbidden edges.
    Forbidden edges are priced with an exact big-M penalty, so feasibility
    is read off the solution rather than special-cased.
    """
    n = len(weights)
    finite = [w for row in weights for w in row if w is not None]
    if not finite:
        return None
    w_max = max(finite)
    w_min = min(finite)
    forbidden_cost = (w_max - w_min + 1) * (n + 1)
    cost = [
        [forbidden_cost if w is None else w_max - w for w in row]
        for row in weights
    ]

    # Shortest-augmenting-path assignment with potentials, 1-based arrays.
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [_INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = _INF
            j1 = 0
            row_cost = cost[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row_cost[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1

    sigma = [0] * n
    for j in range(1, n + 1):
        sigma[match[j] - 1] = j - 1
    total = 0
    for i in range(n):
        w = weights[i][sigma[i]]
        if w is None:
            return None  # optimum needs a forbidden edge: infeasible
        total = total + w
    return sigma, total


def _det_assignment_cells(cells):
    n = len(cells)
    weights = [[None if s.tag is None else s.value for s in row] for row in cells]
    solved = _best_assignment(weights)
    if solved is None:
        return EPS
    sigma, best = solved
    # The optimum is non-unique iff forbidding some matched edge leaves an
    # equally good matching.
    unique = True
    for i in range(n):
        j = sigma[i]
        saved = weights[i][j]
        weights[i][j] = None
        rival = _best_assignment(weights)
        weights[i][j] = saved
        if rival is not None and rival[1] == best:
            unique = False
            break
    if not unique:
        return Scalar(best, 0)
    tag = 1
    for i in range(n):
        tag &= cells[i][sigma[i]].tag
    return Scalar(best, tag)


def _det_cells(cells, engine, cap):
    if engine == "auto":
        if len(cells) <= cap:
            return _det_brute_cells(cells)
        return _det_assignment_cells(cells)
    if engine == "brute":
        if len(cells) > cap:
            raise OrderTooLarge(f"brute-force determinant capped at order {cap}, got {len(cells)}")
        return _det_brute_cells(cells)
    if engine == "assignment":
        return _det_assignment_cells(cells)
    if engine == "both":
        if len(cells) > cap:
            raise OrderTooLarge(f"brute-force determinant capped at order {cap}, got {len(cells)}")
        b = _det_brute_cells(cells)
        a = _det_assignment_cells(cells)
        if a != b:
            raise RuntimeError(f"determinant engines disagree: brute={b.token} assignment={a.token}")
        return b
    raise ValueError(f"unknown engine {engine!r}; expected one of {_ENGINES}")


def det_brute(A: Matrix, cap: int = BRUTE_CAP) -> Scalar:
    """Reference determinant: semiring sum over all permutation products."""
    if A.n > cap:
        raise OrderTooLarge(f"brute-force determinant capped at order {cap}, got {A.n}")
    return _det_brute_cells(A.rows)


def det_assignment(A: Matrix) -> Scalar:
    """Assignment-problem determinant; same output contract as :func:`det_brute`."""
    return _det_assignment_cells(A.rows)


def det(A: Matrix, engine: str = "auto", cap: int = BRUTE_CAP) -> Scalar:
    """Determinant with engine selection.

    ``auto`` uses brute force up to ``cap`` and the assignment engine above;
    ``both`` runs the two engines and raises if they ever disagree.
    """
    return _det_cells(A.rows, engine, cap)


def det_power(d: Scalar, m: int) -> Scalar:
    """``d`` to the ``m``-fold product, reading the empty product as the unit.

    Unlike ``scalars.pow`` this accepts ``m == 0`` for any ``d`` (including
    eps), which is what the ``k - 1`` exponents of the surpassing check need.
    """
    if m == 0:
        return tangible(0)
    return scalar_pow(d, m)


# ---------------------------------------------------------------------------
# cofactors, adjoint, characteristic coefficients


def cofactor(A: Matrix, i: int, j: int, engine: str = "auto") -> Scalar:
    """Unsigned minor: determinant of A with row ``i`` and column ``j`` removed.

    ``i`` and ``j`` are 1-based.  For a 1-by-1 matrix the deletion is empty and
    the cofactor is the unit ``0t`` (empty-product convention).
    """
    n = A.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"cofactor indices out of range for order {n}: ({i}, {j})")
    if n == 1:
        return tangible(0)
    cells = [
        [A.rows[r][c] for c in range(n) if c != j - 1]
        for r in range(n)
        if r != i - 1
    ]
    return _det_cells(cells, engine, BRUTE_CAP)


def adjoint(A: Matrix, engine: str = "auto") -> Matrix:
    """The matrix whose (i, j) entry is the (j, i) cofactor of ``A``."""
    n = A.n
    return Matrix(
        [[cofactor(A, j + 1, i + 1, engine) for j in range(n)] for i in range(n)]
    )


def char_poly(A: Matrix, engine: str = "auto") -> CharPoly:
    """All characteristic coefficients of ``A`` by direct minor enumeration."""
    n = A.n
    rows = A.rows
    coeffs = [tangible(0)]
    for k in range(1, n + 1):
        acc = EPS
        for subset in itertools.combinations(range(n), k):
            cells = [[rows[a][b] for b in subset] for a in subset]
            acc = add(acc, _det_cells(cells, engine, BRUTE_CAP))
        coeffs.append(acc)
    return CharPoly(n, tuple(coeffs))


def is_nonsingular(A: Matrix, engine: str = "auto") -> bool:
    """True iff the determinant is tangible (equivalently, invertible)."""
    return det(A, engine).is_tangible


def pseudoinverse(A: Matrix, engine: str = "auto") -> Matrix:
    """Adjoint scaled by the inverse determinant; requires a tangible determinant."""
    d = det(A, engine)
    if not d.is_tangible:
        raise Singular(f"pseudoinverse needs a tangible determinant, got {d.token}")
    inv = scalar_pow(d, -1)
    adj = adjoint(A, engine)
    return Matrix([[mul(inv, s) for s in row] for row in adj.rows])


# ---------------------------------------------------------------------------
# the surpassing check


@dataclass(frozen=True)
class ConjectureCase:
    k: int
    lhs: Scalar
    rhs: Scalar
    holds: bool


@dataclass(frozen=True)
class ConjectureReport:
    n: int
    det: Scalar
    singular: bool
    cases: tuple

    @property
    def ok(self) -> bool:
        return all(case.holds for case in self.cases)


def conjecture_check(
    A: Matrix,
    engine: str = "auto",
    ks=None,
    allow_singular: bool = False,
) -> ConjectureReport:
    """Per-k check that the k-th characteristic coefficient of the adjoint
    ghost-surpasses ``det^(k-1)`` times the (n-k)-th coefficient of ``A``.

    The equivalent pseudoinverse form ``det * chi_k(pinv A) |= chi_{n-k}(A)``
    is evaluated alongside and must agree case by case; a disagreement is an
    internal error, not a verification failure.

    With ``allow_singular`` the check runs on singular matrices too, skipping
    k = 0 (which needs the inverse determinant) and the pseudoinverse form.
    This path is exploratory: no correctness claim attaches to it.
    """
    n = A.n
    d = det(A, engine)
    singular = not d.is_tangible
    if singular and not allow_singular:
        raise Singular(f"surpassing check needs a non-singular matrix, determinant is {d.token}")

    if ks is None:
        k_list = list(range(n + 1))
    else:
        k_list = sorted(set(ks))
        for k in k_list:
            if not (0 <= k <= n):
                raise ValueError(f"k must lie in 0..{n}, got {k}")
    if singular:
        k_list = [k for k in k_list if k >= 1]

    chi = char_poly(A, engine)
    chi_adj = char_poly(adjoint(A, engine), engine)
    if not singular:
        chi_pinv = char_poly(pseudoinverse(A, engine), engine)

    cases = []
    for k in k_list:
        lhs = chi_adj.coeffs[k]
        rhs = mul(det_power(d, k - 1), chi.coeffs[n - k])
        holds = ghost_surpasses(lhs, rhs)
        if not singular:
            alt = ghost_surpasses(mul(d, chi_pinv.coeffs[k]), chi.coeffs[n - k])
            if alt != holds:
                raise RuntimeError(
                    f"equivalent surpassing forms disagree at k={k}: "
                    f"adjoint form {holds}, pseudoinverse form {alt}"
                )
        cases.append(ConjectureCase(k, lhs, rhs, holds))
    return ConjectureReport(n, d, singular, tuple(cases))


# ---------------------------------------------------------------------------
# text format: first line the order, then n rows of n scalar tokens


def parse_matrix(text: str) -> Matrix:
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
        rows.append([parse_scalar(tok) for tok in tokens])
    return Matrix(rows)


def format_matrix(A: Matrix) -> str:
    lines = [str(A.n)]
    lines.extend(" ".join(s.token for s in row) for row in A.rows)
    return "\n".join(lines) + "\n"

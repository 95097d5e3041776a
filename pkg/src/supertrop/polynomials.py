"""Formal sparse polynomials over the n*n entry variables of a square matrix.

A polynomial maps exponent grids (flattened to an n*n tuple) to non-eps
scalar coefficients.  The module builds three distinguished polynomials for
a given order n and level k:

* ``alpha``: the k-th characteristic coefficient of the adjoint of the
  all-variable matrix;
* ``beta``: the (k-1)-fold product of the variable determinant times the
  (n-k)-th characteristic coefficient of the variable matrix -- built both
  by polynomial products and by direct enumeration of index tuples, and the
  two constructions are asserted equal term for term;
* ``gamma``: the restriction of beta to its tangible-coefficient terms.

On top of these sit the mechanical support/evaluation checks used by the
verification harness.  Orders are capped (default 4): the construction is a
full symbolic expansion and explodes combinatorially beyond that.

Variable indices in the public helpers are 1-based (``v11`` is the top-left
entry), matching the printed form ``v{row}{col}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import OrderTooLarge, Singular
from .matrices import Matrix, is_nonsingular
from .scalars import EPS, Scalar, add, mul, ghost_surpasses, tangible

__all__ = [
    "SYMBOLIC_CAP",
    "Poly",
    "MuTuple",
    "zero_poly",
    "unit_poly",
    "variable",
    "poly_add",
    "poly_mul",
    "poly_det",
    "chi_poly",
    "adjoint_cells",
    "build_alpha",
    "build_beta",
    "build_gamma",
    "evaluate",
    "format_poly",
    "Claim1Report",
    "Claim2Report",
    "Claim3Report",
    "DecompositionReport",
    "claim1_check",
    "claim2_check",
    "claim3_check",
    "decomposition_checks",
]

#: Largest order for which alpha/beta/gamma are built symbolically.
SYMBOLIC_CAP = 4


class Poly:
    """Sparse polynomial: exponent grid -> coefficient (eps never stored)."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("polynomial order must be at least 1")
        self.n = n
        width = n * n
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != width:
                raise ValueError(f"exponent grid must have {width} entries, got {len(exps)}")
            if any((not isinstance(e, int)) or e < 0 for e in exps):
                raise ValueError(f"exponents must be non-negative ints: {exps}")
            if not isinstance(coeff, Scalar):
                raise TypeError("coefficients must be Scalar")
            if coeff.tag is None:
                continue
            clean[exps] = coeff
        self.terms = clean

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Poly(n={self.n}, terms={len(self.terms)})"

    def sorted_terms(self):
        """Terms in canonical order: by total degree, then lexicographically."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))


def _raw(n, terms):
    """Internal constructor bypassing validation (callers keep the invariants)."""
    p = Poly.__new__(Poly)
    p.n = n
    p.terms = terms
    return p


def zero_poly(n: int) -> Poly:
    return _raw(n, {})


def unit_poly(n: int) -> Poly:
    return _raw(n, {(0,) * (n * n): tangible(0)})


def variable(n: int, i: int, j: int) -> Poly:
    """The single-variable monomial ``v_ij`` (1-based) with unit coefficient."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"variable indices out of range for order {n}: ({i}, {j})")
    exps = [0] * (n * n)
    exps[(i - 1) * n + (j - 1)] = 1
    return _raw(n, {tuple(exps): tangible(0)})


def poly_add(p: Poly, q: Poly) -> Poly:
    if p.n != q.n:
        raise ValueError(f"order mismatch: {p.n} vs {q.n}")
    if not p.terms:
        return q
    if not q.terms:
        return p
    terms = dict(p.terms)
    for exps, coeff in q.terms.items():
        seen = terms.get(exps)
        terms[exps] = coeff if seen is None else add(seen, coeff)
    return _raw(p.n, terms)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if p.n != q.n:
        raise ValueError(f"order mismatch: {p.n} vs {q.n}")
    terms = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            exps = tuple(a + b for a, b in zip(e1, e2))
            coeff = mul(c1, c2)
            seen = terms.get(exps)
            terms[exps] = coeff if seen is None else add(seen, coeff)
    return _raw(p.n, terms)


def poly_det(cells, n: int) -> Poly:
    """Determinant of a square grid of polynomials over order-n variables.

    The empty grid yields the unit (empty-product convention), which is what
    the k = 0 / k = n edge cases rely on.
    """
    m = len(cells)
    acc = zero_poly(n)
    for perm in itertools.permutations(range(m)):
        prod = unit_poly(n)
        for i in range(m):
            prod = poly_mul(prod, cells[i][perm[i]])
        acc = poly_add(acc, prod)
    return acc


def _variable_cells(n):
    return [[variable(n, i + 1, j + 1) for j in range(n)] for i in range(n)]


def chi_poly(n: int, m: int) -> Poly:
    """Sum of all principal m-by-m minors of the all-variable matrix."""
    cells = _variable_cells(n)
    acc = zero_poly(n)
    for subset in itertools.combinations(range(n), m):
        acc = poly_add(acc, poly_det([[cells[a][b] for b in subset] for a in subset], n))
    return acc


def _cofactor_poly(n, i, j):
    cells = _variable_cells(n)
    minor = [
        [cells[r][c] for c in range(n) if c != j]
        for r in range(n)
        if r != i
    ]
    return poly_det(minor, n)


def adjoint_cells(n: int):
    """Entries of the adjoint of the all-variable matrix, each a cofactor polynomial."""
    return [[_cofactor_poly(n, j, i) for j in range(n)] for i in range(n)]


def _check_caps(n, k, cap, k_floor):
    if n < 1:
        raise ValueError("order must be at least 1")
    if n > cap:
        raise OrderTooLarge(f"symbolic construction capped at order {cap}, got {n}")
    if not (k_floor <= k <= n):
        raise ValueError(f"k must lie in {k_floor}..{n}, got {k}")


@lru_cache(maxsize=None)
def build_alpha(n: int, k: int, cap: int = SYMBOLIC_CAP) -> Poly:
    """The k-th characteristic coefficient of the adjoint variable matrix.

    Results are cached (they are pure in ``n`` and ``k``); treat the returned
    polynomial as read-only.
    """
    _check_caps(n, k, cap, 0)
    if k == 0:
        return unit_poly(n)
    adj = adjoint_cells(n)
    acc = zero_poly(n)
    for subset in itertools.combinations(range(n), k):
        acc = poly_add(acc, poly_det([[adj[a][b] for b in subset] for a in subset], n))
    return acc


@dataclass(frozen=True)
class MuTuple:
    """Index tuple for one raw monomial of beta: k-1 full permutations, an
    (n-k)-subset, and a permutation of that subset.

    ``sigmas[t][i]`` is the image of row i under the t-th permutation;
    ``tau[p]`` is the image of ``j_set[p]``.
    """

    sigmas: tuple
    j_set: tuple
    tau: tuple

    def exponent_key(self, n: int):
        exps = [0] * (n * n)
        for sigma in self.sigmas:
            for i in range(n):
                exps[i * n + sigma[i]] += 1
        for j, image in zip(self.j_set, self.tau):
            exps[j * n + image] += 1
        return tuple(exps)


def _beta_by_tuples(n, k):
    unit = tangible(0)
    terms = {}
    all_perms = list(itertools.permutations(range(n)))
    subsets = list(itertools.combinations(range(n), n - k))
    for sigmas in itertools.product(all_perms, repeat=k - 1):
        for j_set in subsets:
            for tau in itertools.permutations(j_set):
                key = MuTuple(sigmas, j_set, tau).exponent_key(n)
                seen = terms.get(key)
                terms[key] = unit if seen is None else add(seen, unit)
    return _raw(n, terms)


@lru_cache(maxsize=None)
def build_beta(n: int, k: int, cap: int = SYMBOLIC_CAP) -> Poly:
    """``det^(k-1) * chi_{n-k}`` of the variable matrix, k >= 1.

    k = 0 is rejected: it would need the inverse determinant, which is not a
    polynomial.  Built via polynomial products and cross-checked term for
    term against the direct tuple enumeration.  Cached; treat as read-only.
    """
    _check_caps(n, k, cap, 1)
    det_v = poly_det(_variable_cells(n), n)
    beta = unit_poly(n)
    for _ in range(k - 1):
        beta = poly_mul(beta, det_v)
    beta = poly_mul(beta, chi_poly(n, n - k))
    by_tuples = _beta_by_tuples(n, k)
    if beta != by_tuples:
        raise RuntimeError(
            f"beta constructions disagree at (n={n}, k={k}): "
            f"{len(beta)} vs {len(by_tuples)} terms"
        )
    return beta


@lru_cache(maxsize=None)
def build_gamma(n: int, k: int, cap: int = SYMBOLIC_CAP) -> Poly:
    """The tangible-coefficient part of beta.  Cached; treat as read-only."""
    beta = build_beta(n, k, cap)
    return _raw(n, {e: c for e, c in beta.terms.items() if c.is_tangible})


def evaluate(p: Poly, A: Matrix) -> Scalar:
    """Value of ``p`` at the matrix ``A``; the empty polynomial gives eps."""
    if p.n != A.n:
        raise ValueError(f"order mismatch: polynomial {p.n} vs matrix {A.n}")
    flat = [s for row in A.rows for s in row]
    best_value = None
    best_tag = None
    for exps, coeff in p.terms.items():
        value = coeff.value
        tag = coeff.tag
        alive = True
        for idx, e in enumerate(exps):
            if not e:
                continue
            s = flat[idx]
            if s.tag is None:
                alive = False
                break
            value = value + s.value * e
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


def format_poly(p: Poly) -> str:
    """One term per line, ``coeff * v11^a11 ... vnn^ann``, canonical order.

    Every variable is printed with its exponent (including 0) so the lines
    are fixed-width and diff-stable for golden files.
    """
    n = p.n
    names = [f"v{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    lines = []
    for exps, coeff in p.sorted_terms():
        grid = " ".join(f"{name}^{e}" for name, e in zip(names, exps))
        lines.append(f"{coeff.token} * {grid}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# claim checks


@dataclass(frozen=True)
class Claim1Report:
    """Support comparison of alpha and beta: every grid with a tangible
    coefficient on either side must appear (non-eps) on both sides."""

    n: int
    k: int
    alpha_terms: int
    beta_terms: int
    alpha_tangible: int
    beta_tangible: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Claim2Report:
    """gamma must be a sub-sum of alpha: its support inside alpha's support."""

    n: int
    k: int
    gamma_terms: int
    missing: tuple

    @property
    def ok(self) -> bool:
        return not self.missing


@dataclass(frozen=True)
class Claim3Report:
    n: int
    k: int
    beta_value: Scalar
    gamma_value: Scalar

    @property
    def ok(self) -> bool:
        return self.beta_value == self.gamma_value


@dataclass(frozen=True)
class DecompositionReport:
    """The three scalar decompositions behind the surpassing theorem."""

    n: int
    k: int
    alpha_value: Scalar
    beta_value: Scalar
    u_exists: bool  # some addend u with alpha(A) = beta(A) + u
    tangible_case_ok: bool  # if alpha(A) tangible: some s with beta(A) = alpha(A) + s
    surpasses: bool  # alpha(A) ghost-surpasses beta(A)

    @property
    def ok(self) -> bool:
        return self.u_exists and self.tangible_case_ok and self.surpasses


def claim1_check(n: int, k: int, cap: int = SYMBOLIC_CAP) -> Claim1Report:
    _check_caps(n, k, cap, 1)
    alpha = build_alpha(n, k, cap)
    beta = build_beta(n, k, cap)
    tangible_support = {e for e, c in alpha.terms.items() if c.is_tangible}
    tangible_support |= {e for e, c in beta.terms.items() if c.is_tangible}
    violations = tuple(
        sorted(e for e in tangible_support if e not in alpha.terms or e not in beta.terms)
    )
    return Claim1Report(
        n=n,
        k=k,
        alpha_terms=len(alpha),
        beta_terms=len(beta),
        alpha_tangible=sum(1 for c in alpha.terms.values() if c.is_tangible),
        beta_tangible=sum(1 for c in beta.terms.values() if c.is_tangible),
        violations=violations,
    )


def claim2_check(n: int, k: int, cap: int = SYMBOLIC_CAP) -> Claim2Report:
    _check_caps(n, k, cap, 1)
    alpha = build_alpha(n, k, cap)
    gamma = build_gamma(n, k, cap)
    missing = tuple(sorted(e for e in gamma.terms if e not in alpha.terms))
    return Claim2Report(n=n, k=k, gamma_terms=len(gamma), missing=missing)


def claim3_check(A: Matrix, k: int, cap: int = SYMBOLIC_CAP) -> Claim3Report:
    """Exact equality of beta and gamma evaluated at a non-singular matrix."""
    if not is_nonsingular(A):
        raise Singular("claim 3 is stated for non-singular matrices")
    n = A.n
    beta = build_beta(n, k, cap)
    gamma = build_gamma(n, k, cap)
    return Claim3Report(n=n, k=k, beta_value=evaluate(beta, A), gamma_value=evaluate(gamma, A))


def _exists_addend(target: Scalar, base: Scalar) -> bool:
    """True iff some x (any element) satisfies ``target = base + x``."""
    if target == base:
        return True
    if base.tag is None:
        return True
    if target.tag is None:
        return False
    if target.value > base.value:
        return True
    return target.tag == 0 and target.value == base.value


def decomposition_checks(A: Matrix, k: int, cap: int = SYMBOLIC_CAP) -> DecompositionReport:
    if not is_nonsingular(A):
        raise Singular("the decomposition checks are stated for non-singular matrices")
    n = A.n
    alpha_value = evaluate(build_alpha(n, k, cap), A)
    beta_value = evaluate(build_beta(n, k, cap), A)
    u_exists = _exists_addend(alpha_value, beta_value)
    tangible_case_ok = (not alpha_value.is_tangible) or _exists_addend(beta_value, alpha_value)
    return DecompositionReport(
        n=n,
        k=k,
        alpha_value=alpha_value,
        beta_value=beta_value,
        u_exists=u_exists,
        tangible_case_ok=tangible_case_ok,
        surpasses=ghost_surpasses(alpha_value, beta_value),
    )

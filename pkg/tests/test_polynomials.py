import pytest

from supertrop import (
    EPS,
    Matrix,
    OrderTooLarge,
    Singular,
    add,
    build_alpha,
    build_beta,
    build_gamma,
    char_poly,
    claim1_check,
    claim2_check,
    claim3_check,
    decomposition_checks,
    det,
    det_power,
    evaluate,
    format_poly,
    ghost,
    mul,
    parse_matrix,
    poly_add,
    poly_mul,
    tangible,
)
from supertrop.matrices import adjoint, is_nonsingular
from supertrop.polynomials import (
    MuTuple,
    Poly,
    _exists_addend,
    unit_poly,
    variable,
    zero_poly,
)
from supertrop.harness import random_matrix
from supertrop.rng import Xorshift64Star

A = parse_matrix("2\n3t 0t\n1t 4t\n")


def seeded_matrices(seed, count, n, bound=4):
    rng = Xorshift64Star(seed)
    return [random_matrix(rng, n, bound) for _ in range(count)]


def exps(n, *pairs):
    grid = [0] * (n * n)
    for i, j, e in pairs:
        grid[(i - 1) * n + (j - 1)] = e
    return tuple(grid)


class TestPolyArithmetic:
    def test_add_merges_to_ghost(self):
        e1 = exps(2, (1, 1, 1))
        p = Poly(2, {e1: tangible(0)})
        assert poly_add(p, p).terms == {e1: ghost(0)}

    def test_mul_single_terms(self):
        p = Poly(2, {exps(2, (1, 1, 1)): tangible(0)})
        q = Poly(2, {exps(2, (2, 2, 1)): tangible(0)})
        assert poly_mul(p, q).terms == {exps(2, (1, 1, 1), (2, 2, 1)): tangible(0)}

    def test_empty_poly_absorbs(self):
        p = Poly(2, {exps(2, (1, 1, 1)): tangible(0)})
        assert poly_mul(p, zero_poly(2)).terms == {}
        assert poly_add(p, zero_poly(2)) == p

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            poly_add(unit_poly(2), unit_poly(3))
        with pytest.raises(ValueError):
            poly_mul(unit_poly(2), unit_poly(3))
        with pytest.raises(ValueError):
            evaluate(unit_poly(3), A)

    def test_eps_coefficients_dropped(self):
        p = Poly(2, {exps(2, (1, 1, 1)): EPS})
        assert p.terms == {}

    def test_variable_indexing(self):
        v = variable(2, 1, 2)
        assert v.terms == {exps(2, (1, 2, 1)): tangible(0)}
        with pytest.raises(IndexError):
            variable(2, 0, 1)
        with pytest.raises(IndexError):
            variable(2, 1, 3)


class TestBuilders:
    def test_alpha_examples(self):
        a21 = build_alpha(2, 1)
        assert a21.terms == {
            exps(2, (1, 1, 1)): tangible(0),
            exps(2, (2, 2, 1)): tangible(0),
        }
        a22 = build_alpha(2, 2)
        assert a22.terms == {
            exps(2, (1, 1, 1), (2, 2, 1)): tangible(0),
            exps(2, (1, 2, 1), (2, 1, 1)): tangible(0),
        }
        assert build_alpha(3, 0) == unit_poly(3)

    def test_beta_examples(self):
        assert build_beta(2, 2) == build_alpha(2, 2)
        assert build_beta(2, 1) == build_alpha(2, 1)
        assert build_gamma(2, 1) == build_beta(2, 1)

    def test_caps_and_floors(self):
        with pytest.raises(OrderTooLarge):
            build_alpha(5, 1)
        with pytest.raises(OrderTooLarge):
            build_beta(5, 1)
        with pytest.raises(ValueError):
            build_beta(3, 0)  # needs the inverse determinant: not a polynomial
        with pytest.raises(ValueError):
            build_alpha(3, 4)

    def test_degree_invariant(self):
        # Every monomial of alpha and beta has total degree exactly k(n-1).
        for n in (2, 3, 4):
            for k in range(1, n + 1):
                for p in (build_alpha(n, k), build_beta(n, k)):
                    assert {sum(e) for e in p.terms} == {k * (n - 1)}, (n, k)

    def test_coefficient_range(self):
        for n in (2, 3, 4):
            for k in range(1, n + 1):
                for p in (build_alpha(n, k), build_beta(n, k)):
                    assert all(c in (tangible(0), ghost(0)) for c in p.terms.values())
                gamma = build_gamma(n, k)
                assert all(c == tangible(0) for c in gamma.terms.values())
                assert set(gamma.terms) <= set(build_beta(n, k).terms)

    def test_mu_tuple_exponent_key(self):
        # One full permutation (k=2 over n=3 leaves one sigma) plus tau on J.
        mu = MuTuple(sigmas=((1, 0, 2),), j_set=(0, 2), tau=(2, 0))
        key = mu.exponent_key(3)
        assert key == exps(3, (1, 2, 1), (2, 1, 1), (3, 3, 1), (1, 3, 1), (3, 1, 1))

    def test_builders_are_cached(self):
        assert build_alpha(3, 2) is build_alpha(3, 2)


class TestEvaluate:
    def test_examples(self):
        assert evaluate(build_alpha(2, 1), A) == tangible(4)
        assert evaluate(zero_poly(2), A) == EPS
        tied = parse_matrix("2\n1t 2t\n0t 1t\n")
        assert evaluate(build_beta(2, 2), tied) == ghost(2)

    def test_eps_entry_kills_term(self):
        M = parse_matrix("2\ne 2t\n3t e\n")
        # alpha(2,1) = v11 + v22, both mapped to eps here.
        assert evaluate(build_alpha(2, 1), M) == EPS

    def test_matches_direct_computation(self):
        # evaluate(alpha) = chi_k(adjoint), evaluate(beta) = det^(k-1) chi_{n-k},
        # exactly, including ghost/eps inputs (k >= 1 needs no inverse).
        for n in (2, 3):
            for M in seeded_matrices(500 + n, 25, n):
                d = det(M)
                chi = char_poly(M)
                chi_adj = char_poly(adjoint(M))
                for k in range(1, n + 1):
                    assert evaluate(build_alpha(n, k), M) == chi_adj.coeffs[k]
                    expected = mul(det_power(d, k - 1), chi.coeffs[n - k])
                    assert evaluate(build_beta(n, k), M) == expected


class TestClaims:
    def test_claim1(self):
        for n, k in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]:
            report = claim1_check(n, k)
            assert report.ok, (n, k, report.violations)

    def test_claim2(self):
        for n, k in [(2, 1), (2, 2), (3, 2), (3, 3)]:
            assert claim2_check(n, k).ok

    def test_claim3_example(self):
        report = claim3_check(A, 1)
        assert report.ok
        assert report.beta_value == tangible(4) and report.gamma_value == tangible(4)

    def test_decomposition_example(self):
        report = decomposition_checks(A, 2)
        assert report.ok
        assert report.alpha_value == tangible(7) and report.beta_value == tangible(7)

    def test_claims_need_nonsingular(self):
        tied = parse_matrix("2\n1t 2t\n0t 1t\n")
        with pytest.raises(Singular):
            claim3_check(tied, 1)
        with pytest.raises(Singular):
            decomposition_checks(tied, 1)

    def test_claims_hold_on_seeded_sample(self):
        checked = 0
        for n in (2, 3):
            for M in seeded_matrices(700 + n, 40, n, bound=3):
                if not is_nonsingular(M):
                    continue
                for k in range(1, n + 1):
                    assert claim3_check(M, k).ok, (M, k)
                    assert decomposition_checks(M, k).ok, (M, k)
                checked += 1
        assert checked > 40

    def test_exists_addend_matches_search(self):
        values = [-2, -1, 0, 1, 2]
        grid = [EPS] + [tangible(v) for v in values] + [ghost(v) for v in values]
        for target in grid:
            for base in grid:
                witnessed = any(add(base, x) == target for x in grid)
                assert _exists_addend(target, base) == witnessed, (target, base)


class TestSerialization:
    def test_golden_alpha_2_1(self):
        assert format_poly(build_alpha(2, 1)) == (
            "0t * v11^0 v12^0 v21^0 v22^1\n"
            "0t * v11^1 v12^0 v21^0 v22^0"
        )

    def test_golden_beta_2_2(self):
        assert format_poly(build_beta(2, 2)) == (
            "0t * v11^0 v12^1 v21^1 v22^0\n"
            "0t * v11^1 v12^0 v21^0 v22^1"
        )

    def test_canonical_order_is_graded_lex(self):
        p = build_alpha(3, 2)
        keys = [e for e, _ in p.sorted_terms()]
        assert keys == sorted(keys, key=lambda e: (sum(e), e))

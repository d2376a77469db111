"""Structural checks: Hessian signatures, log-concavity, entropy sandwich,
capacity agreement, the capacity product bound, and the bivariate
criterion."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from basecount import (
    UniformMatroid,
    bivariate_clc,
    capacity_entropy_agreement,
    dual,
    entropy_sandwich_check,
    enumerate_bases,
    exact_weighted_count,
    external_field_distribution,
    hessian_signature_check,
    log_hessian_nsd_check,
    phi,
    phi_bound_check,
)
from basecount.lab import (
    bivariate_log_hessian,
    nsd_campaign,
    phi_campaign,
    signature_campaign,
    simple_capacity_factor,
)
from basecount.matroid import bits

from conftest import complete_graph, k33_matching_pair


class TestHessianSignature:
    def test_k3_one_positive_eigenvalue(self, k3):
        check = hessian_signature_check(k3, z=[1, 1, 1])
        assert check.passed and check.positive_eigs == 1
        assert sorted(check.eigenvalues) == pytest.approx([-1, -1, 2])

    def test_rank_one_zero_hessian(self):
        check = hessian_signature_check(UniformMatroid(2, 1), z=[1, 1])
        assert check.passed and check.positive_eigs == 0

    def test_k4_random_draws(self, k4):
        report = signature_campaign(k4, trials=200, seed=0)
        assert report.failures == 0
        assert report.worst_residual <= 1e-8

    def test_direction_count_capped(self, k4):
        with pytest.raises(ValueError):
            hessian_signature_check(k4, directions=[[1] * 6, [1] * 6], z=[1] * 6)
        # rank 3 allows exactly one direction.
        assert hessian_signature_check(k4, directions=[[1] * 6], z=[1] * 6).passed


class TestLogHessianNsd:
    def test_k3_closed_form(self, k3):
        check = log_hessian_nsd_check(k3, z=[1, 1, 1])
        expected = -np.ones((3, 3)) - 3 * np.eye(3)
        assert np.max(np.abs(check.matrix - expected)) <= 1e-10
        assert sorted(np.linalg.eigvalsh(check.matrix)) == pytest.approx([-6, -3, -3])
        assert check.passed

    def test_rank_one_outer_product(self):
        check = log_hessian_nsd_check(UniformMatroid(2, 1), z=[0.7, 2.1])
        assert check.matrix == pytest.approx(-np.ones((2, 2)))
        assert check.passed

    def test_graph_corpus_campaign(self, graph_corpus):
        from basecount import GraphicMatroid
        for nv, edges in graph_corpus[:12]:
            m = GraphicMatroid(nv, edges)
            report = nsd_campaign(m, trials=40, seed=1)
            assert report.failures == 0


class TestExternalField:
    def test_rank_one_field(self):
        table = external_field_distribution(UniformMatroid(2, 1), [1, 3])
        assert dict(table.entries) == {0b01: 0.25, 0b10: 0.75}
        assert table.marginals == pytest.approx([0.25, 0.75])

    def test_uniform_is_log_count(self, k3):
        table = external_field_distribution(k3)
        assert table.entropy == pytest.approx(math.log(3))

    def test_k3_weighted(self, k3):
        table = external_field_distribution(k3, [2, 1, 1])
        assert dict(table.entries) == pytest.approx(
            {0b011: 0.4, 0b101: 0.4, 0b110: 0.2})

    def test_probabilities_sum_to_one(self, k4):
        table = external_field_distribution(k4, [Fraction(1, 3)] * 6)
        assert math.fsum(p for _, p in table.entries) == pytest.approx(1.0, abs=1e-12)
        for i in range(k4.n):
            from_entries = math.fsum(p for b, p in table.entries if (b >> i) & 1)
            assert table.marginals[i] == pytest.approx(from_entries, abs=1e-12)

    def test_all_zero_weight_rejected(self, k3):
        with pytest.raises(ValueError):
            external_field_distribution(k3, [0, 0, 0])


class TestEntropySandwich:
    def test_k3_uniform_values(self, k3):
        check = entropy_sandwich_check(external_field_distribution(k3))
        assert check.lower == pytest.approx(2 * math.log(1.5), abs=1e-12)
        assert check.entropy == pytest.approx(math.log(3), abs=1e-12)
        assert check.upper == pytest.approx(
            3 * (-(2 / 3) * math.log(2 / 3) - (1 / 3) * math.log(1 / 3)), abs=1e-12)
        assert check.passed

    def test_complete_graph_examples(self):
        # H = (n-2) log n by the tree count; the marginal lower bound is
        # (n-1) log(n/2).
        for n in (4, 5):
            table = external_field_distribution(complete_graph(n))
            check = entropy_sandwich_check(table)
            assert check.entropy == pytest.approx((n - 2) * math.log(n), abs=1e-9)
            assert check.entropy >= (n - 1) * math.log(n / 2) - 1e-9
            assert check.passed

    def test_rank_one_equality(self):
        # For a rank-1 matroid the distribution and its marginals coincide.
        table = external_field_distribution(UniformMatroid(2, 1), [1, 3])
        check = entropy_sandwich_check(table)
        assert check.lower == pytest.approx(check.entropy, abs=1e-12)
        assert check.passed

    def test_homogeneous_forms(self, k4):
        check = entropy_sandwich_check(external_field_distribution(k4))
        assert max(check.upper / 2, check.upper - check.size) <= check.entropy + 1e-9

    def test_dual_distribution_entropy_equal(self, k4):
        lam = [Fraction(2), Fraction(1), Fraction(3), Fraction(1), Fraction(2), Fraction(1)]
        table = external_field_distribution(k4, lam)
        dual_table = external_field_distribution(dual(k4), [1 / w for w in lam])
        assert dual_table.entropy == table.entropy  # identical multiset, fsum


class TestCapacityAgreement:
    def test_uniform_field(self, k3):
        check = capacity_entropy_agreement(k3)
        assert check.passed and check.residual <= 1e-6

    def test_tilted_fields(self, k4):
        for lam in ([2, 1, 1, 1, 1, 3], [Fraction(1, 2)] * 6, [1, 1, 2, 2, 3, 3]):
            assert capacity_entropy_agreement(k4, lam).passed


class TestPhi:
    def test_phi_half_exact(self):
        assert phi([0.5]) == 0.4

    def test_phi_boundary(self):
        assert phi([0.0]) == 1.0
        assert phi([1.0]) == 1.0

    def test_phi_dominates_simple_factor(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            p = rng.uniform(0, 1, size=4)
            assert phi(p) >= simple_capacity_factor(p) - 1e-12

    def test_rank_one_bound_values(self):
        m = UniformMatroid(2, 1)
        check = phi_bound_check(m, m, [0.5, 0.5])
        assert check.exact_count == 2
        assert check.rhs_simple == pytest.approx(0.5 * math.exp(-2) * 4, rel=1e-6)
        assert check.passed

    def test_k33_pair(self):
        rows, cols = k33_matching_pair()
        check = phi_bound_check(rows, cols, [1 / 3] * 9, tol=1e-9)
        assert check.exact_count == 6
        assert check.passed

    def test_campaign_over_vertices_and_mixtures(self, k3):
        report = phi_campaign(k3, k3, trials=25, seed=2)
        assert report.failures == 0


class TestMixedDerivativeIdentity:
    @staticmethod
    def _mixed_derivative_count(m, other):
        """Symbolic oracle: expand g_M(y) * g_{N*}(z) over 2n variables and
        apply prod_i (d/dy_i + d/dz_i); the resulting constant counts the
        common bases."""
        n = m.n
        terms = {}
        for bm in enumerate_bases(m):
            for bd in enumerate_bases(dual(other)):
                key = bm | (bd << n)
                terms[key] = terms.get(key, 0) + 1
        for i in range(n):
            nxt = {}
            for mask, coeff in terms.items():
                for var in (i, i + n):
                    if (mask >> var) & 1:
                        rest = mask & ~(1 << var)
                        nxt[rest] = nxt.get(rest, 0) + coeff
            terms = nxt
        return terms.get(0, 0)

    def test_matches_exact_count(self, k3, u24):
        rows, cols = k33_matching_pair()
        for m, other in ((UniformMatroid(2, 1),) * 2, (k3, k3), (u24, u24), (rows, cols)):
            assert self._mixed_derivative_count(m, other) == exact_weighted_count(m, other)


class TestBivariateCriterion:
    def test_known_cases(self):
        assert bivariate_clc(1, 1, 1, 1)
        assert bivariate_clc(2, 1, 1, 1)  # boundary: 2bc = ad
        assert not bivariate_clc(3, 1, 1, 1)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bivariate_clc(-1, 0, 0, 0)

    def test_failing_case_has_witness(self):
        found = False
        for y, z in itertools.product(np.linspace(0.01, 2.0, 30), repeat=2):
            eigs = np.linalg.eigvalsh(bivariate_log_hessian(3, 1, 1, 1, y, z))
            if eigs[-1] > 1e-12:
                found = True
                break
        assert found

    @given(st.tuples(*(st.integers(0, 9) for _ in range(4))))
    @settings(max_examples=120, deadline=None)
    def test_agrees_with_nsd_sampling(self, coeffs):
        a, b, c, d = coeffs
        verdict = bivariate_clc(a, b, c, d)
        rng = np.random.default_rng(a * 1000 + b * 100 + c * 10 + d)
        worst = -math.inf
        for _ in range(60):
            y, z = rng.uniform(0.0, 3.0, size=2)
            eigs = np.linalg.eigvalsh(bivariate_log_hessian(a, b, c, d, y, z))
            worst = max(worst, float(eigs[-1]))
        if verdict:
            assert worst <= 1e-9
        elif max(a, b, c, d) > 0:
            # Include near-origin points, where a violation is guaranteed.
            for y, z in ((1e-3, 1e-3), (0.0, 0.0)):
                eigs = np.linalg.eigvalsh(bivariate_log_hessian(a, b, c, d, y, z))
                worst = max(worst, float(eigs[-1]))
            assert worst > 0

"""Generating-polynomial evaluation, derivatives, and capacity.

Hand-derived oracles: g for K_3 is z1 z2 + z1 z3 + z2 z3, whose gradient
and Hessian at the all-ones point are (2, 2, 2) and the all-ones matrix
minus the identity.  Derivatives and Hessians are cross-checked against
central finite differences of the plain value.
"""

import math

import numpy as np
import pytest

from basecount import (
    CapacityUnboundedError,
    UniformMatroid,
    capacity,
    direct_sum,
    evaluate_basis_polynomial,
    external_field_distribution,
)
from basecount.polynomials import derivative_terms

from conftest import complete_graph


def finite_difference_gradient(m, z, h=1e-5):
    grad = np.zeros(m.n)
    for i in range(m.n):
        zp, zm = z.copy(), z.copy()
        zp[i] += h
        zm[i] -= h
        grad[i] = (evaluate_basis_polynomial(m, zp).value
                   - evaluate_basis_polynomial(m, zm).value) / (2 * h)
    return grad


def finite_difference_hessian(m, z, h=1e-4):
    hess = np.zeros((m.n, m.n))
    for i in range(m.n):
        zp, zm = z.copy(), z.copy()
        zp[i] += h
        zm[i] -= h
        gp = evaluate_basis_polynomial(m, zp).gradient
        gm = evaluate_basis_polynomial(m, zm).gradient
        hess[:, i] = (gp - gm) / (2 * h)
    return 0.5 * (hess + hess.T)


class TestEvaluation:
    def test_k3_at_ones(self, k3):
        ev = evaluate_basis_polynomial(k3, [1, 1, 1])
        assert ev.value == 3
        assert ev.gradient == pytest.approx([2, 2, 2])
        expected = np.ones((3, 3)) - np.eye(3)
        assert ev.hessian == pytest.approx(expected)

    def test_rank_one_zero_hessian(self):
        ev = evaluate_basis_polynomial(UniformMatroid(2, 1), [1, 1])
        assert ev.value == 2
        assert np.all(ev.hessian == 0)

    def test_k3_directional_derivative(self, k3):
        # D_v g with v = (1,1,1) is 2 (z1 + z2 + z3).
        ev = evaluate_basis_polynomial(k3, [1, 1, 1], directions=[[1, 1, 1]])
        assert ev.value == 6
        assert ev.gradient == pytest.approx([2, 2, 2])
        assert np.all(ev.hessian == 0)

    def test_terms_of_derivative(self, k3):
        terms = derivative_terms(k3, [[1, 0, 0]])
        # d/dz1 (z1 z2 + z1 z3 + z2 z3) = z2 + z3.
        assert terms == {0b010: 1, 0b100: 1}

    def test_rejects_bad_input(self, k3):
        with pytest.raises(ValueError):
            evaluate_basis_polynomial(k3, [1, 0, 1])
        with pytest.raises(ValueError):
            evaluate_basis_polynomial(k3, [1, 1, 1], directions=[[1, -1, 0]])

    def test_euler_identities(self, k4):
        rng = np.random.default_rng(0)
        r = k4.rank
        for _ in range(25):
            z = rng.uniform(0.2, 2.5, size=k4.n)
            ev = evaluate_basis_polynomial(k4, z)
            assert float(z @ ev.gradient) == pytest.approx(r * ev.value, rel=1e-8)
            assert float(z @ ev.hessian @ z) == pytest.approx(r * (r - 1) * ev.value, rel=1e-8)
        # And for a first derivative, which is (r-1)-homogeneous.
        for _ in range(10):
            z = rng.uniform(0.2, 2.5, size=k4.n)
            v = [int(x) for x in rng.integers(0, 4, size=k4.n)]
            ev = evaluate_basis_polynomial(k4, z, directions=[v])
            if ev.value == 0:
                continue
            assert float(z @ ev.gradient) == pytest.approx((r - 1) * ev.value, rel=1e-8)

    def test_finite_differences(self, k4):
        rng = np.random.default_rng(42)
        for _ in range(100):
            z = rng.uniform(0.3, 2.0, size=k4.n)
            ev = evaluate_basis_polynomial(k4, z)
            fd_grad = finite_difference_gradient(k4, z)
            assert ev.gradient == pytest.approx(fd_grad, rel=1e-5, abs=1e-7)
        z = rng.uniform(0.3, 2.0, size=k4.n)
        assert evaluate_basis_polynomial(k4, z).hessian == pytest.approx(
            finite_difference_hessian(k4, z), rel=1e-5, abs=1e-6)


class TestCapacity:
    def test_rank_one_symmetric(self):
        # inf (z1 + z2) / sqrt(z1 z2) = 2 by AM-GM.
        assert capacity(UniformMatroid(2, 1), [0.5, 0.5]) == pytest.approx(math.log(2), abs=1e-8)

    def test_k3_symmetric(self, k3):
        assert capacity(k3, [2 / 3] * 3) == pytest.approx(math.log(3), abs=1e-8)

    def test_boundary_vertex(self):
        # p = (1, 0): inf (z1 + z2)/z1 = 1, approached as z2 -> 0.
        assert capacity(UniformMatroid(2, 1), [1.0, 0.0]) == pytest.approx(0.0, abs=1e-7)

    def test_matches_entropy_at_tilted_marginals(self, k3):
        table = external_field_distribution(k3, [2, 1, 1])
        assert capacity(k3, table.marginals) == pytest.approx(table.entropy, abs=1e-6)

    def test_weighted_capacity_is_log_partition(self, k3):
        # At the tilted marginals the scaled polynomial's capacity is the
        # log of the weighted basis count (the optimizer sits at z = 1).
        lam = [2.0, 1.0, 1.0]
        table = external_field_distribution(k3, lam)
        assert capacity(k3, table.marginals, weights=lam) == pytest.approx(
            math.log(2 + 2 + 1), abs=1e-6)

    def test_point_outside_polytope_rejected(self, k3):
        # (1,1,1,0) sums to the rank but crams 3 units into the rank-2
        # triangle, so it lies outside the polytope.
        m = direct_sum(k3, UniformMatroid(1, 1))
        with pytest.raises(ValueError):
            capacity(m, [1.0, 1.0, 1.0, 0.0])
        with pytest.raises(ValueError):
            capacity(k3, [0.9, 0.9, 0.9])  # wrong coordinate sum

    def test_sum_constraint_spans_parts(self, k3):
        m = direct_sum(k3, UniformMatroid(2, 1))
        p = [2 / 3, 2 / 3, 2 / 3, 0.5, 0.5]
        assert capacity(m, p) == pytest.approx(math.log(3) + math.log(2), abs=1e-7)

"""Basis generating polynomials: evaluation, derivatives, and capacity.

The basis generating polynomial of a matroid M is the multiaffine,
rank-homogeneous polynomial g_M(z) = sum over bases B of prod_{i in B} z_i.
Everything here works on the expanded monomial form over the enumerated
bases, so it is subject to the enumeration guards.

Directional derivatives are taken symbolically per monomial: applying k
directional derivatives to a squarefree monomial z^B sums, over the size-k
subsets T of B, the permanent of the directions restricted to T times
z^(B minus T).  Coefficients stay exact (integer or rational) until the
final evaluation at a floating point.

The capacity of g at a nonnegative point p is inf_{z > 0} g(z) / z^p; its
log is computed in log-coordinates, where the objective
log g(e^x) - <p, x> is convex (a log-sum-exp of affine forms) and the
positivity constraint disappears.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matroid import Matroid, bits, enumerate_bases


class CapacityUnboundedError(RuntimeError):
    """Capacity infimum is 0 (objective unbounded below): the target point
    lies outside the Newton polytope."""


def _permanent(rows):
    """Permanent of a small square matrix given as a list of rows."""
    k = len(rows)
    if k == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(k)):
        term = rows[0][perm[0]]
        for i in range(1, k):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def derivative_terms(m: Matroid, directions=()) -> dict[int, object]:
    """Monomials of D_V g_M as a map from bitmask to exact coefficient,
    where V is the list of direction vectors.

    Integer directions keep integer coefficients; any fractional or float
    entry switches the arithmetic to exact rationals (floats convert
    exactly, being binary rationals).
    """
    dirs = [list(v) for v in directions]
    k = len(dirs)
    for v in dirs:
        if len(v) != m.n:
            raise ValueError(f"direction length {len(v)} != n = {m.n}")
        if any(x < 0 for x in v):
            raise ValueError("direction entries must be nonnegative")
    if not all(isinstance(x, int) for v in dirs for x in v):
        dirs = [[Fraction(x) for x in v] for v in dirs]
    terms: dict[int, object] = {}
    for base in enumerate_bases(m):
        elems = list(bits(base))
        if k > len(elems):
            continue
        for chosen in itertools.combinations(elems, k):
            coeff = _permanent([[v[t] for t in chosen] for v in dirs])
            if coeff == 0:
                continue
            rest = base
            for t in chosen:
                rest &= ~(1 << t)
            terms[rest] = terms.get(rest, 0) + coeff
    return {mask: c for mask, c in terms.items() if c != 0}


@dataclass
class EvaluatedPolynomial:
    """Value, gradient, and Hessian of (a derivative of) g_M at a positive
    point.  For an r-homogeneous g, Euler's identity pins <z, gradient> to
    r * value and z' H z to r(r-1) * value; tests rely on that."""

    value: float
    gradient: np.ndarray
    hessian: np.ndarray
    at: np.ndarray


def evaluate_basis_polynomial(m: Matroid, z, directions=()) -> EvaluatedPolynomial:
    """Evaluate D_V g_M with gradient and Hessian at z > 0."""
    z = np.asarray([float(x) for x in z], dtype=float)
    if z.shape != (m.n,):
        raise ValueError(f"expected a point of dimension {m.n}")
    if np.any(z <= 0):
        raise ValueError("evaluation point must be entrywise positive")
    terms = derivative_terms(m, directions)
    n = m.n
    value = 0.0
    gradient = np.zeros(n)
    hessian = np.zeros((n, n))
    for mask, coeff in terms.items():
        idx = list(bits(mask))
        prod = float(coeff)
        for i in idx:
            prod *= z[i]
        value += prod
        if idx:
            contrib = prod / z[idx]
            gradient[idx] += contrib
            if len(idx) > 1:
                hessian[np.ix_(idx, idx)] += np.outer(contrib, 1.0 / z[idx])
    # Multiaffine: no variable appears squared, so the diagonal is zero.
    np.fill_diagonal(hessian, 0.0)
    return EvaluatedPolynomial(value=value, gradient=gradient, hessian=hessian, at=z.copy())


def _check_in_newton_polytope(m: Matroid, p: np.ndarray, samples: int = 200,
                              slack: float = 1e-7) -> None:
    if np.any(p < -slack) or np.any(p > 1 + slack):
        raise ValueError("target point must lie in [0, 1]^n")
    if abs(float(np.sum(p)) - m.rank) > slack * max(1, m.n):
        raise ValueError(f"coordinates must sum to the rank {m.rank}")
    rng = np.random.default_rng(0)
    masks = [1 << i for i in range(m.n)]
    masks += [int(rng.integers(0, m.full_mask + 1)) for _ in range(samples)]
    for mask in masks:
        total = sum(p[i] for i in bits(mask))
        if total > m.rank_of(mask) + slack:
            raise ValueError("target point violates a rank constraint")


def capacity(m: Matroid, p, weights=None, *, grad_tol: float = 1e-9,
             max_iters: int = 200_000) -> float:
    """Log-capacity log inf_{z > 0} g(z) / z^p of the (optionally
    lambda-scaled) basis generating polynomial g(z) = g_M(lam * z).

    Minimizes the convex log-coordinate objective by gradient descent with
    Armijo backtracking until the gradient norm drops below ``grad_tol``.
    A point outside the Newton polytope makes the objective unbounded
    below; a divergence guard reports that as CapacityUnboundedError.
    """
    p = np.asarray([float(x) for x in p], dtype=float)
    if p.shape != (m.n,):
        raise ValueError(f"expected a point of dimension {m.n}")
    _check_in_newton_polytope(m, p)

    lam = None if weights is None else [float(w) for w in weights]
    rows = []
    logw = []
    for base in enumerate_bases(m):
        if lam is not None:
            if any(lam[i] == 0.0 for i in bits(base)):
                continue
            logw.append(math.fsum(math.log(lam[i]) for i in bits(base)))
        else:
            logw.append(0.0)
        rows.append([1.0 if (base >> i) & 1 else 0.0 for i in range(m.n)])
    if not rows:
        raise ValueError("every basis has zero weight")
    basis_matrix = np.array(rows)
    logw = np.array(logw)

    def value_grad_softmax(x):
        s = logw + basis_matrix @ x
        mx = float(np.max(s))
        e = np.exp(s - mx)
        z = float(np.sum(e))
        f = mx + math.log(z) - float(p @ x)
        soft = e / z
        return f, basis_matrix.T @ soft - p, soft

    x = np.zeros(m.n)
    f, g, soft = value_grad_softmax(x)
    for _ in range(max_iters):
        gnorm = float(np.linalg.norm(g))
        if gnorm <= grad_tol:
            return f
        # Local curvature bound: the Hessian is the covariance of the
        # basis indicators under the softmax weights.  Starting the
        # backtracking at 1/L makes the step certified near the optimum,
        # where the objective decrease falls below float resolution and a
        # plain sufficient-decrease test would stall.
        marg = basis_matrix.T @ soft
        cov = basis_matrix.T @ (soft[:, None] * basis_matrix) - np.outer(marg, marg)
        lips = max(float(np.linalg.eigvalsh(cov)[-1]), 1e-12)
        step = 1.0 / lips
        slack = 8e-16 * (1.0 + abs(f))
        while True:
            x_next = x - step * g
            f_next, g_next, soft_next = value_grad_softmax(x_next)
            if f_next <= f - 0.25 * step * gnorm * gnorm + slack:
                break
            step *= 0.5
            if step < 1e-18:
                # Flat to machine precision; the value cannot improve.
                return f
        x, f, g, soft = x_next, f_next, g_next, soft_next
        if f < -700.0 or float(np.max(np.abs(x))) > 700.0:
            raise CapacityUnboundedError(
                "objective diverges: point lies outside the Newton polytope")
    raise RuntimeError(f"capacity descent did not reach gradient norm {grad_tol} "
                       f"in {max_iters} iterations")

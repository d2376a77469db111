"""Numerical verification of the structural theory behind the counting
algorithms.

Everything the counting guarantees rest on is an inequality that can be
checked against brute force on enumerable matroids: the Hessian of any
derivative of a basis generating polynomial has at most one positive
eigenvalue; the polynomial is log-concave over the positive orthant; the
entropy of an external-field distribution over bases is sandwiched between
its marginal bounds; the log-capacity at the marginals of such a
distribution equals its entropy; and the mixed-derivative count of common
bases dominates the capacity product bound.  The checks here falsify or
corroborate, never prove.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .counting import exact_weighted_count
from .matroid import Matroid, bits, dual, enumerate_bases
from .polynomials import capacity, evaluate_basis_polynomial


# --- external-field distributions -------------------------------------------

@dataclass
class DistributionTable:
    """Explicit distribution over enumerated bases with its marginals and
    entropy.  Probabilities are computed as exact rationals and floated at
    the end; the entropy sum uses fsum, so dual tables (same probability
    multiset) agree exactly."""

    entries: list[tuple[int, float]]
    marginals: np.ndarray
    entropy: float
    size: int


def external_field_distribution(m: Matroid, weights=None) -> DistributionTable:
    """Distribution over the bases of ``m`` with Pr[B] proportional to the
    product of the weights of B's elements (uniform when weights is None)."""
    bases = enumerate_bases(m)
    lam = None if weights is None else [Fraction(w) for w in weights]
    if lam is not None and len(lam) != m.n:
        raise ValueError(f"expected {m.n} weights, got {len(lam)}")
    if lam is not None and any(w < 0 for w in lam):
        raise ValueError("weights must be nonnegative")
    raw = []
    for base in bases:
        w = Fraction(1)
        if lam is not None:
            for i in bits(base):
                w *= lam[i]
        raw.append(w)
    total = sum(raw)
    if total == 0:
        raise ValueError("every basis has zero weight")
    probs = [w / total for w in raw]
    marginals = np.array([
        float(sum(pr for base, pr in zip(bases, probs) if (base >> i) & 1))
        for i in range(m.n)
    ])
    entries = [(base, float(pr)) for base, pr in zip(bases, probs) if pr > 0]
    entropy = math.fsum(-pr * math.log(pr) for _, pr in entries)
    return DistributionTable(entries=entries, marginals=marginals,
                             entropy=entropy, size=m.rank)


# --- Hessian eigenvalue checks -----------------------------------------------

@dataclass
class SignatureCheck:
    positive_eigs: int
    eigenvalues: np.ndarray
    passed: bool
    residual: float


def hessian_signature_check(m: Matroid, directions=(), z=None,
                            tol: float = 1e-8) -> SignatureCheck:
    """At most one positive eigenvalue of the Hessian of D_V g_M at z.

    Eigenvalues count as positive above tol times the spectral radius, so
    the verdict is invariant under scaling the polynomial or the point.
    The residual is the second-largest eigenvalue relative to the spectral
    radius: a pass keeps it at or below tol.
    """
    if z is None:
        z = np.ones(m.n)
    k = len(tuple(directions))
    if k > max(m.rank - 2, 0):
        raise ValueError(f"at most max(rank - 2, 0) = {max(m.rank - 2, 0)} directions allowed")
    ev = evaluate_basis_polynomial(m, z, directions)
    eigs = np.linalg.eigvalsh(ev.hessian)
    radius = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    if radius == 0.0:
        return SignatureCheck(0, eigs, True, 0.0)
    positive = int(np.sum(eigs > tol * radius))
    residual = float(eigs[-2] / radius) if eigs.size >= 2 else 0.0
    return SignatureCheck(positive, eigs, positive <= 1, residual)


@dataclass
class NsdCheck:
    max_eig: float
    scale: float
    matrix: np.ndarray
    passed: bool
    residual: float


def log_hessian_nsd_check(m: Matroid, z=None, tol: float = 1e-8) -> NsdCheck:
    """g * Hess(g) - grad(g) grad(g)^T (i.e. g^2 times the Hessian of
    log g) must be negative semidefinite at every positive point."""
    if z is None:
        z = np.ones(m.n)
    ev = evaluate_basis_polynomial(m, z)
    if ev.value <= 0:
        raise ValueError("generating polynomial vanishes at the point")
    matrix = ev.value * ev.hessian - np.outer(ev.gradient, ev.gradient)
    eigs = np.linalg.eigvalsh(matrix)
    scale = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    max_eig = float(eigs[-1]) if eigs.size else 0.0
    if scale == 0.0:
        return NsdCheck(max_eig, scale, matrix, True, 0.0)
    return NsdCheck(max_eig, scale, matrix, max_eig <= tol * scale, max_eig / scale)


# --- entropy sandwich ---------------------------------------------------------

@dataclass
class SandwichCheck:
    lower: float
    entropy: float
    upper: float
    size: int
    passed: bool
    residual: float


def entropy_sandwich_check(table: DistributionTable, slack: float = 1e-9) -> SandwichCheck:
    """Check sum mu_i log(1/mu_i) <= H(mu) <= sum H(mu_i), plus the
    homogeneous forms max(upper/2, upper - r) <= H(mu)."""
    mu = table.marginals
    lower = math.fsum(-m * math.log(m) for m in mu if m > 0)
    upper = math.fsum(-m * math.log(m) - (1 - m) * math.log(1 - m)
                      for m in mu if 0 < m < 1)
    h = table.entropy
    r = table.size
    violations = [lower - h, h - upper, max(upper / 2, upper - r) - h]
    residual = max(violations)
    return SandwichCheck(lower=lower, entropy=h, upper=upper, size=r,
                         passed=residual <= slack, residual=residual)


# --- capacity vs entropy -----------------------------------------------------

@dataclass
class CapacityAgreement:
    log_capacity: float
    entropy: float
    passed: bool
    residual: float


def capacity_entropy_agreement(m: Matroid, weights=None, tol: float = 1e-6) -> CapacityAgreement:
    """The log-capacity of g_M at the marginals of an external-field
    distribution equals that distribution's entropy."""
    table = external_field_distribution(m, weights)
    cap = capacity(m, table.marginals)
    residual = abs(cap - table.entropy)
    return CapacityAgreement(log_capacity=cap, entropy=table.entropy,
                             passed=residual <= tol, residual=residual)


# --- the capacity product bound on common bases -------------------------------

def phi(p) -> float:
    """The instance-independent factor prod p^p (1-p)^(1-p) / (1 + p(1-p));
    boundary coordinates p in {0, 1} contribute a factor of 1."""
    product = 1.0
    for x in np.atleast_1d(np.asarray(p, dtype=float)):
        s = 0.0
        if 0 < x:
            s += x * math.log(x)
        if x < 1:
            s += (1 - x) * math.log(1 - x)
        product *= math.exp(s) / (1.0 + x * (1.0 - x))
    return product


def simple_capacity_factor(p) -> float:
    """The weaker factor (p / e^2)^p = prod p^p e^(-2p)."""
    total = 0.0
    for x in np.atleast_1d(np.asarray(p, dtype=float)):
        if 0 < x:
            total += x * math.log(x)
        total -= 2 * x
    return math.exp(total)


@dataclass
class PhiBoundCheck:
    exact_count: int
    rhs_simple: float
    rhs_sharp: float
    passed: bool
    residual: float


def phi_bound_check(m: Matroid, other: Matroid, p, tol: float = 1e-9) -> PhiBoundCheck:
    """|common bases of M and N| (the mixed derivative of g_M(y) g_{N*}(z),
    computed combinatorially) must dominate both capacity product bounds:
    the (p/e^2)^p form and the sharper phi(p) form."""
    p = np.asarray([float(x) for x in p], dtype=float)
    exact = exact_weighted_count(m, other)
    cap_m = capacity(m, p)
    cap_dual = capacity(dual(other), 1.0 - p)
    rhs_simple = simple_capacity_factor(p) * math.exp(cap_m + cap_dual)
    rhs_sharp = phi(p) * math.exp(cap_m + cap_dual)
    residual = max(rhs_simple - exact, rhs_sharp - exact)
    return PhiBoundCheck(exact_count=int(exact), rhs_simple=rhs_simple,
                         rhs_sharp=rhs_sharp, passed=residual <= tol,
                         residual=residual)


# --- bivariate criterion -------------------------------------------------------

def bivariate_clc(a, b, c, d) -> bool:
    """Complete log-concavity of a + b y + c z + d y z with nonnegative
    coefficients holds iff 2bc >= ad."""
    if min(a, b, c, d) < 0:
        raise ValueError("coefficients must be nonnegative")
    return 2 * b * c >= a * d


def bivariate_log_hessian(a, b, c, d, y, z) -> np.ndarray:
    """g^2 times the Hessian of log g for g = a + b y + c z + d y z."""
    g = a + b * y + c * z + d * y * z
    gy = b + d * z
    gz = c + d * y
    return np.array([[-gy * gy, d * g - gy * gz],
                     [d * g - gy * gz, -gz * gz]])


# --- campaigns -----------------------------------------------------------------

@dataclass
class CampaignReport:
    """Aggregated verification run over one instance, in the shape the CLI
    emits: {instance, op, trials, failures, worst_residual}."""

    instance: str
    op: str
    trials: int
    failures: int
    worst_residual: float

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "op": self.op,
            "trials": self.trials,
            "failures": self.failures,
            "worst_residual": self.worst_residual,
        }


def _random_point(rng, n):
    return rng.uniform(0.1, 3.0, size=n)


def signature_campaign(m: Matroid, trials: int, seed: int = 0,
                       tol: float = 1e-8) -> CampaignReport:
    rng = np.random.default_rng(seed)
    max_k = max(m.rank - 2, 0)
    failures = 0
    worst = -math.inf
    for _ in range(trials):
        k = int(rng.integers(0, max_k + 1)) if max_k else 0
        directions = rng.integers(0, 5, size=(k, m.n)) if k else ()
        check = hessian_signature_check(m, [list(map(int, v)) for v in directions],
                                        _random_point(rng, m.n), tol=tol)
        worst = max(worst, check.residual)
        if not check.passed:
            failures += 1
    return CampaignReport(m.describe(), "hessian_signature", trials, failures, float(worst))


def nsd_campaign(m: Matroid, trials: int, seed: int = 0,
                 tol: float = 1e-8) -> CampaignReport:
    rng = np.random.default_rng(seed)
    failures = 0
    worst = -math.inf
    for _ in range(trials):
        check = log_hessian_nsd_check(m, _random_point(rng, m.n), tol=tol)
        worst = max(worst, check.residual)
        if not check.passed:
            failures += 1
    return CampaignReport(m.describe(), "log_hessian_nsd", trials, failures, float(worst))


def entropy_campaign(m: Matroid, trials: int, seed: int = 0,
                     slack: float = 1e-9) -> CampaignReport:
    rng = np.random.default_rng(seed)
    failures = 0
    worst = -math.inf
    for t in range(trials):
        lam = None if t == 0 else [Fraction(x).limit_denominator(64)
                                   for x in rng.uniform(0.25, 4.0, size=m.n)]
        check = entropy_sandwich_check(external_field_distribution(m, lam), slack=slack)
        worst = max(worst, check.residual)
        if not check.passed:
            failures += 1
    return CampaignReport(m.describe(), "entropy_sandwich", trials, failures, float(worst))


def capacity_campaign(m: Matroid, trials: int, seed: int = 0,
                      tol: float = 1e-6) -> CampaignReport:
    rng = np.random.default_rng(seed)
    failures = 0
    worst = -math.inf
    for t in range(trials):
        lam = None if t == 0 else [Fraction(x).limit_denominator(64)
                                   for x in rng.uniform(0.25, 4.0, size=m.n)]
        check = capacity_entropy_agreement(m, lam, tol=tol)
        worst = max(worst, check.residual)
        if not check.passed:
            failures += 1
    return CampaignReport(m.describe(), "capacity_entropy", trials, failures, float(worst))


def phi_campaign(m: Matroid, other: Matroid, trials: int, seed: int = 0,
                 tol: float = 1e-7) -> CampaignReport:
    """Check the capacity product bound at random points of the
    intersection polytope (convex combinations of common bases)."""
    rng = np.random.default_rng(seed)
    common = [b for b in enumerate_bases(m) if other.is_independent(b)]
    instance = f"{m.describe()}|{other.describe()}"
    if not common:
        return CampaignReport(instance, "phi_bound", 0, 0, 0.0)
    vertices = np.array([[1.0 if (b >> i) & 1 else 0.0 for i in range(m.n)]
                         for b in common])
    failures = 0
    worst = -math.inf
    for _ in range(trials):
        mix = rng.exponential(1.0, size=len(common))
        p = (mix / mix.sum()) @ vertices
        check = phi_bound_check(m, other, p, tol=tol)
        worst = max(worst, check.residual)
        if not check.passed:
            failures += 1
    return CampaignReport(instance, "phi_bound", trials, failures, float(worst))

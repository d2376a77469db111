"""Linear optimization oracles over base polytopes and the entropy maximizer.

Two linear maximization oracles (LMOs) are provided: greedy over a single
base polytope, and weighted matroid intersection (successive shortest
augmenting paths in the exchange graph) over the intersection of two base
polytopes.  On top of them sits a plain Frank-Wolfe / conditional-gradient
maximizer for the separable concave objective

    F(p) = sum_i [ p_i log(lam_i / p_i) + (1 - p_i) log(1 / (1 - p_i)) ],

which with all-ones weights is the sum of per-coordinate Bernoulli
entropies.  The solver returns a feasible point (as an explicit convex
combination of polytope vertices), the objective value there, and the final
Frank-Wolfe duality gap, which certifies how far the value can be below the
true optimum.  No away steps: the counting bounds downstream only need a
feasible point plus a gap, so plain FW keeps the machinery simple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matroid import Matroid, bits

GRAD_CLAMP = 1e-12
WEIGHT_FLOOR = 1e-300
LINE_SEARCH_STEPS = 80
DEFAULT_MAX_ITERS = 20_000


class InfeasibleIntersectionError(RuntimeError):
    """The two matroids admit no common basis (empty intersection polytope)."""


def greedy_max_weight_basis(m: Matroid, weights) -> int:
    """Maximum-weight basis by the greedy algorithm.

    Weights may be negative: all bases share cardinality r, so a constant
    shift changes every basis weight equally.  Ties prefer the smaller
    element index, which makes the result deterministic.
    """
    w = list(weights)
    if len(w) != m.n:
        raise ValueError(f"expected {m.n} weights, got {len(w)}")
    order = sorted(range(m.n), key=lambda i: (-w[i], i))
    mask = 0
    for i in order:
        cand = mask | (1 << i)
        if m.is_independent(cand):
            mask = cand
    return mask


def _augmenting_path(m: Matroid, other: Matroid, current: int, wp: list[float]):
    """Minimum-cost, fewest-arcs augmenting path in the exchange graph of
    the common independent set ``current``; None if no path exists.

    Node costs are +w for removals (elements of the set) and -w for
    additions.  The set is extreme for its size, so no directed cycle has
    negative cost and Bellman-Ford applies; the fewest-arcs tie-break is
    what keeps the augmented set extreme.
    """
    n = m.n
    inside = list(bits(current))
    outside = [i for i in range(n) if not (current >> i) & 1]
    sources = [x for x in outside if m.is_independent(current | (1 << x))]
    sinks = {x for x in outside if other.is_independent(current | (1 << x))}
    if not sources or not sinks:
        return None

    arcs: list[tuple[int, int]] = []
    for y in inside:
        removed = current & ~(1 << y)
        for x in outside:
            swapped = removed | (1 << x)
            if m.is_independent(swapped):
                arcs.append((y, x))
            if other.is_independent(swapped):
                arcs.append((x, y))
    arcs.sort()

    def cost(v: int) -> float:
        return wp[v] if (current >> v) & 1 else -wp[v]

    infinity = (math.inf, math.inf)
    dist: list[tuple[float, float]] = [infinity] * n
    pred: list[int] = [-1] * n
    for x in sources:
        dist[x] = (cost(x), 0)
    for _ in range(n):
        changed = False
        for u, v in arcs:
            du = dist[u]
            if du is infinity:
                continue
            cand = (du[0] + cost(v), du[1] + 1)
            if cand < dist[v]:
                dist[v] = cand
                pred[v] = u
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("exchange graph relaxation failed to stabilize")

    best = None
    best_sink = -1
    for x in sorted(sinks):
        if dist[x] is not infinity:
            key = (dist[x][0], dist[x][1], x)
            if best is None or key < best:
                best = key
                best_sink = x
    if best is None:
        return None
    path = [best_sink]
    while pred[path[-1]] >= 0:
        path.append(pred[path[-1]])
    return path


def max_weight_common_basis(m: Matroid, other: Matroid, weights) -> int:
    """Maximum-weight common basis of two matroids by weighted matroid
    intersection: augment one element at a time along minimum-cost,
    fewest-arcs paths, keeping the current set extreme for its size.

    Raises InfeasibleIntersectionError when no common basis exists
    (including unequal ranks).
    """
    if m.n != other.n:
        raise ValueError(f"ground sets differ: {m.n} vs {other.n}")
    w = [float(x) for x in weights]
    if len(w) != m.n:
        raise ValueError(f"expected {m.n} weights, got {len(w)}")
    r = m.rank
    if other.rank != r:
        raise InfeasibleIntersectionError("ranks differ; no common basis")
    # Shift to strictly positive weights; argmax-invariant since every
    # common independent set of a fixed size gets the same offset.
    shift = 1.0 - min(w, default=0.0)
    wp = [x + shift for x in w]
    current = 0
    for _ in range(r):
        path = _augmenting_path(m, other, current, wp)
        if path is None:
            raise InfeasibleIntersectionError(
                f"largest common independent set has size {current.bit_count()} < rank {r}")
        for v in path:
            current ^= 1 << v
    return current


@dataclass(frozen=True)
class BasePolytope:
    """Base polytope of a single matroid; the LMO is greedy."""

    matroid: Matroid

    @property
    def n(self) -> int:
        return self.matroid.n

    @property
    def rank(self) -> int:
        return self.matroid.rank

    def lmo(self, weights) -> int:
        return greedy_max_weight_basis(self.matroid, weights)

    def matroids(self):
        return (self.matroid,)

    def describe(self) -> str:
        return f"base({self.matroid.describe()})"


@dataclass(frozen=True)
class IntersectionPolytope:
    """Intersection of two base polytopes; its vertices are exactly the
    common bases, and the LMO is weighted matroid intersection."""

    first: Matroid
    second: Matroid

    def __post_init__(self):
        if self.first.n != self.second.n:
            raise ValueError(f"ground sets differ: {self.first.n} vs {self.second.n}")

    @property
    def n(self) -> int:
        return self.first.n

    @property
    def rank(self) -> int:
        return self.first.rank

    def lmo(self, weights) -> int:
        return max_weight_common_basis(self.first, self.second, weights)

    def matroids(self):
        return (self.first, self.second)

    def describe(self) -> str:
        return f"intersection({self.first.describe()},{self.second.describe()})"


@dataclass
class EntropyProgram:
    """Maximize F over a base polytope or an intersection of two.

    ``weights`` is the external-field vector lambda; None means all ones,
    in which case F(p) = sum_i H(p_i).
    """

    polytope: BasePolytope | IntersectionPolytope
    weights: object = None

    def log_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.zeros(self.polytope.n)
        lam = np.asarray([float(x) for x in self.weights], dtype=float)
        if lam.shape != (self.polytope.n,):
            raise ValueError(f"expected {self.polytope.n} weights")
        if np.any(lam < 0):
            raise ValueError("weights must be nonnegative")
        # Zero weights are kept, not deleted: flooring them keeps the
        # objective finite while forcing the optimizer to starve those
        # coordinates.
        return np.log(np.maximum(lam, WEIGHT_FLOOR))


@dataclass
class Point:
    """Feasible point with a certificate: the convex combination of
    polytope vertices (bitmask, coefficient) that produced it."""

    p: np.ndarray
    provenance: list[tuple[int, float]]


@dataclass
class SolveResult:
    point: Point
    tau_found: float
    gap: float
    iterations: int
    objective_trace: list[float] = field(default_factory=list)


def _xlogy(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    nz = x > 0
    out[nz] = x[nz] * np.log(y[nz])
    return out


def entropy_objective(p: np.ndarray, log_weights: np.ndarray) -> float:
    """F(p) = sum p_i log(lam_i/p_i) + (1-p_i) log(1/(1-p_i))."""
    p = np.asarray(p, dtype=float)
    return float(np.dot(p, log_weights) - np.sum(_xlogy(p, p)) - np.sum(_xlogy(1.0 - p, 1.0 - p)))


def entropy_gradient(p: np.ndarray, log_weights: np.ndarray) -> np.ndarray:
    """Gradient log(lam_i (1-p_i) / p_i), with p clamped away from {0, 1}
    so loops and coloops need no special casing."""
    pc = np.clip(p, GRAD_CLAMP, 1.0 - GRAD_CLAMP)
    return log_weights + np.log1p(-pc) - np.log(pc)


def _vertex_vector(mask: int, n: int) -> np.ndarray:
    v = np.zeros(n)
    for i in bits(mask):
        v[i] = 1.0
    return v


def _line_search(p: np.ndarray, d: np.ndarray, log_weights: np.ndarray) -> float:
    """Exact-ish maximization of the concave t -> F(p + t d) on [0, 1] by
    ternary search with a fixed number of steps."""
    lo, hi = 0.0, 1.0
    for _ in range(LINE_SEARCH_STEPS):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        probes = p[None, :] + np.array([[m1], [m2]]) * d[None, :]
        f = (probes @ log_weights
             - np.sum(_xlogy(probes, probes), axis=1)
             - np.sum(_xlogy(1.0 - probes, 1.0 - probes), axis=1))
        if f[0] < f[1]:
            lo = m1
        else:
            hi = m2
    return 0.5 * (lo + hi)


def maximize_entropy(program: EntropyProgram, tol: float | None = None,
                     max_iters: int = DEFAULT_MAX_ITERS, seed: int = 0) -> SolveResult:
    """Frank-Wolfe over the program's polytope.

    Starts from the uniform convex combination of n LMO vertices drawn with
    seeded random tie-break weights, moves toward the LMO vertex of the
    current gradient with exact line search, and stops once the FW gap
    <grad, v - p> drops to ``tol`` (default 1e-6 * n).  The returned gap is
    recomputed at the returned point, so tau_found <= tau* <= tau_found + gap
    holds for the reported pair.

    Raises InfeasibleIntersectionError if the polytope is empty (detected
    by the first LMO call).
    """
    poly = program.polytope
    n = poly.n
    if tol is None:
        tol = 1e-6 * n
    if tol <= 0:
        raise ValueError("tol must be positive")
    log_weights = program.log_weights()
    rng = np.random.default_rng(seed)

    vertex_cache: dict[int, np.ndarray] = {}

    def vertex(mask: int) -> np.ndarray:
        v = vertex_cache.get(mask)
        if v is None:
            v = vertex_cache[mask] = _vertex_vector(mask, n)
        return v

    starts = max(n, 1)
    coeffs: dict[int, float] = {}
    for _ in range(starts):
        mask = poly.lmo(rng.random(n))
        coeffs[mask] = coeffs.get(mask, 0.0) + 1.0 / starts
    p = np.zeros(n)
    for mask, c in coeffs.items():
        p += c * vertex(mask)

    f_cur = entropy_objective(p, log_weights)
    trace = [f_cur]
    iterations = 0
    for _ in range(max_iters):
        g = entropy_gradient(p, log_weights)
        vmask = poly.lmo(g)
        v = vertex(vmask)
        gap = float(g @ (v - p))
        if gap <= tol:
            break
        d = v - p
        t = _line_search(p, d, log_weights)
        p_next = p + t * d
        f_next = entropy_objective(p_next, log_weights)
        if f_next < f_cur:
            # Numerical floor of the line search; moving would only lose.
            break
        p = p_next
        f_cur = f_next
        trace.append(f_cur)
        for mask in coeffs:
            coeffs[mask] *= 1.0 - t
        coeffs[vmask] = coeffs.get(vmask, 0.0) + t
        iterations += 1

    # Reassemble p exactly from its provenance so the certificate matches
    # the point to the last ulp, then recompute value and gap there.
    total = math.fsum(coeffs.values())
    provenance = sorted((mask, c / total) for mask, c in coeffs.items())
    p_final = np.array([
        math.fsum(c for mask, c in provenance if (mask >> i) & 1)
        for i in range(n)
    ])
    tau = entropy_objective(p_final, log_weights)
    g = entropy_gradient(p_final, log_weights)
    vmask = poly.lmo(g)
    final_gap = max(float(g @ (vertex(vmask) - p_final)), 0.0)
    return SolveResult(point=Point(p=p_final, provenance=provenance),
                       tau_found=tau, gap=final_gap,
                       iterations=iterations, objective_trace=trace)

"""Matroid representations, oracles, and combinators.

A matroid is given here by an independence oracle over a ground set
indexed 0..n-1.  Subsets are passed around as integer bitmasks, which keeps
oracle calls hashable and cheap to memoize.  Concrete families (uniform,
partition, graphic, linear, explicit bases) and the standard combinators
(dual, truncation, minor, direct sum, parallel replication) are provided;
all of them compose through the oracle, so a dual of a truncation of a
graphic matroid works without any special casing.

Brute-force basis enumeration is a verification oracle, not a production
path, and is guarded by size limits that the caller must override
explicitly.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

ENUMERATION_MAX_N = 24
ENUMERATION_MAX_WORK = 10_000_000


class MatroidError(ValueError):
    """Invalid matroid construction or oracle argument."""


class EnumerationGuardError(RuntimeError):
    """Brute-force enumeration refused: instance exceeds the guard limits."""


class MatroidSpecError(ValueError):
    """Malformed JSON matroid spec; ``path`` names the offending location."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def mask_of(elements) -> int:
    """Bitmask of an iterable of element indices."""
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def bits(mask: int):
    """Yield the element indices set in ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Matroid:
    """Base class; subclasses implement the raw oracle ``_independent``.

    Instances are immutable after construction.  ``is_independent`` and
    ``rank_of`` memoize per instance, so repeated oracle probing (greedy,
    exchange graphs, enumeration) stays cheap.
    """

    kind = "abstract"

    def __init__(self, n: int):
        if n < 0:
            raise MatroidError("ground set size must be nonnegative")
        self.n = n
        self.full_mask = (1 << n) - 1
        self._indep_cache: dict[int, bool] = {0: True}
        self._rank_cache: dict[int, int] = {0: 0}
        self.rank = self.rank_of(self.full_mask)

    def _independent(self, mask: int) -> bool:
        raise NotImplementedError

    def _check_mask(self, mask: int) -> None:
        if mask < 0 or mask & ~self.full_mask:
            raise MatroidError(
                f"subset uses element indices outside 0..{self.n - 1}"
            )

    def is_independent(self, mask: int) -> bool:
        self._check_mask(mask)
        cached = self._indep_cache.get(mask)
        if cached is None:
            cached = self._indep_cache[mask] = self._independent(mask)
        return cached

    def rank_of(self, mask: int) -> int:
        """Greedy rank: scan elements of the subset in index order, keep
        each one that preserves independence.  Correct by the exchange
        axiom."""
        self._check_mask(mask)
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        kept = 0
        for i in bits(mask):
            cand = kept | (1 << i)
            if self.is_independent(cand):
                kept = cand
        r = kept.bit_count()
        self._rank_cache[mask] = r
        return r

    def describe(self) -> str:
        return self.kind

    def __repr__(self):
        return f"<Matroid {self.describe()}>"

    def to_spec(self) -> dict:
        """JSON-serializable spec; inverse of ``matroid_from_json``."""
        raise NotImplementedError


class UniformMatroid(Matroid):
    """U(r, n): every subset of size at most r is independent."""

    kind = "uniform"

    def __init__(self, n: int, r: int):
        if not 0 <= r <= n:
            raise MatroidError(f"uniform rank must satisfy 0 <= r <= n, got r={r}, n={n}")
        self._r = r
        super().__init__(n)

    def _independent(self, mask):
        return mask.bit_count() <= self._r

    def describe(self):
        return f"uniform(n={self.n},r={self._r})"

    def to_spec(self):
        return {"type": "uniform", "n": self.n, "r": self._r}


class PartitionMatroid(Matroid):
    """Blocks partition the ground set; at most ``cap`` elements per block."""

    kind = "partition"

    def __init__(self, blocks):
        blocks = [(tuple(sorted(set(els))), int(cap)) for els, cap in blocks]
        seen = 0
        for els, cap in blocks:
            if cap < 0:
                raise MatroidError("block capacity must be nonnegative")
            if not els:
                raise MatroidError("empty block")
            m = mask_of(els)
            if m & seen:
                raise MatroidError("blocks must be disjoint")
            seen |= m
        n = seen.bit_length()
        if seen != (1 << n) - 1:
            raise MatroidError("blocks must cover the ground set 0..n-1 without gaps")
        self.blocks = blocks
        self._block_masks = [(mask_of(els), cap) for els, cap in blocks]
        super().__init__(n)

    def _independent(self, mask):
        return all((mask & bm).bit_count() <= cap for bm, cap in self._block_masks)

    def describe(self):
        return f"partition(n={self.n},blocks={len(self.blocks)})"

    def to_spec(self):
        return {
            "type": "partition",
            "blocks": [{"elements": list(els), "cap": cap} for els, cap in self.blocks],
        }


class GraphicMatroid(Matroid):
    """Acyclic edge sets of a multigraph; the edge list order fixes the
    element indexing.  Parallel edges are allowed; a self-loop is a loop
    element."""

    kind = "graphic"

    def __init__(self, vertices: int, edges):
        edges = [tuple(e) for e in edges]
        for u, v in edges:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise MatroidError(f"edge ({u},{v}) has an endpoint outside 0..{vertices - 1}")
        self.vertices = vertices
        self.edges = edges
        super().__init__(len(edges))

    def _independent(self, mask):
        parent = list(range(self.vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in bits(mask):
            u, v = self.edges[i]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def describe(self):
        return f"graphic(V={self.vertices},E={len(self.edges)})"

    def to_spec(self):
        return {"type": "graphic", "vertices": self.vertices, "edges": [list(e) for e in self.edges]}


def _bareiss_rank(columns: list[list[int]]) -> int:
    """Rank of the integer matrix whose columns are given, by fraction-free
    (Bareiss) elimination.  Exact: arbitrary-precision integers throughout."""
    if not columns:
        return 0
    rows = len(columns[0])
    mat = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
    ncols = len(columns)
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = None
        for i in range(row, rows):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != row:
            mat[row], mat[pivot] = mat[pivot], mat[row]
        pv = mat[row][col]
        for i in range(row + 1, rows):
            fi = mat[i][col]
            for j in range(col, ncols):
                mat[i][j] = (mat[i][j] * pv - fi * mat[row][j]) // prev
        prev = pv
        row += 1
        rank += 1
        if row == rows:
            break
    return rank


def _modp_rank(columns: list[list[int]], p: int) -> int:
    if not columns:
        return 0
    rows = len(columns[0])
    mat = [[columns[j][i] % p for j in range(len(columns))] for i in range(rows)]
    ncols = len(columns)
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for i in range(row, rows):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != row:
            mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = pow(mat[row][col], p - 2, p)
        for i in range(row + 1, rows):
            if mat[i][col]:
                f = (mat[i][col] * inv) % p
                for j in range(col, ncols):
                    mat[i][j] = (mat[i][j] - f * mat[row][j]) % p
        row += 1
        rank += 1
        if row == rows:
            break
    return rank


class LinearMatroid(Matroid):
    """Columns of a matrix over the rationals or over GF(p).

    Independence must be exact, never floating point: rational input is
    cleared to integers column by column and eliminated fraction-free;
    prime-field input is eliminated mod p.
    """

    kind = "linear"

    def __init__(self, matrix, prime: int | None = None):
        if prime is not None and prime < 2:
            raise MatroidError(f"field characteristic must be a prime >= 2, got {prime}")
        rows = [list(row) for row in matrix]
        if not rows:
            raise MatroidError("matrix must have at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise MatroidError("matrix rows must have equal length")
        self.matrix = [[Fraction(x) for x in row] for row in rows]
        self.prime = prime
        cols = []
        for j in range(width):
            col = [self.matrix[i][j] for i in range(len(rows))]
            if prime is None:
                scale = math.lcm(*(f.denominator for f in col)) if col else 1
                cols.append([int(f * scale) for f in col])
            else:
                for f in col:
                    if f.denominator % prime == 0:
                        raise MatroidError("entry denominator not invertible mod p")
                cols.append([(f.numerator * pow(f.denominator, prime - 2, prime)) % prime for f in col])
        self._columns = cols
        super().__init__(width)

    def _independent(self, mask):
        k = mask.bit_count()
        if k > len(self.matrix):
            return False
        sel = [self._columns[i] for i in bits(mask)]
        if self.prime is None:
            return _bareiss_rank(sel) == k
        return _modp_rank(sel, self.prime) == k

    def describe(self):
        fld = "rational" if self.prime is None else f"gf{self.prime}"
        return f"linear({fld},{len(self.matrix)}x{self.n})"

    def to_spec(self):
        field = "rational" if self.prime is None else {"prime": self.prime}
        mat = [[str(x) if x.denominator != 1 else int(x) for x in row] for row in self.matrix]
        return {"type": "linear", "field": field, "matrix": mat}


class ExplicitBasesMatroid(Matroid):
    """Set system given by an explicit basis list; independent = subset of
    some listed basis.  Not guaranteed to satisfy the exchange axiom, which
    is exactly why ``validate_matroid`` exists."""

    kind = "bases"

    def __init__(self, n: int, bases):
        base_masks = sorted({mask_of(b) for b in bases})
        if not base_masks:
            raise MatroidError("at least one basis required")
        if base_masks[-1] >= (1 << n) or min(base_masks) < 0:
            raise MatroidError("basis element outside ground set")
        self.base_masks = base_masks
        super().__init__(n)

    def _independent(self, mask):
        return any(mask & ~b == 0 for b in self.base_masks)

    def describe(self):
        return f"bases(n={self.n},count={len(self.base_masks)})"

    def to_spec(self):
        return {"type": "bases", "n": self.n, "bases": [sorted(bits(b)) for b in self.base_masks]}


class DualMatroid(Matroid):
    """Bases are the complements of the parent's bases: a set is independent
    iff its removal keeps the parent at full rank."""

    kind = "dual-of"

    def __init__(self, parent: Matroid):
        self.parent = parent
        super().__init__(parent.n)

    def _independent(self, mask):
        return self.parent.rank_of(self.full_mask & ~mask) == self.parent.rank

    def describe(self):
        return f"dual({self.parent.describe()})"

    def to_spec(self):
        return {"type": "dual", "of": self.parent.to_spec()}


class TruncationMatroid(Matroid):
    """Bases are the parent's independent sets of size exactly k."""

    kind = "truncation-of"

    def __init__(self, parent: Matroid, k: int):
        if not 0 <= k <= parent.rank:
            raise MatroidError(f"truncation level must satisfy 0 <= k <= rank, got k={k}, rank={parent.rank}")
        self.parent = parent
        self.k = k
        super().__init__(parent.n)

    def _independent(self, mask):
        return mask.bit_count() <= self.k and self.parent.is_independent(mask)

    def describe(self):
        return f"truncation(k={self.k},{self.parent.describe()})"

    def to_spec(self):
        return {"type": "truncation", "of": self.parent.to_spec(), "k": self.k}


class MinorMatroid(Matroid):
    """Contract an independent set, delete a disjoint set; surviving
    elements are re-indexed in ascending order of their original indices."""

    kind = "minor-of"

    def __init__(self, parent: Matroid, contract, delete):
        cmask = mask_of(contract)
        dmask = mask_of(delete)
        if cmask & dmask:
            raise MatroidError("contract and delete sets must be disjoint")
        if cmask | dmask:
            parent._check_mask(cmask | dmask)
        if not parent.is_independent(cmask):
            raise MatroidError("contract set must be independent in the parent")
        self.parent = parent
        self.contract_mask = cmask
        self.delete_mask = dmask
        self._to_parent = [i for i in range(parent.n) if not ((cmask | dmask) >> i) & 1]
        super().__init__(len(self._to_parent))

    def _independent(self, mask):
        lifted = mask_of(self._to_parent[i] for i in bits(mask))
        return self.parent.is_independent(lifted | self.contract_mask)

    def describe(self):
        c = self.contract_mask.bit_count()
        d = self.delete_mask.bit_count()
        return f"minor(C={c},D={d},{self.parent.describe()})"

    def to_spec(self):
        return {
            "type": "minor",
            "of": self.parent.to_spec(),
            "contract": sorted(bits(self.contract_mask)),
            "delete": sorted(bits(self.delete_mask)),
        }


class DirectSumMatroid(Matroid):
    """Disjoint union of the parts; part j's elements are relabeled with
    offset sum of the earlier part sizes."""

    kind = "direct-sum-of"

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise MatroidError("direct sum needs at least one part")
        self.parts = parts
        self.offsets = [0]
        for p in parts:
            self.offsets.append(self.offsets[-1] + p.n)
        super().__init__(self.offsets[-1])

    def _independent(self, mask):
        for part, off in zip(self.parts, self.offsets):
            sub = (mask >> off) & part.full_mask
            if not part.is_independent(sub):
                return False
        return True

    def describe(self):
        return "direct_sum(" + ",".join(p.describe() for p in self.parts) + ")"

    def to_spec(self):
        return {"type": "direct_sum", "parts": [p.to_spec() for p in self.parts]}


class ReplicatedMatroid(Matroid):
    """Replace element i of the parent by counts[i] parallel copies
    (counts[i] = 0 deletes the element).  Independent sets pick at most one
    copy per parent element and project to a parent-independent set."""

    kind = "replicated"

    def __init__(self, parent: Matroid, counts):
        counts = [int(c) for c in counts]
        if len(counts) != parent.n or any(c < 0 for c in counts):
            raise MatroidError("need one nonnegative copy count per parent element")
        self.parent = parent
        self.counts = counts
        self._project = [i for i, c in enumerate(counts) for _ in range(c)]
        super().__init__(len(self._project))

    def _independent(self, mask):
        proj = 0
        for i in bits(mask):
            b = 1 << self._project[i]
            if proj & b:
                return False
            proj |= b
        return self.parent.is_independent(proj)

    def describe(self):
        return f"replicated({self.parent.describe()})"

    def to_spec(self):
        raise MatroidSpecError("$", "replicated matroids have no JSON spec form")


def dual(m: Matroid) -> Matroid:
    return DualMatroid(m)


def truncation(m: Matroid, k: int) -> Matroid:
    return TruncationMatroid(m, k)


def minor(m: Matroid, contract=(), delete=()) -> Matroid:
    return MinorMatroid(m, contract, delete)


def direct_sum(*parts: Matroid) -> Matroid:
    return DirectSumMatroid(parts)


def replicate(m: Matroid, counts) -> Matroid:
    return ReplicatedMatroid(m, counts)


def enumerate_bases(m: Matroid, *, max_n: int = ENUMERATION_MAX_N,
                    max_work: int = ENUMERATION_MAX_WORK) -> list[int]:
    """All bases of ``m`` as bitmasks, sorted ascending.

    Guarded: refuses when n > max_n or C(n, r) > max_work.  Pass larger
    limits to override; this is a verification oracle, so the default guard
    errs toward refusing.
    """
    if m.n > max_n:
        raise EnumerationGuardError(f"enumeration guard: n={m.n} exceeds limit {max_n}")
    work = math.comb(m.n, m.rank)
    if work > max_work:
        raise EnumerationGuardError(f"enumeration guard: C({m.n},{m.rank})={work} exceeds limit {max_work}")
    r = m.rank
    found: list[int] = []

    def extend(mask: int, start: int, size: int) -> None:
        if size == r:
            found.append(mask)
            return
        for i in range(start, m.n - (r - size) + 1):
            cand = mask | (1 << i)
            if m.is_independent(cand):
                extend(cand, i + 1, size + 1)

    extend(0, 0, 0)
    found.sort()
    return found


def _independent_sets_by_size(m: Matroid) -> list[list[int]]:
    groups: list[list[int]] = [[] for _ in range(m.rank + 1)]
    groups[0].append(0)

    def extend(mask: int, start: int, size: int) -> None:
        for i in range(start, m.n):
            cand = mask | (1 << i)
            if m.is_independent(cand):
                groups[size + 1].append(cand)
                if size + 1 < m.rank:
                    extend(cand, i + 1, size + 1)

    extend(0, 0, 0)
    return groups


@dataclass
class ValidationReport:
    """Outcome of downward-closure and exchange-axiom checking.

    Violations are report entries, not errors: a failing explicit-bases
    system is a legitimate input whose non-matroidness we want to expose.
    """

    n: int
    rank: int
    mode: str
    downward_checks: int = 0
    exchange_checks: int = 0
    downward_violations: list = field(default_factory=list)
    exchange_violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.downward_violations and not self.exchange_violations

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "n": self.n,
            "rank": self.rank,
            "downward_checks": self.downward_checks,
            "exchange_checks": self.exchange_checks,
            "downward_violations": [sorted(bits(s)) for s in self.downward_violations],
            "exchange_violations": [[sorted(bits(s)), sorted(bits(t))] for s, t in self.exchange_violations],
        }


# Exhaustive exchange checking only needs |T| = |S|+1: the general case
# follows by restricting T, given downward closure.  Past this pair budget
# the exhaustive mode would stop being interactive, so we fall back to
# sampling even for small n.
_EXHAUSTIVE_PAIR_BUDGET = 300_000


def validate_matroid(m: Matroid, trials: int = 2000, seed: int = 0) -> ValidationReport:
    """Check downward closure and the exchange axiom.

    Exhaustive for n <= 12 (within a pair budget), randomized otherwise.
    """
    exhaustive = m.n <= 12
    groups = None
    if exhaustive:
        groups = _independent_sets_by_size(m)
        pairs = sum(len(groups[k]) * len(groups[k + 1]) for k in range(len(groups) - 1))
        if pairs > _EXHAUSTIVE_PAIR_BUDGET:
            exhaustive = False

    report = ValidationReport(n=m.n, rank=m.rank, mode="exhaustive" if exhaustive else "randomized")

    if exhaustive:
        for size, sets in enumerate(groups):
            if size == 0:
                continue
            for s in sets:
                for i in bits(s):
                    report.downward_checks += 1
                    if not m.is_independent(s & ~(1 << i)):
                        report.downward_violations.append(s)
                        break
        for k in range(len(groups) - 1):
            for s in groups[k]:
                for t in groups[k + 1]:
                    report.exchange_checks += 1
                    extra = t & ~s
                    if not any(m.is_independent(s | (1 << i)) for i in bits(extra)):
                        report.exchange_violations.append((s, t))
        return report

    rng = random.Random(seed)

    def random_independent(target_size: int) -> int:
        order = list(range(m.n))
        rng.shuffle(order)
        cur = 0
        for i in order:
            if cur.bit_count() >= target_size:
                break
            cand = cur | (1 << i)
            if m.is_independent(cand):
                cur = cand
        return cur

    for _ in range(trials):
        t = random_independent(rng.randint(1, max(1, m.rank)))
        if t:
            drop = rng.choice(list(bits(t)))
            report.downward_checks += 1
            if not m.is_independent(t & ~(1 << drop)):
                report.downward_violations.append(t)
        if t.bit_count() >= 1:
            s = random_independent(rng.randint(0, t.bit_count() - 1))
            if s.bit_count() < t.bit_count():
                report.exchange_checks += 1
                extra = t & ~s
                if not any(m.is_independent(s | (1 << i)) for i in bits(extra)):
                    report.exchange_violations.append((s, t))
    return report


# --- JSON spec parsing ------------------------------------------------------

def _require(obj, key, path):
    if not isinstance(obj, dict):
        raise MatroidSpecError(path, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise MatroidSpecError(f"{path}.{key}", "missing required field")
    return obj[key]


def _as_int(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise MatroidSpecError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise MatroidSpecError(path, f"expected an integer >= {minimum}, got {value}")
    return value


def _as_index_list(value, path):
    if not isinstance(value, list):
        raise MatroidSpecError(path, "expected an array of element indices")
    return [_as_int(v, f"{path}[{i}]", minimum=0) for i, v in enumerate(value)]


def matroid_from_json(obj, path: str = "$") -> Matroid:
    """Build a matroid from its JSON spec; raises MatroidSpecError with the
    offending JSON path on malformed input."""
    typ = _require(obj, "type", path)
    try:
        if typ == "uniform":
            return UniformMatroid(_as_int(_require(obj, "n", path), f"{path}.n", 0),
                                  _as_int(_require(obj, "r", path), f"{path}.r", 0))
        if typ == "partition":
            raw = _require(obj, "blocks", path)
            if not isinstance(raw, list) or not raw:
                raise MatroidSpecError(f"{path}.blocks", "expected a non-empty array of blocks")
            blocks = []
            for i, b in enumerate(raw):
                bp = f"{path}.blocks[{i}]"
                blocks.append((_as_index_list(_require(b, "elements", bp), f"{bp}.elements"),
                               _as_int(_require(b, "cap", bp), f"{bp}.cap", 0)))
            return PartitionMatroid(blocks)
        if typ == "graphic":
            vertices = _as_int(_require(obj, "vertices", path), f"{path}.vertices", 0)
            raw = _require(obj, "edges", path)
            if not isinstance(raw, list):
                raise MatroidSpecError(f"{path}.edges", "expected an array of [u, v] pairs")
            edges = []
            for i, e in enumerate(raw):
                ep = f"{path}.edges[{i}]"
                if not isinstance(e, list) or len(e) != 2:
                    raise MatroidSpecError(ep, "expected a [u, v] pair")
                edges.append((_as_int(e[0], f"{ep}[0]", 0), _as_int(e[1], f"{ep}[1]", 0)))
            return GraphicMatroid(vertices, edges)
        if typ == "linear":
            fld = _require(obj, "field", path)
            if fld == "rational":
                prime = None
            elif isinstance(fld, dict) and "prime" in fld:
                prime = _as_int(fld["prime"], f"{path}.field.prime", 2)
            else:
                raise MatroidSpecError(f"{path}.field", 'expected "rational" or {"prime": p}')
            raw = _require(obj, "matrix", path)
            if not isinstance(raw, list) or not raw:
                raise MatroidSpecError(f"{path}.matrix", "expected a non-empty array of rows")
            matrix = []
            for i, row in enumerate(raw):
                if not isinstance(row, list):
                    raise MatroidSpecError(f"{path}.matrix[{i}]", "expected an array")
                entries = []
                for j, x in enumerate(row):
                    if isinstance(x, bool):
                        raise MatroidSpecError(f"{path}.matrix[{i}][{j}]",
                                               f"expected a rational number, got {x!r}")
                    try:
                        entries.append(Fraction(x))
                    except (TypeError, ValueError):
                        raise MatroidSpecError(f"{path}.matrix[{i}][{j}]",
                                               f"expected a rational number, got {x!r}") from None
                matrix.append(entries)
            return LinearMatroid(matrix, prime=prime)
        if typ == "bases":
            n = _as_int(_require(obj, "n", path), f"{path}.n", 0)
            raw = _require(obj, "bases", path)
            if not isinstance(raw, list) or not raw:
                raise MatroidSpecError(f"{path}.bases", "expected a non-empty array of bases")
            bases = [_as_index_list(b, f"{path}.bases[{i}]") for i, b in enumerate(raw)]
            return ExplicitBasesMatroid(n, bases)
        if typ == "dual":
            return DualMatroid(matroid_from_json(_require(obj, "of", path), f"{path}.of"))
        if typ == "truncation":
            parent = matroid_from_json(_require(obj, "of", path), f"{path}.of")
            return TruncationMatroid(parent, _as_int(_require(obj, "k", path), f"{path}.k", 0))
        if typ == "minor":
            parent = matroid_from_json(_require(obj, "of", path), f"{path}.of")
            contract = _as_index_list(obj.get("contract", []), f"{path}.contract")
            delete = _as_index_list(obj.get("delete", []), f"{path}.delete")
            return MinorMatroid(parent, contract, delete)
        if typ == "direct_sum":
            raw = _require(obj, "parts", path)
            if not isinstance(raw, list) or not raw:
                raise MatroidSpecError(f"{path}.parts", "expected a non-empty array of matroid specs")
            return DirectSumMatroid([matroid_from_json(p, f"{path}.parts[{i}]") for i, p in enumerate(raw)])
    except MatroidError as exc:
        raise MatroidSpecError(path, str(exc)) from exc
    raise MatroidSpecError(f"{path}.type", f"unknown matroid type {typ!r}")


def matroid_to_json(m: Matroid) -> dict:
    return m.to_spec()

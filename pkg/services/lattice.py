# services/lattice.py

"""
Lattice points of the cone for a fixed highest weight, their decomposition
into fundamental generators, and the count-vs-dimension sweep.

Every transcribed inequality has non-negative p-coefficients, so once
p_12, ..., p_{j+1} are fixed each remaining p_j is bounded by
min floor(slack / a_j) over the inequalities containing it, and any partial
assignment extends (setting the rest to zero). Counting therefore never
backtracks out of a dead end.
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import pandas as pd

from exceptions import DecompositionError, NotInConeError
from services.cone import inequality_table, member, tight_items, violated_items
from services.root_system import DomWeight, dominant_weights, weyl_dim
from services.signatures import Signature
from services.tables import N_K, N_P, fundamental_table
from utils.logging import log_function_call

logger = logging.getLogger(__name__)

try:
    from tqdm import tqdm
except ImportError:  # progress bars are optional
    tqdm = None

# p_12 first: items 1-4 bound p_12, p_11, p_9, p_4 directly
VARIABLE_ORDER = tuple(range(N_P - 1, -1, -1))


class PointEnumerator:
    """Backtracking over p_12 .. p_1 against the transcribed inequalities."""

    def __init__(self, facets=None):
        facets = list(facets) if facets is not None else inequality_table()
        if any(x < 0 for f in facets for x in f.a):
            raise ValueError("enumeration needs inequalities with non-negative p-coefficients")
        self.facets = facets
        # variable -> [(facet position, coefficient)]
        self.occurrences: Dict[int, List[Tuple[int, int]]] = {j: [] for j in range(N_P)}
        for position, facet in enumerate(facets):
            for j, coefficient in enumerate(facet.a):
                if coefficient:
                    self.occurrences[j].append((position, coefficient))
        unbounded = [j + 1 for j, occurrences in self.occurrences.items() if not occurrences]
        if unbounded:
            raise ValueError(f"p{unbounded} appear in no inequality; the point set is infinite")

    def _initial_slack(self, hw: DomWeight) -> List[int]:
        return [sum(b * k for b, k in zip(f.b, hw.k)) for f in self.facets]

    def _bound(self, j: int, slack: List[int]) -> int:
        return min(slack[position] // coefficient for position, coefficient in self.occurrences[j])

    def iter_points(self, hw: DomWeight) -> Iterator[Tuple[int, ...]]:
        slack = self._initial_slack(hw)
        if min(slack, default=0) < 0:
            return
        p = [0] * N_P

        def search(level: int) -> Iterator[Tuple[int, ...]]:
            if level == N_P:
                yield tuple(p)
                return
            j = VARIABLE_ORDER[level]
            occurrences = self.occurrences[j]
            bound = self._bound(j, slack)
            for value in range(bound + 1):
                p[j] = value
                yield from search(level + 1)
                for position, coefficient in occurrences:
                    slack[position] -= coefficient
            for position, coefficient in occurrences:
                slack[position] += coefficient * (bound + 1)
            p[j] = 0

        yield from search(0)

    def count(self, hw: DomWeight) -> int:
        slack = self._initial_slack(hw)
        if min(slack, default=0) < 0:
            return 0
        last = VARIABLE_ORDER[-1]

        def search(level: int) -> int:
            j = VARIABLE_ORDER[level]
            bound = self._bound(j, slack)
            if j == last:
                return bound + 1
            occurrences = self.occurrences[j]
            total = 0
            for _ in range(bound + 1):
                total += search(level + 1)
                for position, coefficient in occurrences:
                    slack[position] -= coefficient
            for position, coefficient in occurrences:
                slack[position] += coefficient * (bound + 1)
            return total

        return search(0)


_ENUMERATOR: Optional[PointEnumerator] = None


def _enumerator() -> PointEnumerator:
    global _ENUMERATOR
    if _ENUMERATOR is None:
        _ENUMERATOR = PointEnumerator()
    return _ENUMERATOR


def enumerate_points(hw: DomWeight) -> List[Signature]:
    """All lattice points of the cone with highest weight hw, ascending."""
    points = [Signature(hw, p) for p in _enumerator().iter_points(hw)]
    return sorted(points, key=lambda s: s.order_key)


def count_points(hw: DomWeight) -> int:
    return _enumerator().count(hw)


def sample_points(hw: DomWeight, size: int, rng: random.Random) -> List[Signature]:
    """Uniform sample without replacement; all points when size exceeds the count."""
    points = enumerate_points(hw)
    if size >= len(points):
        return points
    return rng.sample(points, size)


# ==============================================================================
# Decomposition into fundamental generators
# ==============================================================================

class Decomposer:
    """
    Writes a cone point as a sum of fundamental essential signatures.

    For each i with k_i > 0 and each tau of the omega_i table in order, the
    remainder sigma - tau must be non-negative and a cone point of weight
    lambda - omega_i. Full backtracking with a memo of failed remainders.
    """

    def __init__(self):
        self.tables = {i: fundamental_table(i) for i in range(1, N_K + 1)}
        self.explored = 0
        self._failed: Set[Tuple[int, ...]] = set()

    def decompose(self, sigma: Signature) -> List[Signature]:
        if not member(sigma):
            raise NotInConeError(sigma.hw.k, sigma.p, violated_items(sigma))
        self.explored = 0
        parts = self._search(sigma)
        if parts is None:
            raise DecompositionError(sigma.hw.k, sigma.p, self.explored, tight_items(sigma))
        logger.debug(f"Decomposed {sigma} into {len(parts)} parts after {self.explored} states")
        return parts

    def _search(self, sigma: Signature) -> Optional[List[Signature]]:
        self.explored += 1
        if sigma.hw.total == 0:
            return [] if sigma.degree == 0 else None
        if sigma.vector in self._failed:
            return None
        for i, k in enumerate(sigma.hw.k, start=1):
            if not k:
                continue
            for tau in self.tables[i]:
                rest = sigma.minus(tau)
                if rest is None or not member(rest):
                    continue
                parts = self._search(rest)
                if parts is not None:
                    return [tau] + parts
        self._failed.add(sigma.vector)
        return None


def decompose(sigma: Signature) -> List[Signature]:
    """Fundamental generators summing to sigma (DecompositionError if none exist)."""
    return Decomposer().decompose(sigma)


def sum_signatures(parts: Sequence[Signature]) -> Signature:
    """Componentwise sum; the empty sum is the zero signature of weight 0."""
    total = Signature.zero(DomWeight.zero())
    for part in parts:
        total = total + part
    return total


# ==============================================================================
# Count vs. dimension sweep
# ==============================================================================

@dataclass
class SweepRow:
    k: Tuple[int, ...]
    weyl: int
    count: Optional[int] = None
    equal: Optional[bool] = None
    elapsed_ms: float = 0.0
    skipped_reason: Optional[str] = None

    @property
    def computed(self) -> bool:
        return self.count is not None

    def to_record(self) -> dict:
        k1, k2, k3, k4 = self.k
        return {
            "k1": k1, "k2": k2, "k3": k3, "k4": k4,
            "count": self.count, "weyl": self.weyl, "equal": self.equal,
            "elapsed_ms": round(self.elapsed_ms, 3), "skipped_reason": self.skipped_reason,
        }


SWEEP_COLUMNS = ["k1", "k2", "k3", "k4", "count", "weyl", "equal", "elapsed_ms", "skipped_reason"]


@dataclass
class SweepReport:
    max_total: int
    point_budget: int
    rows: List[SweepRow] = field(default_factory=list)

    @property
    def computed(self) -> int:
        return sum(1 for row in self.rows if row.computed)

    @property
    def skipped(self) -> int:
        return sum(1 for row in self.rows if not row.computed)

    @property
    def equal(self) -> int:
        return sum(1 for row in self.rows if row.equal)

    @property
    def mismatches(self) -> List[SweepRow]:
        return [row for row in self.rows if row.computed and not row.equal]

    @property
    def all_equal(self) -> bool:
        return not self.mismatches

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.to_record() for row in self.rows], columns=SWEEP_COLUMNS)

    def totals(self) -> dict:
        return {"rows": len(self.rows), "computed": self.computed, "skipped": self.skipped,
                "equal": self.equal, "unequal": len(self.mismatches)}

    def to_dict(self) -> dict:
        return {"max_total": self.max_total, "point_budget": self.point_budget,
                "totals": self.totals(), "rows": [row.to_record() for row in self.rows]}


def _count_row(k: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int, float]:
    started = time.perf_counter()
    count = count_points(DomWeight(k))
    return k, count, (time.perf_counter() - started) * 1000


@log_function_call(logger)
def verify_dimension_sweep(max_total: int, point_budget: int, jobs: int = 1,
                           known: Optional[Mapping[Tuple[int, ...], Tuple[int, float]]] = None,
                           progress: bool = False,
                           on_row: Optional[Callable[[SweepRow], None]] = None) -> SweepReport:
    """
    Compare count_points with weyl_dim for every lambda with k_1+..+k_4 <= max_total.

    Rows whose Weyl dimension exceeds ``point_budget`` are skipped with a
    reason. ``known`` maps k to a previously stored (count, elapsed_ms);
    ``on_row`` is called for every freshly computed row.
    """
    if max_total < 0:
        raise ValueError("max_total must be non-negative")
    known = known or {}
    report = SweepReport(max_total, point_budget)
    rows: Dict[Tuple[int, ...], SweepRow] = {}
    pending = []
    for hw in dominant_weights(max_total):
        weyl = weyl_dim(hw)
        row = SweepRow(hw.k, weyl)
        rows[hw.k] = row
        report.rows.append(row)
        if weyl > point_budget:
            row.skipped_reason = f"weyl_dim {weyl} exceeds point budget {point_budget}"
        elif hw.k in known:
            row.count, row.elapsed_ms = known[hw.k]
            row.equal = row.count == weyl
        else:
            pending.append(hw.k)

    logger.info(f"Sweep up to total {max_total}: {len(pending)} to compute, "
                f"{len(rows) - len(pending) - report.skipped} reused, {report.skipped} skipped")

    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_count_row, pending)
            _collect(results, rows, pending, progress, on_row)
    else:
        _collect(map(_count_row, pending), rows, pending, progress, on_row)

    for row in report.mismatches:
        logger.warning(f"count {row.count} != weyl {row.weyl} for k={row.k}")
    return report


def _collect(results, rows, pending, progress, on_row) -> None:
    if progress and tqdm is not None:
        results = tqdm(results, total=len(pending), desc="sweep", unit="weight")
    for k, count, elapsed in results:
        row = rows[k]
        row.count, row.elapsed_ms = count, elapsed
        row.equal = count == row.weyl
        if on_row is not None:
            on_row(row)

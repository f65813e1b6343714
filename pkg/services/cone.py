# services/cone.py

"""
The cone spanned by the fundamental essential signatures.

Points are 16-vectors (k_1..k_4, p_1..p_12). A facet normal n is valid when
<n, x> >= 0 on every generator; for the 16-dimensional cone it is stored as
a FacetNormal (a, b) meaning a.p <= b.k, i.e. n = (b, -a).

``dual_description`` computes facets with cdd in exact fraction mode, in
coordinates of the span of the rays; ``brute_force_dual`` is the
(d-1)-subset search and is only usable on tiny inputs. Membership at
runtime uses the transcribed inequality list.
"""

import logging
import re
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import cdd

from services.linalg import RankAccumulator, nullspace, primitive, rank_of, to_sparse
from services.root_system import DomWeight
from services.signatures import Signature, essential_signatures
from services.tables import (
    CONE_INEQUALITIES, N_K, N_P, check_against_table, fundamental_table, parse_linear_form,
)
from utils.logging import log_function_call

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


# ==============================================================================
# Types
# ==============================================================================

@dataclass(frozen=True)
class RayGenerator:
    """(k_1..k_4, p_1..p_12), all entries non-negative."""

    v: Vector

    @classmethod
    def from_signature(cls, sigma: Signature) -> "RayGenerator":
        return cls(sigma.vector)

    @property
    def k(self) -> Vector:
        return self.v[:N_K]

    @property
    def p(self) -> Vector:
        return self.v[N_K:]

    def to_signature(self) -> Signature:
        return Signature.from_vector(self.v)

    def to_dict(self) -> Dict[str, List[int]]:
        return {"hw": list(self.k), "p": list(self.p)}


@dataclass(frozen=True, order=True)
class FacetNormal:
    """a . p <= b . k; ordering is the canonical (a, b) order."""

    a: Vector
    b: Vector

    @classmethod
    def from_normal(cls, normal: Sequence[int]) -> "FacetNormal":
        b = tuple(normal[:N_K])
        a = tuple(-x for x in normal[N_K:])
        return cls(a, b)

    @property
    def normal(self) -> Vector:
        return self.b + tuple(-x for x in self.a)

    @property
    def is_primitive(self) -> bool:
        return primitive(self.normal) == self.normal

    def slack(self, sigma: Signature) -> int:
        """b.k - a.p; negative when violated."""
        return (sum(x * y for x, y in zip(self.b, sigma.hw.k))
                - sum(x * y for x, y in zip(self.a, sigma.p)))

    def to_dict(self) -> Dict[str, List[int]]:
        return {"a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_dict(cls, data: Dict[str, Sequence[int]]) -> "FacetNormal":
        return cls(tuple(data["a"]), tuple(data["b"]))

    def describe(self) -> str:
        """Inequality text; terms with negative coefficients move to the other side."""
        left = _linear_text([(x, f"p{j}") for j, x in enumerate(self.a, start=1) if x > 0]
                            + [(-x, f"k{i}") for i, x in enumerate(self.b, start=1) if x < 0])
        right = _linear_text([(x, f"k{i}") for i, x in enumerate(self.b, start=1) if x > 0]
                             + [(-x, f"p{j}") for j, x in enumerate(self.a, start=1) if x < 0])
        return f"{left} <= {right}"

    def __str__(self) -> str:
        return self.describe()


def _linear_text(terms: List[Tuple[int, str]]) -> str:
    if not terms:
        return "0"
    return "+".join(name if c == 1 else f"{c}{name}" for c, name in terms)


_INEQUALITY = re.compile(r"^\s*(.+?)\s*<=\s*(.+?)\s*$")


def parse_inequality(text: str) -> FacetNormal:
    """``p2+2p4 <= k1+3k2`` -> FacetNormal."""
    match = _INEQUALITY.match(text)
    if not match:
        raise ValueError(f"Not an inequality: {text!r}")
    return FacetNormal(parse_linear_form(match.group(1), "p", N_P),
                       parse_linear_form(match.group(2), "k", N_K))


def canonical_facets(facets) -> List[FacetNormal]:
    return sorted(set(facets))


# ==============================================================================
# Transcribed inequalities and membership
# ==============================================================================

@lru_cache(maxsize=1)
def _inequalities() -> Tuple[FacetNormal, ...]:
    return tuple(parse_inequality(text) for text in CONE_INEQUALITIES)


def inequality_table() -> List[FacetNormal]:
    """The transcribed inequality list, in published order."""
    return list(_inequalities())


def nonnegativity_facets() -> List[FacetNormal]:
    """p_j >= 0 for j = 1..12."""
    return [FacetNormal(tuple(-1 if j == i else 0 for j in range(N_P)), (0,) * N_K) for i in range(N_P)]


def dominance_facets() -> List[FacetNormal]:
    """k_i >= 0 for i = 1..4."""
    return [FacetNormal((0,) * N_P, tuple(1 if j == i else 0 for j in range(N_K))) for i in range(N_K)]


def violated_items(sigma: Signature) -> List[int]:
    """1-based indices of transcribed inequalities that sigma violates."""
    return [item for item, facet in enumerate(_inequalities(), start=1) if facet.slack(sigma) < 0]


def tight_items(sigma: Signature) -> List[int]:
    """1-based indices of transcribed inequalities that sigma satisfies with equality."""
    return [item for item, facet in enumerate(_inequalities(), start=1) if facet.slack(sigma) == 0]


def member(sigma: Signature) -> bool:
    """sigma lies in the cone (p >= 0 and k >= 0 hold by construction of Signature)."""
    return all(facet.slack(sigma) >= 0 for facet in _inequalities())


# ==============================================================================
# Generators
# ==============================================================================

def fundamental_generators(source: str = "computed") -> List[RayGenerator]:
    """
    The 52 rays: essential signatures of omega_1..omega_4 prefixed by their weight.

    ``computed`` runs the rank scan and checks it against the transcribed
    tables (TableMismatchError on any difference); ``table`` reads the transcribed tables.
    """
    rays = []
    for i in range(1, N_K + 1):
        if source == "computed":
            signatures = essential_signatures(DomWeight.fundamental(i))
            check_against_table(i, signatures)
        elif source == "table":
            signatures = fundamental_table(i)
        else:
            raise ValueError(f"Unknown generator source {source!r}")
        rays.extend(RayGenerator.from_signature(s) for s in signatures)
    return rays


# ==============================================================================
# Dual description
# ==============================================================================

@dataclass
class DualDescription:
    """Facet normals of cone(rays) inside the linear span of the rays."""

    normals: List[Vector]
    span_dim: int
    lineality_dim: int
    equations: List[Vector] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def facets(self) -> List[FacetNormal]:
        return canonical_facets(FacetNormal.from_normal(n) for n in self.normals)


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    return rank_of(to_sparse(v) for v in vectors)


def _reduce_to_span(rays: Sequence[Sequence[int]]):
    """(pivot columns, reduced rays, equations) for the linear span of the rays."""
    dimension = len(rays[0])
    accumulator = RankAccumulator()
    sparse_rays = [to_sparse(r) for r in rays]
    for vector in sparse_rays:
        accumulator.insert(vector)
    pivots = sorted(accumulator.pivots)
    # in RREF the coordinate of x along the row with pivot c is x[c]
    reduced = [tuple(int(r[c]) for c in pivots) for r in rays]
    equations = [primitive([v.get(j) for j in range(dimension)])
                 for v in nullspace(sparse_rays, range(dimension))]
    return pivots, reduced, sorted(equations)


def _lift(normal: Sequence[int], pivots: Sequence[int], dimension: int) -> Vector:
    lifted = [0] * dimension
    for value, column in zip(normal, pivots):
        lifted[column] = value
    return primitive(lifted)


def _cdd_facets(reduced: Sequence[Vector], span: int) -> List[Vector]:
    """
    Facet normals of the full-dimensional cone generated by ``reduced``.

    The generator matrix is the origin plus one ray per row; cdd returns rows
    (b, a) meaning b + a.y >= 0, with b = 0 for a cone.
    """
    rows = [[1] + [0] * span] + [[0] + list(r) for r in reduced]
    generators = cdd.Matrix(rows, number_type="fraction")
    generators.rep_type = cdd.RepType.GENERATOR
    inequalities = cdd.Polyhedron(generators).get_inequalities()
    inequalities.canonicalize()
    if inequalities.lin_set:
        raise ValueError("cone is not full-dimensional in span coordinates")
    normals = set()
    for index in range(inequalities.row_size):
        normal = primitive(inequalities[index][1:])
        if any(normal):
            normals.add(normal)
    return sorted(normals)


@log_function_call(logger, include_args=False)
def dual_description(rays: Sequence[Sequence[int]]) -> DualDescription:
    """Facet normals of the cone generated by integer rays, canonical and primitive."""
    if not rays:
        raise ValueError("dual_description needs at least one ray")
    started = time.perf_counter()
    dimension = len(rays[0])
    pivots, reduced, equations = _reduce_to_span(rays)
    span = len(pivots)
    normals = _cdd_facets(reduced, span) if span else []
    lifted = sorted(set(_lift(n, pivots, dimension) for n in normals))
    lineality = span - _rank(normals) if span else 0
    elapsed = (time.perf_counter() - started) * 1000
    logger.info(f"Dual description: {len(rays)} rays in dimension {dimension}, span {span}, "
                f"{len(lifted)} facets in {elapsed:.1f} ms")
    return DualDescription(lifted, span, lineality, equations, elapsed)


def brute_force_dual(rays: Sequence[Sequence[int]]) -> List[Vector]:
    """Facets by testing the hyperplane through every (span-1)-subset of rays."""
    dimension = len(rays[0])
    pivots, reduced, _ = _reduce_to_span(rays)
    span = len(pivots)
    found = set()
    for subset in combinations(reduced, span - 1):
        kernel = nullspace([to_sparse(r) for r in subset], range(span))
        if len(kernel) != 1:
            continue
        normal = primitive([kernel[0].get(c) for c in range(span)])
        values = [_dot(normal, r) for r in reduced]
        if all(v >= 0 for v in values):
            found.add(normal)
        elif all(v <= 0 for v in values):
            found.add(tuple(-x for x in normal))
    return sorted(_lift(n, pivots, dimension) for n in found)


# ==============================================================================
# Certification
# ==============================================================================

@dataclass
class FacetCertificate:
    normal: Vector
    valid: bool
    tight_rays: int
    tight_rank: int
    certified: bool


@dataclass
class CertificationReport:
    span_dim: int
    certificates: List[FacetCertificate]
    uncovered_rays: List[int]

    @property
    def all_certified(self) -> bool:
        return all(c.certified for c in self.certificates)

    @property
    def failures(self) -> List[FacetCertificate]:
        return [c for c in self.certificates if not c.certified]

    def to_dict(self) -> dict:
        return {
            "span_dim": self.span_dim,
            "certified": sum(1 for c in self.certificates if c.certified),
            "failed": [{"normal": list(c.normal), "valid": c.valid, "tight_rank": c.tight_rank}
                       for c in self.failures],
            "uncovered_rays": self.uncovered_rays,
        }


def certify_facets(rays: Sequence[Sequence[int]], normals: Sequence[Sequence[int]]) -> CertificationReport:
    """
    Each normal must be non-negative on every ray and tight on rays spanning
    a hyperplane of the cone's span.
    """
    span = _rank(rays)
    covered = set()
    certificates = []
    for normal in normals:
        values = [_dot(normal, r) for r in rays]
        valid = all(v >= 0 for v in values)
        tight = [i for i, v in enumerate(values) if v == 0]
        rank = _rank([rays[i] for i in tight])
        certified = valid and rank == span - 1
        if certified:
            covered.update(tight)
        certificates.append(FacetCertificate(tuple(normal), valid, len(tight), rank, certified))
    uncovered = [i for i in range(len(rays)) if i not in covered]
    return CertificationReport(span, certificates, uncovered)


def dominance_status(rays: Sequence[Sequence[int]]) -> Dict[int, bool]:
    """For each i, whether k_i >= 0 is a facet of cone(rays)."""
    report = certify_facets(rays, [f.normal for f in dominance_facets()])
    return {i: c.certified for i, c in enumerate(report.certificates, start=1)}


@dataclass
class FacetComparison:
    expected: List[FacetNormal]
    computed: List[FacetNormal]
    missing: List[FacetNormal]
    unexpected: List[FacetNormal]

    @property
    def matches(self) -> bool:
        return not self.missing and not self.unexpected


def compare_with_table(rays: Sequence[Sequence[int]], computed: Sequence[FacetNormal]) -> FacetComparison:
    """Computed facets vs transcribed inequalities, p_j >= 0 and the certified k_i >= 0."""
    status = dominance_status(rays)
    expected = set(inequality_table()) | set(nonnegativity_facets())
    expected |= {f for i, f in enumerate(dominance_facets(), start=1) if status[i]}
    computed_set = set(computed)
    return FacetComparison(
        expected=canonical_facets(expected),
        computed=canonical_facets(computed_set),
        missing=canonical_facets(expected - computed_set),
        unexpected=canonical_facets(computed_set - expected),
    )

# services/signatures.py

"""
Signatures, their order, and essential-signature detection.

A signature is a dominant weight together with exponents p_1..p_12, one per
positive root. Signatures of one highest weight are ordered by the partial
sums q_i = p_1 + ... + p_{13-i}, compared lexicographically. A signature is
essential when its vector v(sigma) is not in the span of the vectors of
strictly smaller signatures; vectors of different weights are independent,
so the rank scan runs per weight class.
"""

import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from exceptions import InvalidSignatureError, RepresentationStructureError, WeightMismatchError
from services.linalg import RankAccumulator
from services.rep_models import RepModel, TensorSpace
from services.root_system import D4, DomWeight, EpsWeight
from utils.logging import log_function_call

logger = logging.getLogger(__name__)

N_ROOTS = D4.N


@dataclass(frozen=True, order=True)
class OrderKey:
    """q_i = sum_{j <= 13-i} p_j; weakly decreasing, q_1 = |p|, q_12 = p_1."""

    q: Tuple[int, ...]

    @classmethod
    def of(cls, p: Sequence[int]) -> "OrderKey":
        partial, running = [], 0
        for value in p:
            running += value
            partial.append(running)
        return cls(tuple(reversed(partial)))


@dataclass(frozen=True)
class Signature:
    """(lambda; p_1..p_12)"""

    hw: DomWeight
    p: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.p)
        if len(values) != N_ROOTS:
            raise InvalidSignatureError(values, f"expected {N_ROOTS} exponents")
        if any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in values):
            raise InvalidSignatureError(values, "exponents must be non-negative integers")
        object.__setattr__(self, "p", values)

    @classmethod
    def zero(cls, hw: DomWeight) -> "Signature":
        return cls(hw, (0,) * N_ROOTS)

    @classmethod
    def parse(cls, hw_text: str, p_text: str) -> "Signature":
        try:
            p = tuple(int(part) for part in p_text.replace(" ", "").split(","))
        except ValueError:
            raise InvalidSignatureError(p_text, "expected comma-separated integers")
        return cls(DomWeight.parse(hw_text), p)

    @classmethod
    def from_vector(cls, vector: Sequence[int]) -> "Signature":
        """Inverse of ``vector``: (k_1..k_4, p_1..p_12)."""
        return cls(DomWeight(tuple(vector[:4])), tuple(vector[4:]))

    @property
    def vector(self) -> Tuple[int, ...]:
        return self.hw.k + self.p

    @property
    def order_key(self) -> OrderKey:
        return OrderKey.of(self.p)

    @property
    def degree(self) -> int:
        return sum(self.p)

    @property
    def weight(self) -> EpsWeight:
        return D4.signature_weight(self.hw, self.p)

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.hw + other.hw, tuple(a + b for a, b in zip(self.p, other.p)))

    def minus(self, other: "Signature") -> Optional["Signature"]:
        """self - other, or None when a coordinate would go negative."""
        k = tuple(a - b for a, b in zip(self.hw.k, other.hw.k))
        p = tuple(a - b for a, b in zip(self.p, other.p))
        if min(k) < 0 or min(p) < 0:
            return None
        return Signature(DomWeight(k), p)

    def to_dict(self) -> Dict[str, List[int]]:
        return {"hw": list(self.hw.k), "p": list(self.p)}

    def monomial(self) -> str:
        """Nonzero exponents as ``p1+2p12``; ``0`` for the zero signature."""
        terms = []
        for index, value in enumerate(self.p, start=1):
            if value:
                terms.append(f"p{index}" if value == 1 else f"{value}p{index}")
        return "+".join(terms) or "0"

    def __str__(self) -> str:
        return f"({self.hw}; {','.join(str(x) for x in self.p)})"


class Comparison(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(sigma: Signature, other: Signature) -> Comparison:
    if sigma.hw != other.hw:
        raise WeightMismatchError(sigma.hw.k, other.hw.k)
    left, right = sigma.order_key, other.order_key
    if left < right:
        return Comparison.LESS
    if left > right:
        return Comparison.GREATER
    return Comparison.EQUAL


def sort_signatures(signatures) -> List[Signature]:
    """Ascending order; signatures of different highest weights are grouped by weight first."""
    return sorted(signatures, key=lambda s: (s.hw.k, s.order_key))


# ==============================================================================
# Enumeration of signatures of a fixed weight
# ==============================================================================

def _simple_coordinates_int(v: EpsWeight) -> Optional[Tuple[int, ...]]:
    coords = D4.simple_coordinates(v)
    if any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)


_ROOT_COORDS: Tuple[Tuple[int, ...], ...] = tuple(
    _simple_coordinates_int(root.eps) for root in D4.positive_roots()
)


def solve_root_combination(target: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    All p >= 0 with sum p_i alpha_i = target, target in simple-root coordinates.

    Backtracks over roots 1..12; each p_i is bounded by the remaining
    coordinates, which must stay non-negative.
    """
    solutions: List[Tuple[int, ...]] = []
    exponents = [0] * N_ROOTS

    def search(position: int, remaining: Tuple[int, ...]) -> None:
        if not any(remaining):
            solutions.append(tuple(exponents[:position]) + (0,) * (N_ROOTS - position))
            return
        if position == N_ROOTS:
            return
        root = _ROOT_COORDS[position]
        bound = min(remaining[j] // c for j, c in enumerate(root) if c)
        for value in range(bound, -1, -1):
            exponents[position] = value
            search(position + 1, tuple(r - value * c for r, c in zip(remaining, root)))
        exponents[position] = 0

    if any(c < 0 for c in target):
        return []
    search(0, tuple(target))
    return solutions


def signatures_of_weight(hw: DomWeight, mu: EpsWeight) -> List[Signature]:
    """All signatures of highest weight hw and weight mu, ascending."""
    target = _simple_coordinates_int(D4.to_eps(hw) - mu)
    if target is None:
        return []
    candidates = [Signature(hw, p) for p in solve_root_combination(target)]
    return sorted(candidates, key=lambda s: s.order_key)


# ==============================================================================
# Essential signatures
# ==============================================================================

class EssentialSignatureService:
    """Rank scans over the signature vectors of one highest weight."""

    def __init__(self, hw: DomWeight, models: Optional[Mapping[int, RepModel]] = None,
                 ambient_limit: Optional[int] = None):
        self.hw = hw
        self.space = TensorSpace(hw, models=models, ambient_limit=ambient_limit)

    def weights(self) -> List[EpsWeight]:
        """Ambient weights, highest first."""
        top = D4.to_eps(self.hw)
        return sorted(self.space.ambient_weights(),
                      key=lambda w: (D4.height(top - w), tuple(-c for c in w.coords)))

    def scan_weight(self, mu: EpsWeight, stop_at: Optional[Signature] = None) -> Tuple[List[Signature], int]:
        """(essential signatures of weight mu, rank of all candidate vectors)."""
        accumulator = RankAccumulator()
        essential = []
        for sigma in signatures_of_weight(self.hw, mu):
            if accumulator.insert(self.space.signature_vector(sigma.p)):
                essential.append(sigma)
            if stop_at is not None and sigma == stop_at:
                break
        return essential, accumulator.rank

    def essential(self) -> List[Signature]:
        started = time.perf_counter()
        result = []
        for mu in self.weights():
            essential, _ = self.scan_weight(mu)
            result.extend(essential)
        expected = D4.weyl_dim(self.hw)
        if len(result) != expected:
            raise RepresentationStructureError(
                str(self.hw), f"{len(result)} essential signatures but dim V = {expected}"
            )
        elapsed = (time.perf_counter() - started) * 1000
        logger.info(f"Essential signatures of {self.hw}: {len(result)} in {elapsed:.1f} ms")
        return sorted(result, key=lambda s: s.order_key)

    def multiplicities(self) -> Dict[EpsWeight, int]:
        multiplicities = {}
        for mu in self.weights():
            _, rank = self.scan_weight(mu)
            if rank:
                multiplicities[mu] = rank
        return multiplicities

    def is_essential(self, sigma: Signature) -> bool:
        essential, _ = self.scan_weight(sigma.weight, stop_at=sigma)
        return sigma in essential

    def minimal_signature(self, mu: EpsWeight) -> Optional[Signature]:
        for sigma in signatures_of_weight(self.hw, mu):
            if self.space.signature_vector(sigma.p):
                return sigma
        return None


@log_function_call(logger)
def essential_signatures(hw: DomWeight, models: Optional[Mapping[int, RepModel]] = None,
                         ambient_limit: Optional[int] = None) -> List[Signature]:
    """Essential signatures of highest weight hw in ascending order."""
    return EssentialSignatureService(hw, models, ambient_limit).essential()


def is_essential(sigma: Signature, models: Optional[Mapping[int, RepModel]] = None,
                 ambient_limit: Optional[int] = None) -> bool:
    return EssentialSignatureService(sigma.hw, models, ambient_limit).is_essential(sigma)


def weight_multiplicities(hw: DomWeight, ambient_limit: Optional[int] = None) -> Dict[EpsWeight, int]:
    """mu -> dim V(hw)_mu"""
    return EssentialSignatureService(hw, ambient_limit=ambient_limit).multiplicities()


def minimal_signature(hw: DomWeight, mu: EpsWeight, ambient_limit: Optional[int] = None) -> Optional[Signature]:
    """Least signature of weight mu with nonzero vector."""
    return EssentialSignatureService(hw, ambient_limit=ambient_limit).minimal_signature(mu)

# services/root_system.py

"""
Root data in epsilon coordinates.

Weights are handled internally as ``EpsWeight`` (exact rationals, halves
occur for spin weights); dominant weights are exposed in fundamental
coordinates as ``DomWeight``. ``RootSystem`` is written for any root data
given by positive roots, simple roots and fundamental weights, but only the
D4 instance with the fixed numbering below is shipped.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from operator import mul
from typing import Iterable, List, Sequence, Tuple

from exceptions import InvalidWeightError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpsWeight:
    """A weight as coefficients of eps_1..eps_n."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def zero(cls, rank: int = 4) -> "EpsWeight":
        return cls((0,) * rank)

    def __add__(self, other: "EpsWeight") -> "EpsWeight":
        return EpsWeight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "EpsWeight") -> "EpsWeight":
        return EpsWeight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "EpsWeight":
        return EpsWeight(tuple(-a for a in self.coords))

    def __mul__(self, c) -> "EpsWeight":
        return EpsWeight(tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other: "EpsWeight") -> Fraction:
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def expression(self) -> str:
        """Text form like ``e1+e2`` or ``1/2e1-1/2e4``."""
        parts = []
        for i, c in enumerate(self.coords, start=1):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            coefficient = "" if magnitude == 1 else str(magnitude)
            parts.append(f"{sign}{coefficient}e{i}")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


@dataclass(frozen=True, order=True)
class DomWeight:
    """A dominant weight k_1 w_1 + ... + k_n w_n."""

    k: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.k)
        if any(not isinstance(x, int) or isinstance(x, bool) for x in values):
            raise InvalidWeightError(values, "coefficients must be integers")
        if any(x < 0 for x in values):
            raise InvalidWeightError(values, "coefficients must be non-negative")
        object.__setattr__(self, "k", values)

    @classmethod
    def fundamental(cls, i: int, rank: int = 4) -> "DomWeight":
        if not 1 <= i <= rank:
            raise InvalidWeightError(i, f"fundamental index must be in 1..{rank}")
        return cls(tuple(1 if j == i else 0 for j in range(1, rank + 1)))

    @classmethod
    def zero(cls, rank: int = 4) -> "DomWeight":
        return cls((0,) * rank)

    @classmethod
    def parse(cls, text: str, rank: int = 4) -> "DomWeight":
        """Parse ``k1,k2,k3,k4``."""
        try:
            values = tuple(int(part) for part in text.replace(" ", "").split(","))
        except ValueError:
            raise InvalidWeightError(text, "expected comma-separated integers")
        if len(values) != rank:
            raise InvalidWeightError(text, f"expected {rank} coefficients")
        return cls(values)

    @property
    def total(self) -> int:
        return sum(self.k)

    def __add__(self, other: "DomWeight") -> "DomWeight":
        return DomWeight(tuple(a + b for a, b in zip(self.k, other.k)))

    def __sub__(self, other: "DomWeight") -> "DomWeight":
        return DomWeight(tuple(a - b for a, b in zip(self.k, other.k)))

    def __iter__(self):
        return iter(self.k)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.k)


@dataclass(frozen=True)
class Root:
    index: int
    eps: EpsWeight

    def __str__(self) -> str:
        return f"{self.index}: {self.eps.expression()}"


class RootSystem:
    """Positive roots in a fixed numbering together with simple roots and fundamental weights."""

    def __init__(self, name: str, positive: Sequence[Sequence], simple_indices: Sequence[int],
                 fundamentals: Sequence[Sequence]):
        self.name = name
        self.roots: Tuple[Root, ...] = tuple(
            Root(index, EpsWeight(tuple(coords))) for index, coords in enumerate(positive, start=1)
        )
        self.simple_indices: Tuple[int, ...] = tuple(simple_indices)
        self.fundamentals: Tuple[EpsWeight, ...] = tuple(EpsWeight(tuple(w)) for w in fundamentals)
        self.rank = len(self.fundamentals)
        self._check()

    def _check(self) -> None:
        for j, beta in enumerate(self.simple_roots()):
            for i, omega in enumerate(self.fundamentals):
                expected = 1 if i == j else 0
                if self.coroot_pairing(omega, beta.eps) != expected:
                    raise ValueError(f"{self.name}: fundamental weights are not dual to simple coroots")

    @property
    def N(self) -> int:
        return len(self.roots)

    def positive_roots(self) -> List[Root]:
        return list(self.roots)

    def root(self, index: int) -> Root:
        return self.roots[index - 1]

    def simple_roots(self) -> List[Root]:
        return [self.root(i) for i in self.simple_indices]

    def to_eps(self, weight: DomWeight) -> EpsWeight:
        total = EpsWeight.zero(len(self.fundamentals[0].coords))
        for k, omega in zip(weight.k, self.fundamentals):
            if k:
                total = total + omega * k
        return total

    @staticmethod
    def pairing(mu: EpsWeight, v: EpsWeight) -> Fraction:
        return mu.dot(v)

    def coroot_pairing(self, mu: EpsWeight, alpha: EpsWeight) -> Fraction:
        """<mu, alpha^vee> = 2 (mu, alpha) / (alpha, alpha)"""
        return 2 * mu.dot(alpha) / alpha.dot(alpha)

    def rho(self) -> EpsWeight:
        return self.to_eps(DomWeight((1,) * self.rank))

    def half_sum_positive_roots(self) -> EpsWeight:
        total = EpsWeight.zero(len(self.fundamentals[0].coords))
        for root in self.roots:
            total = total + root.eps
        return total * Fraction(1, 2)

    def simple_coordinates(self, v: EpsWeight) -> Tuple[Fraction, ...]:
        """Coefficients of v in the simple roots."""
        return tuple(self._coweight_pairing(v, j) for j in range(self.rank))

    def _coweight_pairing(self, v: EpsWeight, j: int) -> Fraction:
        beta = self.root(self.simple_indices[j]).eps
        return 2 * v.dot(self.fundamentals[j]) / beta.dot(beta)

    def height(self, v: EpsWeight) -> Fraction:
        return sum(self.simple_coordinates(v), Fraction(0))

    def signature_weight(self, hw: DomWeight, p: Sequence[int]) -> EpsWeight:
        """lambda - sum p_i alpha_i"""
        weight = self.to_eps(hw)
        for root, exponent in zip(self.roots, p):
            if exponent:
                weight = weight - root.eps * exponent
        return weight

    def weyl_dim(self, weight: DomWeight) -> int:
        """prod over positive roots of (lambda+rho, alpha) / (rho, alpha)"""
        rho = self.rho()
        shifted = self.to_eps(weight) + rho
        numerator = reduce(mul, (shifted.dot(root.eps) for root in self.roots), Fraction(1))
        denominator = reduce(mul, (rho.dot(root.eps) for root in self.roots), Fraction(1))
        value = numerator / denominator
        if value.denominator != 1:
            raise ArithmeticError(f"Weyl dimension of {weight} is not an integer: {value}")
        return int(value)

    def is_root(self, v: EpsWeight) -> bool:
        return any(root.eps == v or root.eps == -v for root in self.roots)

    def root_index(self, v: EpsWeight) -> int:
        """Index of the positive root v, 0 if v is not a positive root."""
        for root in self.roots:
            if root.eps == v:
                return root.index
        return 0


HALF = Fraction(1, 2)

# Numbering of the positive roots: index 1 = e1+e2 ... index 12 = e1-e2.
D4_POSITIVE_ROOTS = (
    (1, 1, 0, 0),    # 1  e1+e2
    (0, 1, 1, 0),    # 2  e2+e3
    (1, 0, 1, 0),    # 3  e1+e3
    (0, 0, 1, 1),    # 4  e3+e4
    (0, 1, 0, 1),    # 5  e2+e4
    (1, 0, 0, 1),    # 6  e1+e4
    (1, 0, -1, 0),   # 7  e1-e3
    (1, 0, 0, -1),   # 8  e1-e4
    (0, 0, 1, -1),   # 9  e3-e4
    (0, 1, 0, -1),   # 10 e2-e4
    (0, 1, -1, 0),   # 11 e2-e3
    (1, -1, 0, 0),   # 12 e1-e2
)

# beta_1 = e1-e2, beta_2 = e2-e3, beta_3 = e3-e4, beta_4 = e3+e4
D4_SIMPLE_INDICES = (12, 11, 9, 4)

D4_FUNDAMENTALS = (
    (1, 0, 0, 0),
    (1, 1, 0, 0),
    (HALF, HALF, HALF, -HALF),
    (HALF, HALF, HALF, HALF),
)

D4 = RootSystem("D4", D4_POSITIVE_ROOTS, D4_SIMPLE_INDICES, D4_FUNDAMENTALS)

N_ROOTS = D4.N


def positive_roots() -> List[Root]:
    return D4.positive_roots()


def to_eps(weight: DomWeight) -> EpsWeight:
    return D4.to_eps(weight)


def pairing(mu: EpsWeight, v: EpsWeight) -> Fraction:
    return D4.pairing(mu, v)


def signature_weight(sigma) -> EpsWeight:
    """Weight of a signature (anything with ``hw`` and ``p``)."""
    return D4.signature_weight(sigma.hw, sigma.p)


def weyl_dim(weight: DomWeight) -> int:
    return D4.weyl_dim(weight)


def dominant_weights(max_total: int, rank: int = 4) -> List[DomWeight]:
    """All dominant weights with k_1+...+k_n <= max_total, by total then lexicographically."""
    def compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    weights = []
    for total in range(max_total + 1):
        weights.extend(DomWeight(k) for k in sorted(compositions(total, rank)))
    return weights

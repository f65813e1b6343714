# services/rep_models.py

"""
Explicit models of the four fundamental D4 representations and their
tensor products.

Every structure constant comes from one fermionic realization on the
16-dimensional Fock space of four modes:

    e_{eps_i - eps_j} -> a_i^+ a_j        e_{-(eps_i - eps_j)} -> a_j^+ a_i
    e_{eps_i + eps_j} -> a_i^+ a_j^+      e_{-(eps_i + eps_j)} -> a_j a_i
    H_i               -> a_i^+ a_i - 1/2

The two spinor models are the even and odd occupancy halves of the Fock
space; the vector and adjoint models are spans of operators with the
commutator action.
"""

import logging
from functools import lru_cache
from itertools import product
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from config.settings import get_settings
from exceptions import AmbientTooLargeError, InvalidWeightError, RepresentationStructureError
from services.linalg import (
    ONE, SparseMatrix, SparseVec, SpanSolver, commutator, nullspace,
)
from services.root_system import D4, DomWeight, EpsWeight

logger = logging.getLogger(__name__)

MODES = 4
Occupancy = Tuple[int, ...]


# ==============================================================================
# Fock space operators
# ==============================================================================

def _fock_states() -> List[Occupancy]:
    # full occupancy first: it carries the highest spin weight
    return sorted(product((0, 1), repeat=MODES), reverse=True)


def _jw_sign(state: Occupancy, mode: int) -> int:
    return -1 if sum(state[:mode]) % 2 else 1


def creation(mode: int) -> SparseMatrix:
    """a_mode^+ on the Fock space (modes are 0-based)."""
    entries = []
    for state in _fock_states():
        if state[mode] == 0:
            target = state[:mode] + (1,) + state[mode + 1:]
            entries.append((target, state, _jw_sign(state, mode)))
    return SparseMatrix.from_entries(entries)


def annihilation(mode: int) -> SparseMatrix:
    """a_mode on the Fock space (modes are 0-based)."""
    entries = []
    for state in _fock_states():
        if state[mode] == 1:
            target = state[:mode] + (0,) + state[mode + 1:]
            entries.append((target, state, _jw_sign(state, mode)))
    return SparseMatrix.from_entries(entries)


def cartan_operator(mode: int) -> SparseMatrix:
    """H = n_mode - 1/2 on the Fock space."""
    half = Fraction(1, 2)
    return SparseMatrix.from_entries(
        (state, state, state[mode] - half) for state in _fock_states()
    )


def _root_modes(root: EpsWeight) -> Tuple[int, int, bool]:
    """(i, j, is_sum) with i < j for eps_i +- eps_j."""
    support = [index for index, c in enumerate(root.coords) if c]
    if len(support) != 2:
        raise RepresentationStructureError("fock", f"{root.expression()} is not a D4 root")
    i, j = support
    return i, j, root.coords[j] > 0


@lru_cache(maxsize=None)
def fock_root_operators() -> Tuple[Dict[int, SparseMatrix], Dict[int, SparseMatrix]]:
    """(raising, lowering) Fock operators for every positive root index."""
    raising, lowering = {}, {}
    for root in D4.positive_roots():
        i, j, is_sum = _root_modes(root.eps)
        if is_sum:
            raising[root.index] = creation(i) @ creation(j)
            lowering[root.index] = annihilation(j) @ annihilation(i)
        else:
            raising[root.index] = creation(i) @ annihilation(j)
            lowering[root.index] = creation(j) @ annihilation(i)
    return raising, lowering


# ==============================================================================
# Representation models
# ==============================================================================

class RepModel:
    """
    A finite-dimensional representation in a fixed basis.

    Basis states are integer indices ``0..dim-1``; ``states`` holds a
    printable label for each. ``lower(i)`` / ``raise_(i)`` are the actions of
    e_{-alpha_i} / e_{alpha_i} as column-sparse matrices on those indices.
    """

    def __init__(self, label: int, states: Sequence[str], weights: Sequence[EpsWeight],
                 lowering: Mapping[int, SparseMatrix], raising: Mapping[int, SparseMatrix],
                 highest_index: Optional[int] = None):
        self.label = label
        self.states = tuple(states)
        self.weights = tuple(weights)
        self._lowering = dict(lowering)
        self._raising = dict(raising)
        self.highest_index = highest_index

    @property
    def name(self) -> str:
        return f"omega_{self.label}"

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def highest_weight(self) -> DomWeight:
        return DomWeight.fundamental(self.label)

    def lower(self, index: int) -> SparseMatrix:
        return self._lowering[index]

    def raise_(self, index: int) -> SparseMatrix:
        return self._raising[index]

    def cartan(self, mode: int) -> SparseMatrix:
        """Diagonal action of H_mode (1-based mode)."""
        return SparseMatrix.from_entries(
            (b, b, weight.coords[mode - 1]) for b, weight in enumerate(self.weights)
        )

    def weight_of(self, state: int) -> EpsWeight:
        return self.weights[state]

    def rescaled(self, factors: Mapping[int, Fraction]) -> "RepModel":
        """
        Model with lower(i) replaced by c_i * lower(i).

        raise(i) is divided by c_i so the sl2 relation keeps holding.
        """
        lowering = {i: m.scale(Fraction(factors.get(i, 1))) for i, m in self._lowering.items()}
        raising = {i: m.scale(ONE / Fraction(factors.get(i, 1))) for i, m in self._raising.items()}
        return RepModel(self.label, self.states, self.weights, lowering, raising, self.highest_index)

    def validate(self) -> "RepModel":
        """Check grading, sl2 relations and highest-vector uniqueness; sets highest_index."""
        expected_dim = D4.weyl_dim(self.highest_weight)
        if self.dim != expected_dim:
            raise RepresentationStructureError(self.name, f"dimension {self.dim} != {expected_dim}")

        for root in D4.positive_roots():
            self._check_grading(self.lower(root.index), -root.eps, root.index, "lower")
            self._check_grading(self.raise_(root.index), root.eps, root.index, "raise")
            bracket = commutator(self.raise_(root.index), self.lower(root.index))
            expected = SparseMatrix.from_entries(
                (b, b, D4.pairing(weight, root.eps)) for b, weight in enumerate(self.weights)
            )
            if bracket != expected:
                raise RepresentationStructureError(
                    self.name, f"sl2 relation fails for root {root.index}", {"root": root.index}
                )

        rows = []
        for root in D4.positive_roots():
            rows.extend(self.raise_(root.index).rows().values())
        kernel = nullspace(rows, range(self.dim))
        if len(kernel) != 1 or len(kernel[0]) != 1:
            raise RepresentationStructureError(
                self.name, f"highest vector is not unique (kernel dimension {len(kernel)})"
            )
        (state,) = kernel[0].keys_sorted()
        if self.weights[state] != D4.to_eps(self.highest_weight):
            raise RepresentationStructureError(
                self.name, f"highest vector has weight {self.weights[state]}"
            )
        self.highest_index = state
        return self

    def _check_grading(self, matrix: SparseMatrix, shift: EpsWeight, index: int, kind: str) -> None:
        for column, image in matrix.columns():
            expected = self.weights[column] + shift
            for row in image.keys_sorted():
                if self.weights[row] != expected:
                    raise RepresentationStructureError(
                        self.name, f"{kind}({index}) breaks the weight grading",
                        {"root": index, "state": self.states[column]},
                    )

    def __repr__(self) -> str:
        return f"RepModel({self.name}, dim={self.dim})"


def _spin_model(label: int, parity: int) -> RepModel:
    states = [s for s in _fock_states() if sum(s) % 2 == parity]
    index = {state: position for position, state in enumerate(states)}
    half = Fraction(1, 2)
    weights = [EpsWeight(tuple(n - half for n in state)) for state in states]
    raising, lowering = fock_root_operators()

    def restrict(matrix: SparseMatrix) -> SparseMatrix:
        return matrix.restrict(index).reindex(index)

    return RepModel(
        label,
        ["".join(str(n) for n in state) for state in states],
        weights,
        {i: restrict(m) for i, m in lowering.items()},
        {i: restrict(m) for i, m in raising.items()},
    )


def _operator_model(label: int, basis: Sequence[Tuple[str, EpsWeight, SparseMatrix]]) -> RepModel:
    """Model on a span of Fock operators, acting by commutators."""
    solver = SpanSolver([operator.flatten() for _, _, operator in basis])
    raising_ops, lowering_ops = fock_root_operators()

    def adjoint(x: SparseMatrix, root_index: int) -> SparseMatrix:
        columns = {}
        for column, (name, _, operator) in enumerate(basis):
            image = commutator(x, operator).flatten()
            coefficients = solver.coordinates(image)
            if coefficients is None:
                raise RepresentationStructureError(
                    f"omega_{label}", f"[{root_index}, {name}] leaves the basis span"
                )
            columns[column] = SparseVec(enumerate(coefficients))
        return SparseMatrix(columns)

    lowering = {i: adjoint(m, i) for i, m in lowering_ops.items()}
    raising = {i: adjoint(m, i) for i, m in raising_ops.items()}
    return RepModel(label, [name for name, _, _ in basis], [w for _, w, _ in basis], lowering, raising)


def _vector_model() -> RepModel:
    basis = []
    for mode in range(MODES):
        unit = EpsWeight(tuple(1 if m == mode else 0 for m in range(MODES)))
        basis.append((f"+e{mode + 1}", unit, creation(mode)))
        basis.append((f"-e{mode + 1}", -unit, annihilation(mode)))
    return _operator_model(1, basis)


def _adjoint_model() -> RepModel:
    raising, lowering = fock_root_operators()
    basis = []
    for root in D4.positive_roots():
        basis.append((f"E{root.index}", root.eps, raising[root.index]))
    for mode in range(MODES):
        basis.append((f"H{mode + 1}", EpsWeight.zero(MODES), cartan_operator(mode)))
    for root in D4.positive_roots():
        basis.append((f"F{root.index}", -root.eps, lowering[root.index]))
    return _operator_model(2, basis)


_BUILDERS: Dict[int, Callable[[], RepModel]] = {
    1: _vector_model,
    2: _adjoint_model,
    3: lambda: _spin_model(3, 1),
    4: lambda: _spin_model(4, 0),
}


@lru_cache(maxsize=None)
def fundamental_model(i: int) -> RepModel:
    """Validated model of V(omega_i), i in 1..4."""
    if i not in _BUILDERS:
        raise InvalidWeightError(i, "fundamental index must be in 1..4")
    model = _BUILDERS[i]().validate()
    logger.debug(f"Built {model!r} with highest state {model.states[model.highest_index]}")
    return model


def fundamental_models() -> Dict[int, RepModel]:
    return {i: fundamental_model(i) for i in range(1, 5)}


# ==============================================================================
# Tensor products
# ==============================================================================

TensorKey = Tuple[int, ...]


class TensorSpace:
    """
    k_1 copies of omega_1, then k_2 of omega_2, k_3 of omega_3, k_4 of omega_4.

    Vectors are SparseVecs keyed by tuples with one basis index per factor.
    Signature vectors are memoized by exponent suffix, so evaluating many
    signatures of one highest weight shares the common right-hand factors.
    """

    def __init__(self, hw: DomWeight, models: Optional[Mapping[int, RepModel]] = None,
                 ambient_limit: Optional[int] = None):
        self.hw = hw
        models = models or fundamental_models()
        self.factors: Tuple[RepModel, ...] = tuple(
            models[i] for i, count in enumerate(hw.k, start=1) for _ in range(count)
        )
        self.dimension = 1
        for factor in self.factors:
            self.dimension *= factor.dim
        limit = ambient_limit if ambient_limit is not None else get_settings().AMBIENT_LIMIT
        if self.dimension > limit:
            raise AmbientTooLargeError(hw.k, self.dimension, limit)
        self._suffix_cache: Dict[Tuple[int, ...], SparseVec] = {}

    def highest_vector(self) -> SparseVec:
        key = tuple(factor.highest_index for factor in self.factors)
        vector = SparseVec.unit(key)
        for root in D4.positive_roots():
            if self.apply_raising(vector, root.index):
                raise RepresentationStructureError(str(self.hw), f"highest vector not killed by raise({root.index})")
        return vector

    def weight_of(self, key: TensorKey) -> EpsWeight:
        total = EpsWeight.zero()
        for factor, state in zip(self.factors, key):
            total = total + factor.weights[state]
        return total

    def ambient_weights(self) -> Set[EpsWeight]:
        """All weights of the ambient tensor product (Minkowski sum of factor weights)."""
        weights = {EpsWeight.zero()}
        for factor in self.factors:
            weights = {w + v for w in weights for v in set(factor.weights)}
        return weights

    def _apply(self, vector: SparseVec, matrices: Sequence[SparseMatrix]) -> SparseVec:
        data: Dict[TensorKey, Fraction] = {}
        for key, c in vector.terms():
            for slot, matrix in enumerate(matrices):
                image = matrix.column(key[slot])
                for row, value in image.terms():
                    target = key[:slot] + (row,) + key[slot + 1:]
                    new = data.get(target, 0) + c * value
                    if new:
                        data[target] = new
                    else:
                        data.pop(target, None)
        return SparseVec(data)

    def apply_lowering(self, vector: SparseVec, root_index: int) -> SparseVec:
        """Leibniz action of e_{-alpha_i} on a tensor vector."""
        return self._apply(vector, [factor.lower(root_index) for factor in self.factors])

    def apply_raising(self, vector: SparseVec, root_index: int) -> SparseVec:
        return self._apply(vector, [factor.raise_(root_index) for factor in self.factors])

    def signature_vector(self, p: Sequence[int]) -> SparseVec:
        """v(sigma): e_{-alpha_1}^{p_1} ... e_{-alpha_12}^{p_12} v_lambda, root 12 acting first."""
        vector = self._suffix(tuple(p))
        if vector:
            expected = D4.signature_weight(self.hw, p)
            actual = self.weight_of(vector.leading_key())
            if actual != expected:
                raise RepresentationStructureError(
                    str(self.hw), f"v(p={list(p)}) has weight {actual}, expected {expected}"
                )
        return vector

    def _suffix(self, suffix: Tuple[int, ...]) -> SparseVec:
        while suffix and suffix[0] == 0:
            suffix = suffix[1:]
        if not suffix:
            if () not in self._suffix_cache:
                self._suffix_cache[()] = self.highest_vector()
            return self._suffix_cache[()]
        cached = self._suffix_cache.get(suffix)
        if cached is not None:
            return cached
        root_index = D4.N - len(suffix) + 1
        previous = self._suffix((suffix[0] - 1,) + suffix[1:])
        vector = self.apply_lowering(previous, root_index) if previous else previous
        self._suffix_cache[suffix] = vector
        return vector

    def clear_cache(self) -> None:
        self._suffix_cache.clear()

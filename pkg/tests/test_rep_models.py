import random
from fractions import Fraction

import pytest

from exceptions import AmbientTooLargeError, InvalidWeightError
from services.linalg import SpanSolver, SparseVec, commutator
from services.rep_models import TensorSpace, fock_root_operators, fundamental_model
from services.root_system import D4, DomWeight, EpsWeight

HALF = Fraction(1, 2)


def unit_p(index, value=1):
    """Exponent vector with a single nonzero entry at root ``index``."""
    return tuple(value if j == index else 0 for j in range(1, 13))


class TestFundamentalModels:
    @pytest.mark.parametrize("i, dim", [(1, 8), (2, 28), (3, 8), (4, 8)])
    def test_dimension(self, models, i, dim):
        assert models[i].dim == dim

    def test_vector_weights(self, models):
        weights = set(models[1].weights)
        expected = set()
        for mode in range(4):
            unit = EpsWeight(tuple(1 if m == mode else 0 for m in range(4)))
            expected |= {unit, -unit}
        assert weights == expected

    def test_adjoint_zero_weight_space(self, models):
        assert sum(1 for w in models[2].weights if w.is_zero()) == 4

    def test_highest_states(self, models):
        assert models[1].states[models[1].highest_index] == "+e1"
        assert models[2].states[models[2].highest_index] == "E1"
        assert models[4].weight_of(models[4].highest_index) == EpsWeight((HALF, HALF, HALF, HALF))
        assert models[3].weight_of(models[3].highest_index) == EpsWeight((HALF, HALF, HALF, -HALF))

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_lowering_commutators(self, models, i):
        # [e_-a, e_-b] is a nonzero multiple of e_-(a+b) when a+b is a root, else zero
        model = models[i]
        for a in D4.positive_roots():
            for b in D4.positive_roots():
                if a.index >= b.index:
                    continue
                bracket = commutator(model.lower(a.index), model.lower(b.index))
                target = D4.root_index(a.eps + b.eps)
                if target:
                    coefficients = SpanSolver([model.lower(target).flatten()]).coordinates(bracket.flatten())
                    assert coefficients is not None and coefficients[0] != 0
                else:
                    assert bracket.is_zero()

    def test_fock_operators_cover_every_root(self):
        raising, lowering = fock_root_operators()
        assert sorted(raising) == sorted(lowering) == list(range(1, 13))

    def test_rescaled_model_still_validates(self, models):
        rng = random.Random(3)
        factors = {i: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for i in range(1, 13)}
        rescaled = models[1].rescaled(factors).validate()
        assert rescaled.highest_index == models[1].highest_index
        assert rescaled.lower(5) == models[1].lower(5).scale(factors[5])

    def test_unknown_fundamental(self):
        with pytest.raises(InvalidWeightError) as excinfo:
            fundamental_model(5)
        assert excinfo.value.exit_code == 1


class TestTensorSpace:
    def test_trivial_space(self):
        space = TensorSpace(DomWeight.zero())
        assert space.dimension == 1
        assert space.highest_vector() == SparseVec.unit(())
        assert space.signature_vector((0,) * 12) == SparseVec.unit(())
        assert space.signature_vector(unit_p(12)).is_zero()

    def test_lowering_the_vector_model(self):
        space = TensorSpace(DomWeight.fundamental(1))
        lowered = space.apply_lowering(space.highest_vector(), 12)
        assert len(lowered) == 1
        assert space.weight_of(lowered.leading_key()) == EpsWeight((0, 1, 0, 0))
        assert space.apply_lowering(lowered, 12).is_zero()

    def test_signature_vectors(self):
        space = TensorSpace(DomWeight.fundamental(1))
        assert not space.signature_vector(unit_p(12)).is_zero()
        assert space.signature_vector(unit_p(12, 2)).is_zero()
        lowered = space.signature_vector(unit_p(1))
        assert space.weight_of(lowered.leading_key()) == EpsWeight((0, -1, 0, 0))
        # e_-(e2-e3) kills the highest vector of omega_1
        assert space.signature_vector(unit_p(11)).is_zero()

    def test_rightmost_root_acts_first(self):
        space = TensorSpace(DomWeight.fundamental(1))
        p = tuple(1 if j in (1, 12) else 0 for j in range(1, 13))
        vector = space.signature_vector(p)
        assert space.weight_of(vector.leading_key()) == EpsWeight((-1, 0, 0, 0))

    def test_tensor_highest_vector(self):
        space = TensorSpace(DomWeight((1, 0, 1, 0)))
        assert space.dimension == 64
        vector = space.highest_vector()
        assert space.weight_of(vector.leading_key()) == D4.to_eps(DomWeight((1, 0, 1, 0)))

    def test_leibniz_rule(self):
        space = TensorSpace(DomWeight((2, 0, 0, 0)))
        lowered = space.apply_lowering(space.highest_vector(), 12)
        assert len(lowered) == 2
        assert len(set(lowered.values())) == 1

    def test_ambient_weights(self):
        space = TensorSpace(DomWeight((1, 0, 0, 0)))
        assert len(space.ambient_weights()) == 8
        assert len(TensorSpace(DomWeight((2, 0, 0, 0))).ambient_weights()) == 33

    def test_ambient_guard(self):
        with pytest.raises(AmbientTooLargeError) as excinfo:
            TensorSpace(DomWeight((2, 0, 0, 0)), ambient_limit=10)
        assert excinfo.value.exit_code == 2

    def test_ambient_guard_reads_settings(self, monkeypatch):
        monkeypatch.setenv("ESSIG_AMBIENT_LIMIT", "27")
        with pytest.raises(AmbientTooLargeError):
            TensorSpace(DomWeight.fundamental(2))
        assert TensorSpace(DomWeight.fundamental(1)).dimension == 8

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qotp.exceptions import DimensionMismatchError, ProbabilitySumError, QuantumStateError
from qotp.quantum import (
    DensityMatrix,
    RegisterLayout,
    StateVector,
    basis_state,
    density_from_ensemble,
    dephase,
    reduced_density_matrix,
    trace_distance,
    uniform_superposition,
)


def test_purity():
    """Test purity of pure and maximally mixed states"""
    assert DensityMatrix.pure(uniform_superposition([0, 5], 3)).purity() == pytest.approx(1.0)
    assert DensityMatrix.maximally_mixed(8).purity() == pytest.approx(1 / 8)


def test_density_validation():
    """Test Hermiticity, trace and positivity checks"""
    with pytest.raises(QuantumStateError):
        DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(QuantumStateError):
        DensityMatrix(np.eye(2))
    with pytest.raises(QuantumStateError):
        DensityMatrix(np.array([[1.5, 0.0], [0.0, -0.5]]))
    with pytest.raises(QuantumStateError):
        DensityMatrix(np.ones((2, 3)) / 2)


def test_trace_distance_values():
    """Test the known distances: identical, orthogonal, pure vs. dephased"""
    plus = DensityMatrix.pure(uniform_superposition(range(8), 3))
    assert trace_distance(plus, plus) == pytest.approx(0.0, abs=1e-12)
    assert trace_distance(DensityMatrix.pure(basis_state(0, 1)), DensityMatrix.pure(basis_state(1, 1))) == pytest.approx(1.0)
    assert trace_distance(plus, DensityMatrix.maximally_mixed(8)) == pytest.approx(7 / 8)
    with pytest.raises(DimensionMismatchError):
        trace_distance(plus, DensityMatrix.maximally_mixed(4))


def test_dephase():
    """Test that dephasing the uniform superposition gives the maximally mixed state"""
    plus = DensityMatrix.pure(uniform_superposition(range(4), 2))
    assert np.allclose(dephase(plus).matrix, np.eye(4) / 4)
    basis = DensityMatrix.pure(basis_state(2, 2))
    assert trace_distance(basis, dephase(basis)) == pytest.approx(0.0, abs=1e-12)


def test_density_from_ensemble():
    """Test mixing and the probability checks"""
    rho = density_from_ensemble([(0.5, basis_state(0, 1)), (0.5, basis_state(1, 1))])
    assert np.allclose(rho.matrix, np.eye(2) / 2)
    with pytest.raises(ProbabilitySumError):
        density_from_ensemble([(0.5, basis_state(0, 1)), (0.4, basis_state(1, 1))])
    with pytest.raises(ProbabilitySumError):
        density_from_ensemble([])
    with pytest.raises(DimensionMismatchError):
        density_from_ensemble([(0.5, basis_state(0, 1)), (0.5, basis_state(0, 2))])


def test_partial_trace():
    """Test reduced states of an entangled and a product state"""
    layout = RegisterLayout.from_widths([("a", 1), ("b", 1)])
    bell = uniform_superposition([0, 3], 2)
    assert np.allclose(reduced_density_matrix(bell, layout, "a").matrix, np.eye(2) / 2)

    product = basis_state(1, 1).tensor(uniform_superposition([0, 1], 1))
    reduced = reduced_density_matrix(product, layout, "b")
    assert reduced.purity() == pytest.approx(1.0)
    assert np.allclose(reduced.matrix, np.full((2, 2), 0.5))
    assert np.allclose(reduced_density_matrix(bell, layout, ("a", "b")).matrix, DensityMatrix.pure(bell).matrix)


def random_density(rng: np.random.Generator, dim: int = 4, branches: int = 3) -> DensityMatrix:
    states = []
    for _ in range(branches):
        amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        states.append(StateVector(amps / np.linalg.norm(amps)))
    probs = rng.dirichlet(np.ones(branches))
    probs = probs / probs.sum()
    return density_from_ensemble(list(zip(probs, states)))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_trace_distance_is_a_metric_on_the_unit_interval(seed):
    """Test range, symmetry and the triangle inequality on random mixed states"""
    rng = np.random.default_rng(seed)
    a, b, c = (random_density(rng) for _ in range(3))
    ab, bc, ac = trace_distance(a, b), trace_distance(b, c), trace_distance(a, c)
    for d in (ab, bc, ac):
        assert 0.0 <= d <= 1.0
    assert ab == pytest.approx(trace_distance(b, a))
    assert ac <= ab + bc + 1e-9

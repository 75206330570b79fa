import numpy as np
import pytest
from scipy.stats import chisquare

from qotp.exceptions import (
    CapacityError,
    DimensionMismatchError,
    LayoutError,
    ParameterError,
    QuantumStateError,
    UnknownOperationError,
)
from qotp.linalg import enumerate_elements, orthogonal_complement, sample_uniform_subspace
from qotp.quantum import (
    HadamardLayer,
    Register,
    RegisterLayout,
    StateVector,
    XorOracle,
    apply_function_oracle,
    apply_hadamard,
    apply_hadamard_all,
    apply_inverse,
    apply_op,
    apply_x,
    basis_state,
    dump_state,
    load_state,
    measure_register,
    prepare_subspace_state,
    project_register,
    register_distribution,
    uniform_superposition,
    zero_state,
)


@pytest.fixture
def xy_layout():
    return RegisterLayout.from_widths([("x", 2), ("y", 2)])


def test_state_validation():
    """Test that only normalized power-of-two states are accepted"""
    with pytest.raises(QuantumStateError):
        StateVector(np.array([1.0, 1.0]))
    with pytest.raises(QuantumStateError):
        StateVector(np.array([1.0, 0.0, 0.0]))
    with pytest.raises(CapacityError):
        zero_state(21)
    with pytest.raises(ParameterError):
        basis_state(8, 3)


def test_amplitudes_are_read_only():
    """Test that a state cannot be mutated in place"""
    state = zero_state(2)
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0.0


def test_tensor_is_big_endian():
    """Test that the left factor occupies the leading qubits"""
    assert basis_state(1, 1).tensor(basis_state(0, 2)).allclose(basis_state(4, 3))
    assert basis_state(2, 2).tensor(basis_state(1, 1)).allclose(basis_state(5, 3))


@pytest.mark.parametrize("lam", [2, 4, 6])
def test_hadamard_maps_subspace_state_to_dual(lam):
    """Test H^{⊗n}|A> = |A^⊥> on random half-dimensional subspaces"""
    rng = np.random.default_rng(lam)
    for _ in range(20):
        basis = sample_uniform_subspace(lam, lam // 2, rng)
        lhs = apply_hadamard_all(prepare_subspace_state(basis))
        assert lhs.allclose(prepare_subspace_state(orthogonal_complement(basis)))


def test_hadamard_is_an_involution(xy_layout):
    """Test that H twice is the identity, on the whole state and on one register"""
    state = uniform_superposition([1, 6, 11], 4)
    assert apply_hadamard_all(apply_hadamard_all(state)).allclose(state)
    once = apply_hadamard(state, xy_layout, "y")
    assert not once.allclose(state)
    assert apply_hadamard(once, xy_layout, "y").allclose(state)


def test_hadamard_on_register_only_touches_that_register(xy_layout):
    """Test H on y of |x=2,y=0> spreads y uniformly and leaves x alone"""
    state = apply_hadamard(basis_state(xy_layout.compose("x", 2), 4), xy_layout, "y")
    assert register_distribution(state, xy_layout, "x") == pytest.approx([0, 0, 1, 0])
    assert register_distribution(state, xy_layout, "y") == pytest.approx([0.25] * 4)
    with pytest.raises(LayoutError):
        apply_hadamard(state, register="y")


def test_layout_validation():
    """Test overlapping, uncovered and unknown registers"""
    with pytest.raises(LayoutError):
        RegisterLayout(3, (Register("a", 0, 2), Register("b", 1, 2)))
    with pytest.raises(LayoutError):
        RegisterLayout(3, (Register("a", 0, 2),))
    with pytest.raises(LayoutError):
        RegisterLayout(2, (Register("a", 0, 1), Register("a", 1, 1)))
    layout = RegisterLayout.from_widths([("a", 1), ("b", 2)])
    assert layout.names() == ["a", "b"]
    assert layout.compose(("a", "b"), 0b101) == 0b101
    with pytest.raises(LayoutError):
        layout["c"]


def test_function_oracle_xors_into_output(xy_layout):
    """Test |x>|y> -> |x>|y ^ f(x)> on a superposition"""
    state = uniform_superposition([xy_layout.compose("x", x) for x in range(4)], 4)
    after = apply_function_oracle(state, xy_layout, "x", "y", lambda x: x ^ 1)
    joint = register_distribution(after, xy_layout, ("x", "y"))
    for x in range(4):
        assert joint[(x << 2) | (x ^ 1)] == pytest.approx(0.25)
    assert apply_inverse(after, XorOracle(xy_layout, ("x",), "y", lambda x: x ^ 1)).allclose(state)


def test_function_oracle_errors(xy_layout):
    """Test output range and register overlap checks"""
    state = zero_state(4)
    with pytest.raises(ParameterError):
        apply_function_oracle(state, xy_layout, "x", "y", lambda x: 4)
    with pytest.raises(LayoutError):
        apply_function_oracle(state, xy_layout, "x", "x", lambda x: x)
    with pytest.raises(DimensionMismatchError):
        apply_function_oracle(zero_state(3), xy_layout, "x", "y", lambda x: x)


def test_apply_x(xy_layout):
    """Test XOR of a constant into a register"""
    state = apply_x(zero_state(4), xy_layout, "y", 3)
    assert state.allclose(basis_state(3, 4))


def test_operations_undo_in_reverse(xy_layout):
    """Test that applying a program then its inverse in reverse order restores the state"""
    ops = [
        HadamardLayer(xy_layout, "x"),
        XorOracle(xy_layout, ("x",), "y", lambda x: (3 * x) % 4),
        HadamardLayer(),
    ]
    state = basis_state(0, 4)
    after = state
    for op in ops:
        after = apply_op(after, op)
    for op in reversed(ops):
        after = apply_inverse(after, op)
    assert after.allclose(state)
    with pytest.raises(UnknownOperationError):
        apply_inverse(state, "cnot")
    with pytest.raises(UnknownOperationError):
        apply_op(state, "cnot")


def test_measurement_collapses_entangled_registers():
    """Test that measuring one half of (|00> + |11>)/√2 fixes the other"""
    layout = RegisterLayout.from_widths([("a", 1), ("b", 1)])
    state = uniform_superposition([0, 3], 2)
    rng = np.random.default_rng(3)
    for _ in range(10):
        outcome, post = measure_register(state, layout, "a", rng)
        expected = basis_state(3 * outcome.to_int(), 2)
        assert post.allclose(expected)


def test_measurement_follows_born_rule():
    """Test outcome frequencies against |amplitude|^2"""
    layout = RegisterLayout.from_widths([("a", 2)])
    amps = np.sqrt(np.array([0.1, 0.2, 0.3, 0.4]))
    state = StateVector(amps)
    rng = np.random.default_rng(11)
    counts = np.zeros(4)
    for _ in range(4000):
        outcome, _ = measure_register(state, layout, "a", rng)
        counts[outcome.to_int()] += 1
    assert chisquare(counts, f_exp=4000 * np.array([0.1, 0.2, 0.3, 0.4])).pvalue > 1e-4


def test_project_register(xy_layout):
    """Test projection probabilities, including an impossible outcome"""
    state = uniform_superposition([xy_layout.compose("x", 1), xy_layout.compose("x", 2)], 4)
    prob, post = project_register(state, xy_layout, "x", 1)
    assert prob == pytest.approx(0.5)
    assert post.allclose(basis_state(xy_layout.compose("x", 1), 4))
    assert project_register(state, xy_layout, "x", 3) == (0.0, None)


def test_dump_and_load_state():
    """Test the plain-text amplitude format"""
    state = apply_hadamard_all(basis_state(5, 3))
    text = dump_state(state)
    assert len(text.strip().splitlines()) == 8
    assert load_state(text, 3).allclose(state)


def test_measuring_a_subspace_state_samples_the_subspace():
    """Test that standard-basis measurement of |A> is uniform over A"""
    rng = np.random.default_rng(123)
    basis = sample_uniform_subspace(6, 3, rng)
    layout = RegisterLayout.from_widths([("tag", 6)])
    state = prepare_subspace_state(basis)
    index = {e.to_int(): i for i, e in enumerate(enumerate_elements(basis))}

    probs = register_distribution(state, layout, "tag")
    assert probs[list(index)] == pytest.approx(np.full(8, 1 / 8))
    assert probs.sum() == pytest.approx(1.0)

    counts = np.zeros(8)
    for _ in range(4000):
        outcome, _ = measure_register(state, layout, "tag", rng)
        counts[index[outcome.to_int()]] += 1
    assert chisquare(counts).pvalue > 1e-4

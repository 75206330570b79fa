"""
Dense statevector simulation for small registers.

Basis index convention is big-endian: qubit 0 is the most significant bit of
the index, so the basis state of a :class:`~qotp.linalg.gf2.BitVector` ``v``
is ``v.to_int()``. Registers are named contiguous qubit ranges described by a
:class:`RegisterLayout`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from qotp.exceptions import (
    CapacityError,
    DimensionMismatchError,
    LayoutError,
    ParameterError,
    QuantumStateError,
    UnknownOperationError,
)
from qotp.linalg.gf2 import BitVector, SubspaceBasis

MAX_QUBITS = 20
TOLERANCE = 1e-9

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)

RegisterNames = Union[str, Sequence[str]]


def _check_capacity(num_qubits: int) -> None:
    if num_qubits > MAX_QUBITS:
        raise CapacityError("statevector qubits", num_qubits, MAX_QUBITS)


@dataclass(frozen=True)
class StateVector:
    """A normalized pure state on ``num_qubits`` qubits. The amplitude array is read-only."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        size = amps.size
        if size < 2 or size & (size - 1):
            raise QuantumStateError(f"Amplitude count must be a power of two >= 2, got {size}")
        _check_capacity(size.bit_length() - 1)
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > TOLERANCE:
            raise QuantumStateError(f"State is not normalized: squared norm {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self, other: "StateVector") -> "StateVector":
        """``self ⊗ other``; ``self`` occupies the leading qubits."""
        return StateVector(np.kron(self.amplitudes, other.amplitudes))

    def allclose(self, other: "StateVector", atol: float = TOLERANCE) -> bool:
        return self.dim == other.dim and bool(np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0.0))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _normalized(amps: np.ndarray) -> StateVector:
    norm = np.linalg.norm(amps)
    if norm <= TOLERANCE:
        raise QuantumStateError("Cannot renormalize a zero-norm branch")
    return StateVector(amps / norm)


def basis_state(index: int, num_qubits: int) -> StateVector:
    """The computational basis state ``|index>``."""
    _check_capacity(num_qubits)
    if not 0 <= index < (1 << num_qubits):
        raise ParameterError(f"Basis index {index} outside {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps)


def zero_state(num_qubits: int) -> StateVector:
    return basis_state(0, num_qubits)


def uniform_superposition(indices: Sequence[int], num_qubits: int) -> StateVector:
    """Equal-weight superposition over distinct basis ``indices``."""
    _check_capacity(num_qubits)
    idx = np.unique(np.asarray(indices, dtype=np.int64))
    if idx.size == 0:
        raise ParameterError("Superposition needs at least one basis state")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[idx] = 1.0 / np.sqrt(idx.size)
    return StateVector(amps)


def prepare_subspace_state(basis: SubspaceBasis) -> StateVector:
    """``|A> = 2^{-d/2} sum_{a in A} |a>`` on ``basis.ambient`` qubits."""
    _check_capacity(basis.ambient)
    return uniform_superposition(basis.element_indices(), basis.ambient)


@dataclass(frozen=True)
class Register:
    name: str
    start: int
    width: int


@dataclass(frozen=True)
class RegisterLayout:
    """Named, disjoint, contiguous qubit ranges covering ``num_qubits`` qubits."""

    num_qubits: int
    registers: Tuple[Register, ...]

    def __post_init__(self):
        _check_capacity(self.num_qubits)
        seen = set()
        covered = [False] * self.num_qubits
        for reg in self.registers:
            if reg.name in seen:
                raise LayoutError(f"Duplicate register name '{reg.name}'")
            seen.add(reg.name)
            if reg.width < 1 or reg.start < 0 or reg.start + reg.width > self.num_qubits:
                raise LayoutError(f"Register '{reg.name}' does not fit in {self.num_qubits} qubits")
            for q in range(reg.start, reg.start + reg.width):
                if covered[q]:
                    raise LayoutError(f"Register '{reg.name}' overlaps another register at qubit {q}")
                covered[q] = True
        if not all(covered):
            raise LayoutError("Registers must cover every qubit")

    @classmethod
    def from_widths(cls, widths: Sequence[Tuple[str, int]]) -> "RegisterLayout":
        """Lay registers out back to back, in the given order."""
        registers = []
        start = 0
        for name, width in widths:
            registers.append(Register(name, start, width))
            start += width
        return cls(start, tuple(registers))

    def __getitem__(self, name: str) -> Register:
        for reg in self.registers:
            if reg.name == name:
                return reg
        raise LayoutError(f"Unknown register '{name}'")

    def names(self) -> List[str]:
        return [reg.name for reg in self.registers]

    def width(self, names: RegisterNames) -> int:
        return sum(self[name].width for name in _as_names(names))

    def shift(self, name: str) -> int:
        reg = self[name]
        return self.num_qubits - reg.start - reg.width

    def values(self, indices: np.ndarray, names: RegisterNames) -> np.ndarray:
        """Combined value of ``names`` (concatenated in order) for each basis index."""
        out = np.zeros_like(indices)
        for name in _as_names(names):
            reg = self[name]
            out = (out << reg.width) | ((indices >> self.shift(name)) & ((1 << reg.width) - 1))
        return out

    def compose(self, names: RegisterNames, value: int) -> int:
        """Basis index with ``value`` written into ``names`` and zero elsewhere."""
        index = 0
        for name in reversed(list(_as_names(names))):
            reg = self[name]
            index |= (value & ((1 << reg.width) - 1)) << self.shift(name)
            value >>= reg.width
        return index


def _as_names(names: RegisterNames) -> Tuple[str, ...]:
    if isinstance(names, str):
        return (names,)
    return tuple(names)


def _check_layout(state: StateVector, layout: RegisterLayout) -> None:
    if state.num_qubits != layout.num_qubits:
        raise DimensionMismatchError("register layout qubits", layout.num_qubits, state.num_qubits)


def apply_function_oracle(
    state: StateVector,
    layout: RegisterLayout,
    in_regs: RegisterNames,
    out_reg: str,
    fn: Callable[[int], int],
) -> StateVector:
    """
    Apply ``|a>|b> -> |a>|b XOR fn(a)>``.

    ``a`` is the concatenated value of ``in_regs`` (an empty tuple makes ``fn``
    a constant evaluated at 0). ``fn`` must map into ``out_reg``'s width.
    """
    _check_layout(state, layout)
    in_names = _as_names(in_regs)
    if out_reg in in_names:
        raise LayoutError(f"Output register '{out_reg}' overlaps the input registers")
    out_width = layout[out_reg].width
    in_width = layout.width(in_names) if in_names else 0
    table = np.array([fn(a) for a in range(1 << in_width)], dtype=np.int64)
    if table.size and (table.min() < 0 or table.max() >> out_width):
        raise ParameterError(f"Oracle output does not fit the {out_width}-bit register '{out_reg}'")
    indices = np.arange(state.dim, dtype=np.int64)
    inputs = layout.values(indices, in_names) if in_names else np.zeros_like(indices)
    targets = indices ^ (table[inputs] << layout.shift(out_reg))
    amps = np.empty_like(state.amplitudes)
    amps[targets] = state.amplitudes
    return StateVector(amps)


def _apply_single_qubit(amps: np.ndarray, matrix: np.ndarray, qubit: int, n: int) -> np.ndarray:
    tensor = amps.reshape([2] * n)
    tensor = np.tensordot(matrix, tensor, axes=([1], [qubit]))
    return np.moveaxis(tensor, 0, qubit).reshape(-1)


def apply_hadamard(
    state: StateVector,
    layout: Optional[RegisterLayout] = None,
    register: Optional[str] = None,
) -> StateVector:
    """Hadamard on every qubit of ``register``, or on all qubits when no register is given."""
    n = state.num_qubits
    if register is None:
        qubits = range(n)
    else:
        if layout is None:
            raise LayoutError("A register name needs a layout")
        _check_layout(state, layout)
        reg = layout[register]
        qubits = range(reg.start, reg.start + reg.width)
    amps = np.array(state.amplitudes)
    for q in qubits:
        amps = _apply_single_qubit(amps, _H, q, n)
    return StateVector(amps)


def apply_hadamard_all(state: StateVector) -> StateVector:
    return apply_hadamard(state)


def apply_x(state: StateVector, layout: RegisterLayout, register: str, value: int) -> StateVector:
    """XOR the classical constant ``value`` into ``register``."""
    return apply_function_oracle(state, layout, (), register, lambda _: value)


def register_distribution(state: StateVector, layout: RegisterLayout, regs: RegisterNames) -> np.ndarray:
    """Born-rule marginal over the combined value of ``regs``."""
    _check_layout(state, layout)
    names = _as_names(regs)
    indices = np.arange(state.dim, dtype=np.int64)
    values = layout.values(indices, names)
    return np.bincount(values, weights=state.probabilities(), minlength=1 << layout.width(names))


def project_register(
    state: StateVector, layout: RegisterLayout, regs: RegisterNames, value: int
) -> Tuple[float, Optional[StateVector]]:
    """
    Project ``regs`` onto ``value``.

    :return: The outcome probability and the renormalized post-measurement
        state, or ``None`` for a zero-probability outcome.
    """
    _check_layout(state, layout)
    indices = np.arange(state.dim, dtype=np.int64)
    keep = layout.values(indices, _as_names(regs)) == value
    amps = np.where(keep, state.amplitudes, 0.0)
    prob = float(np.vdot(amps, amps).real)
    if prob <= TOLERANCE**2:
        return 0.0, None
    return prob, _normalized(amps)


def measure_register(
    state: StateVector,
    layout: RegisterLayout,
    regs: RegisterNames,
    rng: np.random.Generator,
) -> Tuple[BitVector, StateVector]:
    """Born-rule measurement of ``regs``. Returns the outcome and the collapsed state."""
    names = _as_names(regs)
    probs = register_distribution(state, layout, names)
    probs = probs / probs.sum()
    value = int(rng.choice(probs.size, p=probs))
    _, post = project_register(state, layout, names, value)
    return BitVector.from_int(value, layout.width(names)), post


@dataclass(frozen=True)
class HadamardLayer:
    layout: Optional[RegisterLayout] = None
    register: Optional[str] = None


@dataclass(frozen=True)
class XorOracle:
    layout: RegisterLayout
    in_regs: Tuple[str, ...]
    out_reg: str
    fn: Callable[[int], int]


Operation = Union[HadamardLayer, XorOracle]


def apply_op(state: StateVector, op: Operation) -> StateVector:
    if isinstance(op, HadamardLayer):
        return apply_hadamard(state, op.layout, op.register)
    if isinstance(op, XorOracle):
        return apply_function_oracle(state, op.layout, op.in_regs, op.out_reg, op.fn)
    raise UnknownOperationError(f"Unknown operation {op!r}")


def apply_inverse(state: StateVector, op: Operation) -> StateVector:
    """Undo ``op``. Both supported operations are involutions."""
    if isinstance(op, (HadamardLayer, XorOracle)):
        return apply_op(state, op)
    raise UnknownOperationError(f"No inverse known for {op!r}")


def dump_state(state: StateVector, atol: float = TOLERANCE) -> str:
    """Nonzero amplitudes as ``index real imag`` lines."""
    lines = []
    for index, amp in enumerate(state.amplitudes):
        if abs(amp) > atol:
            lines.append(f"{index} {amp.real:.12f} {amp.imag:.12f}")
    return "\n".join(lines) + "\n"


def load_state(text: str, num_qubits: int) -> StateVector:
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    for line in text.strip().splitlines():
        index, real, imag = line.split()
        amps[int(index)] = complex(float(real), float(imag))
    return StateVector(amps)


"""
Exact linear algebra over GF(2).

Vectors are big-endian bit tuples: ``bits[0]`` is the most significant bit of
the integer encoding, which is also the basis-state index convention used by
:mod:`qotp.quantum.statevector`. Subspaces are kept in reduced row-echelon form
with pivots leftmost, so two bases span the same subspace exactly when their
rows are identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from qotp.exceptions import (
    CapacityError,
    DimensionMismatchError,
    InvalidDimensionError,
    ParameterError,
)

MAX_ENUMERATION_DIM = 20


@dataclass(frozen=True)
class BitVector:
    """A vector of F_2^length."""

    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) < 1:
            raise ParameterError("BitVector length must be at least 1")
        if any(b not in (0, 1) for b in bits):
            raise ParameterError(f"BitVector entries must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls((0,) * length)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitVector":
        if value < 0 or value >> length:
            raise ParameterError(f"{value} does not fit in {length} bits")
        return cls(tuple((value >> (length - 1 - i)) & 1 for i in range(length)))

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        return cls(tuple(int(ch) for ch in text.strip()))

    @classmethod
    def from_array(cls, array: np.ndarray) -> "BitVector":
        return cls(tuple(int(b) for b in np.asarray(array).ravel()))

    @property
    def length(self) -> int:
        return len(self.bits)

    def to_int(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def to_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.uint8)

    def is_zero(self) -> bool:
        return not any(self.bits)

    def dot(self, other: "BitVector") -> int:
        _check_length("dot product", self.length, other.length)
        return bin(self.to_int() & other.to_int()).count("1") & 1

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.bits + other.bits)

    def split(self, width: int) -> List["BitVector"]:
        """Cut into consecutive pieces of ``width`` bits."""
        if width < 1 or self.length % width:
            raise DimensionMismatchError("split width", width, self.length)
        return [BitVector(self.bits[i : i + width]) for i in range(0, self.length, width)]

    def __xor__(self, other: "BitVector") -> "BitVector":
        _check_length("xor", self.length, other.length)
        return BitVector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def _check_length(what: str, expected: int, actual: int) -> None:
    if expected != actual:
        raise DimensionMismatchError(what, expected, actual)


def _row_reduce(matrix: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Gauss-Jordan elimination mod 2. Returns the nonzero RREF rows and pivot columns."""
    mat = np.array(matrix, dtype=np.uint8) % 2
    rows, cols = mat.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidates = np.nonzero(mat[r:, c])[0]
        if candidates.size == 0:
            continue
        pivot = r + int(candidates[0])
        if pivot != r:
            mat[[r, pivot]] = mat[[pivot, r]]
        others = np.nonzero(mat[:, c])[0]
        others = others[others != r]
        mat[others] ^= mat[r]
        pivots.append(c)
        r += 1
    return mat[:r], tuple(pivots)


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank over GF(2)."""
    if np.asarray(matrix).size == 0:
        return 0
    return len(_row_reduce(matrix)[1])


@dataclass(frozen=True)
class SubspaceBasis:
    """Canonical (RREF) basis of a subspace of F_2^ambient."""

    ambient: int
    rows: Tuple[BitVector, ...]

    def __post_init__(self):
        if self.ambient < 1:
            raise InvalidDimensionError(f"Ambient dimension must be positive, got {self.ambient}")
        rows = tuple(self.rows)
        for row in rows:
            _check_length("basis row length", self.ambient, row.length)
        if rows:
            matrix = np.array([row.bits for row in rows], dtype=np.uint8)
            reduced, pivots = _row_reduce(matrix)
            if len(pivots) != len(rows) or not np.array_equal(reduced, matrix):
                raise ParameterError("Basis rows must be linearly independent and in RREF; use rref()")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def matrix(self) -> np.ndarray:
        """The ``dim x ambient`` generator matrix as uint8."""
        if not self.rows:
            return np.zeros((0, self.ambient), dtype=np.uint8)
        return np.array([row.bits for row in self.rows], dtype=np.uint8)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(row.bits.index(1) for row in self.rows)

    @cached_property
    def _reducers(self) -> Tuple[Tuple[int, int], ...]:
        # (pivot mask, row) pairs in integer encoding
        return tuple(
            (1 << (self.ambient - 1 - p), row.to_int()) for p, row in zip(self.pivots, self.rows)
        )

    def contains_int(self, value: int) -> bool:
        for mask, row in self._reducers:
            if value & mask:
                value ^= row
        return value == 0

    def element_indices(self) -> np.ndarray:
        """Integer encodings of every element, in coefficient order."""
        return np.array([v.to_int() for v in enumerate_elements(self)], dtype=np.int64)

    def to_text(self) -> str:
        lines = [f"{self.ambient} {self.dim}"]
        lines.extend(str(row) for row in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SubspaceBasis":
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if not lines:
            raise ParameterError("Empty basis text")
        ambient, dim = (int(tok) for tok in lines[0].split())
        rows = [BitVector.from_string(line) for line in lines[1:]]
        _check_length("basis row count", dim, len(rows))
        return rref(rows, ambient=ambient)

    def __str__(self) -> str:
        return f"span{{{', '.join(str(r) for r in self.rows)}}} <= F2^{self.ambient}"


def rref(rows: Sequence[BitVector], ambient: Optional[int] = None) -> SubspaceBasis:
    """
    Canonical basis of the span of ``rows``.

    :param rows: Generating vectors, all of one length.
    :param ambient: Ambient dimension; required when ``rows`` is empty.
    :raises DimensionMismatchError: If the rows disagree in length.
    """
    rows = list(rows)
    if ambient is None:
        if not rows:
            raise ParameterError("rref of an empty row list needs an explicit ambient dimension")
        ambient = rows[0].length
    for row in rows:
        _check_length("row length", ambient, row.length)
    if not rows:
        return SubspaceBasis(ambient, ())
    reduced, _ = _row_reduce(np.array([row.bits for row in rows], dtype=np.uint8))
    return SubspaceBasis(ambient, tuple(BitVector.from_array(r) for r in reduced))


def full_space(ambient: int) -> SubspaceBasis:
    return SubspaceBasis(ambient, tuple(BitVector.from_array(r) for r in np.eye(ambient, dtype=np.uint8)))


def sample_uniform_subspace(ambient: int, dim: int, rng: np.random.Generator) -> SubspaceBasis:
    """
    Uniformly random ``dim``-dimensional subspace of F_2^ambient.

    Draws ``dim x ambient`` uniform bits until they have full rank. Every
    subspace has the same number of ordered generating tuples, so accepting
    full-rank draws is exactly uniform over subspaces.
    """
    if ambient < 1:
        raise InvalidDimensionError(f"Ambient dimension must be positive, got {ambient}")
    if not 0 <= dim <= ambient:
        raise InvalidDimensionError(f"Subspace dimension {dim} outside 0..{ambient}")
    if dim == 0:
        return SubspaceBasis(ambient, ())
    while True:
        draw = rng.integers(0, 2, size=(dim, ambient), dtype=np.uint8)
        reduced, pivots = _row_reduce(draw)
        if len(pivots) == dim:
            return SubspaceBasis(ambient, tuple(BitVector.from_array(r) for r in reduced))


def orthogonal_complement(basis: SubspaceBasis) -> SubspaceBasis:
    """RREF basis of ``{b : b.a = 0 for all a in A}``."""
    n = basis.ambient
    if basis.dim == 0:
        return full_space(n)
    mat = basis.matrix()
    pivots = basis.pivots
    pivot_set = set(pivots)
    null_rows = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        for row, col in enumerate(pivots):
            if mat[row, free]:
                vec[col] = 1
        null_rows.append(BitVector.from_array(vec))
    return rref(null_rows, ambient=n)


def contains(basis: SubspaceBasis, vector: BitVector) -> bool:
    """True iff ``vector`` lies in the span of ``basis``."""
    _check_length("membership test", basis.ambient, vector.length)
    return basis.contains_int(vector.to_int())


def _coefficients(dim: int) -> np.ndarray:
    counter = np.arange(1 << dim, dtype=np.int64)
    shifts = np.arange(dim - 1, -1, -1, dtype=np.int64)
    return ((counter[:, None] >> shifts) & 1).astype(np.int64)


def enumerate_elements(basis: SubspaceBasis) -> List[BitVector]:
    """All ``2**dim`` elements of the subspace, zero vector first."""
    if basis.dim > MAX_ENUMERATION_DIM:
        raise CapacityError("subspace enumeration", basis.dim, MAX_ENUMERATION_DIM)
    if basis.dim == 0:
        return [BitVector.zeros(basis.ambient)]
    elements = (_coefficients(basis.dim) @ basis.matrix().astype(np.int64)) % 2
    return [BitVector.from_array(row) for row in elements]


def sample_element(basis: SubspaceBasis, rng: np.random.Generator) -> BitVector:
    """Uniform element of the subspace (classical stand-in for a standard-basis measurement)."""
    if basis.dim == 0:
        return BitVector.zeros(basis.ambient)
    coeffs = rng.integers(0, 2, size=basis.dim, dtype=np.int64)
    return BitVector.from_array((coeffs @ basis.matrix().astype(np.int64)) % 2)


def span_of(vectors: Iterable[BitVector], ambient: int) -> set:
    """Brute-force span as a set of integer encodings (test oracle for small dimensions)."""
    span = {0}
    for v in vectors:
        _check_length("span vector", ambient, v.length)
        value = v.to_int()
        span |= {s ^ value for s in span}
    return span

"""
Randomized programs ``f : X x R -> Y`` and their truth-table files.

Outputs are integers in ``range(y_size)``. A truth-table file is plain text:
a header line ``x_bits r_bits y_width`` followed by ``2**(x_bits + r_bits)``
codewords, each a ``y_width``-character 0/1 string, in row-major ``(x, r)``
order. Whitespace and line breaks between codewords are free; ``#`` starts a
comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

import numpy as np

from qotp.exceptions import CapacityError, ParameterError, TableFormatError

MAX_TABLE_BITS = 24
MAX_ENTROPY_R_BITS = 20

ProgramBody = Callable[[int, int], int]


@dataclass(eq=False)
class ProgramSpec:
    """
    A total function ``body(x, r)`` on ``x_bits``-bit inputs and ``r_bits``-bit randomness.

    :ivar y_size: Size of the output alphabet; outputs lie in ``range(y_size)``.
    """

    name: str
    x_bits: int
    r_bits: int
    y_size: int
    body: ProgramBody
    _table: Optional[np.ndarray] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.x_bits < 0:
            raise ParameterError(f"Program '{self.name}' has negative x_bits")
        if self.r_bits < 1:
            raise ParameterError(f"Program '{self.name}' needs at least one bit of randomness")
        if self.y_size < 1:
            raise ParameterError(f"Program '{self.name}' needs a nonempty output alphabet")

    @property
    def output_width(self) -> int:
        """Codeword width with room for the reject codeword ``y_size``."""
        return self.y_size.bit_length()

    @property
    def value_width(self) -> int:
        """Width of the plain output encoding, without the reject codeword."""
        return max(1, (self.y_size - 1).bit_length())

    @property
    def bottom_codeword(self) -> int:
        return self.y_size

    def evaluate(self, x: int, r: int) -> int:
        if not 0 <= x < (1 << self.x_bits) or not 0 <= r < (1 << self.r_bits):
            raise ParameterError(f"({x}, {r}) outside the domain of program '{self.name}'")
        y = int(self.body(x, r))
        if not 0 <= y < self.y_size:
            raise ParameterError(f"Program '{self.name}' produced {y} outside range({self.y_size})")
        return y

    def table(self) -> np.ndarray:
        """The ``2**x_bits x 2**r_bits`` array of outputs."""
        if self._table is None:
            if self.x_bits + self.r_bits > MAX_TABLE_BITS:
                raise CapacityError(f"truth table of '{self.name}'", self.x_bits + self.r_bits, MAX_TABLE_BITS)
            table = np.array(
                [[self.evaluate(x, r) for r in range(1 << self.r_bits)] for x in range(1 << self.x_bits)],
                dtype=np.int64,
            )
            table.setflags(write=False)
            self._table = table
        return self._table

    def to_table_text(self) -> str:
        table = self.table()
        width = self.value_width
        lines = [f"{self.x_bits} {self.r_bits} {width}"]
        for row in table:
            lines.append(" ".join(format(int(y), f"0{width}b") for y in row))
        return "\n".join(lines) + "\n"


def program_from_table(name: str, x_bits: int, r_bits: int, y_width: int, table: np.ndarray) -> ProgramSpec:
    table = np.asarray(table, dtype=np.int64).reshape(1 << x_bits, 1 << r_bits)
    frozen = table.copy()
    frozen.setflags(write=False)
    spec = ProgramSpec(name, x_bits, r_bits, 1 << y_width, lambda x, r: int(frozen[x, r]))
    spec._table = frozen
    return spec


def parse_table(text: str, name: str = "table", path: Optional[str] = None) -> ProgramSpec:
    tokens: List[str] = []
    for line in text.splitlines():
        tokens.extend(line.split("#", 1)[0].split())
    if len(tokens) < 3:
        raise TableFormatError("missing header 'x_bits r_bits y_width'", path)
    try:
        x_bits, r_bits, y_width = (int(tok) for tok in tokens[:3])
    except ValueError as e:
        raise TableFormatError(f"header is not three integers: {tokens[:3]}", path) from e
    if x_bits < 0 or r_bits < 1 or y_width < 1:
        raise TableFormatError(f"invalid header values {x_bits} {r_bits} {y_width}", path)
    if x_bits + r_bits > MAX_TABLE_BITS:
        raise CapacityError("truth table", x_bits + r_bits, MAX_TABLE_BITS)
    codewords = tokens[3:]
    expected = 1 << (x_bits + r_bits)
    if len(codewords) != expected:
        raise TableFormatError(f"expected {expected} codewords, found {len(codewords)}", path)
    values = []
    for word in codewords:
        if len(word) != y_width or set(word) - {"0", "1"}:
            raise TableFormatError(f"bad codeword '{word}' for width {y_width}", path)
        values.append(int(word, 2))
    return program_from_table(name, x_bits, r_bits, y_width, np.array(values, dtype=np.int64))


def load_program(path: Union[str, Path]) -> ProgramSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise TableFormatError(f"cannot read table: {e}", str(path)) from e
    return parse_table(text, name=path.stem, path=str(path))


SHIPPED_TABLES = ("constant", "identity_r", "ai_stub")


def shipped_table_path(name: str) -> Path:
    if name not in SHIPPED_TABLES:
        raise ParameterError(f"Unknown shipped table '{name}', expected one of {SHIPPED_TABLES}")
    return Path(str(resources.files("qotp.otp").joinpath("tables", f"{name}.tt")))


def load_shipped_table(name: str) -> ProgramSpec:
    return load_program(shipped_table_path(name))


def constant_program(x_bits: int = 1, r_bits: int = 4, y_size: int = 1) -> ProgramSpec:
    return ProgramSpec("constant", x_bits, r_bits, y_size, lambda x, r: 0)


def identity_x_program(x_bits: int = 1, r_bits: int = 4) -> ProgramSpec:
    return ProgramSpec("identity-x", x_bits, r_bits, 1 << x_bits, lambda x, r: x)


def identity_r_program(x_bits: int = 1, r_bits: int = 4) -> ProgramSpec:
    return ProgramSpec("identity-r", x_bits, r_bits, 1 << r_bits, lambda x, r: r)


def r_mod_4_program(x_bits: int = 1, r_bits: int = 6) -> ProgramSpec:
    return ProgramSpec("r-mod-4", x_bits, r_bits, 4, lambda x, r: r % 4)


def collapse_program(k: int, x_bits: int = 3, r_bits: int = 6, prefix_bits: int = 1) -> ProgramSpec:
    """
    ``f_k(x; r) = (leading prefix_bits of x, r mod 2**k)``.

    Min-entropy is exactly ``k``; each output has ``2**(x_bits - prefix_bits)``
    preimages in ``x`` for a fixed oracle, so collapsing gets harder as ``k`` grows.
    """
    if not 0 <= k <= r_bits:
        raise ParameterError(f"collapse-k needs 0 <= k <= r_bits, got k={k}")
    if not 0 <= prefix_bits <= x_bits:
        raise ParameterError(f"prefix_bits must lie in 0..{x_bits}")
    shift = x_bits - prefix_bits
    mask = (1 << k) - 1
    return ProgramSpec(
        f"collapse-{k}",
        x_bits,
        r_bits,
        1 << (prefix_bits + k),
        lambda x, r: ((x >> shift) << k) | (r & mask),
    )


PROGRAM_FACTORIES: Dict[str, Callable[..., ProgramSpec]] = {
    "constant": constant_program,
    "identity-x": identity_x_program,
    "identity-r": identity_r_program,
    "r-mod-4": r_mod_4_program,
    "collapse-k": collapse_program,
}


def get_program(name: str, **params) -> ProgramSpec:
    """
    Resolve a named toy program, a shipped table (``table:<name>``) or a table file path.

    :raises ParameterError: For unknown names.
    """
    if name in PROGRAM_FACTORIES:
        return PROGRAM_FACTORIES[name](**params)
    if name.startswith("table:"):
        return load_shipped_table(name.split(":", 1)[1])
    if name.endswith(".tt"):
        return load_program(name)
    raise ParameterError(f"Unknown program '{name}', expected one of {sorted(PROGRAM_FACTORIES)}, table:<name> or a .tt path")

from abc import ABC, abstractmethod
from dataclasses import dataclass
from threading import Lock
from typing import Optional, Union

from qotp.exceptions import OutOfDomainError, ParameterError
from qotp.linalg.gf2 import BitVector


@dataclass(frozen=True)
class OracleSpec:
    """
    Shape of a hash ``H : X x {0,1}^m -> {0,1}^n``.

    :ivar x_bits: ``log2 |X|``; zero means a single-point ``X``.
    :ivar tag_bits: Tag length ``m``; zero means ``H`` takes ``x`` only.
    :ivar out_bits: Output length ``n``.
    """

    x_bits: int
    tag_bits: int
    out_bits: int

    def __post_init__(self):
        if self.x_bits < 0 or self.tag_bits < 0:
            raise ParameterError("Oracle input widths must be nonnegative")
        if self.out_bits < 1:
            raise ParameterError("Oracle output width must be positive")

    @property
    def input_bits(self) -> int:
        return self.x_bits + self.tag_bits


XInput = Union[int, BitVector]


class Oracle(ABC):
    """
    A deterministic function on the domain of :class:`OracleSpec`, with an
    honest query counter. Counters are monotone; a fresh count needs a fresh
    instance.
    """

    mode: str = "abstract"

    def __init__(self, spec: OracleSpec):
        self.spec = spec
        self._count = 0
        self._count_lock = Lock()

    @abstractmethod
    def _evaluate(self, x: int, z: int) -> int:
        pass

    def _check(self, x: int, z: int) -> None:
        if not 0 <= x < (1 << self.spec.x_bits):
            raise OutOfDomainError(f"x={x} outside the {self.spec.x_bits}-bit oracle domain")
        if not 0 <= z < (1 << self.spec.tag_bits):
            raise OutOfDomainError(f"tag outside the {self.spec.tag_bits}-bit oracle domain")

    def query_int(self, x: int, z: int = 0) -> int:
        self._check(x, z)
        with self._count_lock:
            self._count += 1
        return self._evaluate(x, z)

    def peek(self, x: int, z: int = 0) -> int:
        """Uncounted evaluation, for building the truth table of one coherent application."""
        self._check(x, z)
        return self._evaluate(x, z)

    def query(self, x: XInput, z: Optional[BitVector] = None) -> BitVector:
        if isinstance(x, BitVector):
            if x.length != self.spec.x_bits:
                raise OutOfDomainError(f"x has {x.length} bits, oracle expects {self.spec.x_bits}")
            x = x.to_int()
        if z is None:
            if self.spec.tag_bits:
                raise OutOfDomainError("A tag is required by this oracle")
            z_int = 0
        else:
            if z.length != self.spec.tag_bits:
                raise OutOfDomainError(f"Tag has {z.length} bits, oracle expects {self.spec.tag_bits}")
            z_int = z.to_int()
        return BitVector.from_int(self.query_int(x, z_int), self.spec.out_bits)

    @property
    def query_count(self) -> int:
        return self._count

    def __repr__(self) -> str:
        return f"{type(self).__name__}(mode={self.mode!r}, spec={self.spec}, queries={self._count})"


def oracle_query(oracle: Oracle, x: XInput, z: Optional[BitVector] = None) -> BitVector:
    return oracle.query(x, z)


def query_count(oracle: Oracle) -> int:
    return oracle.query_count

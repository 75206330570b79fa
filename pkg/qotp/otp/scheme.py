"""
One-time programs from one-time authentication.

``otp_keygen`` compiles ``f`` into a guarded program ``P(x, z)``: reject
unless ``z`` is a valid tag for ``x``, otherwise output ``f(x; H(x, z))``.
The obfuscation of ``P`` is modeled as black box: callers get an
:class:`ObfHandle` that can only evaluate. A user holding a fresh token signs
``x`` once and evaluates once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import partial
from threading import Lock
from typing import Callable, Optional, Tuple, Union

import numpy as np

from qotp.auth.subspace import AuthSecretKey, Signature, auth_keygen, auth_verify
from qotp.auth.token import AuthToken, auth_sign, auth_token_gen
from qotp.exceptions import CapacityError, LayoutError, StructuralError
from qotp.linalg.gf2 import BitVector
from qotp.oracle.base import Oracle, OracleSpec
from qotp.oracle.provider import DEFAULT_ORACLE_MODE, create_oracle
from qotp.otp.programs import MAX_ENTROPY_R_BITS, ProgramSpec
from qotp.quantum.statevector import RegisterLayout, StateVector, apply_function_oracle
from qotp.utils.log import log


class Reject(Enum):
    """The reject symbol; a value outside every output alphabet."""

    BOTTOM = "⊥"

    def __str__(self) -> str:
        return self.value


BOTTOM = Reject.BOTTOM

Output = Union[int, Reject]
XInput = Union[int, BitVector]


def _x_int(x: XInput, x_bits: int) -> int:
    if isinstance(x, BitVector):
        if x.length != x_bits:
            raise StructuralError(f"Input has {x.length} bits, program takes {x_bits}")
        return x.to_int()
    if not 0 <= x < (1 << x_bits):
        raise StructuralError(f"Input {x} outside the {x_bits}-bit domain")
    return int(x)


class GuardedProgram:
    """
    The circuit ``P``: Verify, then ``f(x; H(x, z))``.

    ``verifier`` decides acceptance of a :class:`Signature`. The real scheme
    uses ``auth_verify`` under the secret key; a simulator may plug in any
    other acceptance oracle.
    """

    def __init__(self, program: ProgramSpec, oracle: Oracle, verifier: Callable[[Signature], bool], lam: int):
        if oracle.spec.x_bits != program.x_bits or oracle.spec.out_bits != program.r_bits:
            raise StructuralError("Oracle shape does not match the program")
        self.program = program
        self.oracle = oracle
        self.verifier = verifier
        self.lam = lam

    @classmethod
    def from_secret_key(cls, sk: AuthSecretKey, program: ProgramSpec, oracle: Oracle) -> "GuardedProgram":
        return cls(program, oracle, partial(auth_verify, sk), sk.lam)

    @property
    def tag_bits(self) -> int:
        return self.program.x_bits * self.lam

    def _signature(self, x: int, z: BitVector) -> Signature:
        if z.length != self.tag_bits:
            raise StructuralError(f"Tag vector has {z.length} bits, expected {self.tag_bits}")
        return Signature.from_tag_vector(BitVector.from_int(x, self.program.x_bits), z)

    def evaluate(self, x: XInput, z: BitVector) -> Output:
        x = _x_int(x, self.program.x_bits)
        if not self.verifier(self._signature(x, z)):
            return BOTTOM
        r = self.oracle.query_int(x, z.to_int())
        return self.program.evaluate(x, r)

    def codeword(self, x: int, z: int) -> int:
        """Output codeword of ``P(x, z)`` without touching any query counter; ⊥ maps to ``y_size``."""
        sig = self._signature(x, BitVector.from_int(z, self.tag_bits))
        if not self.verifier(sig):
            return self.program.bottom_codeword
        return self.program.evaluate(x, self.oracle.peek(x, z))


class ObfHandle:
    """
    Black-box access to a guarded program.

    The handle exposes evaluation and the public shape of the program, nothing
    else; the program, key and oracle are held only by closures. Every call of
    :meth:`evaluate` and every coherent application counts as one query.
    """

    __slots__ = ("_eval", "_codeword", "_count", "_lock", "x_bits", "tag_bits", "output_width", "bottom_codeword")

    def __init__(self, guarded: GuardedProgram):
        self._eval = guarded.evaluate
        self._codeword = guarded.codeword
        self._count = 0
        self._lock = Lock()
        self.x_bits = guarded.program.x_bits
        self.tag_bits = guarded.tag_bits
        self.output_width = guarded.program.output_width
        self.bottom_codeword = guarded.program.bottom_codeword

    def _tick(self) -> None:
        with self._lock:
            self._count += 1

    def evaluate(self, x: XInput, z: BitVector) -> Output:
        self._tick()
        return self._eval(x, z)

    def evaluate_coherent(
        self,
        state: StateVector,
        layout: RegisterLayout,
        x_reg: str,
        z_reg: str,
        out_reg: str,
    ) -> StateVector:
        """``|x>|z>|b> -> |x>|z>|b XOR code(P(x, z))>`` on the named registers."""
        for name, width in ((x_reg, self.x_bits), (z_reg, self.tag_bits), (out_reg, self.output_width)):
            if layout[name].width != width:
                raise LayoutError(f"Register '{name}' has width {layout[name].width}, expected {width}")
        self._tick()
        tag_bits = self.tag_bits
        mask = (1 << tag_bits) - 1
        return apply_function_oracle(
            state,
            layout,
            (x_reg, z_reg),
            out_reg,
            lambda a: self._codeword(a >> tag_bits, a & mask),
        )

    def decode(self, codeword: int) -> Output:
        """Map a measured output codeword back to ``y`` or ⊥."""
        return BOTTOM if codeword >= self.bottom_codeword else codeword

    @property
    def query_count(self) -> int:
        return self._count

    def __repr__(self) -> str:
        return f"ObfHandle(x_bits={self.x_bits}, tag_bits={self.tag_bits}, queries={self._count})"


def otp_keygen(
    lam: int,
    program: ProgramSpec,
    rng: np.random.Generator,
    oracle_mode: str = DEFAULT_ORACLE_MODE,
    reject_zero_tag: bool = True,
    oracle: Optional[Oracle] = None,
) -> Tuple[AuthSecretKey, ObfHandle]:
    """
    Compile ``program`` into a secret key and an evaluation handle.

    The key is drawn first, then the oracle seed, so the key (and every
    token issued from it) depends on ``(lam, seed)`` and ``program.x_bits``
    only. ``oracle`` overrides the sampled hash.
    """
    sk = auth_keygen(lam, program.x_bits, rng, reject_zero_tag)
    oracle_seed = int(rng.integers(0, 2**63))
    if oracle is None:
        oracle = create_oracle(OracleSpec(program.x_bits, sk.tag_bits, program.r_bits), oracle_mode, oracle_seed)
    handle = ObfHandle(GuardedProgram.from_secret_key(sk, program, oracle))
    log.debug(f"Compiled program '{program.name}' at lam={lam} with {oracle.mode} oracle")
    return sk, handle


def otp_token_gen(sk: AuthSecretKey, representation: str = "classical") -> AuthToken:
    return auth_token_gen(sk, representation)


def guarded_eval(handle: ObfHandle, x: XInput, z: BitVector) -> Output:
    return handle.evaluate(x, z)


def otp_token_eval(x: XInput, token: AuthToken, handle: ObfHandle, rng: np.random.Generator) -> Output:
    """Sign ``x`` with ``token`` (consuming it) and evaluate the handle once."""
    x_vec = x if isinstance(x, BitVector) else BitVector.from_int(x, handle.x_bits)
    sig = auth_sign(x_vec, token, rng)
    return handle.evaluate(x_vec, sig.tag_vector)


@dataclass(frozen=True)
class EntropyProfile:
    """Min-entropy of ``f(x; r)`` under uniform ``r``, per input and overall."""

    program: str
    r_bits: int
    per_x: Tuple[float, ...]

    @property
    def tau(self) -> float:
        return min(self.per_x)

    @property
    def argmin_x(self) -> int:
        return int(np.argmin(self.per_x))


def min_entropy(program: ProgramSpec) -> EntropyProfile:
    """
    Brute-force min-entropy profile.

    :raises CapacityError: If ``r_bits`` exceeds the brute-force limit.
    """
    if program.r_bits > MAX_ENTROPY_R_BITS:
        raise CapacityError("min-entropy randomness bits", program.r_bits, MAX_ENTROPY_R_BITS)
    table = program.table()
    per_x = []
    for row in table:
        top = int(np.bincount(row).max())
        per_x.append(program.r_bits - math.log2(top))
    return EntropyProfile(program.name, program.r_bits, tuple(per_x))

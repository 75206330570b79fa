from __future__ import annotations

import hashlib
from abc import ABC, abstractmethod
from threading import Lock
from typing import Callable, List, Optional, Tuple

import numpy as np

from qotp.auth.subspace import AuthSecretKey, Signature
from qotp.exceptions import OneTimeViolationError, ParameterError, StructuralError
from qotp.linalg.gf2 import BitVector, SubspaceBasis, sample_element
from qotp.quantum.statevector import (
    RegisterLayout,
    StateVector,
    apply_hadamard_all,
    measure_register,
    prepare_subspace_state,
)
from qotp.utils.log import log

REPRESENTATIONS = ("classical", "statevector")


class AuthToken(ABC):
    """
    A one-shot signing capability.

    Consuming is atomic: among concurrent :meth:`sign` calls exactly one
    succeeds and the rest raise :class:`OneTimeViolationError`.
    """

    representation: str = "abstract"

    def __init__(self, lam: int, ell: int, fingerprint: str):
        self.lam = lam
        self.ell = ell
        self.token_id = f"tk-{fingerprint[:12]}"
        self._consumed = False
        self._lock = Lock()

    @property
    def consumed(self) -> bool:
        return self._consumed

    def _consume(self) -> None:
        with self._lock:
            if self._consumed:
                raise OneTimeViolationError(self.token_id)
            self._consumed = True

    def _check_message(self, x: BitVector) -> None:
        if x.length != self.ell:
            raise StructuralError(f"Token signs {self.ell}-bit messages, got {x.length} bits")

    def sign(self, x: BitVector, rng: np.random.Generator) -> Signature:
        self._check_message(x)
        self._consume()
        sig = self._sign(x, rng)
        log.debug(f"Token {self.token_id} signed message {x}")
        return sig

    @abstractmethod
    def _sign(self, x: BitVector, rng: np.random.Generator) -> Signature:
        pass

    @abstractmethod
    def serialize(self) -> bytes:
        """Opaque digest of the issued token, for comparing issuances without revealing the key."""
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}(id={self.token_id}, lam={self.lam}, ell={self.ell}, consumed={self._consumed})"


def _make_bit_signer(subspace: SubspaceBasis, dual: SubspaceBasis) -> Callable[[int, np.random.Generator], BitVector]:
    def sign_bit(bit: int, rng: np.random.Generator) -> BitVector:
        return sample_element(dual if bit else subspace, rng)

    return sign_bit


class ClassicalSimToken(AuthToken):
    """
    Classical simulation of a subspace-state token.

    Signing samples a uniform element of the subspace (bit 0) or of its
    complement (bit 1), which is the distribution the corresponding
    measurement produces. The bases live only inside per-bit closures.
    """

    representation = "classical"

    def __init__(self, sk: AuthSecretKey):
        digest = hashlib.blake2b(
            "".join(basis.to_text() for basis in sk.subspaces).encode("utf-8"),
            digest_size=32,
            person=b"qotp-token",
        ).digest()
        super().__init__(sk.lam, sk.ell, digest.hex())
        self._digest = digest
        self._signers: Tuple[Callable, ...] = tuple(
            _make_bit_signer(basis, dual) for basis, dual in zip(sk.subspaces, sk.duals)
        )

    def _sign(self, x: BitVector, rng: np.random.Generator) -> Signature:
        tags = tuple(signer(bit, rng) for signer, bit in zip(self._signers, x.bits))
        return Signature(x, tags)

    def serialize(self) -> bytes:
        return self._digest


class StatevectorToken(AuthToken):
    """
    Exact token: one ``lam``-qubit subspace state per message bit.

    Signing bit 1 applies the Hadamard layer before measuring in the standard
    basis. Coherent adversaries take the registers out with
    :meth:`release_state`, which also consumes the token.
    """

    representation = "statevector"

    def __init__(self, sk: AuthSecretKey):
        components = tuple(prepare_subspace_state(basis) for basis in sk.subspaces)
        digest = hashlib.blake2b(b"".join(c.amplitudes.tobytes() for c in components), digest_size=32).digest()
        super().__init__(sk.lam, sk.ell, digest.hex())
        self._digest = digest
        self._components: Tuple[StateVector, ...] = components
        self._layout = RegisterLayout.from_widths([("tag", sk.lam)])

    def _sign(self, x: BitVector, rng: np.random.Generator) -> Signature:
        tags: List[BitVector] = []
        for bit, component in zip(x.bits, self._components):
            state = apply_hadamard_all(component) if bit else component
            outcome, _ = measure_register(state, self._layout, "tag", rng)
            tags.append(outcome)
        return Signature(x, tuple(tags))

    def release_state(self) -> Tuple[StateVector, ...]:
        """Hand the token registers to the caller; the token is consumed."""
        self._consume()
        log.debug(f"Token {self.token_id} released to a coherent holder")
        return self._components

    def serialize(self) -> bytes:
        return self._digest


def auth_token_gen(sk: AuthSecretKey, representation: str = "classical") -> AuthToken:
    """
    Issue a fresh token for ``sk``.

    :raises ParameterError: For an unknown representation.
    :raises CapacityError: For statevector tokens wider than the simulator.
    """
    if representation == "classical":
        return ClassicalSimToken(sk)
    if representation == "statevector":
        return StatevectorToken(sk)
    raise ParameterError(f"Unknown token representation '{representation}', expected one of {REPRESENTATIONS}")


def auth_sign(x: BitVector, token: AuthToken, rng: np.random.Generator) -> Signature:
    """Sign ``x`` with ``token``, consuming it."""
    return token.sign(x, rng)


def token_fingerprint(token: AuthToken, length: Optional[int] = None) -> str:
    digest = hashlib.blake2b(token.serialize(), digest_size=16).hexdigest()
    return digest[:length] if length else digest

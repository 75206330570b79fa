"""
One-time authentication from hidden subspaces.

A single-bit key is a uniformly random ``lam/2``-dimensional subspace ``A`` of
F_2^lam. Signing bit 0 yields an element of ``A``; signing bit 1 yields an
element of the orthogonal complement. Messages of ``ell`` bits run ``ell``
independent single-bit schemes side by side, so a tag vector has ``ell * lam``
bits laid out in message-bit order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from qotp.exceptions import ParameterError, StructuralError
from qotp.linalg.gf2 import (
    BitVector,
    SubspaceBasis,
    orthogonal_complement,
    sample_uniform_subspace,
)
from qotp.utils.log import log


@dataclass(frozen=True)
class AuthSecretKey:
    """
    Secret verification key.

    :ivar lam: Security parameter, even.
    :ivar ell: Message length in bits.
    :ivar subspaces: One hidden subspace per message bit, each of dimension ``lam/2``.
    :ivar reject_zero_tag: Verify rejects an all-zero tag. Turning it off is an
        ablation that admits the token-free forgery ``(0, 0), (1, 0)``.
    """

    lam: int
    ell: int
    subspaces: Tuple[SubspaceBasis, ...]
    reject_zero_tag: bool = True

    def __post_init__(self):
        check_auth_params(self.lam, self.ell)
        object.__setattr__(self, "subspaces", tuple(self.subspaces))
        if len(self.subspaces) != self.ell:
            raise ParameterError(f"Expected {self.ell} subspaces, got {len(self.subspaces)}")
        for basis in self.subspaces:
            if basis.ambient != self.lam or basis.dim != self.lam // 2:
                raise ParameterError(f"Key subspace must be {self.lam // 2}-dimensional in F2^{self.lam}, got {basis}")

    @cached_property
    def duals(self) -> Tuple[SubspaceBasis, ...]:
        return tuple(orthogonal_complement(basis) for basis in self.subspaces)

    @property
    def tag_bits(self) -> int:
        return self.ell * self.lam

    def subspace_for(self, index: int, bit: int) -> SubspaceBasis:
        """The subspace a tag for message bit ``index`` with value ``bit`` must lie in."""
        return self.duals[index] if bit else self.subspaces[index]

    def __repr__(self) -> str:
        return f"AuthSecretKey(lam={self.lam}, ell={self.ell}, reject_zero_tag={self.reject_zero_tag})"


def check_auth_params(lam: int, ell: int) -> None:
    if lam < 2 or lam % 2:
        raise ParameterError(f"Security parameter must be even and at least 2, got {lam}")
    if ell < 1:
        raise ParameterError(f"Message length must be at least 1, got {ell}")


@dataclass(frozen=True)
class Signature:
    """A message and one tag per message bit. Validity is :func:`auth_verify`'s job."""

    message: BitVector
    tags: Tuple[BitVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        if len(self.tags) != self.message.length:
            raise StructuralError(f"Signature has {len(self.tags)} tags for a {self.message.length}-bit message")
        if len({tag.length for tag in self.tags}) > 1:
            raise StructuralError("Signature tags differ in length")

    @property
    def lam(self) -> int:
        return self.tags[0].length

    @property
    def tag_vector(self) -> BitVector:
        """Concatenated tags, ``ell * lam`` bits."""
        bits: Tuple[int, ...] = ()
        for tag in self.tags:
            bits += tag.bits
        return BitVector(bits)

    @classmethod
    def from_tag_vector(cls, message: BitVector, z: BitVector) -> "Signature":
        if z.length % message.length:
            raise StructuralError(f"Tag vector of {z.length} bits does not split into {message.length} tags")
        return cls(message, tuple(z.split(z.length // message.length)))

    def to_text(self) -> str:
        return "\n".join([str(self.message)] + [str(tag) for tag in self.tags]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Signature":
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if not lines:
            raise StructuralError("Empty signature text")
        return cls(BitVector.from_string(lines[0]), tuple(BitVector.from_string(line) for line in lines[1:]))

    def __str__(self) -> str:
        return f"({self.message}, {' '.join(str(tag) for tag in self.tags)})"


def auth_keygen(
    lam: int,
    ell: int,
    rng: np.random.Generator,
    reject_zero_tag: bool = True,
) -> AuthSecretKey:
    """
    Sample ``ell`` independent uniform ``lam/2``-dimensional subspaces.

    :raises ParameterError: If ``lam`` is odd or below 2, or ``ell < 1``.
    """
    check_auth_params(lam, ell)
    subspaces = [sample_uniform_subspace(lam, lam // 2, rng) for _ in range(ell)]
    log.debug(f"Sampled auth key lam={lam} ell={ell}")
    return AuthSecretKey(lam, ell, tuple(subspaces), reject_zero_tag)


def verify_tag(sk: AuthSecretKey, index: int, bit: int, tag: BitVector) -> bool:
    """Single-bit Verify for message position ``index``."""
    if sk.reject_zero_tag and tag.is_zero():
        return False
    return sk.subspace_for(index, bit).contains_int(tag.to_int())


def _check_structure(sk: AuthSecretKey, sig: Signature) -> None:
    if sig.message.length != sk.ell:
        raise StructuralError(f"Message has {sig.message.length} bits, key signs {sk.ell}")
    if sig.lam != sk.lam:
        raise StructuralError(f"Tags have {sig.lam} bits, key expects {sk.lam}")


def auth_verify(sk: AuthSecretKey, sig: Signature) -> bool:
    """
    Accept iff every tag is nonzero and lies in the subspace its message bit selects.

    :raises StructuralError: If the signature's shape does not match the key.
    """
    _check_structure(sk, sig)
    return all(verify_tag(sk, i, bit, tag) for i, (bit, tag) in enumerate(zip(sig.message.bits, sig.tags)))


def count_accepting_tags(sk: AuthSecretKey, index: int, bit: int) -> int:
    """Number of tags Verify accepts for one message bit."""
    size = 1 << sk.subspace_for(index, bit).dim
    return size - 1 if sk.reject_zero_tag else size


def accepting_fraction(sk: AuthSecretKey, message: BitVector) -> float:
    """Probability that a uniform tag vector verifies for ``message``."""
    total = 1.0
    for i, bit in enumerate(message.bits):
        total *= count_accepting_tags(sk, i, bit) / (1 << sk.lam)
    return total

import hashlib

from qotp.exceptions import ParameterError
from qotp.oracle.base import Oracle, OracleSpec

_PERSON = b"qotp-H"
MAX_OUT_BITS = 512


class KeyedOracle(Oracle):
    """Keyed pseudorandom function standing in for the random oracle (BLAKE2b in keyed mode)."""

    mode = "keyed"

    def __init__(self, spec: OracleSpec, key: bytes):
        super().__init__(spec)
        if not 1 <= len(key) <= 64:
            raise ParameterError("Keyed oracle key must be 1..64 bytes")
        if spec.out_bits > MAX_OUT_BITS:
            raise ParameterError(f"Keyed oracle output is limited to {MAX_OUT_BITS} bits")
        self._key = bytes(key)
        self._out_bytes = (spec.out_bits + 7) // 8
        self._x_bytes = (spec.x_bits + 7) // 8 or 1
        self._z_bytes = (spec.tag_bits + 7) // 8 or 1

    def _evaluate(self, x: int, z: int) -> int:
        digest = hashlib.blake2b(
            x.to_bytes(self._x_bytes, "big") + z.to_bytes(self._z_bytes, "big"),
            digest_size=self._out_bytes,
            key=self._key,
            person=_PERSON,
        ).digest()
        return int.from_bytes(digest, "big") >> (8 * self._out_bytes - self.spec.out_bits)

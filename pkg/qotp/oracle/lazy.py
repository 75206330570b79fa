from threading import Lock
from typing import Dict, Tuple

import numpy as np

from qotp.oracle.base import Oracle, OracleSpec


class LazyRandomOracle(Oracle):
    """
    Random function sampled point by point on first query.

    Reads of the memo table need no lock; sampling a fresh point does, and the
    insert is insert-if-absent so concurrent first queries agree on one value.
    """

    mode = "lazy"

    def __init__(self, spec: OracleSpec, rng: np.random.Generator):
        super().__init__(spec)
        self._rng = rng
        self._table: Dict[Tuple[int, int], int] = {}
        self._table_lock = Lock()
        self._out_bytes = (spec.out_bits + 7) // 8

    def _sample(self) -> int:
        raw = int.from_bytes(self._rng.bytes(self._out_bytes), "big")
        return raw >> (8 * self._out_bytes - self.spec.out_bits)

    def _evaluate(self, x: int, z: int) -> int:
        key = (x, z)
        value = self._table.get(key)
        if value is not None:
            return value
        with self._table_lock:
            if key not in self._table:
                self._table[key] = self._sample()
            return self._table[key]

    @property
    def points_sampled(self) -> int:
        return len(self._table)

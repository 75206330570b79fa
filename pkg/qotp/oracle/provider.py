import numpy as np

from qotp.exceptions import ParameterError
from qotp.oracle.base import Oracle, OracleSpec
from qotp.oracle.keyed import KeyedOracle
from qotp.oracle.lazy import LazyRandomOracle

ORACLE_MODES = ("lazy", "keyed")
DEFAULT_ORACLE_MODE = "lazy"
KEY_BYTES = 32


def create_oracle(spec: OracleSpec, mode: str, seed: int) -> Oracle:
    """Build a fresh oracle instance bound to one scheme instance."""
    if mode == "lazy":
        return LazyRandomOracle(spec, np.random.default_rng(seed))
    if mode == "keyed":
        key = np.random.default_rng(seed).bytes(KEY_BYTES)
        return KeyedOracle(spec, key)
    raise ParameterError(f"Unknown oracle mode '{mode}', expected one of {ORACLE_MODES}")

from .base import Oracle, OracleSpec, oracle_query, query_count
from .keyed import KeyedOracle
from .lazy import LazyRandomOracle
from .provider import DEFAULT_ORACLE_MODE, ORACLE_MODES, create_oracle

__all__ = [
    "Oracle",
    "OracleSpec",
    "oracle_query",
    "query_count",
    "KeyedOracle",
    "LazyRandomOracle",
    "DEFAULT_ORACLE_MODE",
    "ORACLE_MODES",
    "create_oracle",
]

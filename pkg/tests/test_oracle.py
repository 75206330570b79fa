from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from scipy.stats import chisquare

from qotp.exceptions import OutOfDomainError, ParameterError
from qotp.linalg import BitVector
from qotp.oracle import KeyedOracle, LazyRandomOracle, OracleSpec, create_oracle, oracle_query, query_count


@pytest.fixture(params=["lazy", "keyed"])
def oracle(request):
    return create_oracle(OracleSpec(x_bits=2, tag_bits=4, out_bits=3), request.param, seed=17)


def test_oracle_is_consistent(oracle):
    """Test that repeated queries agree and are counted"""
    first = oracle.query_int(1, 9)
    assert all(oracle.query_int(1, 9) == first for _ in range(5))
    assert oracle.query_count == 6
    assert oracle.peek(1, 9) == first
    assert oracle.query_count == 6


def test_bitvector_queries(oracle):
    """Test the BitVector interface and its domain checks"""
    out = oracle_query(oracle, BitVector.from_int(3, 2), BitVector.from_int(5, 4))
    assert out.length == 3
    assert out.to_int() == oracle.peek(3, 5)
    assert query_count(oracle) == 1
    with pytest.raises(OutOfDomainError):
        oracle.query(BitVector.from_int(3, 3), BitVector.from_int(5, 4))
    with pytest.raises(OutOfDomainError):
        oracle.query(3)
    with pytest.raises(OutOfDomainError):
        oracle.query(3, BitVector.from_int(5, 5))
    with pytest.raises(OutOfDomainError):
        oracle.query_int(4, 0)


def test_same_seed_same_function():
    """Test that two oracles from one seed agree when queried in the same order"""
    spec = OracleSpec(3, 2, 8)
    for mode in ("lazy", "keyed"):
        a, b = create_oracle(spec, mode, 5), create_oracle(spec, mode, 5)
        points = [(x, z) for x in range(8) for z in range(4)]
        assert [a.query_int(*p) for p in points] == [b.query_int(*p) for p in points]


def test_keyed_oracle_ignores_query_order():
    """Test that the keyed oracle is a fixed function of its key"""
    spec = OracleSpec(3, 0, 16)
    a, b = create_oracle(spec, "keyed", 8), create_oracle(spec, "keyed", 8)
    forward = [a.query_int(x) for x in range(8)]
    backward = [b.query_int(x) for x in reversed(range(8))]
    assert forward == backward[::-1]
    other = create_oracle(spec, "keyed", 9)
    assert [other.query_int(x) for x in range(8)] != forward


@pytest.mark.parametrize("mode", ["lazy", "keyed"])
def test_outputs_are_uniform(mode):
    """Test that outputs over many fresh points look uniform"""
    oracle = create_oracle(OracleSpec(12, 0, 3), mode, 123)
    counts = np.bincount([oracle.query_int(x) for x in range(4000)], minlength=8)
    assert chisquare(counts).pvalue > 1e-4


def test_concurrent_first_queries_agree():
    """Test that racing first queries see a single sampled value"""
    oracle = LazyRandomOracle(OracleSpec(4, 4, 32), np.random.default_rng(0))
    with ThreadPoolExecutor(max_workers=8) as pool:
        values = list(pool.map(lambda _: oracle.query_int(7, 7), range(64)))
    assert len(set(values)) == 1
    assert oracle.points_sampled == 1
    assert oracle.query_count == 64


def test_invalid_construction():
    """Test spec, key and mode validation"""
    with pytest.raises(ParameterError):
        OracleSpec(1, 0, 0)
    with pytest.raises(ParameterError):
        OracleSpec(-1, 0, 4)
    with pytest.raises(ParameterError):
        KeyedOracle(OracleSpec(1, 0, 4), b"")
    with pytest.raises(ParameterError):
        KeyedOracle(OracleSpec(1, 0, 1024), b"key")
    with pytest.raises(ParameterError):
        create_oracle(OracleSpec(1, 0, 4), "quantum", 0)


def test_single_point_domain():
    """Test x_bits = 0: the only input is 0"""
    oracle = create_oracle(OracleSpec(0, 0, 5), "lazy", 1)
    assert 0 <= oracle.query_int(0) < 32
    with pytest.raises(OutOfDomainError):
        oracle.query_int(1)

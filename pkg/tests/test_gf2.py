import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from qotp.exceptions import CapacityError, DimensionMismatchError, InvalidDimensionError, ParameterError
from qotp.linalg import (
    BitVector,
    SubspaceBasis,
    contains,
    enumerate_elements,
    full_space,
    gf2_rank,
    orthogonal_complement,
    rref,
    sample_element,
    sample_uniform_subspace,
    span_of,
)


def bv(text: str) -> BitVector:
    return BitVector.from_string(text)


subspace_params = st.sampled_from([2, 4, 6, 8]).flatmap(
    lambda lam: st.tuples(st.just(lam), st.integers(0, lam), st.integers(0, 2**32 - 1))
)


def test_bitvector_is_big_endian():
    """Test that bit 0 is the most significant bit"""
    v = BitVector.from_int(6, 4)
    assert v.bits == (0, 1, 1, 0)
    assert v.to_int() == 6
    assert str(v) == "0110"
    assert BitVector.zeros(3).is_zero()


def test_bitvector_rejects_bad_input():
    """Test construction errors"""
    with pytest.raises(ParameterError):
        BitVector((0, 2))
    with pytest.raises(ParameterError):
        BitVector(())
    with pytest.raises(ParameterError):
        BitVector.from_int(16, 4)


def test_bitvector_arithmetic():
    """Test dot product, xor and split"""
    assert bv("1101").dot(bv("1011")) == 0
    assert bv("1100").dot(bv("0100")) == 1
    assert str(bv("1100") ^ bv("1010")) == "0110"
    assert [str(p) for p in bv("10110100").split(4)] == ["1011", "0100"]
    with pytest.raises(DimensionMismatchError):
        bv("10") ^ bv("101")
    with pytest.raises(DimensionMismatchError):
        bv("1011").dot(bv("10"))
    with pytest.raises(DimensionMismatchError):
        bv("10110100").split(3)


def test_rref_is_canonical():
    """Test a hand-reduced example and that equal spans give equal bases"""
    basis = rref([bv("1100"), bv("0110"), bv("1010")])
    assert [str(r) for r in basis.rows] == ["1010", "0110"]
    assert basis.dim == 2
    assert basis.pivots == (0, 1)

    a, b = bv("1101"), bv("0111")
    assert rref([a, b]) == rref([a ^ b, b]) == rref([b, a, a ^ b])


def test_rref_errors():
    """Test mixed lengths and empty input"""
    with pytest.raises(DimensionMismatchError):
        rref([bv("101"), bv("10")])
    with pytest.raises(ParameterError):
        rref([])
    assert rref([], ambient=5).dim == 0


def test_subspace_basis_requires_rref_rows():
    """Test that a non-reduced basis is refused"""
    with pytest.raises(ParameterError):
        SubspaceBasis(4, (bv("1100"), bv("0110")))


def test_gf2_rank():
    """Test rank over GF(2), where 1+1 = 0"""
    assert gf2_rank(np.array([[1, 1], [1, 1]])) == 1
    assert gf2_rank(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    assert gf2_rank(np.eye(5, dtype=np.uint8)) == 5


def test_sample_uniform_subspace_dimensions():
    """Test dimension handling, including the edge cases"""
    rng = np.random.default_rng(1)
    assert sample_uniform_subspace(6, 3, rng).dim == 3
    assert sample_uniform_subspace(6, 0, rng).dim == 0
    assert sample_uniform_subspace(6, 6, rng) == full_space(6)
    with pytest.raises(InvalidDimensionError):
        sample_uniform_subspace(4, 5, rng)
    with pytest.raises(InvalidDimensionError):
        sample_uniform_subspace(0, 0, rng)


def test_sample_uniform_subspace_is_uniform():
    """Test that all 35 two-dimensional subspaces of F_2^4 come up equally often"""
    rng = np.random.default_rng(2024)
    counts = {}
    for _ in range(3500):
        basis = sample_uniform_subspace(4, 2, rng)
        counts[basis.to_text()] = counts.get(basis.to_text(), 0) + 1
    assert len(counts) == 35
    assert chisquare(list(counts.values())).pvalue > 1e-4


@settings(max_examples=40, deadline=None)
@given(subspace_params)
def test_orthogonal_complement(params):
    """Test dimension, orthogonality and that the complement is an involution"""
    lam, dim, seed = params
    basis = sample_uniform_subspace(lam, dim, np.random.default_rng(seed))
    dual = orthogonal_complement(basis)
    assert dual.dim == lam - dim
    for a in basis.rows:
        for b in dual.rows:
            assert a.dot(b) == 0
    assert orthogonal_complement(dual) == basis


@settings(max_examples=40, deadline=None)
@given(subspace_params)
def test_contains_matches_brute_force_span(params):
    """Test membership against an explicit span for every vector"""
    lam, dim, seed = params
    basis = sample_uniform_subspace(lam, dim, np.random.default_rng(seed))
    span = span_of(basis.rows, lam)
    assert len(span) == 2**dim
    for value in range(2**lam):
        assert contains(basis, BitVector.from_int(value, lam)) == (value in span)


def test_enumerate_elements():
    """Test the element list: 2^d distinct vectors, zero first"""
    basis = sample_uniform_subspace(6, 3, np.random.default_rng(5))
    elements = enumerate_elements(basis)
    assert len(elements) == 8
    assert elements[0].is_zero()
    assert len({e.to_int() for e in elements}) == 8
    assert all(contains(basis, e) for e in elements)
    assert [e.to_int() for e in enumerate_elements(rref([], ambient=3))] == [0]


def test_enumerate_elements_capacity():
    """Test that enumerating a too large subspace fails loudly"""
    with pytest.raises(CapacityError):
        enumerate_elements(full_space(21))


def test_sample_element_stays_in_subspace():
    """Test random elements are members"""
    rng = np.random.default_rng(9)
    basis = sample_uniform_subspace(8, 4, rng)
    for _ in range(50):
        assert contains(basis, sample_element(basis, rng))


def test_basis_text_format():
    """Test the textual basis form used by token fingerprints"""
    basis = rref([bv("0110"), bv("1010")])
    assert SubspaceBasis.from_text(basis.to_text()) == basis


def test_sample_element_is_uniform():
    """Test that sampled elements cover the subspace evenly"""
    rng = np.random.default_rng(77)
    basis = sample_uniform_subspace(6, 3, rng)
    index = {e.to_int(): i for i, e in enumerate(enumerate_elements(basis))}
    counts = np.zeros(len(index))
    for _ in range(4000):
        counts[index[sample_element(basis, rng).to_int()]] += 1
    assert chisquare(counts).pvalue > 1e-4


@settings(max_examples=30, deadline=None)
@given(subspace_params)
def test_enumerated_elements_form_a_group(params):
    """Test that the element list has 2^d members and is closed under xor"""
    lam, dim, seed = params
    basis = sample_uniform_subspace(lam, dim, np.random.default_rng(seed))
    elements = {e.to_int() for e in enumerate_elements(basis)}
    assert len(elements) == 2**dim
    assert 0 in elements
    assert {a ^ b for a in elements for b in elements} == elements


row_sets = st.integers(1, 8).flatmap(
    lambda lam: st.tuples(st.just(lam), st.lists(st.integers(0, 2**lam - 1), min_size=1, max_size=6))
)


@settings(max_examples=60, deadline=None)
@given(row_sets)
def test_rref_preserves_the_span(params):
    """Test that row reduction of arbitrary rows keeps their span and drops dependent rows"""
    lam, values = params
    rows = [BitVector.from_int(value, lam) for value in values]
    basis = rref(rows)
    span = span_of(rows, lam)
    assert {e.to_int() for e in enumerate_elements(basis)} == span
    assert 2**basis.dim == len(span)
    assert basis.dim == gf2_rank(np.array([row.bits for row in rows], dtype=np.uint8))

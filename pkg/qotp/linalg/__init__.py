from .gf2 import (
    MAX_ENUMERATION_DIM,
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

__all__ = [
    "MAX_ENUMERATION_DIM",
    "BitVector",
    "SubspaceBasis",
    "contains",
    "enumerate_elements",
    "full_space",
    "gf2_rank",
    "orthogonal_complement",
    "rref",
    "sample_element",
    "sample_uniform_subspace",
    "span_of",
]

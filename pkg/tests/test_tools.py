import pytest

from qotp.utils.tools import SEED_MASK, canonical_json, dict_md5, split_list, trial_seed


def test_split_list():
    """Test chunking, including a short last chunk"""
    assert split_list(list(range(7)), 3) == [[0, 1, 2], [3, 4, 5], [6]]
    assert split_list([], 3) == []
    with pytest.raises(ValueError):
        split_list([1, 2], 0)


def test_trial_seed():
    """Test that trial seeds are the experiment seed XOR the index"""
    assert trial_seed(10, 3) == 9
    assert trial_seed(SEED_MASK, 1) == SEED_MASK - 1
    with pytest.raises(ValueError):
        trial_seed(-1, 0)


def test_canonical_json_ignores_key_order():
    """Test deterministic serialization and field exclusion"""
    a = {"b": 1, "a": [1, 2], "c": {"y": 1, "x": 2}}
    b = {"c": {"x": 2, "y": 1}, "a": [1, 2], "b": 1}
    assert canonical_json(a) == canonical_json(b) == '{"a":[1,2],"b":1,"c":{"x":2,"y":1}}'
    assert canonical_json(a, exclude_fields=["c"]) == '{"a":[1,2],"b":1}'
    with pytest.raises(TypeError):
        canonical_json(["not", "a", "dict"])
    with pytest.raises(TypeError):
        canonical_json({"x": object()})


def test_dict_md5():
    """Test the provenance fingerprint"""
    assert dict_md5({"seed": 1, "lam": 4}) == dict_md5({"lam": 4, "seed": 1})
    assert dict_md5({"seed": 1}) != dict_md5({"seed": 2})
    assert len(dict_md5({})) == 32

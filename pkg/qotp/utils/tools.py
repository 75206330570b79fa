import json
import hashlib
from typing import Any, Dict, List, Optional

# --- Type Aliases for Clarity ---
InputListType = List[Any]
ChunkedListType = List[List[Any]]
DictContent = Dict[str, Any]
ExcludeFields = Optional[List[str]]

SEED_MASK = (1 << 64) - 1


def split_list(input_list: InputListType, chunk_size: int) -> ChunkedListType:
    """
    Splits a list into smaller chunks of a specified maximum size.

    Used to hand contiguous blocks of trial indices to worker threads while
    keeping the reassembled results in trial order.

    :param input_list: The list to be split.
    :type input_list: typing.List[typing.Any]
    :param chunk_size: The maximum size of each chunk. Must be a positive integer.
    :type chunk_size: int
    :return: A list of lists, where each inner list is a chunk.
    :rtype: typing.List[typing.List[typing.Any]]
    :raises ValueError: If `chunk_size` is not a positive integer.
    """
    if not isinstance(chunk_size, int) or chunk_size <= 0:
        raise ValueError("chunk_size must be a positive integer.")
    if not input_list:
        return []
    return [input_list[i : i + chunk_size] for i in range(0, len(input_list), chunk_size)]


def trial_seed(experiment_seed: int, trial_index: int) -> int:
    """
    Seed of one trial: the experiment seed XOR the trial index.

    :param experiment_seed: The unsigned 64-bit experiment seed.
    :type experiment_seed: int
    :param trial_index: Zero-based index of the trial.
    :type trial_index: int
    :return: The trial's own seed.
    :rtype: int
    """
    if experiment_seed < 0 or trial_index < 0:
        raise ValueError("Seeds and trial indices must be nonnegative.")
    return (experiment_seed ^ trial_index) & SEED_MASK


def canonical_json(dict_content: DictContent, exclude_fields: ExcludeFields = None) -> str:
    """
    Serializes a dictionary to JSON with sorted keys and compact separators.

    :param dict_content: The dictionary to serialize.
    :type dict_content: typing.Dict[str, typing.Any]
    :param exclude_fields: Keys to drop before serializing.
    :type exclude_fields: typing.Optional[typing.List[str]]
    :return: A deterministic JSON string.
    :rtype: str
    """
    if not isinstance(dict_content, dict):
        raise TypeError("Input 'dict_content' must be a dictionary.")

    to_serialize = dict(dict_content)
    if exclude_fields:
        for field in exclude_fields:
            to_serialize.pop(field, None)

    try:
        return json.dumps(to_serialize, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    except TypeError as e:
        raise TypeError(f"Dictionary contains non-JSON-serializable data: {e}") from e


def dict_md5(dict_content: DictContent, exclude_fields: ExcludeFields = None) -> str:
    """
    Computes the MD5 hash of a dictionary's content.

    The dictionary goes through :func:`canonical_json` first, so the hash does
    not depend on key order. Artifacts use it as a provenance fingerprint of
    the configuration that produced them.

    :param dict_content: The dictionary whose content is to be hashed.
    :type dict_content: typing.Dict[str, typing.Any]
    :param exclude_fields: An optional list of keys to exclude from hashing.
    :type exclude_fields: typing.Optional[typing.List[str]]
    :return: The hexadecimal MD5 hash string of the dictionary's content.
    :rtype: str
    """
    return hashlib.md5(canonical_json(dict_content, exclude_fields).encode("utf-8")).hexdigest()

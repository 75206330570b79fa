from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, TypeVar

from qotp.exceptions import ParameterError
from qotp.utils.log import log
from qotp.utils.tools import split_list, trial_seed

T = TypeVar("T")


def _run_chunk(fn: Callable[[int], T], seed: int, indices: List[int]) -> List[T]:
    return [fn(trial_seed(seed, i)) for i in indices]


def run_trials(fn: Callable[[int], T], trials: int, seed: int = 0, workers: int = 1) -> List[T]:
    """
    Call ``fn(trial_seed(seed, i))`` for ``i`` in ``range(trials)``.

    With ``workers > 1`` contiguous blocks of trial indices run on a thread
    pool. Results come back in trial order either way, so the outcome does
    not depend on ``workers``.
    """
    if trials <= 0:
        raise ParameterError(f"trials must be positive, got {trials}")
    if workers < 1:
        raise ParameterError(f"workers must be positive, got {workers}")
    indices = list(range(trials))
    if workers == 1:
        return _run_chunk(fn, seed, indices)

    chunks = split_list(indices, -(-trials // workers))
    log.debug(f"Running {trials} trials in {len(chunks)} chunks")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_run_chunk, fn, seed, chunk) for chunk in chunks]
        results: List[T] = []
        for future in futures:
            results.extend(future.result())
    return results

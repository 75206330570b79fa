"""
Sweep runner: one :class:`AdvantageEstimate` per point of a parameter grid.

A grid point is a plain dict of game parameters. Game-specific keys:

- ``forgery``: ``lam``, ``ell``, optional ``predicate``, ``q_verify_max``,
  ``representation``, ``reject_zero_tag``.
- ``bbotp``, ``rewind``, ``reduction``: ``lam``, ``program`` (a program name
  for :func:`qotp.otp.get_program`) with optional ``program_params``, plus
  optional ``reject_zero_tag`` and ``oracle_mode``.
- ``collapse``: ``program`` and ``program_params``, optional ``oracle_mode``.

Every point reuses the experiment seed, so points differ only in their
parameters.
"""

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from qotp.exceptions import ParameterError
from qotp.games.bb_otp import RewindingAdversary, get_bb_otp_adversary, run_bb_otp_game
from qotp.games.collapsing import run_collapsing_experiment
from qotp.games.estimate import AdvantageEstimate
from qotp.games.forgery import DEFAULT_VERIFY_BUDGET, ForgeryPredicate, get_forgery_adversary, run_auth_forgery_game
from qotp.games.reduction import reduction_forge
from qotp.games.runner import run_trials
from qotp.games.transcript import GameTranscript
from qotp.oracle.provider import DEFAULT_ORACLE_MODE
from qotp.otp.programs import ProgramSpec, get_program
from qotp.otp.scheme import min_entropy
from qotp.utils.log import log

GAMES = ("forgery", "bbotp", "rewind", "collapse", "reduction")

DEFAULT_ADVERSARIES = {
    "forgery": "honest-plus-random",
    "bbotp": "double-eval",
    "rewind": RewindingAdversary.name,
    "reduction": RewindingAdversary.name,
}

GridPoint = Dict[str, Any]


def resolve_program(point: GridPoint) -> ProgramSpec:
    if "program" not in point:
        raise ParameterError("Grid point needs a 'program'")
    return get_program(point["program"], **point.get("program_params", {}))


def _tag_program(transcript: GameTranscript, point: GridPoint) -> GameTranscript:
    transcript.params["program_ref"] = point["program"]
    transcript.params["program_params"] = dict(point.get("program_params", {}))
    return transcript


def _forgery_trial(point: GridPoint, adversary: str) -> Callable[[int], GameTranscript]:
    return lambda s: run_auth_forgery_game(
        point["lam"],
        point["ell"],
        get_forgery_adversary(adversary),
        q_verify_max=point.get("q_verify_max", DEFAULT_VERIFY_BUDGET),
        seed=s,
        representation=point.get("representation"),
        predicate=ForgeryPredicate(point.get("predicate", ForgeryPredicate.STRONG.value)),
        reject_zero_tag=point.get("reject_zero_tag", True),
    )


def _bb_otp_trial(point: GridPoint, adversary: str) -> Callable[[int], GameTranscript]:
    program = resolve_program(point)
    return lambda s: _tag_program(
        run_bb_otp_game(
            point["lam"],
            program,
            get_bb_otp_adversary(adversary),
            s,
            reject_zero_tag=point.get("reject_zero_tag", True),
            oracle_mode=point.get("oracle_mode", DEFAULT_ORACLE_MODE),
        ),
        point,
    )


def _reduction_trial(point: GridPoint, adversary: str) -> Callable[[int], Tuple[GameTranscript, bool]]:
    program = resolve_program(point)

    def trial(s: int) -> Tuple[GameTranscript, bool]:
        outcome = reduction_forge(
            get_bb_otp_adversary(adversary),
            point["lam"],
            program,
            seed=s,
            reject_zero_tag=point.get("reject_zero_tag", True),
            oracle_mode=point.get("oracle_mode", DEFAULT_ORACLE_MODE),
        )
        return _tag_program(outcome.transcript, point), outcome.simulated_win

    return trial


def _point_params(game: str, point: GridPoint, adversary: Optional[str]) -> Dict[str, Any]:
    params = dict(point)
    if adversary is not None:
        params["adversary"] = adversary
    if game != "forgery":
        params["tau"] = min_entropy(resolve_program(point)).tau
    return params


def _estimate_point(
    game: str,
    point: GridPoint,
    trials: int,
    seed: int,
    adversary: Optional[str],
    workers: int,
    archive: Optional[List[GameTranscript]],
) -> AdvantageEstimate:
    params = _point_params(game, point, adversary)
    if game == "collapse":
        estimate = run_collapsing_experiment(
            resolve_program(point),
            trials=trials,
            seed=seed,
            oracle_mode=point.get("oracle_mode", DEFAULT_ORACLE_MODE),
            workers=workers,
        )
        return estimate.model_copy(update={"params": params})

    if game == "reduction":
        results = run_trials(_reduction_trial(point, adversary), trials, seed, workers)
        transcripts = [transcript for transcript, _ in results]
        simulated = sum(1 for _, win in results if win)
        inconsistent = sum(1 for transcript, win in results if win and not transcript.win)
        if inconsistent:
            log.error(f"{inconsistent} simulated BB-OTP wins without a valid forgery at {point}")
        params.update(simulated_wins=simulated, inconsistent=inconsistent)
    elif game == "forgery":
        transcripts = run_trials(_forgery_trial(point, adversary), trials, seed, workers)
    else:
        transcripts = run_trials(_bb_otp_trial(point, adversary), trials, seed, workers)

    wins = [transcript for transcript in transcripts if transcript.win]
    if archive is not None:
        archive.extend(wins)
    return AdvantageEstimate.from_counts(game, len(wins), trials, params)


def estimate_advantage_curve(
    game: str,
    grid: Sequence[GridPoint],
    trials: int,
    seed: int = 0,
    adversary: Optional[str] = None,
    workers: int = 1,
    archive: Optional[List[GameTranscript]] = None,
) -> List[AdvantageEstimate]:
    """
    Estimate the advantage at every grid point.

    :param archive: When given, winning transcripts are appended to it.
    :raises ParameterError: For an unknown game, an empty grid or ``trials < 1``.
    """
    if game not in GAMES:
        raise ParameterError(f"Unknown game '{game}', expected one of {GAMES}")
    if not grid:
        raise ParameterError("Parameter grid must be nonempty")
    if trials < 1:
        raise ParameterError(f"trials must be positive, got {trials}")
    if game == "rewind":
        adversary = RewindingAdversary.name
    elif game != "collapse":
        adversary = adversary or DEFAULT_ADVERSARIES[game]
    else:
        adversary = None

    estimates = []
    for point in grid:
        estimate = _estimate_point(game, point, trials, seed, adversary, workers, archive)
        log.info(
            f"{game} {point}: {estimate.estimate:.4f} "
            f"[{estimate.ci_lo:.4f}, {estimate.ci_hi:.4f}] over {estimate.trials} trials"
        )
        estimates.append(estimate)
    return estimates


def replay_transcript(transcript: GameTranscript, program: Optional[ProgramSpec] = None) -> GameTranscript:
    """
    Re-run a game from its transcript's seed and parameters.

    Program games rebuild their program from ``program_ref`` unless
    ``program`` is given.
    """
    params = transcript.params
    if transcript.game == "forgery" and not transcript.adversary.startswith("reduction["):
        return run_auth_forgery_game(
            params["lam"],
            params["ell"],
            get_forgery_adversary(transcript.adversary),
            q_verify_max=params["q_verify_max"],
            seed=transcript.seed,
            representation=params.get("representation"),
            predicate=ForgeryPredicate(params["predicate"]),
            reject_zero_tag=params["reject_zero_tag"],
        )

    if program is None:
        if "program_ref" not in params:
            raise ParameterError("Transcript does not record its program; pass it explicitly")
        program = get_program(params["program_ref"], **params.get("program_params", {}))
    if transcript.game == "forgery":
        bb_name = transcript.adversary[len("reduction[") : -1]
        return reduction_forge(
            get_bb_otp_adversary(bb_name),
            params["lam"],
            program,
            seed=transcript.seed,
            q_verify_max=params["q_verify_max"],
            reject_zero_tag=params["reject_zero_tag"],
            oracle_mode=params.get("oracle_mode", DEFAULT_ORACLE_MODE),
        ).transcript
    if transcript.game == "bbotp":
        return run_bb_otp_game(
            params["lam"],
            program,
            get_bb_otp_adversary(transcript.adversary),
            transcript.seed,
            reject_zero_tag=params["reject_zero_tag"],
            oracle_mode=params["oracle_mode"],
        )
    raise ParameterError(f"Cannot replay game '{transcript.game}'")

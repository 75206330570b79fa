from .estimate import AdvantageEstimate, bound_violations, fit_bound_constant, wilson_interval
from .transcript import GameEvent, GameTranscript
from .oracles import CountedHandle, CountedVerifier
from .runner import run_trials
from .forgery import (
    FORGERY_ADVERSARIES,
    ForgeryAdversary,
    ForgeryAttempt,
    ForgeryContext,
    ForgeryPredicate,
    forgery_wins,
    get_forgery_adversary,
    honest_plus_random_exact,
    replay_no_distinctness_exact,
    run_auth_forgery_game,
)
from .bb_otp import (
    BB_OTP_ADVERSARIES,
    BBOTPAdversary,
    BBOTPContext,
    ClassicalQuery,
    CoherentQuery,
    RewindingAdversary,
    get_bb_otp_adversary,
    run_bb_otp_game,
    run_rewinding_attack,
)
from .reduction import ReductionAdversary, ReductionOutcome, reduction_forge
from .collapsing import collapsing_advantage, run_collapsing_experiment
from .sweep import GAMES, estimate_advantage_curve, replay_transcript

__all__ = [
    "AdvantageEstimate",
    "bound_violations",
    "fit_bound_constant",
    "wilson_interval",
    "GameEvent",
    "GameTranscript",
    "CountedHandle",
    "CountedVerifier",
    "run_trials",
    "FORGERY_ADVERSARIES",
    "ForgeryAdversary",
    "ForgeryAttempt",
    "ForgeryContext",
    "ForgeryPredicate",
    "forgery_wins",
    "get_forgery_adversary",
    "honest_plus_random_exact",
    "replay_no_distinctness_exact",
    "run_auth_forgery_game",
    "BB_OTP_ADVERSARIES",
    "BBOTPAdversary",
    "BBOTPContext",
    "ClassicalQuery",
    "CoherentQuery",
    "RewindingAdversary",
    "get_bb_otp_adversary",
    "run_bb_otp_game",
    "run_rewinding_attack",
    "ReductionAdversary",
    "ReductionOutcome",
    "reduction_forge",
    "collapsing_advantage",
    "run_collapsing_experiment",
    "GAMES",
    "estimate_advantage_curve",
    "replay_transcript",
]

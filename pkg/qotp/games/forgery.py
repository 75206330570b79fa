"""
Strong unforgeability game for the one-time authentication scheme.

The challenger samples a key, issues one token and gives the adversary a
counted classical Verify oracle. The adversary outputs two signatures; which
pairs count as a forgery is decided by a :class:`ForgeryPredicate`.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional

import numpy as np

from qotp.auth.subspace import AuthSecretKey, Signature, auth_keygen, auth_verify
from qotp.auth.token import AuthToken, auth_token_gen
from qotp.exceptions import BudgetExceededError, ParameterError
from qotp.games.oracles import CountedVerifier
from qotp.games.transcript import GameTranscript
from qotp.linalg.gf2 import BitVector
from qotp.utils.log import log

DEFAULT_VERIFY_BUDGET = 64


class ForgeryPredicate(str, Enum):
    STRONG = "strong"
    WEAK = "weak"
    NO_DISTINCTNESS = "no-distinctness"


def forgery_wins(sk: AuthSecretKey, first: Signature, second: Signature, predicate: ForgeryPredicate) -> bool:
    """Both signatures verify, plus the distinctness the predicate asks for."""
    if not (auth_verify(sk, first) and auth_verify(sk, second)):
        return False
    if predicate is ForgeryPredicate.STRONG:
        return first != second
    if predicate is ForgeryPredicate.WEAK:
        return first.message != second.message
    return True


@dataclass
class ForgeryAttempt:
    first: Signature
    second: Signature


@dataclass
class ForgeryContext:
    """
    What the forgery adversary receives.

    ``coins`` is drawn from the challenger's stream right after the key, the
    same position at which ``otp_keygen`` draws its oracle seed.
    """

    lam: int
    ell: int
    token: AuthToken
    verify: CountedVerifier
    rng: np.random.Generator
    coins: int
    transcript: GameTranscript


class ForgeryAdversary(ABC):
    name: str = "abstract"
    representation: str = "classical"
    verify_budget: int = 0

    @abstractmethod
    def forge(self, ctx: ForgeryContext) -> Optional[ForgeryAttempt]:
        pass


def _random_message(ell: int, rng: np.random.Generator) -> BitVector:
    return BitVector.from_array(rng.integers(0, 2, size=ell))


def _random_tag_vector(ell: int, lam: int, rng: np.random.Generator) -> BitVector:
    return BitVector.from_array(rng.integers(0, 2, size=ell * lam))


class ReplayAdversary(ForgeryAdversary):
    """Signs once honestly and outputs that signature twice."""

    name = "replay"

    def forge(self, ctx: ForgeryContext) -> Optional[ForgeryAttempt]:
        sig = ctx.token.sign(_random_message(ctx.ell, ctx.rng), ctx.rng)
        return ForgeryAttempt(sig, sig)


class HonestPlusRandomAdversary(ForgeryAdversary):
    """One honest signature, then the same message with a uniformly random tag vector."""

    name = "honest-plus-random"

    def forge(self, ctx: ForgeryContext) -> Optional[ForgeryAttempt]:
        x = _random_message(ctx.ell, ctx.rng)
        sig = ctx.token.sign(x, ctx.rng)
        guess = Signature.from_tag_vector(x, _random_tag_vector(ctx.ell, ctx.lam, ctx.rng))
        return ForgeryAttempt(sig, guess)


class NoTokenAdversary(ForgeryAdversary):
    """Ignores the token and guesses both pairs uniformly."""

    name = "no-token"

    def forge(self, ctx: ForgeryContext) -> Optional[ForgeryAttempt]:
        pairs = []
        for _ in range(2):
            x = _random_message(ctx.ell, ctx.rng)
            pairs.append(Signature.from_tag_vector(x, _random_tag_vector(ctx.ell, ctx.lam, ctx.rng)))
        return ForgeryAttempt(*pairs)


class ZeroTagAdversary(ForgeryAdversary):
    """All-zero tags on the all-zero and all-one messages; wins exactly when Verify accepts zero tags."""

    name = "zero-tag"

    def forge(self, ctx: ForgeryContext) -> Optional[ForgeryAttempt]:
        zero = BitVector.zeros(ctx.ell * ctx.lam)
        first = Signature.from_tag_vector(BitVector.zeros(ctx.ell), zero)
        second = Signature.from_tag_vector(BitVector((1,) * ctx.ell), zero)
        return ForgeryAttempt(first, second)


class VerifyScanAdversary(ForgeryAdversary):
    """Signs once, then spends its Verify budget searching for a second tag for the same message."""

    name = "verify-scan"
    verify_budget = 16

    def forge(self, ctx: ForgeryContext) -> Optional[ForgeryAttempt]:
        x = _random_message(ctx.ell, ctx.rng)
        sig = ctx.token.sign(x, ctx.rng)
        guess = None
        for _ in range(self.verify_budget):
            guess = Signature.from_tag_vector(x, _random_tag_vector(ctx.ell, ctx.lam, ctx.rng))
            if guess != sig and ctx.verify(guess):
                break
        return ForgeryAttempt(sig, guess) if guess is not None else None


FORGERY_ADVERSARIES: Dict[str, Callable[[], ForgeryAdversary]] = {
    ReplayAdversary.name: ReplayAdversary,
    HonestPlusRandomAdversary.name: HonestPlusRandomAdversary,
    NoTokenAdversary.name: NoTokenAdversary,
    ZeroTagAdversary.name: ZeroTagAdversary,
    VerifyScanAdversary.name: VerifyScanAdversary,
}


def get_forgery_adversary(name: str) -> ForgeryAdversary:
    if name not in FORGERY_ADVERSARIES:
        raise ParameterError(f"Unknown forgery adversary '{name}', expected one of {sorted(FORGERY_ADVERSARIES)}")
    return FORGERY_ADVERSARIES[name]()


def run_auth_forgery_game(
    lam: int,
    ell: int,
    adversary: ForgeryAdversary,
    q_verify_max: int = DEFAULT_VERIFY_BUDGET,
    seed: int = 0,
    representation: Optional[str] = None,
    predicate: ForgeryPredicate = ForgeryPredicate.STRONG,
    reject_zero_tag: bool = True,
) -> GameTranscript:
    """
    Run the forgery game once.

    An adversary whose declared budget exceeds ``q_verify_max``, or who runs
    past it, is disqualified and the run is recorded as a loss.
    """
    predicate = ForgeryPredicate(predicate)
    transcript = GameTranscript(
        game="forgery",
        seed=seed,
        adversary=adversary.name,
        params={
            "lam": lam,
            "ell": ell,
            "predicate": predicate.value,
            "q_verify_max": q_verify_max,
            "reject_zero_tag": reject_zero_tag,
        },
    )
    rng = np.random.default_rng(seed)
    sk = auth_keygen(lam, ell, rng, reject_zero_tag)
    coins = int(rng.integers(0, 2**63))
    token = auth_token_gen(sk, representation or adversary.representation)
    transcript.params["representation"] = token.representation
    transcript.record("keygen", lam=lam, ell=ell)
    transcript.record("token", token_id=token.token_id, representation=token.representation)
    verify = CountedVerifier(sk, budget=q_verify_max)
    if adversary.verify_budget > q_verify_max:
        transcript.record("disqualified", reason="declared budget exceeds q_verify_max")
        log.warning(f"Adversary '{adversary.name}' declares {adversary.verify_budget} Verify queries, limit is {q_verify_max}")
        return transcript

    ctx = ForgeryContext(lam, ell, token, verify, np.random.default_rng([seed, 1]), coins, transcript)
    try:
        attempt = adversary.forge(ctx)
    except BudgetExceededError as e:
        transcript.queries = verify.query_count
        transcript.record("disqualified", reason=str(e))
        log.warning(f"Adversary '{adversary.name}' disqualified: {e}")
        return transcript

    transcript.queries = verify.query_count
    if attempt is None:
        transcript.record("no-output")
        return transcript
    transcript.record("output", first=attempt.first.to_text(), second=attempt.second.to_text())
    transcript.win = forgery_wins(sk, attempt.first, attempt.second, predicate)
    transcript.record("result", win=transcript.win)
    return transcript


def honest_plus_random_exact(lam: int, reject_zero_tag: bool = True) -> float:
    """
    Exact win probability of the honest-plus-random adversary at ``ell = 1``
    under the strong predicate, by counting accepting tags.
    """
    size = 1 << (lam // 2)
    accepting = size - 1 if reject_zero_tag else size
    honest_ok = accepting / size
    # the guess must verify and differ from the honest tag
    return honest_ok * (accepting - 1) / (1 << lam)


def replay_no_distinctness_exact(lam: int, ell: int = 1) -> float:
    return (1.0 - 2.0 ** -(lam // 2)) ** ell

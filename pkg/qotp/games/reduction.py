"""
From a black-box one-time adversary to a forger.

:class:`ReductionAdversary` plays the forgery game. It passes its token to
a wrapped BB-OTP adversary and answers that adversary's program queries with
a simulated guarded program, built from the counted Verify oracle, the
program itself and a locally sampled hash. At each challenge it measures the
adversary's input registers, returns the collapsed state, and finally
outputs the two measured ``(x, z)`` pairs.

The local hash is created from the forgery game's ``coins``, which sit in the
same stream position as ``otp_keygen``'s oracle seed, so a reduction run and a
BB-OTP run on the same seed see the same key, token and hash.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from qotp.auth.subspace import Signature
from qotp.exceptions import ParameterError
from qotp.games.bb_otp import (
    BBOTPAdversary,
    BBOTPContext,
    ChallengeQuery,
    ClassicalQuery,
    CoherentQuery,
    output_label,
)
from qotp.games.forgery import (
    DEFAULT_VERIFY_BUDGET,
    ForgeryAdversary,
    ForgeryAttempt,
    ForgeryContext,
    ForgeryPredicate,
    run_auth_forgery_game,
)
from qotp.games.oracles import CountedHandle
from qotp.games.transcript import GameTranscript
from qotp.linalg.gf2 import BitVector
from qotp.oracle.base import OracleSpec
from qotp.oracle.provider import DEFAULT_ORACLE_MODE, create_oracle
from qotp.otp.programs import ProgramSpec
from qotp.otp.scheme import BOTTOM, GuardedProgram, ObfHandle
from qotp.quantum.statevector import StateVector, measure_register

# Verify queries the reduction itself spends, one per challenge.
CHALLENGE_VERIFY_QUERIES = 2


def _measure_query(
    query: ChallengeQuery, tag_bits: int, rng: np.random.Generator
) -> Tuple[int, BitVector, Optional[StateVector]]:
    if isinstance(query, ClassicalQuery):
        return query.x, query.z, None
    outcome, post = measure_register(query.state, query.layout, (query.x_reg, query.z_reg), rng)
    value = outcome.to_int()
    return value >> tag_bits, BitVector.from_int(value & ((1 << tag_bits) - 1), tag_bits), post


class ReductionAdversary(ForgeryAdversary):
    name = "reduction"

    def __init__(self, bb_adversary: BBOTPAdversary, program: ProgramSpec, oracle_mode: str = DEFAULT_ORACLE_MODE):
        self.bb_adversary = bb_adversary
        self.program = program
        self.oracle_mode = oracle_mode
        self.representation = bb_adversary.representation
        self.verify_budget = (bb_adversary.query_budget or 0) + CHALLENGE_VERIFY_QUERIES
        self.simulated_win = False

    def forge(self, ctx: ForgeryContext) -> Optional[ForgeryAttempt]:
        if ctx.ell != self.program.x_bits:
            raise ParameterError(f"Program takes {self.program.x_bits}-bit inputs, token signs {ctx.ell} bits")
        spec = OracleSpec(self.program.x_bits, ctx.lam * ctx.ell, self.program.r_bits)
        oracle = create_oracle(spec, self.oracle_mode, ctx.coins)
        simulated = ObfHandle(GuardedProgram(self.program, oracle, ctx.verify, ctx.lam))
        handle = CountedHandle(simulated, self.bb_adversary.query_budget)
        bb_ctx = BBOTPContext(ctx.lam, self.program, ctx.token, handle, ctx.rng)
        measure_rng = np.random.default_rng([ctx.coins, 2])
        tag_bits = simulated.tag_bits

        first = self.bb_adversary.first_query(bb_ctx)
        if first is None:
            ctx.transcript.record("stop", phase=1)
            return None
        x1, z1, returned = _measure_query(first, tag_bits, measure_rng)
        y1 = simulated.evaluate(x1, z1)
        ctx.transcript.record("challenge", phase=1, coherent=isinstance(first, CoherentQuery), y=output_label(y1))
        if y1 is BOTTOM:
            ctx.transcript.record("abort", phase=1)
            return None

        second = self.bb_adversary.second_query(bb_ctx, returned)
        if second is None:
            ctx.transcript.record("stop", phase=2)
            return None
        x2, z2, _ = _measure_query(second, tag_bits, measure_rng)
        y2 = simulated.evaluate(x2, z2)
        ctx.transcript.record("challenge", phase=2, coherent=isinstance(second, CoherentQuery), y=output_label(y2))
        self.simulated_win = y2 is not BOTTOM and y2 != y1
        ctx.transcript.record("simulated-result", win=self.simulated_win)

        ell = self.program.x_bits
        return ForgeryAttempt(
            Signature.from_tag_vector(BitVector.from_int(x1, ell), z1),
            Signature.from_tag_vector(BitVector.from_int(x2, ell), z2),
        )


@dataclass
class ReductionOutcome:
    transcript: GameTranscript
    simulated_win: bool

    @property
    def forgery_win(self) -> bool:
        return self.transcript.win

    @property
    def consistent(self) -> bool:
        """A simulated BB-OTP win must come with a valid strong forgery."""
        return self.forgery_win or not self.simulated_win


def reduction_forge(
    bb_adversary: BBOTPAdversary,
    lam: int,
    program: ProgramSpec,
    seed: int = 0,
    q_verify_max: int = DEFAULT_VERIFY_BUDGET,
    reject_zero_tag: bool = True,
    oracle_mode: str = DEFAULT_ORACLE_MODE,
) -> ReductionOutcome:
    """
    Run the forgery game once with :class:`ReductionAdversary` around
    ``bb_adversary``, judged by the strong predicate.
    """
    adversary = ReductionAdversary(bb_adversary, program, oracle_mode)
    transcript = run_auth_forgery_game(
        lam,
        program.x_bits,
        adversary,
        q_verify_max=q_verify_max,
        seed=seed,
        predicate=ForgeryPredicate.STRONG,
        reject_zero_tag=reject_zero_tag,
    )
    transcript.adversary = f"reduction[{bb_adversary.name}]"
    transcript.params["program"] = program.name
    transcript.params["oracle_mode"] = oracle_mode
    return ReductionOutcome(transcript, adversary.simulated_win)

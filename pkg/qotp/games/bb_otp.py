"""
Black-box one-time security game.

The adversary holds one token and query access to the guarded program. It
makes up to two challenge queries; for each, the challenger evaluates the
program into an output register, measures it and aborts on ⊥. The adversary
wins if the second measured output is neither ⊥ nor equal to the first.

Classical adversaries submit basis inputs ``(x, z)``. Coherent adversaries
submit a simulator state plus the names of their input and output registers;
the challenger returns the state with the output register reset after
measuring it.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from qotp.auth.token import AuthToken, StatevectorToken
from qotp.exceptions import BudgetExceededError, OneTimeViolationError, ParameterError
from qotp.games.estimate import AdvantageEstimate
from qotp.games.oracles import CountedHandle
from qotp.games.runner import run_trials
from qotp.games.transcript import GameTranscript
from qotp.linalg.gf2 import BitVector
from qotp.oracle.provider import DEFAULT_ORACLE_MODE
from qotp.otp.programs import ProgramSpec
from qotp.otp.scheme import BOTTOM, ObfHandle, Output, min_entropy, otp_keygen, otp_token_gen
from qotp.quantum.statevector import (
    HadamardLayer,
    Operation,
    RegisterLayout,
    StateVector,
    XorOracle,
    apply_inverse,
    apply_op,
    apply_x,
    basis_state,
    measure_register,
)
from qotp.utils.log import log


@dataclass
class ClassicalQuery:
    x: int
    z: BitVector


@dataclass
class CoherentQuery:
    state: StateVector
    layout: RegisterLayout
    x_reg: str = "x"
    z_reg: str = "z"
    out_reg: str = "out"


ChallengeQuery = Union[ClassicalQuery, CoherentQuery]


@dataclass
class BBOTPContext:
    lam: int
    program: ProgramSpec
    token: AuthToken
    handle: CountedHandle
    rng: np.random.Generator


class BBOTPAdversary(ABC):
    """
    A two-phase adversary. One instance plays one game; state carried from
    the first challenge to the second lives on the instance.
    """

    name: str = "abstract"
    representation: str = "classical"
    query_budget: Optional[int] = None

    @abstractmethod
    def first_query(self, ctx: BBOTPContext) -> Optional[ChallengeQuery]:
        pass

    def second_query(self, ctx: BBOTPContext, returned: Optional[StateVector]) -> Optional[ChallengeQuery]:
        return None


def _random_x(ctx: BBOTPContext) -> int:
    return int(ctx.rng.integers(0, 1 << ctx.program.x_bits))


def _honest_query(ctx: BBOTPContext, x: int) -> ClassicalQuery:
    sig = ctx.token.sign(BitVector.from_int(x, ctx.program.x_bits), ctx.rng)
    return ClassicalQuery(x, sig.tag_vector)


class HonestStopAdversary(BBOTPAdversary):
    """Evaluates once honestly and stops."""

    name = "honest-stop"

    def first_query(self, ctx: BBOTPContext) -> Optional[ChallengeQuery]:
        return _honest_query(ctx, _random_x(ctx))


class ReplayBBAdversary(BBOTPAdversary):
    """Submits its one honest query twice."""

    name = "replay"

    def __init__(self):
        self._query: Optional[ClassicalQuery] = None

    def first_query(self, ctx: BBOTPContext) -> Optional[ChallengeQuery]:
        self._query = _honest_query(ctx, _random_x(ctx))
        return self._query

    def second_query(self, ctx: BBOTPContext, returned: Optional[StateVector]) -> Optional[ChallengeQuery]:
        return self._query


class DoubleEvalAdversary(BBOTPAdversary):
    """Evaluates once honestly, then blindly guesses a tag vector for a different input."""

    name = "double-eval"

    def __init__(self):
        self._x = 0

    def first_query(self, ctx: BBOTPContext) -> Optional[ChallengeQuery]:
        self._x = _random_x(ctx)
        return _honest_query(ctx, self._x)

    def second_query(self, ctx: BBOTPContext, returned: Optional[StateVector]) -> Optional[ChallengeQuery]:
        guess = BitVector.from_array(ctx.rng.integers(0, 2, size=ctx.handle.tag_bits))
        return ClassicalQuery(self._x ^ 1, guess)


class ScanAdversary(BBOTPAdversary):
    """Spends a fixed number of program queries on random inputs, then evaluates once honestly."""

    name = "scan"
    query_budget = 7

    def first_query(self, ctx: BBOTPContext) -> Optional[ChallengeQuery]:
        for _ in range(self.query_budget):
            z = BitVector.from_array(ctx.rng.integers(0, 2, size=ctx.handle.tag_bits))
            ctx.handle.evaluate(_random_x(ctx), z)
        return _honest_query(ctx, _random_x(ctx))


class RewindingAdversary(BBOTPAdversary):
    """
    Coherent rewinding attack.

    Signs ``x0`` coherently into a tag register (Hadamard on token component
    ``i`` when bit ``i`` of ``x0`` is set, then copy it into slice ``i`` of the
    tag register) and submits. When the program ignores its randomness, the
    measured output leaves the tag superposition intact, so undoing the
    signing restores the token; it then signs a second input whose output
    differs.
    """

    name = "rewind"
    representation = "statevector"

    def __init__(self):
        self._layout: Optional[RegisterLayout] = None
        self._ops: List[Operation] = []
        self._x0 = 0

    def _build_layout(self, ctx: BBOTPContext) -> RegisterLayout:
        ell, lam = ctx.program.x_bits, ctx.lam
        widths = [(f"token{i}", lam) for i in range(ell)]
        widths += [("x", ell), ("z", ell * lam), ("out", ctx.handle.output_width)]
        return RegisterLayout.from_widths(widths)

    def _sign_ops(self, x: int, ell: int, lam: int) -> List[Operation]:
        layout = self._layout
        ops: List[Operation] = []
        for i, bit in enumerate(BitVector.from_int(x, ell).bits):
            if bit:
                ops.append(HadamardLayer(layout, f"token{i}"))
            shift = lam * (ell - 1 - i)
            ops.append(XorOracle(layout, (f"token{i}",), "z", lambda a, s=shift: a << s))
        return ops

    def _second_input(self, program: ProgramSpec) -> int:
        y0 = program.evaluate(self._x0, 0)
        for x in range(1 << program.x_bits):
            if program.evaluate(x, 0) != y0:
                return x
        return self._x0 ^ 1

    def first_query(self, ctx: BBOTPContext) -> Optional[ChallengeQuery]:
        if not isinstance(ctx.token, StatevectorToken):
            raise ParameterError("The rewinding attack needs a statevector token")
        ell, lam = ctx.program.x_bits, ctx.lam
        self._layout = self._build_layout(ctx)
        components = ctx.token.release_state()
        state = components[0]
        for component in components[1:]:
            state = state.tensor(component)
        self._x0 = _random_x(ctx)
        rest_width = self._layout.num_qubits - ell * lam
        rest_index = self._x0 << (ell * lam + ctx.handle.output_width)
        state = state.tensor(basis_state(rest_index, rest_width))
        self._ops = self._sign_ops(self._x0, ell, lam)
        for op in self._ops:
            state = apply_op(state, op)
        return CoherentQuery(state, self._layout)

    def second_query(self, ctx: BBOTPContext, returned: Optional[StateVector]) -> Optional[ChallengeQuery]:
        if returned is None:
            return None
        ell, lam = ctx.program.x_bits, ctx.lam
        state = returned
        for op in reversed(self._ops):
            state = apply_inverse(state, op)
        x1 = self._second_input(ctx.program)
        state = apply_x(state, self._layout, "x", self._x0 ^ x1)
        for op in self._sign_ops(x1, ell, lam):
            state = apply_op(state, op)
        return CoherentQuery(state, self._layout)


BB_OTP_ADVERSARIES: Dict[str, Callable[[], BBOTPAdversary]] = {
    HonestStopAdversary.name: HonestStopAdversary,
    ReplayBBAdversary.name: ReplayBBAdversary,
    DoubleEvalAdversary.name: DoubleEvalAdversary,
    ScanAdversary.name: ScanAdversary,
    RewindingAdversary.name: RewindingAdversary,
}


def get_bb_otp_adversary(name: str) -> BBOTPAdversary:
    if name not in BB_OTP_ADVERSARIES:
        raise ParameterError(f"Unknown BB-OTP adversary '{name}', expected one of {sorted(BB_OTP_ADVERSARIES)}")
    return BB_OTP_ADVERSARIES[name]()


def output_label(y: Output):
    return str(y) if y is BOTTOM else int(y)


def _challenge(handle: ObfHandle, query: ChallengeQuery, rng: np.random.Generator) -> Tuple[Output, Optional[StateVector]]:
    if isinstance(query, ClassicalQuery):
        return handle.evaluate(query.x, query.z), None
    state = handle.evaluate_coherent(query.state, query.layout, query.x_reg, query.z_reg, query.out_reg)
    outcome, post = measure_register(state, query.layout, query.out_reg, rng)
    code = outcome.to_int()
    post = apply_x(post, query.layout, query.out_reg, code)
    return handle.decode(code), post


def run_bb_otp_game(
    lam: int,
    program: ProgramSpec,
    adversary: BBOTPAdversary,
    seed: int = 0,
    reject_zero_tag: bool = True,
    oracle_mode: str = DEFAULT_ORACLE_MODE,
) -> GameTranscript:
    """Play the black-box one-time game once."""
    transcript = GameTranscript(
        game="bbotp",
        seed=seed,
        adversary=adversary.name,
        params={"lam": lam, "program": program.name, "reject_zero_tag": reject_zero_tag, "oracle_mode": oracle_mode},
    )
    rng = np.random.default_rng(seed)
    sk, handle = otp_keygen(lam, program, rng, oracle_mode, reject_zero_tag)
    token = otp_token_gen(sk, adversary.representation)
    transcript.record("keygen", lam=lam, program=program.name)
    transcript.record("token", token_id=token.token_id, representation=token.representation)
    adv_handle = CountedHandle(handle, adversary.query_budget)
    ctx = BBOTPContext(lam, program, token, adv_handle, np.random.default_rng([seed, 1]))
    challenger_rng = np.random.default_rng([seed, 2])

    try:
        first = adversary.first_query(ctx)
        if first is None:
            transcript.record("stop", phase=1)
            return transcript
        y, returned = _challenge(handle, first, challenger_rng)
        transcript.record("challenge", phase=1, coherent=isinstance(first, CoherentQuery), y=output_label(y))
        if y is BOTTOM:
            transcript.record("abort", phase=1)
            return transcript

        second = adversary.second_query(ctx, returned)
        if second is None:
            transcript.record("stop", phase=2)
            return transcript
        y2, _ = _challenge(handle, second, challenger_rng)
        transcript.record("challenge", phase=2, coherent=isinstance(second, CoherentQuery), y=output_label(y2))
        transcript.win = y2 is not BOTTOM and y2 != y
        transcript.record("result", win=transcript.win)
    except BudgetExceededError as e:
        transcript.record("disqualified", reason=str(e))
        log.warning(f"Adversary '{adversary.name}' disqualified: {e}")
    except OneTimeViolationError as e:
        transcript.record("token-reuse", reason=str(e))
        log.debug(f"Adversary '{adversary.name}' reused its token: {e}")
    finally:
        transcript.queries = adv_handle.query_count
    return transcript


def run_rewinding_attack(
    lam: int,
    program: ProgramSpec,
    trials: int = 200,
    seed: int = 0,
    reject_zero_tag: bool = True,
    oracle_mode: str = DEFAULT_ORACLE_MODE,
    workers: int = 1,
) -> AdvantageEstimate:
    """Win rate of :class:`RewindingAdversary` over ``trials`` games."""
    tau = min_entropy(program).tau
    if tau > 0:
        log.warning(f"Program '{program.name}' has min-entropy {tau:g}; the rewinding attack is expected to fail")
    wins = run_trials(
        lambda s: run_bb_otp_game(lam, program, RewindingAdversary(), s, reject_zero_tag, oracle_mode).win,
        trials,
        seed,
        workers,
    )
    params = {"lam": lam, "program": program.name, "tau": tau, "reject_zero_tag": reject_zero_tag}
    return AdvantageEstimate.from_counts("rewind", int(sum(wins)), trials, params)

"""
Collapsing experiment for ``g(x) = f(x; H(x))`` at a single query.

For a fixed query state on ``Q`` the challenger computes ``g`` into ``R``
and measures ``y``. With ``b = 0`` the adversary keeps the renormalized
preimage superposition; with ``b = 1`` the challenger measures ``Q`` too,
leaving its dephased mixture. The best single-shot distinguisher succeeds
with advantage equal to the trace distance of the two, and the experiment
reports that distance averaged over ``y`` and over sampled oracles.
"""

from typing import Optional, Sequence

import numpy as np

from qotp.exceptions import CapacityError, DimensionMismatchError
from qotp.games.estimate import AdvantageEstimate
from qotp.games.runner import run_trials
from qotp.oracle.base import OracleSpec
from qotp.oracle.provider import DEFAULT_ORACLE_MODE, create_oracle
from qotp.otp.programs import ProgramSpec
from qotp.otp.scheme import min_entropy
from qotp.quantum.density import dephase, reduced_density_matrix, trace_distance
from qotp.quantum.statevector import (
    RegisterLayout,
    StateVector,
    apply_function_oracle,
    basis_state,
    measure_register,
    project_register,
    register_distribution,
    uniform_superposition,
)
from qotp.utils.log import log

MAX_COLLAPSE_R_BITS = 12
# Above this output width the outcome y is sampled instead of enumerated.
MAX_EXACT_OUTPUT_BITS = 10


def query_state(program: ProgramSpec, amplitudes: Optional[Sequence[complex]] = None) -> StateVector:
    """The adversary's query state on ``Q``; uniform over all inputs by default."""
    if amplitudes is None:
        return uniform_superposition(range(1 << program.x_bits), program.x_bits)
    amps = np.asarray(amplitudes, dtype=np.complex128)
    if amps.size != 1 << program.x_bits:
        raise DimensionMismatchError("query amplitudes", 1 << program.x_bits, amps.size)
    return StateVector(amps)


def _branch_advantage(post: StateVector, layout: RegisterLayout) -> float:
    rho0 = reduced_density_matrix(post, layout, "Q")
    return trace_distance(rho0, dephase(rho0))


def collapsing_advantage(
    program: ProgramSpec,
    oracle_seed: int,
    query: StateVector,
    oracle_mode: str = DEFAULT_ORACLE_MODE,
) -> float:
    """Exact optimal distinguishing advantage for one sampled oracle."""
    oracle = create_oracle(OracleSpec(program.x_bits, 0, program.r_bits), oracle_mode, oracle_seed)
    layout = RegisterLayout.from_widths([("Q", program.x_bits), ("R", program.value_width)])
    state = query.tensor(basis_state(0, program.value_width))
    state = apply_function_oracle(state, layout, "Q", "R", lambda x: program.evaluate(x, oracle.query_int(x)))

    if program.value_width > MAX_EXACT_OUTPUT_BITS:
        rng = np.random.default_rng([oracle_seed, 1])
        _, post = measure_register(state, layout, "R", rng)
        return _branch_advantage(post, layout)

    advantage = 0.0
    probs = register_distribution(state, layout, "R")
    for y in np.flatnonzero(probs):
        prob, post = project_register(state, layout, "R", int(y))
        if post is not None:
            advantage += prob * _branch_advantage(post, layout)
    return advantage


def run_collapsing_experiment(
    program: ProgramSpec,
    query_amplitudes: Optional[Sequence[complex]] = None,
    trials: int = 100,
    seed: int = 0,
    oracle_mode: str = DEFAULT_ORACLE_MODE,
    workers: int = 1,
) -> AdvantageEstimate:
    """
    Average collapsing advantage over ``trials`` sampled oracles.

    :raises CapacityError: If ``program.r_bits`` exceeds the experiment limit.
    """
    if program.r_bits > MAX_COLLAPSE_R_BITS:
        raise CapacityError("collapsing randomness bits", program.r_bits, MAX_COLLAPSE_R_BITS)
    query = query_state(program, query_amplitudes)
    tau = min_entropy(program).tau
    samples = run_trials(lambda s: collapsing_advantage(program, s, query, oracle_mode), trials, seed, workers)
    log.debug(f"Collapsing advantage for '{program.name}' (tau={tau:g}) averaged over {trials} oracles")
    params = {"program": program.name, "tau": tau, "q": 1, "oracle_mode": oracle_mode}
    return AdvantageEstimate.from_samples("collapse", samples, params)

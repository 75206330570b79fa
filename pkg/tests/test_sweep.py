import pytest
from pydantic import ValidationError

from qotp.exceptions import ParameterError
from qotp.games import (
    AdvantageEstimate,
    GameTranscript,
    bound_violations,
    estimate_advantage_curve,
    fit_bound_constant,
    replay_transcript,
    run_trials,
    wilson_interval,
)


@pytest.fixture
def forgery_grid():
    return [{"lam": lam, "ell": 1} for lam in (4, 6)]


def test_wilson_interval():
    """Test interval bounds, including the all-loss and all-win edges"""
    lo, hi = wilson_interval(30, 100)
    assert lo < 0.3 < hi
    assert wilson_interval(0, 50)[0] == 0.0
    assert wilson_interval(50, 50)[1] == 1.0
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_advantage_estimate_validation():
    """Test that an estimate outside its own interval is rejected"""
    estimate = AdvantageEstimate.from_counts("forgery", 10, 100, {"lam": 4})
    assert estimate.estimate == pytest.approx(0.1)
    assert estimate.contains(0.1)
    with pytest.raises(ValidationError):
        AdvantageEstimate(game="x", trials=10, estimate=0.5, ci_lo=0.6, ci_hi=0.7)
    with pytest.raises(ValidationError):
        AdvantageEstimate(game="x", trials=0, estimate=0.5, ci_lo=0.4, ci_hi=0.6)


def test_estimate_from_samples():
    """Test the mean-based estimate for real-valued experiments"""
    estimate = AdvantageEstimate.from_samples("collapse", [0.2, 0.4, 0.6])
    assert estimate.wins is None
    assert estimate.estimate == pytest.approx(0.4)
    assert estimate.ci_lo < 0.4 < estimate.ci_hi
    single = AdvantageEstimate.from_samples("collapse", [0.3])
    assert single.ci_lo == single.ci_hi == pytest.approx(0.3)


def test_fit_bound_constant():
    """Test the smallest C with estimate <= C 2^-tau"""
    estimates = [
        AdvantageEstimate.from_samples("collapse", [0.5], {"tau": 0}),
        AdvantageEstimate.from_samples("collapse", [0.2], {"tau": 2}),
    ]
    assert fit_bound_constant(estimates) == pytest.approx(0.8)
    assert fit_bound_constant(estimates, max_tau=1) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fit_bound_constant(estimates, max_tau=-1)


def test_bound_check_rejects_growing_curves():
    """Test that a curve rising with tau breaks the constant fitted at low tau"""
    rising = [
        AdvantageEstimate.from_samples("collapse", [value], {"tau": tau})
        for tau, value in enumerate([0.01, 0.1, 0.5, 0.9, 0.99])
    ]
    constant = fit_bound_constant(rising, max_tau=1)
    assert constant == pytest.approx(0.2)
    assert [e.params["tau"] for e in bound_violations(rising[2:], 2 * constant)] == [2, 3, 4]

    decaying = [
        AdvantageEstimate.from_samples("collapse", [0.8 * 2.0**-tau], {"tau": tau}) for tau in range(5)
    ]
    assert bound_violations(decaying, fit_bound_constant(decaying, max_tau=1)) == []


def test_run_trials_is_independent_of_workers():
    """Test trial seeds and ordering with and without threads"""
    expected = [5 ^ i for i in range(10)]
    assert run_trials(lambda s: s, 10, seed=5) == expected
    assert run_trials(lambda s: s, 10, seed=5, workers=3) == expected
    assert run_trials(lambda s: s, 3, seed=5, workers=8) == expected[:3]
    with pytest.raises(ParameterError):
        run_trials(lambda s: s, 0)
    with pytest.raises(ParameterError):
        run_trials(lambda s: s, 5, workers=0)


def test_curve_argument_checks(forgery_grid):
    """Test unknown games, empty grids and empty trial counts"""
    with pytest.raises(ParameterError):
        estimate_advantage_curve("poker", forgery_grid, 10)
    with pytest.raises(ParameterError):
        estimate_advantage_curve("forgery", [], 10)
    with pytest.raises(ParameterError):
        estimate_advantage_curve("forgery", forgery_grid, 0)


def test_forgery_curve_is_deterministic(forgery_grid):
    """Test that a seed fixes the whole curve"""
    a = estimate_advantage_curve("forgery", forgery_grid, 200, seed=3)
    b = estimate_advantage_curve("forgery", forgery_grid, 200, seed=3, workers=4)
    assert [e.model_dump() for e in a] == [e.model_dump() for e in b]
    assert [e.params["lam"] for e in a] == [4, 6]
    assert all(e.params["adversary"] == "honest-plus-random" for e in a)


def test_winning_transcripts_replay(forgery_grid):
    """Test that archived wins reproduce when replayed"""
    archive = []
    estimates = estimate_advantage_curve("forgery", forgery_grid[:1], 300, seed=1, archive=archive)
    assert len(archive) == estimates[0].wins > 0
    for transcript in archive[:5]:
        restored = GameTranscript.model_validate_json(transcript.model_dump_json())
        assert replay_transcript(restored).model_dump() == transcript.model_dump()


def test_bbotp_curve_records_program_and_tau():
    """Test program games: tau in the params and replayable transcripts"""
    grid = [{"lam": 4, "program": "identity-x", "reject_zero_tag": False}]
    archive = []
    (estimate,) = estimate_advantage_curve("rewind", grid, 10, archive=archive)
    assert estimate.params["tau"] == 0
    assert estimate.params["adversary"] == "rewind"
    assert estimate.wins == 10
    replayed = replay_transcript(archive[0])
    assert replayed.win
    assert replayed.seed == archive[0].seed


def test_reduction_curve_counts_simulated_wins():
    """Test the reduction sweep bookkeeping"""
    grid = [{"lam": 4, "program": "identity-x"}]
    archive = []
    (estimate,) = estimate_advantage_curve("reduction", grid, 60, adversary="double-eval", archive=archive)
    assert estimate.params["inconsistent"] == 0
    assert estimate.params["simulated_wins"] <= estimate.wins
    for transcript in archive[:3]:
        assert transcript.adversary == "reduction[double-eval]"
        assert replay_transcript(transcript).win


def test_collapse_curve():
    """Test a collapse-k sweep through the curve runner"""
    grid = [{"program": "collapse-k", "program_params": {"k": k}} for k in (0, 3)]
    estimates = estimate_advantage_curve("collapse", grid, 5)
    assert [e.params["tau"] for e in estimates] == [0, 3]
    assert estimates[0].estimate == pytest.approx(0.75)
    assert estimates[1].estimate < estimates[0].estimate
    assert "adversary" not in estimates[0].params

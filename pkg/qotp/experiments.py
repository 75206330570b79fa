"""
Command bodies behind the CLI: demo trace, game sweeps, entropy profiles and reports.

Artifacts are CSV files opening with a provenance header (the producing config
as canonical JSON plus its MD5) and, for games, a JSON archive of winning
transcripts. Each is written to a temporary file in the target directory and
moved into place with :func:`os.replace`.
"""

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from qotp.auth.subspace import AuthSecretKey
from qotp.auth.token import StatevectorToken
from qotp.config import ExperimentConfig
from qotp.exceptions import OneTimeViolationError, QuantumStateError, TableFormatError
from qotp.games.estimate import AdvantageEstimate
from qotp.games.sweep import estimate_advantage_curve
from qotp.games.transcript import GameTranscript
from qotp.linalg.gf2 import BitVector, orthogonal_complement
from qotp.otp.programs import get_program
from qotp.otp.scheme import EntropyProfile, min_entropy, otp_keygen, otp_token_eval, otp_token_gen
from qotp.quantum.statevector import apply_hadamard_all, prepare_subspace_state
from qotp.utils.log import log
from qotp.utils.tools import canonical_json, dict_md5

CSV_COLUMNS = ("game", "params", "trials", "wins", "estimate", "ci_lo", "ci_hi")
ENTROPY_COLUMNS = ("program", "x", "tau_x")


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    buffer.write(header)
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def estimate_row(estimate: AdvantageEstimate) -> List[Any]:
    wins = "" if estimate.wins is None else estimate.wins
    return [
        estimate.game,
        canonical_json(estimate.params),
        estimate.trials,
        wins,
        repr(estimate.estimate),
        repr(estimate.ci_lo),
        repr(estimate.ci_hi),
    ]


def estimates_csv(config: ExperimentConfig, estimates: Sequence[AdvantageEstimate]) -> str:
    return _csv_text(config.provenance_header(), CSV_COLUMNS, [estimate_row(e) for e in estimates])


def transcripts_json(config: ExperimentConfig, transcripts: Sequence[GameTranscript]) -> str:
    payload = {
        "config": config.provenance(),
        "md5": config.fingerprint(),
        "transcripts": [t.model_dump(mode="json") for t in transcripts],
    }
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass
class GameArtifacts:
    estimates: List[AdvantageEstimate]
    winners: List[GameTranscript]
    csv_path: Path
    json_path: Path


def run_game(config: ExperimentConfig) -> GameArtifacts:
    """Sweep the configured game over its grid and write the CSV and transcript archive."""
    winners: List[GameTranscript] = []
    estimates = estimate_advantage_curve(
        config.game,
        config.grid(),
        config.trials,
        seed=config.seed,
        adversary=config.adversary,
        workers=config.workers,
        archive=winners,
    )
    out = Path(config.out)
    csv_path = out / f"{config.game}.csv"
    json_path = out / f"{config.game}_transcripts.json"
    write_atomic(csv_path, estimates_csv(config, estimates))
    write_atomic(json_path, transcripts_json(config, winners))
    log.info(f"Wrote {csv_path} and {json_path} ({len(winners)} winning transcripts)")
    return GameArtifacts(estimates, winners, csv_path, json_path)


def run_entropy(config: ExperimentConfig) -> Tuple[EntropyProfile, Path]:
    program = get_program(config.program, **config.program_params)
    profile = min_entropy(program)
    rows = [[profile.program, x, repr(tau_x)] for x, tau_x in enumerate(profile.per_x)]
    path = Path(config.out) / f"entropy_{program.name}.csv"
    write_atomic(path, _csv_text(config.provenance_header(), ENTROPY_COLUMNS, rows))
    return profile, path


def _subspace_identity_holds(sk: AuthSecretKey) -> int:
    """Number of key subspaces for which ``H|A> = |A^perp>``; all of them, for a sound simulator."""
    held = 0
    for basis in sk.subspaces:
        lhs = apply_hadamard_all(prepare_subspace_state(basis))
        if lhs.allclose(prepare_subspace_state(orthogonal_complement(basis))):
            held += 1
    return held


def run_demo(config: ExperimentConfig) -> List[str]:
    """
    Keygen, token, one evaluation, then a refused second evaluation.

    Returns the trace lines; the trace depends on the config only.
    """
    rng = np.random.default_rng(config.seed)
    program = get_program(config.program, **config.program_params)
    sk, handle = otp_keygen(config.lam, program, rng, config.oracle_mode, config.reject_zero_tag)
    token = otp_token_gen(sk, config.mode)
    lines = [
        f"program {program.name}: x_bits={program.x_bits} r_bits={program.r_bits} |Y|={program.y_size}",
        f"keygen: lambda={sk.lam} ell={sk.ell} oracle={config.oracle_mode}",
        f"token {token.token_id} ({token.representation})",
    ]
    if isinstance(token, StatevectorToken):
        held = _subspace_identity_holds(sk)
        if held != len(sk.subspaces):
            raise QuantumStateError(f"Hadamard identity failed on {len(sk.subspaces) - held} subspaces")
        lines.append(f"A⊥ verified for {held} subspaces")

    x = BitVector.from_int(int(rng.integers(0, 1 << program.x_bits)), program.x_bits)
    y = otp_token_eval(x, token, handle, rng)
    lines += [f"x = {x}", f"y = {y}", f"evaluation queries = {handle.query_count}"]
    try:
        otp_token_eval(x, token, handle, rng)
        lines.append("second evaluation succeeded")
    except OneTimeViolationError as e:
        lines.append(f"second evaluation refused: {e}")
    return lines


@dataclass
class ReportEntry:
    path: Path
    fingerprint_ok: bool
    columns: List[str]
    rows: List[List[str]] = field(default_factory=list)
    config: Optional[Dict[str, Any]] = None


def read_artifact(path: Path) -> ReportEntry:
    """
    Parse a CSV artifact and check its provenance fingerprint.

    :raises TableFormatError: If the provenance header is missing.
    """
    lines = path.read_text(encoding="utf-8").splitlines()
    if len(lines) < 3 or not lines[0].startswith("# config ") or not lines[1].startswith("# md5 "):
        raise TableFormatError("missing provenance header", str(path))
    config = json.loads(lines[0][len("# config ") :])
    fingerprint_ok = dict_md5(config) == lines[1][len("# md5 ") :].strip()
    reader = csv.reader(lines[2:])
    columns = next(reader)
    return ReportEntry(path, fingerprint_ok, columns, [row for row in reader], config)


def read_report(out_dir: Path) -> List[ReportEntry]:
    entries = []
    for path in sorted(Path(out_dir).glob("*.csv")):
        entry = read_artifact(path)
        if not entry.fingerprint_ok:
            log.warning(f"Provenance fingerprint mismatch in {path}")
        entries.append(entry)
    return entries

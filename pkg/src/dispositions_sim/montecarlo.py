"""Monte Carlo estimation of the two dispositions' expected utilities.

Serves as the independent check on the closed forms in ``analytic``: a
focal agent is paired against a population containing constrained
maximizers in fraction r, and each trial resolves the encounter twice,
once with the focal agent constrained and once straightforward, using
independent recognition draws but the same sampled partner.

Trials are partitioned into fixed-size blocks. Block k draws from three
dedicated streams derived from (seed, 3k), (seed, 3k+1) and (seed, 3k+2)
for partner sampling, constrained-focal recognition and
straightforward-focal recognition respectively, so results are
bit-identical for a given seed no matter how many workers run the blocks.
Because every encounter payoff is one of the four outcome levels, block
results are integer outcome counts; means and standard errors are
recovered from the counts, which keeps degenerate configurations (for
example p = q = 0) exact.

Worker count is taken from the DISPOSITIONS_SIM_THREADS environment
variable when not passed explicitly; 0 or unset means automatic.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

from .core import Disposition, OutcomeClass
from .encounter import EncounterConfig, RngStream, resolve_encounter

BLOCK_TRIALS = 65_536

_THREADS_ENV_VAR = "DISPOSITIONS_SIM_THREADS"


class InvalidTrialCount(ValueError):
    """The requested number of trials is not a positive integer."""


@dataclass(frozen=True)
class TrialReport:
    """Aggregated estimates from one Monte Carlo run.

    ``outcome_histogram`` counts the focal agent's outcome class over all
    resolved encounters (two per trial), so its values sum to
    2 * n_trials.
    """

    n_trials: int
    mean_payoff_cm: float
    mean_payoff_sm: float
    stderr_cm: float
    stderr_sm: float
    outcome_histogram: dict[OutcomeClass, int]


@dataclass(frozen=True)
class _BlockCounts:
    """Focal outcome counts for one block of trials."""

    trials: int
    cm_coop: int
    cm_exploited: int
    cm_noncoop: int
    sm_defect: int
    sm_noncoop: int

    def merged(self, other: "_BlockCounts") -> "_BlockCounts":
        return _BlockCounts(
            trials=self.trials + other.trials,
            cm_coop=self.cm_coop + other.cm_coop,
            cm_exploited=self.cm_exploited + other.cm_exploited,
            cm_noncoop=self.cm_noncoop + other.cm_noncoop,
            sm_defect=self.sm_defect + other.sm_defect,
            sm_noncoop=self.sm_noncoop + other.sm_noncoop,
        )


_EMPTY_COUNTS = _BlockCounts(0, 0, 0, 0, 0, 0)


def block_streams(seed: int, block_index: int) -> tuple[RngStream, RngStream, RngStream]:
    """The (partner, constrained-focal, straightforward-focal) streams of a block."""
    base = 3 * block_index
    return (
        RngStream(seed, base),
        RngStream(seed, base + 1),
        RngStream(seed, base + 2),
    )


def _run_block(cfg: EncounterConfig, seed: int, block_index: int, trials: int) -> _BlockCounts:
    """Vectorized equivalent of resolving each trial's two encounters.

    Consumes exactly one uniform per encounter from the per-purpose
    streams, matching the scalar ``resolve_encounter`` draw discipline,
    so the counts equal those of a trial-by-trial loop over the same
    streams (asserted by the test suite).
    """
    partner_rng, cm_rng, sm_rng = block_streams(seed, block_index)
    p, q, r = cfg.params.p, cfg.params.q, cfg.params.r

    partner_is_cm = partner_rng.uniforms(trials) < r
    u_cm_focal = cm_rng.uniforms(trials)
    u_sm_focal = sm_rng.uniforms(trials)

    cm_coop = int((partner_is_cm & (u_cm_focal < p)).sum())
    cm_exploited = int((~partner_is_cm & (u_cm_focal < q)).sum())
    sm_defect = int((partner_is_cm & (u_sm_focal < q)).sum())

    return _BlockCounts(
        trials=trials,
        cm_coop=cm_coop,
        cm_exploited=cm_exploited,
        cm_noncoop=trials - cm_coop - cm_exploited,
        sm_defect=sm_defect,
        sm_noncoop=trials - sm_defect,
    )


def run_trial(
    cfg: EncounterConfig,
    partner_rng: RngStream,
    cm_rng: RngStream,
    sm_rng: RngStream,
) -> tuple[OutcomeClass, OutcomeClass]:
    """Resolve one trial's two encounters, returning the focal outcome classes.

    This is the scalar definition the vectorized blocks must agree with:
    sample the partner disposition once, then resolve the encounter with
    the focal agent constrained and again straightforward, on independent
    recognition streams.
    """
    partner = (
        Disposition.CONSTRAINED
        if partner_rng.uniform() < cfg.params.r
        else Disposition.STRAIGHTFORWARD
    )
    cm_outcome, _ = resolve_encounter(Disposition.CONSTRAINED, partner, cfg, cm_rng)
    sm_outcome, _ = resolve_encounter(Disposition.STRAIGHTFORWARD, partner, cfg, sm_rng)
    return cm_outcome.kind, sm_outcome.kind


def resolve_workers(workers: int | None = None) -> int:
    """Worker count from the argument or DISPOSITIONS_SIM_THREADS (0 = auto)."""
    if workers is None:
        raw = os.environ.get(_THREADS_ENV_VAR, "0")
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(
                f"{_THREADS_ENV_VAR} must be an integer, got {raw!r}"
            ) from None
    if workers < 0:
        raise ValueError(f"worker count must be >= 0, got {workers}")
    if workers == 0:
        return os.cpu_count() or 1
    return workers


def _mean_and_stderr(
    counts: dict[float, int], n: int
) -> tuple[float, float]:
    """Mean and standard error of a payoff taking finitely many values.

    Computed from exact integer counts: mean = sum v * (c_v / n). The
    sample variance uses the unbiased n-1 divisor and is clamped at zero
    against cancellation noise.
    """
    mean = sum(value * (count / n) for value, count in counts.items() if count)
    if n < 2:
        return mean, 0.0
    second_moment = sum(
        value * value * (count / n) for value, count in counts.items() if count
    )
    variance = max(0.0, (second_moment - mean * mean) * (n / (n - 1)))
    return mean, sqrt(variance / n)


def estimate_eus(
    cfg: EncounterConfig,
    n_trials: int,
    seed: int,
    workers: int | None = None,
) -> TrialReport:
    """Estimate both dispositions' expected payoffs from sampled encounters.

    Deterministic given (cfg, n_trials, seed): block boundaries and their
    streams depend only on the seed and block index, and integer counts
    merge associatively, so the worker count never changes the report.

    Raises:
        InvalidTrialCount: if n_trials < 1.
    """
    if n_trials < 1:
        raise InvalidTrialCount(f"n_trials must be >= 1, got {n_trials}")

    blocks = [
        (index, min(BLOCK_TRIALS, n_trials - start))
        for index, start in enumerate(range(0, n_trials, BLOCK_TRIALS))
    ]

    n_workers = min(resolve_workers(workers), len(blocks))
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            results = list(
                pool.map(lambda b: _run_block(cfg, seed, b[0], b[1]), blocks)
            )
    else:
        results = [_run_block(cfg, seed, index, trials) for index, trials in blocks]

    totals = _EMPTY_COUNTS
    for block in results:
        totals = totals.merged(block)

    v_nc = cfg.payoffs.v_noncoop
    v_c = cfg.payoffs.v_coop
    mean_cm, stderr_cm = _mean_and_stderr(
        {v_nc: totals.cm_noncoop, v_c: totals.cm_coop, 0.0: totals.cm_exploited},
        n_trials,
    )
    mean_sm, stderr_sm = _mean_and_stderr(
        {v_nc: totals.sm_noncoop, 1.0: totals.sm_defect},
        n_trials,
    )

    histogram = {
        OutcomeClass.NON_COOPERATION: totals.cm_noncoop + totals.sm_noncoop,
        OutcomeClass.COOPERATION: totals.cm_coop,
        OutcomeClass.DEFECTION: totals.sm_defect,
        OutcomeClass.EXPLOITATION: totals.cm_exploited,
    }

    return TrialReport(
        n_trials=n_trials,
        mean_payoff_cm=mean_cm,
        mean_payoff_sm=mean_sm,
        stderr_cm=stderr_cm,
        stderr_sm=stderr_sm,
        outcome_histogram=histogram,
    )

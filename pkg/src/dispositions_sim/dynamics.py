"""Discrete-time replicator dynamics over the constrained-maximizer share.

An extension of the static analysis: treat the population fraction r of
constrained maximizers as evolving, with each disposition reproducing in
proportion to its current expected utility. The update is the ratio-form
replicator map

    r' = r * EU_cm / (r * EU_cm + (1 - r) * EU_sm)

with both expected utilities evaluated at the current r. Fixed points sit
at r = 0 and r = 1, and in between the share always moves toward the
disposition with the higher expected utility. Because the critical ratio
falls as r grows, a parameterization can favor defectors at low r and
cooperators at high r; the resulting interior unstable threshold is what
``interior_threshold`` locates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analytic import translucent_eu_cm, translucent_eu_sm
from .core import TranslucencyParams, TranslucentPayoffs

CONVERGENCE_TOL = 1e-12

_BISECTION_TOL = 1e-10


class DegenerateFitness(ArithmeticError):
    """Both dispositions have zero fitness, leaving the update undefined."""


@dataclass(frozen=True)
class TrajectoryStep:
    generation: int
    r: float
    eu_cm: float
    eu_sm: float


@dataclass(frozen=True)
class Trajectory:
    """Recorded evolution of the population share, one step per generation.

    Ends early (before the requested generation count) when successive
    shares differ by less than ``CONVERGENCE_TOL``.
    """

    steps: tuple[TrajectoryStep, ...]

    @property
    def final_r(self) -> float:
        return self.steps[-1].r


def _ratio_step(r: float, eu_cm: float, eu_sm: float) -> float:
    fitness_cm = r * eu_cm
    fitness_sm = (1.0 - r) * eu_sm
    total = fitness_cm + fitness_sm
    if total == 0.0:
        # Unreachable through valid payoff types (EU_sm >= v_noncoop > 0
        # whenever r < 1, and EU_cm > 0 whenever r > 0); kept as a guard.
        raise DegenerateFitness(
            f"zero total fitness at r={r!r} (eu_cm={eu_cm!r}, eu_sm={eu_sm!r})"
        )
    return fitness_cm / total


def replicator_step(pay: TranslucentPayoffs, t: TranslucencyParams) -> float:
    """Next population share of constrained maximizers.

    Raises:
        DegenerateFitness: if both weighted fitnesses are zero.
    """
    return _ratio_step(t.r, translucent_eu_cm(pay, t), translucent_eu_sm(pay, t))


def evolve(
    pay: TranslucentPayoffs,
    t0: TranslucencyParams,
    generations: int,
) -> Trajectory:
    """Iterate the replicator map from t0.r, holding p and q fixed.

    Records the initial state as generation 0 and one step per subsequent
    generation, stopping early once |r' - r| < CONVERGENCE_TOL.

    Raises:
        ValueError: if generations < 1.
        DegenerateFitness: propagated from the update.
    """
    if generations < 1:
        raise ValueError(f"generations must be >= 1, got {generations}")

    r = t0.r
    params = t0
    steps = [
        TrajectoryStep(
            generation=0,
            r=r,
            eu_cm=translucent_eu_cm(pay, params),
            eu_sm=translucent_eu_sm(pay, params),
        )
    ]
    for generation in range(1, generations + 1):
        r_next = replicator_step(pay, params)
        converged = abs(r_next - r) < CONVERGENCE_TOL
        r = r_next
        params = TranslucencyParams(p=t0.p, q=t0.q, r=r)
        steps.append(
            TrajectoryStep(
                generation=generation,
                r=r,
                eu_cm=translucent_eu_cm(pay, params),
                eu_sm=translucent_eu_sm(pay, params),
            )
        )
        if converged:
            break
    return Trajectory(steps=tuple(steps))


def _margin_at(pay: TranslucentPayoffs, p: float, q: float, r: float) -> float:
    t = TranslucencyParams(p=p, q=q, r=r)
    return translucent_eu_cm(pay, t) - translucent_eu_sm(pay, t)


def interior_threshold(
    pay: TranslucentPayoffs, p: float, q: float
) -> float | None:
    """Interior root of EU_cm(r) = EU_sm(r), or None if the sign is constant.

    Looks for a sign change of the margin across (0, 1) and bisects to
    within 1e-10. The margin is linear in r, so bisection is overkill but
    cheap and assumption-free. The root, when it exists, is the unstable
    threshold separating extinction from fixation of the constrained
    disposition.
    """
    lo, hi = 0.0, 1.0
    m_lo = _margin_at(pay, p, q, lo)
    m_hi = _margin_at(pay, p, q, hi)
    if m_lo == 0.0 or m_hi == 0.0 or (m_lo > 0.0) == (m_hi > 0.0):
        return None
    while hi - lo > _BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        m_mid = _margin_at(pay, p, q, mid)
        if m_mid == 0.0:
            return mid
        if (m_mid > 0.0) == (m_lo > 0.0):
            lo, m_lo = mid, m_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)

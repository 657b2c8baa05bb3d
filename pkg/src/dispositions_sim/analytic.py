"""Closed-form expected utilities and the rationality criterion.

Under full information two classic arguments disagree about which
disposition maximizes expected utility; ``argument1_eus`` and
``argument2_eus`` compute both. Under imperfect recognition the expected
utilities of the two dispositions become

    EU_cm = v_noncoop + r*p*(v_coop - v_noncoop) - (1 - r)*q*v_noncoop
    EU_sm = v_noncoop + r*q*(1 - v_noncoop)

and choosing the constrained disposition is rational exactly when
EU_cm > EU_sm, which for q > 0 and r > 0 is equivalent to p/q exceeding
``critical_ratio``. Ties count as not rational: the criterion is strict.

All functions here are pure; identical inputs give bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    InvalidProbability,
    TranslucencyParams,
    TranslucentPayoffs,
    TransparentPayoffs,
)


@dataclass(frozen=True)
class EuComparison:
    """Expected utilities of the two dispositions and their comparison.

    ``margin`` is eu_cm - eu_sm; ``cm_is_rational`` holds iff the margin
    is strictly positive.
    """

    eu_sm: float
    eu_cm: float
    cm_is_rational: bool
    margin: float

    def __post_init__(self) -> None:
        if self.cm_is_rational != (self.margin > 0.0):
            raise ValueError(
                f"cm_is_rational={self.cm_is_rational} contradicts margin={self.margin!r}"
            )

    @classmethod
    def of(cls, eu_sm: float, eu_cm: float) -> "EuComparison":
        margin = eu_cm - eu_sm
        return cls(
            eu_sm=eu_sm,
            eu_cm=eu_cm,
            cm_is_rational=margin > 0.0,
            margin=margin,
        )


def _check_probability(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise InvalidProbability(f"{name} must lie in [0, 1], got {value!r}")


def argument1_eus(pay: TransparentPayoffs, p: float) -> EuComparison:
    """Expected utilities when each disposition is assumed exploitable.

    Treats the partner mix as fixed regardless of one's own disposition:
    with probability ``p`` the others cooperate, so a straightforward
    maximizer collects the temptation payoff while a constrained one
    collects the cooperative payoff. Under this (flawed) assumption the
    straightforward disposition dominates; the flaw is that conditional
    cooperators do not cooperate with recognized defectors, which is what
    ``argument2_eus`` corrects.
    """
    _check_probability("p", p)
    eu_sm = p * pay.u_temptation + (1.0 - p) * pay.u_both_defect
    eu_cm = p * pay.u_coop + (1.0 - p) * pay.u_both_defect
    return EuComparison.of(eu_sm=eu_sm, eu_cm=eu_cm)


def argument2_eus(pay: TransparentPayoffs, p: float) -> EuComparison:
    """Expected utilities when cooperation is conditional on recognition.

    A straightforward maximizer is never admitted to the joint strategy,
    so her expectation is the mutual-defection payoff. A constrained
    maximizer cooperates with the like-disposed (probability ``p``) and
    defects otherwise, so her expectation is p*u_coop + (1-p)*u_both_defect,
    which strictly exceeds u_both_defect whenever p > 0.
    """
    _check_probability("p", p)
    eu_sm = pay.u_both_defect
    eu_cm = p * pay.u_coop + (1.0 - p) * pay.u_both_defect
    return EuComparison.of(eu_sm=eu_sm, eu_cm=eu_cm)


def translucent_eu_cm(pay: TranslucentPayoffs, t: TranslucencyParams) -> float:
    """Expected utility of the constrained disposition under imperfect
    recognition.

    Baseline v_noncoop, raised by r*p*(v_coop - v_noncoop) for successful
    mutual recognition among like-disposed partners, and lowered by
    (1-r)*q*v_noncoop for being exploited by an unrecognized defector.
    """
    return (
        pay.v_noncoop
        + t.r * t.p * (pay.v_coop - pay.v_noncoop)
        - (1.0 - t.r) * t.q * pay.v_noncoop
    )


def translucent_eu_sm(pay: TranslucentPayoffs, t: TranslucencyParams) -> float:
    """Expected utility of the straightforward disposition under imperfect
    recognition.

    Baseline v_noncoop, raised by r*q*(1 - v_noncoop) for the chance of
    exploiting a constrained partner who fails to see through her.
    """
    return pay.v_noncoop + t.r * t.q * (1.0 - pay.v_noncoop)


def critical_ratio(pay: TranslucentPayoffs, r: float) -> float:
    """Threshold that p/q must exceed for the constrained disposition to win.

    Returns
        (1 - v_noncoop) / (v_coop - v_noncoop)
            + (1 - r) * v_noncoop / (r * (v_coop - v_noncoop)),
    or ``math.inf`` when r == 0 (no constrained partners exist, so no
    finite recognition advantage suffices). The value is strictly
    decreasing in r on (0, 1].
    """
    _check_probability("r", r)
    if r == 0.0:
        return math.inf
    gain = pay.v_coop - pay.v_noncoop
    return (1.0 - pay.v_noncoop) / gain + ((1.0 - r) * pay.v_noncoop) / (r * gain)


def cm_rational(pay: TranslucentPayoffs, t: TranslucencyParams) -> EuComparison:
    """Compare the two translucent expected utilities.

    The comparison of expected utilities is the primary definition; for
    q > 0 and r > 0 it coincides with p/q > critical_ratio(pay, r). The
    boolean is computed from the margin directly so that q = 0, where the
    ratio form is undefined, needs no special-casing.
    """
    return EuComparison.of(
        eu_sm=translucent_eu_sm(pay, t),
        eu_cm=translucent_eu_cm(pay, t),
    )

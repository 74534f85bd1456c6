"""Benchmark switching policies and their exact evaluation.

A policy maps (games remaining, score, has the score ever been positive) to a
style. The flag is the only history the benchmark policies need: the
protect-the-lead rule attacks until it first leads and then sits on the lead,
so its state is exactly "have I led yet".

Evaluation is exact: the joint distribution of (score, led yet) is propagated
forward one game at a time, which costs O(N^2) and no sampling error. A
separate brute-force oracle enumerates every stage-and-score policy with
integer arithmetic for tiny horizons and anchors the solver tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from . import analytic, dp
from .core import EQ_TOL, Action, MatchSpec
from .errors import (
    InvalidOracleInput,
    OracleHorizonTooLarge,
    RegimeNotCovered,
    require_horizon,
)

ORACLE_MAX_HORIZON = 5
_ORACLE_SCALE = 10**6

DEFAULT_PROPAGATE_HORIZON_BUDGET = 2_000


class Policy:
    """Deterministic decision rule on (games remaining, score, led yet).

    ``has_led`` records whether the score has ever been positive. Policies
    that ignore it set ``uses_lead_flag`` to False, which lets the evaluator
    drop the flag from its state.
    """

    uses_lead_flag: bool = True

    def decide(self, games_remaining: int, score: int, has_led: bool) -> Action:
        raise NotImplementedError

    def decide_row(self, games_remaining: int, scores: np.ndarray, has_led: bool) -> np.ndarray:
        """Offense mask over a whole row of scores; override for speed."""
        return np.fromiter(
            (self.decide(games_remaining, int(x), has_led) is Action.OFF for x in scores),
            dtype=bool,
            count=len(scores),
        )

    def __call__(self, games_remaining: int, score: int, has_led: bool = False) -> Action:
        return self.decide(games_remaining, score, has_led)


def _coerce_action(value) -> Action:
    if isinstance(value, Action):
        return value
    if isinstance(value, str):
        try:
            return {"off": Action.OFF, "def": Action.DEF}[value.strip().lower()]
        except KeyError:
            pass
    raise ValueError(f"expected Off or Def, got {value!r}")


class FixedPolicy(Policy):
    """Always play the same style."""

    uses_lead_flag = False

    def __init__(self, action):
        self.action = _coerce_action(action)

    def decide(self, games_remaining, score, has_led):
        return self.action

    def decide_row(self, games_remaining, scores, has_led):
        return np.full(np.shape(scores), self.action is Action.OFF)

    def __repr__(self):
        return f"FixedPolicy({self.action.value})"


class CatPolicy(Policy):
    """Attack until the score first becomes positive, then defend forever."""

    def decide(self, games_remaining, score, has_led):
        return Action.DEF if has_led else Action.OFF

    def decide_row(self, games_remaining, scores, has_led):
        return np.full(np.shape(scores), not has_led)

    def __repr__(self):
        return "CatPolicy()"


class CatPlusPolicy(Policy):
    """Protect the lead, but pick the better style when the last game is level.

    ``final_offense`` says which style has the larger one-game drift; it is
    played whenever one game remains and the score is zero, whether or not
    the player has led before.
    """

    def __init__(self, final_offense: bool):
        self.final_offense = bool(final_offense)

    def decide(self, games_remaining, score, has_led):
        if games_remaining == 1 and score == 0:
            return Action.OFF if self.final_offense else Action.DEF
        return Action.DEF if has_led else Action.OFF

    def decide_row(self, games_remaining, scores, has_led):
        mask = np.full(np.shape(scores), not has_led)
        if games_remaining == 1:
            mask = np.where(np.asarray(scores) == 0, self.final_offense, mask)
        return mask

    def __repr__(self):
        return f"CatPlusPolicy(final_offense={self.final_offense})"


class TablePolicy(Policy):
    """Play the actions recorded in a solved policy table."""

    uses_lead_flag = False

    def __init__(self, table: dp.PolicyTable):
        self.table = table

    def decide(self, games_remaining, score, has_led):
        return self.table.action(games_remaining, score)

    def decide_row(self, games_remaining, scores, has_led):
        k = int(games_remaining)
        if not 1 <= k <= self.table.horizon:
            raise ValueError(f"stage must lie in [1, {self.table.horizon}], got {games_remaining}")
        band = min(k, self.table.horizon - k)
        row = self.table.rows[k - 1]
        scores = np.asarray(scores)
        inside = np.abs(scores) <= band
        idx = np.clip(scores + band, 0, 2 * band)
        return inside & (row[idx] != 0)

    def __repr__(self):
        return f"TablePolicy(horizon={self.table.horizon})"


class _FunctionPolicy(Policy):
    """Adapter turning a plain callable into a policy."""

    def __init__(self, fn: Callable[[int, int, bool], Action]):
        self.fn = fn

    def decide(self, games_remaining, score, has_led):
        return _coerce_action(self.fn(games_remaining, score, has_led))


def fixed_policy(action) -> FixedPolicy:
    """Policy that plays ``action`` ("Off" or "Def") in every game."""
    return FixedPolicy(action)


def cat_policy() -> CatPolicy:
    """Protect-the-lead policy: offense until the first lead, then defense."""
    return CatPolicy()


def cat_plus_policy(spec: MatchSpec) -> CatPlusPolicy:
    """Protect-the-lead with the drift-better style when the last game is level."""
    return CatPlusPolicy(spec.offense.drift > spec.defense.drift)


def table_policy(table: dp.PolicyTable) -> TablePolicy:
    """Policy that replays a solved optimal action table."""
    return TablePolicy(table)


def as_policy(policy) -> Policy:
    """Coerce a Policy, action name, policy table, or callable into a Policy."""
    if isinstance(policy, Policy):
        return policy
    if isinstance(policy, dp.PolicyTable):
        return TablePolicy(policy)
    if isinstance(policy, (Action, str)):
        return FixedPolicy(policy)
    if callable(policy):
        return _FunctionPolicy(policy)
    raise TypeError(f"cannot interpret {policy!r} as a policy")


def _style_arrays(spec: MatchSpec) -> tuple[tuple, tuple]:
    off = (spec.offense.win, spec.offense.draw, spec.offense.loss)
    dfn = (spec.defense.win, spec.defense.draw, spec.defense.loss)
    return off, dfn


def _step_layer(mass: np.ndarray, off_mask: np.ndarray, off: tuple, dfn: tuple) -> np.ndarray:
    """Advance a score distribution one game, each cell playing its chosen style."""
    w = np.where(off_mask, off[0], dfn[0])
    d = np.where(off_mask, off[1], dfn[1])
    l = np.where(off_mask, off[2], dfn[2])
    core = np.zeros_like(mass)
    core[1:] = w[:-1] * mass[:-1]
    core[:-1] += l[1:] * mass[1:]
    # adding the draw term last keeps the update mirror-symmetric for fair
    # styles, so symmetric distributions stay exactly symmetric in floats
    return core + d * mass


def _promote(not_led: np.ndarray, led: np.ndarray, center: int) -> None:
    # a never-led path can only reach +1 from 0, so one cell moves layers
    gained = not_led[center + 1]
    not_led[center + 1] = 0.0
    led[center + 1] += gained


def exact_policy_gain(
    spec: MatchSpec,
    policy,
    n_games: int,
    *,
    max_horizon: int | None = None,
) -> float:
    """Expected final-score sign of ``policy`` over an ``n_games`` match.

    Exact forward propagation, O(N^2) time and O(N) memory. Policies that
    condition on having led carry a two-layer distribution (never led / has
    led); flag-blind policies use a single layer.
    """
    n = require_horizon(n_games)
    dp._check_budget(n, max_horizon, dp.DEFAULT_VALUE_HORIZON_BUDGET)
    policy = as_policy(policy)
    off, dfn = _style_arrays(spec)
    center = n
    scores = np.arange(-n, n + 1)
    if not policy.uses_lead_flag:
        mass = np.zeros(2 * n + 1)
        mass[center] = 1.0
        for played in range(n):
            mask = policy.decide_row(n - played, scores, False)
            mass = _step_layer(mass, mask, off, dfn)
        return analytic.sign_expectation(mass, center)
    not_led = np.zeros(2 * n + 1)
    led = np.zeros(2 * n + 1)
    not_led[center] = 1.0
    for played in range(n):
        remaining = n - played
        not_led = _step_layer(not_led, policy.decide_row(remaining, scores, False), off, dfn)
        led = _step_layer(led, policy.decide_row(remaining, scores, True), off, dfn)
        _promote(not_led, led, center)
    return analytic.sign_expectation(not_led + led, center)


@dataclass(frozen=True)
class AugmentedDistribution:
    """Joint law of (score, led yet) after each game of a match.

    ``stages[t]`` is a (2, 2*horizon+1) array for the position after t games:
    row 0 holds paths whose score was never positive, row 1 the rest. Scores
    are indexed by x + horizon.
    """

    horizon: int
    stages: list = field(repr=False)

    @property
    def center(self) -> int:
        return self.horizon

    def score_distribution(self, games_played: int | None = None) -> np.ndarray:
        t = self.horizon if games_played is None else int(games_played)
        return self.stages[t][0] + self.stages[t][1]

    def lead_probability(self, games_played: int | None = None) -> float:
        t = self.horizon if games_played is None else int(games_played)
        return float(self.stages[t][1].sum())

    @property
    def gain(self) -> float:
        return analytic.sign_expectation(self.score_distribution(), self.center)

    def max_mass_drift(self) -> float:
        """Largest deviation of any stage's total mass from 1."""
        return max(abs(float(stage.sum()) - 1.0) for stage in self.stages)


def propagate_policy(
    spec: MatchSpec,
    policy,
    n_games: int,
    *,
    max_horizon: int | None = None,
) -> AugmentedDistribution:
    """Forward law of (score, led yet) after every game under ``policy``.

    Keeps all intermediate stages, so memory is quadratic in the horizon and
    the default budget is 2,000 stages.
    """
    n = require_horizon(n_games)
    dp._check_budget(n, max_horizon, DEFAULT_PROPAGATE_HORIZON_BUDGET)
    policy = as_policy(policy)
    off, dfn = _style_arrays(spec)
    center = n
    scores = np.arange(-n, n + 1)
    stage = np.zeros((2, 2 * n + 1))
    stage[0, center] = 1.0
    stages = [stage]
    for played in range(n):
        remaining = n - played
        not_led = _step_layer(stage[0], policy.decide_row(remaining, scores, False), off, dfn)
        led = _step_layer(stage[1], policy.decide_row(remaining, scores, True), off, dfn)
        _promote(not_led, led, center)
        stage = np.stack([not_led, led])
        stages.append(stage)
    return AugmentedDistribution(n, stages)


def lead_policy_curves(
    spec: MatchSpec,
    n_max: int,
    *,
    max_horizon: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Exact protect-the-lead gains for every horizon 1..n_max, in one pass.

    The plain rule never looks at the horizon, so one forward pass under it
    yields every horizon's gain. The refined rule differs only in the last
    game, so its horizon-(s+1) gain is one refined step applied to the stage-s
    mass of the same pass. Gains are computed over the reachable score band,
    which makes them bit-identical to evaluating each horizon separately.
    """
    n = require_horizon(n_max)
    dp._check_budget(n, max_horizon, dp.DEFAULT_VALUE_HORIZON_BUDGET)
    refined = cat_plus_policy(spec)
    off, dfn = _style_arrays(spec)
    center = n
    scores = np.arange(-n, n + 1)
    not_led = np.zeros(2 * n + 1)
    led = np.zeros(2 * n + 1)
    not_led[center] = 1.0
    cat_gains = np.zeros(n)
    catplus_gains = np.zeros(n)
    all_off = np.ones(2 * n + 1, dtype=bool)
    all_def = np.zeros(2 * n + 1, dtype=bool)
    for played in range(n):
        horizon = played + 1
        lo, hi = center - horizon, center + horizon
        final_nf = _step_layer(not_led, refined.decide_row(1, scores, False), off, dfn)
        final_led = _step_layer(led, refined.decide_row(1, scores, True), off, dfn)
        catplus_gains[played] = analytic.sign_expectation(
            (final_nf + final_led)[lo : hi + 1], horizon
        )
        not_led = _step_layer(not_led, all_off, off, dfn)
        led = _step_layer(led, all_def, off, dfn)
        _promote(not_led, led, center)
        cat_gains[played] = analytic.sign_expectation((not_led + led)[lo : hi + 1], horizon)
    return cat_gains, catplus_gains


def cat_gain_curve(spec: MatchSpec, n_max: int, *, max_horizon: int | None = None) -> np.ndarray:
    """Exact gain of the plain protect-the-lead policy for horizons 1..n_max."""
    return lead_policy_curves(spec, n_max, max_horizon=max_horizon)[0]


def cat_plus_gain_curve(
    spec: MatchSpec, n_max: int, *, max_horizon: int | None = None
) -> np.ndarray:
    """Exact gain of the refined protect-the-lead policy for horizons 1..n_max."""
    return lead_policy_curves(spec, n_max, max_horizon=max_horizon)[1]


def _scaled_probs(style) -> tuple[int, int, int]:
    units = []
    for p in (style.win, style.draw, style.loss):
        u = round(p * _ORACLE_SCALE)
        if float(Fraction(u, _ORACLE_SCALE)) != p:
            raise InvalidOracleInput(
                f"probability {p!r} is not an exact multiple of 1e-6; "
                "the enumeration oracle needs short decimal inputs"
            )
        units.append(u)
    if sum(units) != _ORACLE_SCALE:
        raise InvalidOracleInput(
            f"scaled probabilities {units} do not sum to {_ORACLE_SCALE}"
        )
    return tuple(units)


def brute_force_optimal(spec: MatchSpec, n_games: int) -> float:
    """Exhaustive maximum of the expected final sign over all decision rules.

    Enumerates every assignment of styles to reachable undecided states with
    integer arithmetic over millionths, so the result is the correctly
    rounded exact optimum. Exponential in the horizon; refuses more than 5
    games. Inputs must be exact multiples of 1e-6.
    """
    n = require_horizon(n_games)
    if n > ORACLE_MAX_HORIZON:
        raise OracleHorizonTooLarge(
            f"policy enumeration is exponential; horizon {n} exceeds {ORACLE_MAX_HORIZON}"
        )
    styles = (_scaled_probs(spec.offense), _scaled_probs(spec.defense))
    scale_pow = [_ORACLE_SCALE**k for k in range(n + 1)]

    def best_from(played: int, mass: dict[int, int]) -> int:
        # mass maps undecided scores to integer weights over SCALE**played;
        # the return value is in units of SCALE**n
        if played == n or not mass:
            return 0
        left = n - played
        cells = sorted(mass)
        best = None
        for choice in itertools.product(styles, repeat=len(cells)):
            settled = 0
            children: dict[int, int] = {}
            for x, (w, d, l) in zip(cells, choice):
                m = mass[x]
                for dx, units in ((1, w), (0, d), (-1, l)):
                    if units == 0:
                        continue
                    cx = x + dx
                    cm = m * units
                    if abs(cx) > left - 1:
                        settled += (cm if cx > 0 else -cm) * scale_pow[left - 1]
                    else:
                        children[cx] = children.get(cx, 0) + cm
            value = settled + best_from(played + 1, children)
            if best is None or value > best:
                best = value
        return best

    return float(Fraction(best_from(0, {0: 1}), scale_pow[n]))


class IdentityReport(NamedTuple):
    horizon: int
    max_discrepancy: float
    worst_horizon: int
    optimal: np.ndarray
    catplus_envelope: np.ndarray


def cat_plus_identity_check(
    spec: MatchSpec,
    n_max: int,
    *,
    max_horizon: int | None = None,
) -> IdentityReport:
    """Compare optimal gains against the refined protect-the-lead envelope.

    The envelope is the running best refined protect-the-lead gain floored at
    zero. It never exceeds the optimal gain when the defense draws surely and
    the offense strictly loses: stalling first and lead-chasing afterwards is
    itself a valid plan, as is stalling throughout. For many offenses the two
    curves agree exactly, but equality is not universal: the optimal play can
    bank a draw after recovering from a deficit, which no lead-chasing plan
    reproduces, and for some offenses that slack is strictly profitable.
    Returns both curves and their largest absolute discrepancy so callers can
    tell the two situations apart.
    """
    n = require_horizon(n_max)
    if not spec.classification.safe_defense:
        raise RegimeNotCovered("the gain identity needs a defense that draws surely")
    if not spec.offense.win < spec.offense.loss - EQ_TOL:
        raise RegimeNotCovered("the gain identity needs a strictly losing offense")
    optimal = dp.gain_curve(spec, n, max_horizon=max_horizon).gains["optimal"]
    catplus = cat_plus_gain_curve(spec, n, max_horizon=max_horizon)
    envelope = np.maximum(0.0, np.maximum.accumulate(catplus))
    gaps = np.abs(optimal - envelope)
    worst = int(np.argmax(gaps))
    return IdentityReport(n, float(gaps[worst]), worst + 1, optimal, envelope)

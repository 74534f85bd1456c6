"""Shared fixtures: reference match specs reused across the test modules."""

from __future__ import annotations

import pytest

from matchplay import MatchSpec

# the running two-game example: a clearly losing offense against a drawish
# defense, where switching styles still forces a positive expected sign
CHESS_PROBS = (0.45, 0.0, 0.55, 0.10, 0.75, 0.15)

# near-parity offense against a heavily drawish defense; its optimal gain
# peaks at an interior horizon
GRIND_PROBS = (0.49, 0.0, 0.51, 0.02, 0.95, 0.03)

# two close defense variants with different optimal match lengths: the
# first peaks at a four-game match, the second at six
CURVE_PEAK4_PROBS = (0.43, 0.0, 0.57, 0.06, 0.84, 0.10)
CURVE_PEAK6_PROBS = (0.43, 0.0, 0.57, 0.06, 0.86, 0.08)


def make_spec(pw, pd, pl, qw, qd, ql) -> MatchSpec:
    return MatchSpec.from_probs(pw, pd, pl, qw, qd, ql)


@pytest.fixture(scope="session")
def chess() -> MatchSpec:
    return make_spec(*CHESS_PROBS)


@pytest.fixture(scope="session")
def grind() -> MatchSpec:
    return make_spec(*GRIND_PROBS)


@pytest.fixture(scope="session")
def curve_peak4() -> MatchSpec:
    return make_spec(*CURVE_PEAK4_PROBS)


@pytest.fixture(scope="session")
def curve_peak6() -> MatchSpec:
    return make_spec(*CURVE_PEAK6_PROBS)

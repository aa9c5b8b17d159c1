"""Seven-game suite, payoff lookup, equilibrium metadata, and the
joint-action-history state encoder with reference binning."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache


class EncodingError(ValueError):
    """Raised on out-of-range actions, bins, or state ids."""


@dataclass(frozen=True)
class EquilibriumPoint:
    """A documented equilibrium: p/q are each player's probability of playing
    the first action; concept is NE, PT-NE, or PT-EB."""

    p: float
    q: float
    concept: str

    def __post_init__(self) -> None:
        if not (0.0 <= self.p <= 1.0 and 0.0 <= self.q <= 1.0):
            raise ValueError("equilibrium probabilities must lie in [0, 1]")
        if self.concept not in ("NE", "PT-NE", "PT-EB"):
            raise ValueError(f"unknown equilibrium concept {self.concept!r}")


@dataclass(frozen=True)
class Game:
    """A 2-player m x m matrix game plus documented-equilibria metadata.

    payoffs[row_action][col_action] -> (row payoff, column payoff).
    pt_ne_status/pt_eb_status record what the literature says about PT
    equilibria: "documented", "nonexistent", or "open".
    """

    name: str
    payoffs: tuple[tuple[tuple[float, float], ...], ...]
    equilibria: tuple[EquilibriumPoint, ...] = ()
    pt_ne_status: str = "open"
    pt_eb_status: str = "open"

    @property
    def m(self) -> int:
        return len(self.payoffs)

    def payoff(self, row_action: int, col_action: int) -> tuple[float, float]:
        return self.payoffs[row_action][col_action]

    def oriented(self, side: str) -> tuple[tuple[tuple[float, ...], ...], tuple[tuple[float, ...], ...]]:
        """(own, opp) payoff tables indexed [own action][opp action] for the
        given side ("row" or "col").  Cached; called every step."""
        return _oriented(self.payoffs, self.m, side)

    def payoff_bounds(self, side: str) -> tuple[float, float]:
        """(min, max) payoff of the given player, used for reference binning."""
        idx = 0 if side == "row" else 1
        values = [cell[idx] for row in self.payoffs for cell in row]
        return min(values), max(values)

    def is_symmetric(self) -> bool:
        """True when swapping the players leaves the game unchanged."""
        return all(
            self.payoffs[i][j][1] == self.payoffs[j][i][0]
            for i in range(self.m)
            for j in range(self.m)
        )


@lru_cache(maxsize=64)
def _oriented(payoffs, m: int, side: str):
    if side == "row":
        own = tuple(tuple(cell[0] for cell in row) for row in payoffs)
        opp = tuple(tuple(cell[1] for cell in row) for row in payoffs)
    elif side == "col":
        own = tuple(tuple(payoffs[r][c][1] for r in range(m)) for c in range(m))
        opp = tuple(tuple(payoffs[r][c][0] for r in range(m)) for c in range(m))
    else:
        raise ValueError(f"side must be 'row' or 'col', got {side!r}")
    return own, opp


def _pts(concepts_by_point) -> tuple[EquilibriumPoint, ...]:
    out = []
    for (p, q), concepts in concepts_by_point:
        for concept in concepts:
            out.append(EquilibriumPoint(p, q, concept))
    return tuple(out)


def suite() -> tuple[Game, ...]:
    """The seven games of the experiment suite, payoffs and documented
    equilibria transcribed from the source material."""
    return (
        Game(
            "PrisonersDilemma",
            (((-1, -1), (-3, 0)), ((0, -3), (-2, -2))),
            _pts([((0.0, 0.0), ("NE", "PT-NE", "PT-EB"))]),
            pt_ne_status="documented",
            pt_eb_status="documented",
        ),
        Game(
            "MatchingPennies",
            (((1, 0), (0, 1)), ((0, 1), (1, 0))),
            _pts([((0.5, 0.5), ("NE", "PT-NE", "PT-EB"))]),
            pt_ne_status="documented",
            pt_eb_status="documented",
        ),
        Game(
            "BattleOfTheSexes",
            (((3, 2), (0, 0)), ((0, 0), (2, 3))),
            _pts([((0.0, 0.0), ("NE",)), ((1.0, 1.0), ("NE",)), ((0.6, 0.4), ("NE",))]),
        ),
        Game(
            "StagHunt",
            (((3, 3), (0, 2)), ((2, 0), (1, 1))),
            _pts([((0.0, 0.0), ("NE",)), ((1.0, 1.0), ("NE",)), ((0.5, 0.5), ("NE",))]),
        ),
        Game(
            "Chicken",
            (((0, 0), (-1, 1)), ((1, -1), (-10, -10))),
            _pts([((0.0, 1.0), ("NE",)), ((1.0, 0.0), ("NE",)), ((0.9, 0.9), ("NE",))]),
        ),
        Game(
            "Ochs",
            (((4, 0), (0, 1)), ((0, 1), (1, 0))),
            _pts([((0.2, 0.5), ("NE",)), ((0.5, 0.05), ("PT-EB",))]),
            pt_ne_status="nonexistent",
            pt_eb_status="documented",
        ),
        Game(
            "Crawford",
            (((2, -2), (0, 0)), ((0, 0), (-1, 1))),
            _pts([((0.5, 0.5), ("NE",))]),
            pt_ne_status="nonexistent",
        ),
    )


_BY_NAME = None


def get(name: str) -> Game:
    """Look a suite game up by (case-insensitive) name."""
    global _BY_NAME
    if _BY_NAME is None:
        _BY_NAME = {g.name.lower(): g for g in suite()}
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        known = ", ".join(g.name for g in suite())
        raise KeyError(f"unknown game {name!r}; suite games: {known}") from None


def encode_history(history, m: int) -> int:
    """Encode a joint-action history as one integer.

    Each pair becomes a base-m^2 digit m*a_row + a_col; index 0 is the
    oldest remembered round and contributes the lowest-order digit.
    """
    base = m * m
    code = 0
    scale = 1
    for a_row, a_col in history:
        if not (0 <= a_row < m and 0 <= a_col < m):
            raise EncodingError(f"action pair ({a_row}, {a_col}) out of range for m={m}")
        code += (m * a_row + a_col) * scale
        scale *= base
    return code


def decode_history(code: int, m: int, n: int) -> tuple[tuple[int, int], ...]:
    """Inverse of encode_history for a length-n history."""
    base = m * m
    if code < 0 or code >= base**n:
        raise EncodingError(f"history code {code} out of range for m={m}, n={n}")
    out = []
    for _ in range(n):
        digit = code % base
        out.append((digit // m, digit % m))
        code //= base
    return tuple(out)


def bin_reference(r: float, payoff_min: float, payoff_max: float, bins: int) -> int:
    """Normalize a reference point into [0, 1] against the payoff bounds and
    bin it; clamping makes this total on the reals."""
    u = (r - payoff_min) / (payoff_max - payoff_min)
    if u < 0.0:
        u = 0.0
    elif u > 1.0:
        u = 1.0
    b = int(u * bins)
    return bins - 1 if b >= bins else b


def state_id(history_code: int, ref_bin: int, bins: int) -> int:
    """Combine a history code and a reference bin into one state id."""
    if not 0 <= ref_bin < bins:
        raise EncodingError(f"reference bin {ref_bin} out of range for B={bins}")
    return history_code * bins + ref_bin


def decode_state_id(state: int, bins: int) -> tuple[int, int]:
    """Inverse of state_id: (history_code, ref_bin)."""
    if state < 0:
        raise EncodingError(f"state id {state} is negative")
    return state // bins, state % bins


@dataclass(frozen=True)
class StateEncoder:
    """State encoding for one agent: joint-action history of length n plus,
    when bins > 1, the agent's binned reference point.

    bins=1 degenerates to the history-only encoding used by the AI agent.
    """

    m: int
    n: int
    bins: int = 5
    payoff_min: float = 0.0
    payoff_max: float = 1.0

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise EncodingError("bin count must be >= 1")
        if self.bins > 1 and not self.payoff_min < self.payoff_max:
            raise EncodingError("binning needs payoff_min < payoff_max")

    @property
    def size(self) -> int:
        return (self.m * self.m) ** self.n * self.bins

    def encode(self, history, reference: float = 0.0) -> int:
        code = encode_history(history, self.m)
        if self.bins == 1:
            return code
        return state_id(code, bin_reference(reference, self.payoff_min, self.payoff_max, self.bins), self.bins)

    def decode(self, state: int) -> tuple[tuple[tuple[int, int], ...], int]:
        code, b = decode_state_id(state, self.bins)
        return decode_history(code, self.m, self.n), b


def catalog() -> str:
    """The game suite as a structured JSON text catalog (names, matrices,
    equilibria) for docs and test fixtures."""
    games = []
    for g in suite():
        games.append(
            {
                "name": g.name,
                "m": g.m,
                "payoffs": [[list(cell) for cell in row] for row in g.payoffs],
                "equilibria": [
                    {"p": e.p, "q": e.q, "concept": e.concept} for e in g.equilibria
                ],
                "pt_ne_status": g.pt_ne_status,
                "pt_eb_status": g.pt_eb_status,
                "symmetric": g.is_symmetric(),
            }
        )
    return json.dumps({"schema_version": 1, "games": games}, indent=2, sort_keys=True)

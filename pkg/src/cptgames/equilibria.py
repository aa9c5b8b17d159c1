"""Brute-force equilibrium oracles: exact mixed Nash for 2x2 bimatrix games
and grid-search PT best-response fixed points (the belief-equilibrium
approximation used to verify the pathology games)."""

from __future__ import annotations

from dataclasses import dataclass

from .cpt import CptParams, cpt_value
from .games import EquilibriumPoint, Game


@dataclass(frozen=True)
class NashResult:
    """All pure equilibria plus the interior mixed equilibrium when one
    exists; degeneracy (a player indifferent everywhere) is flagged rather
    than silently dropped."""

    points: tuple[EquilibriumPoint, ...]
    degenerate_row: bool = False
    degenerate_col: bool = False

    @property
    def degenerate(self) -> bool:
        return self.degenerate_row or self.degenerate_col


def nash_2x2(game: Game) -> NashResult:
    """Exact equilibria of a 2x2 bimatrix game.

    Pure points by best-response cell enumeration (weak inequalities); the
    interior mixed point from the indifference conditions when it lies
    strictly inside (0,1)^2.  (p, q) are the probabilities of each player's
    first action.
    """
    if game.m != 2:
        raise ValueError("nash_2x2 requires a 2x2 game")
    a = [[game.payoffs[i][j][0] for j in range(2)] for i in range(2)]
    b = [[game.payoffs[i][j][1] for j in range(2)] for i in range(2)]

    points = []
    for i in range(2):
        for j in range(2):
            row_ok = a[i][j] >= a[1 - i][j]
            col_ok = b[i][j] >= b[i][1 - j]
            if row_ok and col_ok:
                points.append((1.0 if i == 0 else 0.0, 1.0 if j == 0 else 0.0))

    d_row = a[0][0] - a[0][1] - a[1][0] + a[1][1]
    d_col = b[0][0] - b[1][0] - b[0][1] + b[1][1]
    degenerate_row = d_row == 0 and a[0][0] == a[1][0] and a[0][1] == a[1][1]
    degenerate_col = d_col == 0 and b[0][0] == b[0][1] and b[1][0] == b[1][1]
    if d_row != 0 and d_col != 0:
        q = (a[1][1] - a[0][1]) / d_row  # column mix making the row player indifferent
        p = (b[1][1] - b[1][0]) / d_col  # row mix making the column player indifferent
        if 0.0 < p < 1.0 and 0.0 < q < 1.0:
            points.append((p, q))

    points = sorted(set(points))
    return NashResult(
        points=tuple(EquilibriumPoint(p, q, "NE") for p, q in points),
        degenerate_row=degenerate_row,
        degenerate_col=degenerate_col,
    )


@dataclass(frozen=True)
class BestResponseMap:
    """PT best responses of one side against every opponent mix on a grid.

    probs[k] is the opponent's probability of their first action;
    response_sets[k] the own actions maximizing the CPT value of the induced
    two-outcome lottery (both actions only on exact value ties); values[k]
    the value vector itself.
    """

    side: str
    reference: float
    grid: int
    probs: tuple[float, ...]
    response_sets: tuple[frozenset, ...]
    values: tuple[tuple[float, ...], ...]


def pt_best_response_scan(game: Game, side: str, reference: float,
                          params: CptParams = CptParams(), grid: int = 201) -> BestResponseMap:
    """Scan the opponent-mix grid and record the CPT-maximizing own actions.

    Each own pure action a against an opponent playing their first action
    with probability sigma induces the lottery {(payoff(a, 0), sigma),
    (payoff(a, 1), 1 - sigma)}, valued by the full CPT transform at the
    given reference.
    """
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    if game.m != 2:
        raise ValueError("best-response scan supports 2x2 games only")
    own, _ = game.oriented(side)
    m = game.m
    probs = []
    sets = []
    values = []
    for k in range(grid):
        sigma = k / (grid - 1)
        vals = []
        for a in range(m):
            pairs = [(own[a][0], sigma), (own[a][1], 1.0 - sigma)]
            vals.append(cpt_value(pairs, reference, params))
        top = max(vals)
        sets.append(frozenset(a for a, v in enumerate(vals) if v == top))
        probs.append(sigma)
        values.append(tuple(vals))
    return BestResponseMap(side, reference, grid, tuple(probs), tuple(sets), tuple(values))


def _own_prob_hull(response_map: BestResponseMap):
    """Per grid index: the interval of own first-action probabilities
    consistent with the response correspondence, convexified across ties and
    sign-change crossings between adjacent grid points."""
    sets = response_map.response_sets
    n = len(sets)
    hulls = []
    for k in range(n):
        s = sets[k]
        if len(s) > 1:
            hulls.append((0.0, 1.0))
            continue
        crossing = False
        if k > 0 and sets[k - 1] != s:
            crossing = True
        if k + 1 < n and sets[k + 1] != s:
            crossing = True
        if crossing:
            hulls.append((0.0, 1.0))
        else:
            p = 1.0 if 0 in s else 0.0
            hulls.append((p, p))
    return hulls


def pt_eb_candidates(game: Game, references, params: CptParams = CptParams(),
                     grid: int = 201) -> list[tuple[float, float]]:
    """Approximate PT belief-equilibrium points on a grid.

    Intersects the two players' convexified PT best-response correspondences
    and returns every (p, q) grid pair consistent with both to within one
    grid cell.  The convex hull over maximizer sets is approximated by the
    interval spanned by maximizers, with crossings bracketed between
    adjacent grid points.
    """
    if grid < 10:
        raise ValueError("grid must have at least 10 points")
    r_row, r_col = references
    row_map = pt_best_response_scan(game, "row", r_row, params, grid)
    col_map = pt_best_response_scan(game, "col", r_col, params, grid)
    row_hulls = _own_prob_hull(row_map)  # indexed by q grid
    col_hulls = _own_prob_hull(col_map)  # indexed by p grid
    cell = 1.0 / (grid - 1)
    probs = row_map.probs
    candidates = []
    for i, p in enumerate(probs):
        c_lo, c_hi = col_hulls[i]
        for j, q in enumerate(probs):
            r_lo, r_hi = row_hulls[j]
            if r_lo - cell <= p <= r_hi + cell and c_lo - cell <= q <= c_hi + cell:
                candidates.append((p, q))
    return candidates

"""Randomized property checks shared by the unit tests and the acceptance
suite (which runs them at the full case counts)."""

from __future__ import annotations

import numpy as np

from cptgames.cpt import (
    CptParams,
    EU_PARAMS,
    Prospect,
    cpt_value,
    eu_value,
    value,
    weight_gain,
    weight_loss,
)


def random_prospect(rng, max_outcomes: int = 4) -> list[tuple[float, float]]:
    n = int(rng.integers(1, max_outcomes + 1))
    outcomes = rng.uniform(-10, 10, size=n)
    probs = rng.dirichlet(np.ones(n))
    return list(zip(outcomes.tolist(), probs.tolist()))


def check_dominance(cases: int, seed: int = 11) -> int:
    """First-order stochastic dominance: moving probability mass to a higher
    outcome never lowers the CPT value.  Returns the violation count."""
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(cases):
        n = int(rng.integers(2, 5))
        grid = np.sort(rng.uniform(-10, 10, size=n))
        while len(set(grid.tolist())) < n:
            grid = np.sort(rng.uniform(-10, 10, size=n))
        probs = rng.dirichlet(np.ones(n))
        lo = int(rng.integers(0, n - 1))
        hi = int(rng.integers(lo + 1, n))
        shift = probs[lo] * rng.uniform(0.0, 1.0)
        dominated = list(zip(grid.tolist(), probs.tolist()))
        shifted = probs.copy()
        shifted[lo] -= shift
        shifted[hi] += shift
        dominant = list(zip(grid.tolist(), shifted.tolist()))
        r = float(rng.uniform(-12, 12))
        if cpt_value(dominant, r) < cpt_value(dominated, r) - 1e-12:
            violations += 1
    return violations


def check_crossover(cases: int, seed: int = 12) -> int:
    """Inverse-S shape: for exponents below 1 there is a crossover c with
    w(p) > p before it and w(p) < p after it (checked on a coarse grid)."""
    rng = np.random.default_rng(seed)
    grid = np.linspace(0.001, 0.999, 999)
    violations = 0
    for _ in range(cases):
        exponent = float(rng.uniform(0.35, 0.99))
        params = CptParams(gamma=exponent, delta=exponent)
        w = rng.choice([weight_gain, weight_loss])
        diffs = np.array([w(p, params) - p for p in grid])
        signs = np.sign(diffs)
        flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        if len(flips) != 1 or diffs[0] <= 0 or diffs[-1] >= 0:
            violations += 1
    return violations


def check_loss_aversion(cases: int, seed: int = 13) -> int:
    """value(r+x, r) < -value(r-x, r) for every x > 0 (default parameters)."""
    rng = np.random.default_rng(seed)
    params = CptParams()
    violations = 0
    for _ in range(cases):
        x = float(rng.uniform(1e-6, 100.0))
        r = float(rng.uniform(-50.0, 50.0))
        if not value(r + x, r, params) < -value(r - x, r, params):
            violations += 1
    return violations


def check_degenerate_lottery(cases: int, seed: int = 14) -> int:
    """A one-outcome prospect reduces exactly to the value function."""
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(cases):
        params = CptParams(
            alpha=float(rng.uniform(0.2, 1.0)),
            beta=float(rng.uniform(0.2, 1.0)),
            lam=float(rng.uniform(1.0, 4.0)),
            gamma=float(rng.uniform(0.3, 1.0)),
            delta=float(rng.uniform(0.3, 1.0)),
        )
        o = float(rng.uniform(-10, 10))
        r = float(rng.uniform(-10, 10))
        if cpt_value([(o, 1.0)], r, params) != value(o, r, params):
            violations += 1
    return violations


def check_eu_degeneracy(cases: int, seed: int = 15) -> int:
    """All-ones parameters collapse cpt_value(P, 0) to eu_value(P) exactly."""
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(cases):
        prospect = Prospect.from_pairs(random_prospect(rng))
        if cpt_value(prospect, 0.0, EU_PARAMS) != eu_value(prospect):
            violations += 1
    return violations

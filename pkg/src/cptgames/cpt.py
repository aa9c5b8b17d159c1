"""Cumulative prospect theory kernel.

Reference-dependent value function with loss aversion, inverse-S probability
weighting, rank-dependent decision weights, and full prospect valuation.
Everything here is a pure function over immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PROB_SUM_TOL = 1e-9


class InvalidProspectError(ValueError):
    """Raised when a prospect's probabilities are malformed."""


@dataclass(frozen=True)
class CptParams:
    """Preference parameters of the CPT transform.

    alpha/beta bend the value curve on gains/losses (diminishing
    sensitivity), lam scales losses (loss aversion), gamma/delta bend the
    probability weighting on the gain/loss side.  Defaults are the standard
    Kahneman-Tversky estimates.  Setting every field to 1 degenerates the
    whole transform to plain expected utility.
    """

    alpha: float = 0.88
    beta: float = 0.88
    lam: float = 2.25
    gamma: float = 0.61
    delta: float = 0.69

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0 and 0.0 < self.beta <= 1.0):
            raise ValueError("curvature exponents must lie in (0, 1]")
        if not (0.0 < self.gamma <= 1.0 and 0.0 < self.delta <= 1.0):
            raise ValueError("weighting exponents must lie in (0, 1]")
        if self.lam < 1.0:
            raise ValueError("loss-aversion coefficient must be >= 1")

    def is_eu(self) -> bool:
        """True when the transform is exactly expected utility."""
        return (
            self.alpha == 1.0
            and self.beta == 1.0
            and self.lam == 1.0
            and self.gamma == 1.0
            and self.delta == 1.0
        )


DEFAULT_PARAMS = CptParams()
EU_PARAMS = CptParams(alpha=1.0, beta=1.0, lam=1.0, gamma=1.0, delta=1.0)


@dataclass(frozen=True)
class Prospect:
    """A finite lottery in canonical form.

    Outcomes strictly ascending, equal outcomes merged, probabilities each in
    [0, 1] and summing to one within PROB_SUM_TOL.  Build via
    :meth:`from_pairs`; the raw constructor assumes the invariant holds.
    """

    entries: tuple[tuple[float, float], ...]

    @classmethod
    def from_pairs(cls, pairs) -> "Prospect":
        return cls(canonical_entries(pairs))

    @property
    def outcomes(self) -> tuple[float, ...]:
        return tuple(o for o, _ in self.entries)

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.entries)


def canonical_entries(pairs) -> tuple[tuple[float, float], ...]:
    """Sort outcome/probability pairs ascending and merge equal outcomes.

    Sorting is by (outcome, probability) so the merged sums accumulate in a
    fixed order: the result is bit-identical under any permutation of the
    input.
    """
    items = sorted((float(o), float(p)) for o, p in pairs)
    if not items:
        raise InvalidProspectError("prospect needs at least one entry")
    total = 0.0
    merged: list[list[float]] = []
    for o, p in items:
        if not 0.0 <= p <= 1.0:
            raise InvalidProspectError(f"probability {p} outside [0, 1]")
        total += p
        if merged and merged[-1][0] == o:
            merged[-1][1] += p
        else:
            merged.append([o, p])
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise InvalidProspectError(f"probabilities sum to {total}, not 1")
    return tuple((o, p) for o, p in merged)


def value(outcome: float, reference: float, params: CptParams = DEFAULT_PARAMS) -> float:
    """Kinked power value of a single outcome relative to the reference.

    (outcome-reference)^alpha on gains, -lam*(reference-outcome)^beta on
    losses; zero exactly at the kink.  The exponent-1 branches bypass pow so
    the EU-degenerate case is exact.
    """
    d = outcome - reference
    if d >= 0.0:
        return d if params.alpha == 1.0 else d ** params.alpha
    loss = -d if params.beta == 1.0 else (-d) ** params.beta
    return -params.lam * loss


def _clamp01(p: float) -> float:
    if p < 0.0:
        return 0.0
    if p > 1.0:
        return 1.0
    return p


def _tk_weight(p: float, exponent: float) -> float:
    # p^g / (p^g + (1-p)^g)^(1/g); identity at g == 1 kept exact.
    if exponent == 1.0:
        return p
    a = p ** exponent
    b = (1.0 - p) ** exponent
    return a / (a + b) ** (1.0 / exponent)


def weight_gain(p: float, params: CptParams = DEFAULT_PARAMS) -> float:
    """Inverse-S weighting of a gain-side cumulative probability."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    return _tk_weight(p, params.gamma)


def weight_loss(p: float, params: CptParams = DEFAULT_PARAMS) -> float:
    """Inverse-S weighting of a loss-side cumulative probability."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    return _tk_weight(p, params.delta)


@dataclass(frozen=True)
class DecisionWeights:
    """Per-entry rank-dependent weights for a canonical prospect.

    weights aligns with the prospect entries; outcomes equal to the
    reference carry weight zero (their mass still shapes the cumulative
    distributions).
    """

    entries: tuple[tuple[float, float], ...]
    weights: tuple[float, ...]
    reference: float

    @property
    def loss_weights(self) -> tuple[float, ...]:
        return tuple(w for (o, _), w in zip(self.entries, self.weights) if o < self.reference)

    @property
    def gain_weights(self) -> tuple[float, ...]:
        return tuple(w for (o, _), w in zip(self.entries, self.weights) if o > self.reference)


def decision_weights(
    prospect: Prospect, reference: float, params: CptParams = DEFAULT_PARAMS
) -> DecisionWeights:
    """Cumulative decision weights of a canonical prospect.

    Losses weight increments of the CDF from below; gains weight increments
    of the decumulative distribution from above.  The prospect must already
    be canonical.
    """
    entries = prospect.entries if isinstance(prospect, Prospect) else tuple(prospect)
    if tuple(entries) != canonical_entries(entries):
        raise InvalidProspectError("prospect is not in canonical form")
    n = len(entries)
    # Probabilities sum to 1 only within tolerance; clamp the running sums so
    # the weighting functions stay inside their domain.
    cumulative = []
    acc = 0.0
    for _, p in entries:
        acc += p
        cumulative.append(_clamp01(acc))
    decumulative = [0.0] * n
    acc = 0.0
    for k in range(n - 1, -1, -1):
        acc += entries[k][1]
        decumulative[k] = _clamp01(acc)

    weights = []
    for k, (o, _) in enumerate(entries):
        if o < reference:
            lo = cumulative[k - 1] if k > 0 else 0.0
            weights.append(weight_loss(cumulative[k], params) - weight_loss(lo, params))
        elif o > reference:
            hi = decumulative[k + 1] if k + 1 < n else 0.0
            weights.append(weight_gain(decumulative[k], params) - weight_gain(hi, params))
        else:
            weights.append(0.0)
    return DecisionWeights(entries=tuple(entries), weights=tuple(weights), reference=reference)


def cpt_value(prospect, reference: float, params: CptParams = DEFAULT_PARAMS) -> float:
    """CPT valuation of a prospect: sum of weighted kinked values.

    Accepts a Prospect or raw (outcome, probability) pairs; canonicalizes
    internally.  EU-degenerate parameters short-circuit to the plain
    expectation of (outcome - reference) so the reduction is exact.
    """
    if not isinstance(prospect, Prospect):
        prospect = Prospect.from_pairs(prospect)
    if params.is_eu():
        total = 0.0
        for o, p in prospect.entries:
            total += p * (o - reference)
        return total
    dw = decision_weights(prospect, reference, params)
    total = 0.0
    for (o, _), w in zip(prospect.entries, dw.weights):
        if w != 0.0:
            total += w * value(o, reference, params)
    return total


def eu_value(prospect) -> float:
    """Expected value of a prospect (the baseline CPT is compared against)."""
    if not isinstance(prospect, Prospect):
        prospect = Prospect.from_pairs(prospect)
    total = 0.0
    for o, p in prospect.entries:
        total += p * o
    return total


def pair_values(
    o_a: float,
    p_a: float,
    o_b: float,
    p_b: float,
    params: CptParams = DEFAULT_PARAMS,
) -> tuple[float, float]:
    """(expected value, CPT value at reference 0) of a two-point lottery.

    Allocation-free fast path for the per-step agent loop; mirrors the
    operation order of eu_value/cpt_value on the canonicalized prospect
    exactly, which the test suite pins bit-for-bit.
    """
    if (o_a, p_a) > (o_b, p_b):
        o_a, p_a, o_b, p_b = o_b, p_b, o_a, p_a
    if o_a == o_b:
        p = _clamp01(p_a + p_b)
        eu = (p_a + p_b) * o_a
        if params.is_eu():
            return eu, eu
        if o_a > 0.0:
            return eu, weight_gain(p, params) * value(o_a, 0.0, params)
        if o_a < 0.0:
            return eu, weight_loss(p, params) * value(o_a, 0.0, params)
        return eu, 0.0
    eu = p_a * o_a + p_b * o_b
    if params.is_eu():
        return eu, eu
    if o_a > 0.0:  # both gains
        w_hi = weight_gain(p_b, params)
        w_lo = weight_gain(_clamp01(p_b + p_a), params) - w_hi
        return eu, w_lo * value(o_a, 0.0, params) + w_hi * value(o_b, 0.0, params)
    if o_a == 0.0:
        return eu, weight_gain(p_b, params) * value(o_b, 0.0, params)
    if o_b < 0.0:  # both losses
        w_lo = weight_loss(p_a, params)
        w_hi = weight_loss(_clamp01(p_a + p_b), params) - w_lo
        return eu, w_lo * value(o_a, 0.0, params) + w_hi * value(o_b, 0.0, params)
    if o_b == 0.0:
        return eu, weight_loss(p_a, params) * value(o_a, 0.0, params)
    # straddles the reference
    return eu, (
        weight_loss(p_a, params) * value(o_a, 0.0, params)
        + weight_gain(p_b, params) * value(o_b, 0.0, params)
    )

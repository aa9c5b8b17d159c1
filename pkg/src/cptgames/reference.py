"""Reference-point models and their update dynamics.

Four models: Fixed (constant), EMA (exponential moving average of own
rewards), EMAOR (EMA of the opponent's rewards), and VBased (belief-weighted
state value recomputed each step).  Every run starts with the reference at 0
(Fixed starts at its configured constant).
"""

from __future__ import annotations

from dataclasses import dataclass

KINDS = ("Fixed", "EMA", "VBased", "EMAOR")
ADAPTIVE_KINDS = ("EMA", "VBased", "EMAOR")


@dataclass(frozen=True)
class ReferenceModel:
    kind: str = "EMA"
    eta_ref: float = 0.95
    fixed_value: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"reference model kind must be one of {KINDS}, got {self.kind!r}")
        if not 0.0 <= self.eta_ref <= 1.0:
            raise ValueError("eta_ref must lie in [0, 1]")

    def initial(self) -> float:
        return self.fixed_value if self.kind == "Fixed" else 0.0


def update_ema(current: float, own_reward: float, eta_ref: float) -> float:
    """EMA of the agent's own realized rewards (adaptive expectations)."""
    return eta_ref * current + (1.0 - eta_ref) * own_reward


def update_emaor(current: float, opponent_reward: float, eta_ref: float) -> float:
    """EMA of the opponent's realized rewards (social comparison)."""
    return eta_ref * current + (1.0 - eta_ref) * opponent_reward


def compute_v_based(q_slice, beliefs, own_action_values=None, literal: bool = False) -> float:
    """Belief-weighted state value used as a reference point.

    For each own action, take the belief-weighted expectation over opponent
    actions of q_slice[own][opp], then average over own actions with equal
    weight.  `literal=True` reproduces the source formula's outer
    multiplication by the action value (own_action_values defaults to the
    action indices); kept only as a documented alternative.
    """
    total_belief = 0.0
    for b in beliefs:
        total_belief += b
    if abs(total_belief - 1.0) > 1e-9:
        raise ValueError(f"beliefs sum to {total_belief}, not 1")
    inner = []
    for row in q_slice:
        acc = 0.0
        for b, q in zip(beliefs, row):
            acc += b * q
        inner.append(acc)
    if literal:
        weights = own_action_values if own_action_values is not None else range(len(inner))
        return sum(w * v for w, v in zip(weights, inner))
    return sum(inner) / len(inner)

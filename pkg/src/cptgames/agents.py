"""The three agent types: expected-utility Q-learning AI, aware-human best
replier, and learning-human CPT Q-learner, plus beliefs, tie-breaking, and
exploration.

Learning is average-reward (no discounting): Q targets subtract a running
mean of the agent's realized rewards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cpt import CptParams, pair_values, value

AGENT_KINDS = ("AI", "AH", "LH")


@dataclass(frozen=True)
class LearningConfig:
    alpha_q: float = 0.01
    epsilon_init: float = 0.3
    epsilon_min: float = 0.01
    epsilon_decay: float = 0.995
    tau: float = 0.1
    temperature: float = 1.3
    eta_b: float = 0.95

    def __post_init__(self) -> None:
        for name in ("alpha_q", "epsilon_decay", "eta_b"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {v}")
        if not 0.0 <= self.epsilon_min <= self.epsilon_init <= 1.0:
            raise ValueError("need 0 <= epsilon_min <= epsilon_init <= 1")
        if self.tau < 0.0:
            raise ValueError("tie threshold tau must be >= 0")
        if self.temperature <= 0.0:
            raise ValueError("softmax temperature must be > 0")


class AverageReward:
    """Incremental running mean of all rewards an agent has received."""

    __slots__ = ("value", "count")

    def __init__(self) -> None:
        self.value = 0.0
        self.count = 0

    def add(self, reward: float) -> None:
        self.count += 1
        self.value += (reward - self.value) / self.count


def new_q_table_ai(n_states: int, m: int) -> list[list[float]]:
    """Zero-initialized Q table indexed [state][own action]."""
    return [[0.0] * m for _ in range(n_states)]


def new_q_table_lh(n_states: int, m: int) -> list[list[list[float]]]:
    """Zero-initialized joint-action Q table indexed [state][own][opp]."""
    return [[[0.0] * m for _ in range(m)] for _ in range(n_states)]


def new_belief_table(n_states: int, m: int) -> list[list[float]]:
    """Uniform belief vectors over opponent actions, one per state."""
    return [[1.0 / m] * m for _ in range(n_states)]


def softmax_tie_break(values, tau: float, temperature: float, rng) -> tuple[int, bool]:
    """Argmax with the near-tie rule: when the top two values differ by less
    than tau, sample from a softmax over all values at the given temperature.

    Returns (action, tie_broken).  Exact-tie argmax resolves to the lowest
    index, so selection is deterministic whenever the gap is >= tau.
    """
    best = 0
    best_v = values[0]
    second_v = -math.inf
    for a in range(1, len(values)):
        v = values[a]
        if v > best_v:
            second_v = best_v
            best_v = v
            best = a
        elif v > second_v:
            second_v = v
    if best_v - second_v >= tau:
        return best, False
    total = 0.0
    weights = []
    for v in values:
        w = math.exp((v - best_v) / temperature)
        weights.append(w)
        total += w
    u = rng.random() * total
    acc = 0.0
    for a, w in enumerate(weights):
        acc += w
        if u < acc:
            return a, True
    return len(values) - 1, True


def ai_select_action(q, state: int, epsilon: float, rng, config: LearningConfig) -> int:
    """Epsilon-greedy over Q(state, .) with the near-tie softmax on exploit."""
    row = q[state]
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(len(row)))
    action, _ = softmax_tie_break(row, config.tau, config.temperature, rng)
    return action


def ai_update(q, state: int, action: int, reward: float, next_state: int,
              avg_reward: AverageReward, alpha_q: float) -> None:
    """Average-reward Q-learning update; the running mean absorbs the reward
    after the Q write so the target uses the pre-step estimate."""
    target = reward - avg_reward.value + max(q[next_state])
    row = q[state]
    row[action] = (1.0 - alpha_q) * row[action] + alpha_q * target
    avg_reward.add(reward)


@dataclass(frozen=True)
class ActionDiagnostics:
    """Per-step valuation record consumed by the metrics layer."""

    eu_values: tuple[float, ...]
    cpt_values: tuple[float, ...]
    explored: bool


def aware_human_action(game, own_side: str, opponent_kind: str, reference: float,
                       params: CptParams, config: LearningConfig, rng) -> tuple[int, ActionDiagnostics]:
    """One-shot best-reply policy over the raw payoff table.

    For each own action, anticipate the opponent's best reply (valuing the
    opponent's payoffs with plain utility for an AI opponent, with the kinked
    value function at reference 0 for a PT opponent), then pick the own
    action whose anticipated payoff has the highest value at the agent's own
    reference.  Stateless apart from that reference.
    """
    own, opp = game.oriented(own_side)
    m = game.m
    pt_opponent = opponent_kind != "AI"
    cpt_vals = []
    eu_vals = []
    for a in range(m):
        opp_row = opp[a]
        best_b = 0
        if pt_opponent:
            best_v = value(opp_row[0], 0.0, params)
            for b in range(1, m):
                v = value(opp_row[b], 0.0, params)
                if v > best_v:
                    best_v = v
                    best_b = b
        else:
            best_v = opp_row[0]
            for b in range(1, m):
                if opp_row[b] > best_v:
                    best_v = opp_row[b]
                    best_b = b
        anticipated = own[a][best_b]
        cpt_vals.append(value(anticipated, reference, params))
        eu_vals.append(anticipated - reference)
    action, _ = softmax_tie_break(cpt_vals, config.tau, config.temperature, rng)
    return action, ActionDiagnostics(tuple(eu_vals), tuple(cpt_vals), False)


def lh_select_action(q, beliefs, state: int, reference: float, avg_reward: AverageReward,
                     params: CptParams, config: LearningConfig, epsilon: float, rng,
                     center: str = "reference") -> tuple[int, ActionDiagnostics]:
    """CPT-greedy selection over belief-weighted joint-action Q values.

    Each own action induces a prospect whose outcomes are Q(s, a, opp) minus
    the centering point (the reference by default, the average-reward
    estimate under center="avg-reward") with the state's belief vector as
    probabilities; the CPT value is taken at reference 0 since the outcomes
    are already centered.  Valuations are computed on every step, including
    exploration steps, so the diagnostics are always populated.
    """
    b = beliefs[state]
    qs = q[state]
    m = len(b)
    c = reference if center == "reference" else avg_reward.value
    eu_vals = []
    cpt_vals = []
    if m == 2:
        b0, b1 = b
        for a in range(2):
            qa = qs[a]
            eu, cv = pair_values(qa[0] - c, b0, qa[1] - c, b1, params)
            eu_vals.append(eu)
            cpt_vals.append(cv)
    else:
        from .cpt import Prospect, cpt_value, eu_value

        for a in range(m):
            prospect = Prospect.from_pairs((qs[a][j] - c, b[j]) for j in range(m))
            eu_vals.append(eu_value(prospect))
            cpt_vals.append(cpt_value(prospect, 0.0, params))
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(m)), ActionDiagnostics(tuple(eu_vals), tuple(cpt_vals), True)
    action, _ = softmax_tie_break(cpt_vals, config.tau, config.temperature, rng)
    return action, ActionDiagnostics(tuple(eu_vals), tuple(cpt_vals), False)


def lh_update(q, beliefs, state: int, joint_action: tuple[int, int], reward: float,
              next_state: int, avg_reward: AverageReward, alpha_q: float) -> None:
    """Joint-action Q update bootstrapping through the belief-weighted best
    own action at the next state.  The caller must have already EMA-updated
    the next state's beliefs with the observed opponent action."""
    b = beliefs[next_state]
    best = -math.inf
    for row in q[next_state]:
        acc = 0.0
        for j in range(len(b)):
            acc += b[j] * row[j]
        if acc > best:
            best = acc
    y = reward - avg_reward.value + best
    a_own, a_opp = joint_action
    cell = q[state][a_own]
    cell[a_opp] = (1.0 - alpha_q) * cell[a_opp] + alpha_q * y
    avg_reward.add(reward)


def update_beliefs(beliefs, state: int, observed_opp_action: int, eta_b: float) -> None:
    """EMA belief update toward a one-hot on the observed opponent action."""
    vec = beliefs[state]
    keep = eta_b
    gain = 1.0 - eta_b
    for j in range(len(vec)):
        vec[j] = keep * vec[j] + (gain if j == observed_opp_action else 0.0)

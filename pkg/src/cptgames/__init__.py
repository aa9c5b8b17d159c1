"""Mixed-population matrix-game simulations: expected-utility Q-learners
against cumulative-prospect-theory agents, with reference-point dynamics,
full metric capture, and brute-force equilibrium oracles."""

from .agents import LearningConfig
from .cpt import CptParams, Prospect, cpt_value, decision_weights, eu_value, value, weight_gain, weight_loss
from .engine import ExperimentConfig, ExperimentResult, converged_policy, run_experiment, simulate_run
from .equilibria import nash_2x2, pt_best_response_scan, pt_eb_candidates
from .games import Game, StateEncoder, suite
from .metrics import classify_equilibrium, cpt_action_change_rate, joint_action_frequencies
from .reference import ReferenceModel

__version__ = "0.1.0"

__all__ = [
    "CptParams",
    "ExperimentConfig",
    "ExperimentResult",
    "Game",
    "LearningConfig",
    "Prospect",
    "ReferenceModel",
    "StateEncoder",
    "classify_equilibrium",
    "converged_policy",
    "cpt_action_change_rate",
    "cpt_value",
    "decision_weights",
    "eu_value",
    "joint_action_frequencies",
    "nash_2x2",
    "pt_best_response_scan",
    "pt_eb_candidates",
    "run_experiment",
    "simulate_run",
    "suite",
    "value",
    "weight_gain",
    "weight_loss",
]

"""Alternating Ascent metaheuristic for binary (QUBO) maximization."""

from .choice import ChoiceConfig, Rule, tradeoff_dominates
from .double_pass import DoublePassAscent, DoublePassConfig, interpolate_cutoff, run_double_pass
from .engine import AAConfig, AlternatingAscent, Event, Release, RunResult, Status, run_single_pass
from .harness import (
    brute_force,
    generate_instance,
    load_qubo,
    replay_working_table,
    save_qubo,
    scale_eval,
    unscale_eval,
)
from .memory import EEConfig, EEMemory, acceptable_vectors, threshold, weight, weights
from .myopic import SCHEDULE_A, SCHEDULE_B, MCSchedule, MCState
from .qubo import QuboInstance, QuboProvider, all_evals, eval_flip, objective, update_all_evals
from .tabu import TabuConfig, TabuSearch, run_tabu

__version__ = "0.1.0"

__all__ = [
    "AAConfig",
    "AlternatingAscent",
    "ChoiceConfig",
    "DoublePassAscent",
    "DoublePassConfig",
    "EEConfig",
    "EEMemory",
    "Event",
    "MCSchedule",
    "MCState",
    "QuboInstance",
    "QuboProvider",
    "Release",
    "Rule",
    "RunResult",
    "SCHEDULE_A",
    "SCHEDULE_B",
    "Status",
    "TabuConfig",
    "TabuSearch",
    "acceptable_vectors",
    "all_evals",
    "brute_force",
    "eval_flip",
    "generate_instance",
    "interpolate_cutoff",
    "load_qubo",
    "objective",
    "replay_working_table",
    "run_double_pass",
    "run_single_pass",
    "run_tabu",
    "save_qubo",
    "scale_eval",
    "threshold",
    "tradeoff_dominates",
    "unscale_eval",
    "update_all_evals",
    "weight",
    "weights",
]

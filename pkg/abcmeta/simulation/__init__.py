"""
Simulation studies of estimator accuracy.
"""

from .harness import (
    ExperimentConfig,
    AreRecord,
    TrialOutcome,
    TrialResult,
    SelectionExperimentConfig,
    SelectionSummary,
    relative_error,
    run_trial,
    run_cell,
    run_experiment,
    run_selection_experiment,
)

__all__ = [
    "ExperimentConfig",
    "AreRecord",
    "TrialOutcome",
    "TrialResult",
    "SelectionExperimentConfig",
    "SelectionSummary",
    "relative_error",
    "run_trial",
    "run_cell",
    "run_experiment",
    "run_selection_experiment",
]

"""Dynamic selection among fault-prediction models with bandit policies."""

from .bandit import (
    FP,
    FULL_INFORMATION,
    NFP,
    PARTIAL_FEEDBACK,
    ArmState,
    PolicyConfig,
    PolicyState,
    ab_test,
    average_reward,
    epsilon_greedy,
    parse_policy,
    reward_of,
    select_ab_test,
    select_epsilon_greedy,
    select_thompson,
    select_ucb,
    thompson,
    ucb,
    update_full,
    update_partial,
)
from .evaluate import (
    ExperimentSummary,
    aggregate_mean,
    auc_mann_whitney,
    baseline_single_model,
    build_summary,
    render_table,
)
from .fixtures import load_fixture, model_from_fp_set, save_fixture, table6_dataset, table6_models
from .session import AdvisorSession, ModuleAlreadyTested, SessionCompleted, SessionError, UnknownModule
from .simulate import (
    ExperimentResult,
    RunResult,
    TrialStep,
    next_untested_module,
    run_experiment,
    run_simulation,
    write_steps_csv,
)
from .synth import (
    Dataset,
    ModuleRecord,
    PredictionModel,
    binary_auc,
    generate_dataset,
    generate_model_predictions,
    generate_model_set,
    solve_rates,
)

__all__ = [
    "FP",
    "NFP",
    "FULL_INFORMATION",
    "PARTIAL_FEEDBACK",
    "ArmState",
    "PolicyConfig",
    "PolicyState",
    "AdvisorSession",
    "SessionError",
    "SessionCompleted",
    "UnknownModule",
    "ModuleAlreadyTested",
    "Dataset",
    "ModuleRecord",
    "PredictionModel",
    "ExperimentResult",
    "ExperimentSummary",
    "RunResult",
    "TrialStep",
    "ab_test",
    "aggregate_mean",
    "auc_mann_whitney",
    "average_reward",
    "baseline_single_model",
    "binary_auc",
    "build_summary",
    "epsilon_greedy",
    "generate_dataset",
    "generate_model_predictions",
    "generate_model_set",
    "load_fixture",
    "model_from_fp_set",
    "next_untested_module",
    "parse_policy",
    "render_table",
    "reward_of",
    "run_experiment",
    "run_simulation",
    "save_fixture",
    "select_ab_test",
    "select_epsilon_greedy",
    "select_thompson",
    "select_ucb",
    "solve_rates",
    "table6_dataset",
    "table6_models",
    "thompson",
    "ucb",
    "update_full",
    "update_partial",
    "write_steps_csv",
]

__version__ = "0.1.0"

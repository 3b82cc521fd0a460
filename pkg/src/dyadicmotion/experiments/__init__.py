"""Training/evaluation harnesses wired by the CLI and acceptance suite."""

from .ablation import (
    CHANNEL_DIMS,
    ConditionAblation,
    DyadicAblationRun,
    SystemRow,
    ToyScale,
    TrainedSystem,
    generate_streams,
    listener_ffd,
    make_config,
    run_condition_ablation,
    run_dyadic_ablation,
    train_system,
)
from .adapterlab import (
    GestureFixture,
    RateSweepRow,
    adapter_pairs,
    emotion_gold,
    make_emotion_fixture,
    make_gesture_fixture,
    run_gesture_rate_sweep,
    window_gold,
)
from .data import (
    AgentStream,
    WindowedDataset,
    build_windows,
    fit_norm_stats,
    load_agent_streams,
)
from .evaluate import EvalReport, evaluate_generation, read_generation_dir, write_generation
from .gesture import (
    GestureEvalResult,
    GestureSystem,
    evaluate_gesture_control,
    run_gesture_control,
    scripted_gesture,
    train_gesture_system,
)
from .reporting import format_table, mean_std_cell, write_json, write_run_config

__all__ = [
    "CHANNEL_DIMS",
    "ConditionAblation",
    "DyadicAblationRun",
    "SystemRow",
    "ToyScale",
    "TrainedSystem",
    "generate_streams",
    "listener_ffd",
    "make_config",
    "run_condition_ablation",
    "run_dyadic_ablation",
    "train_system",
    "GestureFixture",
    "RateSweepRow",
    "adapter_pairs",
    "emotion_gold",
    "make_emotion_fixture",
    "make_gesture_fixture",
    "run_gesture_rate_sweep",
    "window_gold",
    "AgentStream",
    "WindowedDataset",
    "build_windows",
    "fit_norm_stats",
    "load_agent_streams",
    "EvalReport",
    "evaluate_generation",
    "read_generation_dir",
    "write_generation",
    "GestureEvalResult",
    "GestureSystem",
    "evaluate_gesture_control",
    "run_gesture_control",
    "scripted_gesture",
    "train_gesture_system",
    "format_table",
    "mean_std_cell",
    "write_json",
    "write_run_config",
]

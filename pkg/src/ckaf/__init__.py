"""Complex kernel adaptive filtering: kernels, filters, and benchmarks.

The package implements online nonlinear filtering of complex-valued signals
with a complex Gaussian kernel LMS algorithm, novelty-criterion dictionary
sparsification, normalized linear baselines, numeric complex-gradient
verification, and a Monte-Carlo channel-equalization benchmark harness.
"""

from ckaf.channel import (
    ChannelConfig,
    Dataset,
    EmbeddingConfig,
    SignalConfig,
    apply_channel,
    build_dataset,
    generate_input,
    write_dataset_csv,
)
from ckaf.experiment import (
    AlgorithmConfig,
    ConfigError,
    ExperimentConfig,
    ExperimentResult,
    LearningCurve,
    config_from_dict,
    config_to_dict,
    emit_results,
    load_config_file,
    run_experiment,
)
from ckaf.filters import (
    ALGORITHMS,
    CklmsConfig,
    CklmsState,
    Dictionary,
    FilterRun,
    FilterStepError,
    LinearFilterState,
    LinearLmsConfig,
    NoveltyConfig,
    StepRecord,
    cklms_predict,
    cklms_step,
    nclms_step,
    new_cklms_state,
    new_linear_state,
    restore_state,
    run_filter,
    snapshot_state,
    wl_nclms_step,
)
from ckaf.kernels import (
    KernelSpec,
    complex_gaussian,
    eval_complex_gaussian,
    eval_real_gaussian,
    gram,
    is_positive_semidefinite,
    kernel_value,
    kernel_vector,
    linear_kernel,
    real_gaussian,
    rkhs_distance_sq,
    self_kernel,
)
from ckaf.wirtinger import (
    WirtingerGradient,
    analytic_squared_error_gradients,
    check_inner_product_gradients,
    check_steepest_ascent,
    check_taylor_first_order,
    numeric_wirtinger_gradient,
    squared_error_loss,
    standard_battery,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AlgorithmConfig",
    "ChannelConfig",
    "CklmsConfig",
    "CklmsState",
    "ConfigError",
    "Dataset",
    "Dictionary",
    "EmbeddingConfig",
    "ExperimentConfig",
    "ExperimentResult",
    "FilterRun",
    "FilterStepError",
    "KernelSpec",
    "LearningCurve",
    "LinearFilterState",
    "LinearLmsConfig",
    "NoveltyConfig",
    "SignalConfig",
    "StepRecord",
    "WirtingerGradient",
    "analytic_squared_error_gradients",
    "apply_channel",
    "build_dataset",
    "check_inner_product_gradients",
    "check_steepest_ascent",
    "check_taylor_first_order",
    "cklms_predict",
    "cklms_step",
    "complex_gaussian",
    "config_from_dict",
    "config_to_dict",
    "emit_results",
    "eval_complex_gaussian",
    "eval_real_gaussian",
    "generate_input",
    "gram",
    "is_positive_semidefinite",
    "kernel_value",
    "kernel_vector",
    "linear_kernel",
    "load_config_file",
    "nclms_step",
    "new_cklms_state",
    "new_linear_state",
    "numeric_wirtinger_gradient",
    "real_gaussian",
    "restore_state",
    "rkhs_distance_sq",
    "run_experiment",
    "run_filter",
    "self_kernel",
    "snapshot_state",
    "squared_error_loss",
    "standard_battery",
    "wl_nclms_step",
    "write_dataset_csv",
]

"""Monte-Carlo equalization experiments with CSV/JSON learning-curve output.

An experiment runs one synthetic equalization setup (source, channel, delay
embedding) through a list of adaptive filters, repeats it over independent
Monte-Carlo realizations, and averages the squared-error trajectories
pointwise. Within a run every algorithm consumes the identical dataset
realization, so curves are directly comparable.

Seeding contract: run r draws its signal and noise seeds from
``numpy.random.SeedSequence((master_seed, r))``, making runs independent,
order-insensitive, and reproducible regardless of worker count. The seeds
carried inside the signal/channel sub-configs are placeholders that the
runner overrides per run.

Output contract: CSV files have the header ``iteration,<label>_mse_db,...``
with 1-based iteration numbers and %.12e values. JSON documents carry three
top-level keys, ``config`` (the fully resolved configuration), ``curves``
(per-algorithm MSE, dB, and dictionary-size data), and ``metadata``
(measured SNR, run counts, wall-clock). Every field except
``metadata.wall_clock_seconds`` is deterministic for a fixed config. MSE
values of 0 are clamped to 1e-12 (-120 dB) before the dB transform.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ckaf.channel import (
    ChannelConfig,
    EmbeddingConfig,
    SignalConfig,
    apply_channel,
    build_dataset,
    generate_input,
)
from ckaf.filters import ALGORITHMS, CklmsConfig, LinearLmsConfig, NoveltyConfig, run_filter
from ckaf.kernels import KernelSpec

MSE_FLOOR = 1e-12


class ConfigError(ValueError):
    """A configuration document failed validation; names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class AlgorithmConfig:
    """One filter entry: algorithm id, step size, and algorithm parameters.

    ``label`` names the output column and defaults to the algorithm id; give
    explicit labels to run the same algorithm at several settings. ``kernel``,
    ``sigma``, ``delta1``, ``delta2`` apply to cklms; ``epsilon`` to the
    linear filters.
    """

    algorithm: str
    mu: float
    label: Optional[str] = None
    kernel: str = "complex-gaussian"
    sigma: float = 5.0
    delta1: float = 0.0
    delta2: float = 0.0
    epsilon: float = 1e-6

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if self.label is None:
            object.__setattr__(self, "label", self.algorithm)

    def filter_config(self):
        if self.algorithm == "cklms":
            return CklmsConfig(
                kernel=KernelSpec(self.kernel, self.sigma),
                mu=self.mu,
                novelty=NoveltyConfig(self.delta1, self.delta2),
            )
        return LinearLmsConfig(mu=self.mu, epsilon=self.epsilon)


@dataclass(frozen=True)
class ExperimentConfig:
    """Complete description of one Monte-Carlo experiment."""

    name: str
    signal: SignalConfig
    channel: ChannelConfig
    embedding: EmbeddingConfig
    algorithms: tuple
    mc_runs: int
    master_seed: int
    moving_average: int = 0
    n_workers: int = 1

    def __post_init__(self):
        if self.mc_runs < 1:
            raise ValueError("mc_runs must be at least 1")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        labels = [a.label for a in self.algorithms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"algorithm labels must be unique, got {labels}")
        if self.moving_average < 0:
            raise ValueError("moving_average must be nonnegative")
        if self.n_workers < 1:
            raise ValueError("n_workers must be at least 1")


@dataclass
class LearningCurve:
    """Per-iteration ensemble-averaged squared error for one algorithm."""

    algorithm: str
    mse: np.ndarray
    dict_size_curve: Optional[np.ndarray] = None
    final_dict_sizes: Optional[np.ndarray] = None

    @property
    def mse_db(self) -> np.ndarray:
        """10 log10 of the MSE with zeros clamped to the 1e-12 floor."""
        return 10.0 * np.log10(np.maximum(self.mse, MSE_FLOOR))


@dataclass
class ExperimentResult:
    """Curves keyed by algorithm label plus the resolved config and metadata."""

    config: ExperimentConfig
    curves: dict
    metadata: dict


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Execute all Monte-Carlo runs and average learning curves pointwise.

    Runs execute serially, or concurrently when ``cfg.n_workers > 1``;
    aggregation always happens in run-index order, so results do not depend
    on the degree of concurrency. Failures are re-raised with the run index
    and algorithm label attached.
    """
    started = time.perf_counter()
    if cfg.n_workers == 1:
        per_run = map(_single_run, ((cfg, r) for r in range(cfg.mc_runs)))
        aggregate = _aggregate(cfg, per_run)
    else:
        with ProcessPoolExecutor(max_workers=cfg.n_workers) as pool:
            per_run = pool.map(_single_run, ((cfg, r) for r in range(cfg.mc_runs)), chunksize=1)
            aggregate = _aggregate(cfg, per_run)
    curves, signal_power, noise_power = aggregate

    snr_db = None
    if cfg.channel.noise_stddev > 0 and noise_power > 0:
        snr_db = float(10.0 * np.log10(signal_power / noise_power))
    wall = time.perf_counter() - started
    n_samples = next(iter(curves.values())).mse.shape[0]
    metadata = {
        "mc_runs": cfg.mc_runs,
        "curve_length": int(n_samples),
        "measured_snr_db": snr_db,
        "wall_clock_seconds": wall,
    }
    return ExperimentResult(config=cfg, curves=curves, metadata=metadata)


def _single_run(args) -> tuple:
    """One Monte-Carlo realization: shared dataset, one trace per algorithm."""
    cfg, run_index = args
    try:
        seeds = np.random.SeedSequence((cfg.master_seed, run_index)).generate_state(2)
        signal_cfg = replace(cfg.signal, seed=int(seeds[0]))
        channel_cfg = replace(cfg.channel, seed=int(seeds[1]))
        s = generate_input(signal_cfg)
        r = apply_channel(s, channel_cfg)
        if cfg.channel.noise_stddev > 0:
            clean = apply_channel(s, replace(channel_cfg, noise_stddev=0.0))
            signal_power = float(np.mean(np.abs(clean) ** 2))
            noise_power = float(np.mean(np.abs(r - clean) ** 2))
        else:
            signal_power = noise_power = 0.0
        dataset = build_dataset(r, s, cfg.embedding)
    except Exception as exc:
        raise RuntimeError(f"run {run_index}: {exc}") from exc
    samples = list(zip(dataset.inputs, dataset.targets))
    traces = {}
    for alg in cfg.algorithms:
        try:
            run = run_filter(samples, alg.algorithm, alg.filter_config())
        except Exception as exc:
            raise RuntimeError(f"run {run_index}, algorithm {alg.label}: {exc}") from exc
        dict_sizes = run.dict_sizes() if alg.algorithm == "cklms" else None
        traces[alg.label] = (run.squared_errors(), dict_sizes)
    return traces, signal_power, noise_power


def _aggregate(cfg: ExperimentConfig, per_run) -> tuple:
    mse_sums = {}
    dict_sums = {}
    final_sizes = {a.label: [] for a in cfg.algorithms if a.algorithm == "cklms"}
    signal_power = 0.0
    noise_power = 0.0
    count = 0
    for traces, sig_p, noi_p in per_run:
        for label, (squared, dict_sizes) in traces.items():
            if label not in mse_sums:
                mse_sums[label] = np.zeros_like(squared)
            mse_sums[label] += squared
            if dict_sizes is not None:
                if label not in dict_sums:
                    dict_sums[label] = np.zeros(dict_sizes.shape[0])
                dict_sums[label] += dict_sizes
                final_sizes[label].append(int(dict_sizes[-1]))
        signal_power += sig_p
        noise_power += noi_p
        count += 1
    curves = {}
    for alg in cfg.algorithms:
        mse = mse_sums[alg.label] / count
        if cfg.moving_average > 1:
            mse = _trailing_mean(mse, cfg.moving_average)
        curve = LearningCurve(algorithm=alg.label, mse=mse)
        if alg.label in dict_sums:
            curve.dict_size_curve = dict_sums[alg.label] / count
            curve.final_dict_sizes = np.array(final_sizes[alg.label], dtype=np.int64)
        curves[alg.label] = curve
    return curves, signal_power, noise_power


def _trailing_mean(values: np.ndarray, window: int) -> np.ndarray:
    """Length-preserving trailing average; early points use shorter windows."""
    sums = np.cumsum(values)
    out = np.empty_like(values)
    out[:window] = sums[:window] / np.arange(1, window + 1)
    out[window:] = (sums[window:] - sums[:-window]) / window
    return out


def emit_results(result: ExperimentResult, fmt: str, path) -> None:
    """Write learning curves as CSV or a JSON document.

    CSV rows are ``iteration,<label>_mse_db,...`` with iteration starting at
    1 and values rendered as %.12e. JSON mirrors the curves alongside the
    resolved config and run metadata, serialized canonically (sorted keys,
    two-space indent) so identical results re-serialize to identical bytes.
    """
    if fmt == "csv":
        _emit_csv(result, path)
    elif fmt == "json":
        _emit_json(result, path)
    else:
        raise ValueError(f"unknown output format {fmt!r}; expected 'csv' or 'json'")


def _emit_csv(result: ExperimentResult, path) -> None:
    labels = list(result.curves)
    columns = [result.curves[label].mse_db for label in labels]
    n = columns[0].shape[0]
    lines = ["iteration," + ",".join(f"{label}_mse_db" for label in labels)]
    for i in range(n):
        lines.append(f"{i + 1}," + ",".join("%.12e" % col[i] for col in columns))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _emit_json(result: ExperimentResult, path) -> None:
    curves_doc = {}
    for label, curve in result.curves.items():
        entry = {
            "mse": [float(v) for v in curve.mse],
            "mse_db": [float(v) for v in curve.mse_db],
        }
        if curve.dict_size_curve is not None:
            entry["dict_size_curve"] = [float(v) for v in curve.dict_size_curve]
            entry["final_dict_sizes"] = [int(v) for v in curve.final_dict_sizes]
        curves_doc[label] = entry
    doc = {
        "config": config_to_dict(result.config),
        "curves": curves_doc,
        "metadata": result.metadata,
    }
    with open(path, "w") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _complex_pairs(values) -> list:
    return [[float(np.real(v)), float(np.imag(v))] for v in values]


def config_to_dict(cfg: ExperimentConfig) -> dict:
    """Full JSON-ready echo of a config, defaults resolved; inverse of config_from_dict."""
    return {
        "name": cfg.name,
        "signal": {
            "rho": cfg.signal.rho,
            "n_samples": cfg.signal.n_samples,
            "amplitude": cfg.signal.amplitude,
        },
        "channel": {
            "noise_stddev": cfg.channel.noise_stddev,
            "linear_taps": _complex_pairs(cfg.channel.linear_taps),
            "poly_coeffs": _complex_pairs(cfg.channel.poly_coeffs),
        },
        "embedding": {
            "filter_length": cfg.embedding.filter_length,
            "delay": cfg.embedding.delay,
        },
        "algorithms": [
            {
                "algorithm": a.algorithm,
                "label": a.label,
                "mu": a.mu,
                "kernel": a.kernel,
                "sigma": a.sigma,
                "delta1": a.delta1,
                "delta2": a.delta2,
                "epsilon": a.epsilon,
            }
            for a in cfg.algorithms
        ],
        "mc_runs": cfg.mc_runs,
        "master_seed": cfg.master_seed,
        "moving_average": cfg.moving_average,
        "n_workers": cfg.n_workers,
    }


def config_from_dict(doc: dict, path: str = "experiment") -> ExperimentConfig:
    """Parse one experiment document, reporting bad fields by dotted path."""
    if not isinstance(doc, dict):
        raise ConfigError(path, "must be an object")
    known = {
        "name", "signal", "channel", "embedding", "algorithms",
        "mc_runs", "master_seed", "moving_average", "n_workers",
    }
    for key in doc:
        if key not in known:
            raise ConfigError(f"{path}.{key}", "unknown field")
    name = _require(doc, "name", str, path)
    signal_doc = _require(doc, "signal", dict, path)
    channel_doc = doc.get("channel", {})
    embedding_doc = doc.get("embedding", {})
    algorithms_doc = _require(doc, "algorithms", list, path)

    signal = _build(
        SignalConfig, f"{path}.signal",
        rho=_require(signal_doc, "rho", (int, float), f"{path}.signal"),
        n_samples=_require(signal_doc, "n_samples", int, f"{path}.signal"),
        amplitude=_optional(signal_doc, "amplitude", (int, float), 0.70, f"{path}.signal"),
        seed=0,
        _known={"rho", "n_samples", "amplitude"},
        _doc=signal_doc,
    )
    channel = _build(
        ChannelConfig, f"{path}.channel",
        noise_stddev=_optional(channel_doc, "noise_stddev", (int, float), 0.0, f"{path}.channel"),
        linear_taps=_pairs_to_complex(
            _optional(channel_doc, "linear_taps", list, None, f"{path}.channel"),
            f"{path}.channel.linear_taps",
            default=ChannelConfig.__dataclass_fields__["linear_taps"].default,
        ),
        poly_coeffs=_pairs_to_complex(
            _optional(channel_doc, "poly_coeffs", list, None, f"{path}.channel"),
            f"{path}.channel.poly_coeffs",
            default=ChannelConfig.__dataclass_fields__["poly_coeffs"].default,
        ),
        seed=0,
        _known={"noise_stddev", "linear_taps", "poly_coeffs"},
        _doc=channel_doc,
    )
    embedding = _build(
        EmbeddingConfig, f"{path}.embedding",
        filter_length=_optional(embedding_doc, "filter_length", int, 5, f"{path}.embedding"),
        delay=_optional(embedding_doc, "delay", int, 2, f"{path}.embedding"),
        _known={"filter_length", "delay"},
        _doc=embedding_doc,
    )
    algorithms = []
    for i, alg_doc in enumerate(algorithms_doc):
        alg_path = f"{path}.algorithms[{i}]"
        if not isinstance(alg_doc, dict):
            raise ConfigError(alg_path, "must be an object")
        algorithms.append(
            _build(
                AlgorithmConfig, alg_path,
                algorithm=_require(alg_doc, "algorithm", str, alg_path),
                mu=_require(alg_doc, "mu", (int, float), alg_path),
                label=_optional(alg_doc, "label", str, None, alg_path),
                kernel=_optional(alg_doc, "kernel", str, "complex-gaussian", alg_path),
                sigma=_optional(alg_doc, "sigma", (int, float), 5.0, alg_path),
                delta1=_optional(alg_doc, "delta1", (int, float), 0.0, alg_path),
                delta2=_optional(alg_doc, "delta2", (int, float), 0.0, alg_path),
                epsilon=_optional(alg_doc, "epsilon", (int, float), 1e-6, alg_path),
                _known={"algorithm", "mu", "label", "kernel", "sigma", "delta1", "delta2", "epsilon"},
                _doc=alg_doc,
            )
        )
    return _build(
        ExperimentConfig, path,
        name=name,
        signal=signal,
        channel=channel,
        embedding=embedding,
        algorithms=tuple(algorithms),
        mc_runs=_require(doc, "mc_runs", int, path),
        master_seed=_require(doc, "master_seed", int, path),
        moving_average=_optional(doc, "moving_average", int, 0, path),
        n_workers=_optional(doc, "n_workers", int, 1, path),
    )


def load_config_file(path) -> list:
    """Read a config file holding one experiment or {"experiments": [...]}."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(str(path), f"not valid JSON ({exc})") from exc
    if isinstance(doc, dict) and "experiments" in doc:
        experiments = doc["experiments"]
        if not isinstance(experiments, list) or not experiments:
            raise ConfigError("experiments", "must be a non-empty list")
        configs = [
            config_from_dict(entry, f"experiments[{i}]") for i, entry in enumerate(experiments)
        ]
    else:
        configs = [config_from_dict(doc)]
    names = [c.name for c in configs]
    if len(set(names)) != len(names):
        raise ConfigError("experiments", f"experiment names must be unique, got {names}")
    return configs


def _require(doc, key, types, path):
    if key not in doc:
        raise ConfigError(f"{path}.{key}", "missing required field")
    value = doc[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise ConfigError(f"{path}.{key}", f"expected {_type_name(types)}, got {value!r}")
    return value


def _optional(doc, key, types, default, path):
    if key not in doc:
        return default
    return _require(doc, key, types, path)


def _type_name(types) -> str:
    if isinstance(types, tuple):
        return "number" if float in types else "/".join(t.__name__ for t in types)
    return types.__name__


def _pairs_to_complex(entries, path, default):
    if entries is None:
        return default
    values = []
    for i, pair in enumerate(entries):
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise ConfigError(f"{path}[{i}]", f"expected a [real, imag] pair, got {pair!r}")
        values.append(complex(pair[0], pair[1]))
    return tuple(values)


def _build(cls, path, _known=None, _doc=None, **kwargs):
    """Construct a config dataclass, rewriting validation errors with the path."""
    if _known is not None and _doc is not None:
        for key in _doc:
            if key not in _known:
                raise ConfigError(f"{path}.{key}", "unknown field")
    try:
        return cls(**kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc

"""Benchmark runner: quartic oscillator, four trial families vs. exact dynamics."""

from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .dynamics import ATOL, RTOL, Trajectory, integrate, sample_times
from .errors import ConfigError, WavepacketError
from .exact import SpectralPropagator, diagonalize, propagate
from .hamiltonian import QuarticModel
from .observables import ObservableSeries, mean_x_columns, squared_overlaps
from .trials import Family, build_state, initial_point

__all__ = ["ExperimentConfig", "RunResult", "SweepResult", "run", "sweep", "write_outputs", "SWEEP_AXES"]

log = logging.getLogger(__name__)

ALL_FAMILIES = ("G", "F1", "F2", "F3")
SWEEP_AXES = ("truncation", "tolerance", "dt_out")


def _parse_complex(value, key: str) -> complex:
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a number or [re, im], got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        return complex(value[0], value[1])
    raise ConfigError(f"{key}: expected a number or [re, im], got {value!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    a: float = -1.0
    lam: float = 1.0
    alpha0: complex = 1 / math.sqrt(2.0)
    beta0: complex = 0.1
    families: tuple[str, ...] = ALL_FAMILIES
    t_end: float = 20.0
    dt_out: float = 0.01
    n_max_var: int = 127
    n_max_exact: int = 255
    rtol: float = RTOL
    atol: float = ATOL
    out_dir: str | None = None

    # JSON uses "lambda"; everything else maps one-to-one.
    _JSON_RENAMES = {"lambda": "lam"}

    def __post_init__(self):
        fams = tuple(Family.parse(f).value for f in self.families)
        if not fams:
            raise ConfigError("families must not be empty")
        object.__setattr__(self, "families", fams)
        if self.t_end <= 0 or self.dt_out <= 0:
            raise ConfigError("t_end and dt_out must be positive")
        try:
            sample_times(self.t_end, self.dt_out)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.n_max_var < 8 or self.n_max_exact <= self.n_max_var:
            raise ConfigError("need 8 <= n_max_var < n_max_exact")
        if self.rtol <= 0 or self.atol <= 0:
            raise ConfigError("integrator tolerances must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, value in data.items():
            name = cls._JSON_RENAMES.get(key, key)
            if name not in known or key == "lam":
                raise ConfigError(f"unknown config key {key!r}")
            kwargs[name] = value
        for key in ("alpha0", "beta0"):
            if key in kwargs:
                kwargs[key] = _parse_complex(kwargs[key], key)
        for key in ("a", "lam", "t_end", "dt_out", "rtol", "atol"):
            if key in kwargs and (isinstance(kwargs[key], bool) or not isinstance(kwargs[key], (int, float))):
                raise ConfigError(f"{key}: expected a number")
        for key in ("n_max_var", "n_max_exact"):
            if key in kwargs and (isinstance(kwargs[key], bool) or not isinstance(kwargs[key], int)):
                raise ConfigError(f"{key}: expected an integer")
        if "families" in kwargs:
            if not isinstance(kwargs["families"], list):
                raise ConfigError("families: expected a list")
            try:
                kwargs["families"] = tuple(Family.parse(f).value for f in kwargs["families"])
            except ValueError as exc:
                raise ConfigError(f"families: {exc}") from exc
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path) -> ExperimentConfig:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        d["families"] = list(self.families)
        for key in ("alpha0", "beta0"):
            d[key] = [d[key].real, d[key].imag]
        return d


@dataclass
class RunResult:
    config: ExperimentConfig
    series: ObservableSeries
    trajectories: dict[str, Trajectory] = field(repr=False)
    exact_norm_drift: float = 0.0
    exact_energy_drift: float = 0.0

    @property
    def W_bar(self) -> dict[str, float]:
        return self.series.W_bar

    def summary(self) -> dict:
        return {
            "a": self.config.a,
            "W_bar": self.W_bar,
            "lambda": self.config.lam,
            "diagnostics": {
                "energy_drift": {k: t.energy_drift for k, t in self.trajectories.items()},
                "exact_norm_drift": self.exact_norm_drift,
                "exact_energy_drift": self.exact_energy_drift,
            },
        }


def _integrate_family(config: ExperimentConfig, family: str) -> Trajectory:
    model = QuarticModel(config.a, config.lam, config.n_max_var)
    start = initial_point(family, config.alpha0, config.beta0)
    try:
        return integrate(model, family, start, config.t_end, config.dt_out, config.rtol, config.atol)
    except WavepacketError as exc:
        raise type(exc)(f"family {family}: {exc}") from exc


def exact_reference(config: ExperimentConfig, times: np.ndarray) -> tuple[SpectralPropagator, np.ndarray]:
    model = QuarticModel(config.a, config.lam, config.n_max_exact)
    prop = diagonalize(model)
    psi0 = build_state(Family.G, initial_point(Family.G, config.alpha0, config.beta0), config.n_max_exact)
    return prop, propagate(prop, psi0, times)


def run(config: ExperimentConfig, jobs: int = 1) -> RunResult:
    """Integrate every requested family and compare with the exact solution."""
    times = sample_times(config.t_end, config.dt_out)
    prop, exact = exact_reference(config, times)

    if jobs > 1 and len(config.families) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {f: pool.submit(_integrate_family, config, f) for f in config.families}
            trajectories = {f: fut.result() for f, fut in futures.items()}
    else:
        trajectories = {f: _integrate_family(config, f) for f in config.families}

    series = ObservableSeries(times)
    series.x_mean["exact"] = mean_x_columns(exact)
    for fam, traj in trajectories.items():
        states = traj.states(config.n_max_var)
        series.W[fam] = squared_overlaps(exact, states)
        series.x_mean[fam] = mean_x_columns(states)
        log.info("%s: W_bar=%.6f drift=%.2e nfev=%d", fam, series.W_bar[fam], traj.energy_drift, traj.nfev)

    norms = np.linalg.norm(exact, axis=0)
    H = prop.model.H.entries
    energies = np.einsum("nt,nt->t", exact.conj(), H @ exact).real
    return RunResult(
        config,
        series,
        trajectories,
        exact_norm_drift=float(np.max(np.abs(norms - norms[0]))),
        exact_energy_drift=float(np.max(np.abs(energies - energies[0]))),
    )


CSV_COLUMNS = ("t",) + tuple(f"W_{f}" for f in ALL_FAMILIES) + ("x_exact",) + tuple(f"x_{f}" for f in ALL_FAMILIES)


def _fmt(v: float) -> str:
    return f"{v:.15g}"


def write_outputs(result: RunResult, out_dir) -> tuple[Path, Path]:
    """Write ``run_a<a>.csv`` and ``summary_a<a>.json`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tag = _fmt(result.config.a)
    fams = result.config.families
    cols = ["t"] + [f"W_{f}" for f in ALL_FAMILIES if f in fams] + ["x_exact"] + [f"x_{f}" for f in ALL_FAMILIES if f in fams]
    s = result.series
    data = {"t": s.times, "x_exact": s.x_mean["exact"]}
    for f in fams:
        data[f"W_{f}"] = s.W[f]
        data[f"x_{f}"] = s.x_mean[f]
    csv_path = out / f"run_a{tag}.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(cols)
        for k in range(s.times.size):
            writer.writerow([_fmt(data[c][k]) for c in cols])
    json_path = out / f"summary_a{tag}.json"
    json_path.write_text(json.dumps(result.summary(), indent=2) + "\n")
    return csv_path, json_path


@dataclass
class SweepResult:
    axis: str
    base: dict[str, float]
    varied: dict[str, float]

    @property
    def deltas(self) -> dict[str, float]:
        return {f: abs(self.varied[f] - self.base[f]) for f in self.base}

    @property
    def max_delta(self) -> float:
        return max(self.deltas.values())

    def table(self) -> str:
        lines = [f"axis={self.axis}", f"{'family':<8}{'W_bar':>12}{'varied':>12}{'|dW_bar|':>12}"]
        for f, d in self.deltas.items():
            lines.append(f"{f:<8}{self.base[f]:>12.6f}{self.varied[f]:>12.6f}{d:>12.2e}")
        lines.append(f"max |dW_bar| = {self.max_delta:.3e}")
        return "\n".join(lines)


def varied_config(config: ExperimentConfig, axis: str) -> ExperimentConfig:
    if axis == "truncation":
        return replace(config, n_max_var=2 * config.n_max_var + 1, n_max_exact=2 * config.n_max_exact + 1)
    if axis == "tolerance":
        return replace(config, rtol=config.rtol / 2, atol=config.atol / 2)
    if axis == "dt_out":
        return replace(config, dt_out=config.dt_out / 2)
    raise ConfigError(f"unknown sweep axis {axis!r}; choose from {SWEEP_AXES}")


def sweep(config: ExperimentConfig, axis: str, jobs: int = 1, base: RunResult | None = None) -> SweepResult:
    """Rerun with one resolution parameter refined and report the change in W_bar."""
    varied = varied_config(config, axis)
    base = base or run(config, jobs)
    return SweepResult(axis, base.W_bar, run(varied, jobs).W_bar)

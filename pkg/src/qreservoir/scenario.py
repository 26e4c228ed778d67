"""Scenario configuration, execution and CSV emission.

A scenario is one figure-style dataset: a scenario kind, a common time
grid, and one or more parameter series, each of which becomes a value
column.  All rates are in units of the coupling constant (``gamma0 = 1``)
and the time column is the dimensionless ``t_gamma0``.

Config files are JSON with the same field names as the dataclasses below;
complex amplitudes are stored as ``[re, im]`` pairs.  CSV output is fully
deterministic: comma separated, ``.`` decimal point, header row, LF line
endings, 17 significant digits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .reservoir import ReservoirSpec, decay_rate, survival_factor

KINDS = ("coherence", "decay_rate", "concurrence", "lbc")

#: subsystems per series for each scenario kind
_SUBSYSTEMS = {"coherence": 1, "decay_rate": 1, "concurrence": 2, "lbc": 3}
#: initial amplitudes per series (ground+excited for single-qubit kinds,
#: one excited amplitude per subsystem otherwise)
_AMPLITUDES = {"coherence": 2, "decay_rate": 2, "concurrence": 2, "lbc": 3}


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the field."""


@dataclass(frozen=True)
class SubsystemParams:
    """Reservoir parameters of one subsystem, in units of gamma0."""

    lam: float
    delta: float = 0.0
    n_qubits: int = 1

    def to_reservoir(self) -> ReservoirSpec:
        return ReservoirSpec(
            gamma0=1.0, lam=self.lam, delta=self.delta, n_qubits=self.n_qubits
        )


@dataclass(frozen=True)
class SeriesSpec:
    """One curve: a label, per-subsystem parameters, initial amplitudes."""

    label: str
    subsystems: tuple[SubsystemParams, ...]
    amplitudes: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "subsystems", tuple(self.subsystems))
        object.__setattr__(
            self, "amplitudes", tuple(complex(a) for a in self.amplitudes)
        )


@dataclass(frozen=True)
class ScenarioConfig:
    """A runnable scenario; see the module docstring for conventions.

    ``out`` is an optional default output path; command-line ``--out``
    takes precedence, and stdout is used when neither is given.
    """

    kind: str
    t_max: float
    samples: int
    series: tuple[SeriesSpec, ...]
    out: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        if self.kind not in KINDS:
            raise ConfigError(f"kind: must be one of {KINDS} (got {self.kind!r})")
        if not (self.t_max >= 0.0 and math.isfinite(self.t_max)):
            raise ConfigError(f"t_max: must be finite and >= 0 (got {self.t_max})")
        if self.samples < 1:
            raise ConfigError(f"samples: must be >= 1 (got {self.samples})")
        if self.samples > 1 and self.t_max <= 0.0:
            raise ConfigError("t_max: must be > 0 when samples > 1")
        if not self.series:
            raise ConfigError("series: at least one series is required")
        labels = [s.label for s in self.series]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"series: labels must be unique (got {labels})")
        want_subs = _SUBSYSTEMS[self.kind]
        want_amps = _AMPLITUDES[self.kind]
        for s in self.series:
            if len(s.subsystems) != want_subs:
                raise ConfigError(
                    f"series[{s.label!r}].subsystems: kind {self.kind!r} needs "
                    f"{want_subs} subsystem(s), got {len(s.subsystems)}"
                )
            if len(s.amplitudes) != want_amps:
                raise ConfigError(
                    f"series[{s.label!r}].amplitudes: kind {self.kind!r} needs "
                    f"{want_amps} amplitude(s), got {len(s.amplitudes)}"
                )
            norm = sum(abs(a) ** 2 for a in s.amplitudes)
            if abs(norm - 1.0) > 1e-9:
                raise ConfigError(
                    f"series[{s.label!r}].amplitudes: must be normalised "
                    f"(sum |a|^2 = {norm})"
                )
            for i, sub in enumerate(s.subsystems):
                if sub.lam <= 0.0:
                    raise ConfigError(
                        f"series[{s.label!r}].subsystems[{i}].lam: must be > 0"
                    )
                if sub.n_qubits < 1:
                    raise ConfigError(
                        f"series[{s.label!r}].subsystems[{i}].n_qubits: must be >= 1"
                    )

    def time_grid(self) -> np.ndarray:
        if self.samples == 1:
            return np.zeros(1)
        return np.linspace(0.0, self.t_max, self.samples)


@dataclass(frozen=True)
class ScenarioTable:
    """Plot-ready dataset: column names and a (samples x columns) array."""

    columns: tuple[str, ...]
    values: np.ndarray

    def to_csv_bytes(self) -> bytes:
        lines = [",".join(self.columns)]
        for row in self.values:
            lines.append(",".join(f"{v:.17g}" for v in row))
        return ("\n".join(lines) + "\n").encode("ascii")

    def write_csv(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_csv_bytes())


def _series_values(kind: str, series: SeriesSpec, t: np.ndarray) -> np.ndarray:
    specs = [p.to_reservoir() for p in series.subsystems]
    amps = series.amplitudes
    if kind == "coherence":
        g = survival_factor(t, specs[0])
        return 2.0 * abs(amps[0] * amps[1]) * np.abs(g)
    if kind == "decay_rate":
        return decay_rate(t, specs[0])
    if kind == "concurrence":
        ga = survival_factor(t, specs[0])
        gb = survival_factor(t, specs[1])
        return 2.0 * np.abs(ga * gb) * abs(amps[0] * amps[1])
    if kind == "lbc":
        ga = survival_factor(t, specs[0])
        gb = survival_factor(t, specs[1])
        gc = survival_factor(t, specs[2])
        pab = np.abs(ga * gb) * abs(amps[0] * amps[1])
        pac = np.abs(ga * gc) * abs(amps[0] * amps[2])
        pbc = np.abs(gb * gc) * abs(amps[1] * amps[2])
        return np.sqrt(8.0 / 3.0) * np.sqrt(pab**2 + pac**2 + pbc**2)
    raise ConfigError(f"kind: unknown scenario kind {kind!r}")


def run_scenario(config: ScenarioConfig) -> ScenarioTable:
    """Evaluate every series on the scenario's time grid."""
    t = config.time_grid()
    cols = ["t_gamma0"] + [s.label for s in config.series]
    data = np.empty((t.size, len(cols)), dtype=np.float64)
    data[:, 0] = t
    for j, s in enumerate(config.series, start=1):
        data[:, j] = _series_values(config.kind, s, t)
    return ScenarioTable(columns=tuple(cols), values=data)


def with_overrides(
    config: ScenarioConfig, t_max: float | None = None, samples: int | None = None
) -> ScenarioConfig:
    """Apply CLI-style overrides on top of a loaded config."""
    kwargs = {}
    if t_max is not None:
        kwargs["t_max"] = t_max
    if samples is not None:
        kwargs["samples"] = samples
    return replace(config, **kwargs) if kwargs else config


# ---------------------------------------------------------------------------
# JSON (de)serialisation


def config_to_dict(config: ScenarioConfig) -> dict:
    return {
        "kind": config.kind,
        "t_max": config.t_max,
        "samples": config.samples,
        "out": config.out,
        "series": [
            {
                "label": s.label,
                "subsystems": [
                    {"lam": p.lam, "delta": p.delta, "n_qubits": p.n_qubits}
                    for p in s.subsystems
                ],
                "amplitudes": [[a.real, a.imag] for a in s.amplitudes],
            }
            for s in config.series
        ],
    }


def config_from_dict(data: dict) -> ScenarioConfig:
    try:
        series = tuple(
            SeriesSpec(
                label=str(s["label"]),
                subsystems=tuple(
                    SubsystemParams(
                        lam=float(p["lam"]),
                        delta=float(p.get("delta", 0.0)),
                        n_qubits=int(p.get("n_qubits", 1)),
                    )
                    for p in s["subsystems"]
                ),
                amplitudes=tuple(complex(a[0], a[1]) for a in s["amplitudes"]),
            )
            for s in data["series"]
        )
        out = data.get("out")
        return ScenarioConfig(
            kind=str(data["kind"]),
            t_max=float(data["t_max"]),
            samples=int(data["samples"]),
            series=series,
            out=None if out is None else str(out),
        )
    except KeyError as exc:
        raise ConfigError(f"missing config field: {exc.args[0]!r}") from exc
    except (TypeError, IndexError) as exc:
        raise ConfigError(f"malformed config value: {exc}") from exc


def load_config(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def save_config(config: ScenarioConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(config), fh, indent=2)
        fh.write("\n")

"""Named figure presets.

Conventions shared by all presets: rates in units of gamma0; the weak
coupling (memoryless) setting uses ``lam = 15`` and the strong coupling
(memory) setting ``lam = 0.5``; detuned variants use ``delta = 2``.
Single-qubit presets start the active qubit in ``(|g> + |e>)/sqrt(2)``;
pair presets split one excitation evenly over two qubits, triple presets
over three.  Time grids: ``[0, 20]`` with 2001 samples for purely weak
coupling presets, ``[0, 30]`` with 3001 samples whenever a strong coupling
reservoir is present (resolves its oscillations).
"""

from __future__ import annotations

import math

from .scenario import ScenarioConfig, SeriesSpec, SubsystemParams

WEAK_LAM = 15.0
STRONG_LAM = 0.5
DETUNING = 2.0

_QUBIT_COUNTS = (1, 2, 3, 6)

_GRID_WEAK = {"t_max": 20.0, "samples": 2001}
_GRID_STRONG = {"t_max": 30.0, "samples": 3001}

_SQRT2 = 1.0 / math.sqrt(2.0)
_SQRT3 = 1.0 / math.sqrt(3.0)


def _single_qubit_preset(kind: str, lam: float, delta: float) -> ScenarioConfig:
    grid = _GRID_WEAK if lam == WEAK_LAM else _GRID_STRONG
    series = tuple(
        SeriesSpec(
            label=f"N{n}",
            subsystems=(SubsystemParams(lam=lam, delta=delta, n_qubits=n),),
            amplitudes=(_SQRT2, _SQRT2),
        )
        for n in _QUBIT_COUNTS
    )
    return ScenarioConfig(kind=kind, series=series, **grid)


def _pair_preset(lam: float, delta: float) -> ScenarioConfig:
    grid = _GRID_WEAK if lam == WEAK_LAM else _GRID_STRONG
    series = tuple(
        SeriesSpec(
            label=f"N{n}",
            subsystems=(
                SubsystemParams(lam=lam, delta=delta, n_qubits=n),
                SubsystemParams(lam=lam, delta=delta, n_qubits=n),
            ),
            amplitudes=(_SQRT2, _SQRT2),
        )
        for n in _QUBIT_COUNTS
    )
    return ScenarioConfig(kind="concurrence", series=series, **grid)


def _triple_preset(lam: float, delta: float) -> ScenarioConfig:
    grid = _GRID_WEAK if lam == WEAK_LAM else _GRID_STRONG
    series = tuple(
        SeriesSpec(
            label=f"N{n}",
            subsystems=tuple(
                SubsystemParams(lam=lam, delta=delta, n_qubits=n) for _ in range(3)
            ),
            amplitudes=(_SQRT3, _SQRT3, _SQRT3),
        )
        for n in _QUBIT_COUNTS
    )
    return ScenarioConfig(kind="lbc", series=series, **grid)


def _regime_mix_pair() -> ScenarioConfig:
    combos = ("MM", "MN", "NN")
    series = tuple(
        SeriesSpec(
            label=combo,
            subsystems=tuple(
                SubsystemParams(
                    lam=WEAK_LAM if ch == "M" else STRONG_LAM,
                    delta=DETUNING,
                    n_qubits=6,
                )
                for ch in combo
            ),
            amplitudes=(_SQRT2, _SQRT2),
        )
        for combo in combos
    )
    return ScenarioConfig(kind="concurrence", series=series, **_GRID_STRONG)


def _regime_mix_triple() -> ScenarioConfig:
    combos = ("MMM", "MMN", "MNN", "NNN")
    series = tuple(
        SeriesSpec(
            label=combo,
            subsystems=tuple(
                SubsystemParams(
                    lam=WEAK_LAM if ch == "M" else STRONG_LAM,
                    delta=DETUNING,
                    n_qubits=6,
                )
                for ch in combo
            ),
            amplitudes=(_SQRT3, _SQRT3, _SQRT3),
        )
        for combo in combos
    )
    return ScenarioConfig(kind="lbc", series=series, **_GRID_STRONG)


PRESETS: dict[str, ScenarioConfig] = {
    # single-qubit coherence: weak/strong coupling, with and without detuning
    "fig2a": _single_qubit_preset("coherence", WEAK_LAM, 0.0),
    "fig2b": _single_qubit_preset("coherence", WEAK_LAM, DETUNING),
    "fig2c": _single_qubit_preset("coherence", STRONG_LAM, 0.0),
    "fig2d": _single_qubit_preset("coherence", STRONG_LAM, DETUNING),
    # matching decay-rate panels
    "fig3a": _single_qubit_preset("decay_rate", WEAK_LAM, 0.0),
    "fig3b": _single_qubit_preset("decay_rate", WEAK_LAM, DETUNING),
    "fig3c": _single_qubit_preset("decay_rate", STRONG_LAM, 0.0),
    "fig3d": _single_qubit_preset("decay_rate", STRONG_LAM, DETUNING),
    # two-qubit concurrence, equal reservoirs
    "fig4a": _pair_preset(WEAK_LAM, DETUNING),
    "fig4b": _pair_preset(STRONG_LAM, DETUNING),
    # two-qubit concurrence across regime combinations
    "fig5": _regime_mix_pair(),
    # three-qubit LBC, equal reservoirs
    "fig6a": _triple_preset(WEAK_LAM, DETUNING),
    "fig6b": _triple_preset(STRONG_LAM, DETUNING),
    # three-qubit LBC across regime combinations
    "fig7": _regime_mix_triple(),
}

#: default preset used by each bare CLI subcommand
DEFAULT_PRESET = {
    "coherence": "fig2a",
    "decay_rate": "fig3a",
    "concurrence": "fig4a",
    "lbc": "fig6a",
}

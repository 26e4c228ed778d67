"""Closed-form single-reservoir model: spectral density, memory kernel,
exact excited-state amplitudes, survival factor and time-local decay rate.

Physical picture: ``n_qubits`` two-level emitters share one lossy bosonic
reservoir whose coupling spectrum is a Lorentzian of width ``lam`` centred
``delta`` away from the emitter transition.  Within the single-excitation
sector the dynamics is exactly solvable; everything below is assembled from
one complex envelope evaluated by the kernel backend.

All rates are expressed in units of the coupling constant ``gamma0``; times
are dimensionless (``gamma0 * t``).
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

import numpy as np

from ._kernels import decay_envelope

#: relative half-width of the critical-coupling band in `classify_regime`
CRITICAL_RTOL = 1e-12

#: |survival factor| below which the decay rate is reported as a pole
POLE_FLOOR = 1e-12


class Regime(enum.Enum):
    """Coupling regime of a reservoir."""

    WEAK_COUPLING = "weak"      # memoryless, monotone decay
    STRONG_COUPLING = "strong"  # memory effects, oscillatory decay
    CRITICAL = "critical"


@dataclass(frozen=True)
class ReservoirSpec:
    """Parameters of one Lorentzian reservoir shared by ``n_qubits`` qubits.

    Parameters
    ----------
    gamma0:
        Coupling constant (rate, > 0).  The natural rate unit.
    lam:
        Spectral width of the Lorentzian coupling profile (rate, > 0).
    delta:
        Detuning of the reservoir centre from the qubit transition (rate).
    n_qubits:
        Number of qubits sharing the reservoir (>= 1).
    betas:
        Dimensionless per-qubit coupling weights; defaults to all ones.

    Derived complex quantities (`kernel_rate`, `rate_split`) are recomputed
    on access and never cached, so a spec cannot carry stale values.
    """

    gamma0: float
    lam: float
    delta: float = 0.0
    n_qubits: int = 1
    betas: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.gamma0 > 0.0:
            raise ValueError(f"gamma0 must be > 0 (got {self.gamma0})")
        if not self.lam > 0.0:
            raise ValueError(f"lam must be > 0 (got {self.lam})")
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1 (got {self.n_qubits})")
        betas = self.betas or tuple(1.0 for _ in range(self.n_qubits))
        betas = tuple(float(b) for b in betas)
        if len(betas) != self.n_qubits:
            raise ValueError(
                f"betas must have exactly n_qubits={self.n_qubits} entries "
                f"(got {len(betas)})"
            )
        object.__setattr__(self, "betas", betas)

    @property
    def kernel_rate(self) -> complex:
        """Complex decay rate of the exponential memory kernel."""
        return complex(self.lam, 0.0 - self.delta)

    @property
    def beta_sq_sum(self) -> float:
        """Sum of squared coupling weights."""
        return float(sum(b * b for b in self.betas))

    @property
    def rate_split(self) -> complex:
        """Principal root splitting the two collective decay rates."""
        kr = self.kernel_rate
        return cmath.sqrt(kr * kr - 2.0 * self.gamma0 * self.lam * self.beta_sq_sum)

    @property
    def has_uniform_coupling(self) -> bool:
        return all(b == 1.0 for b in self.betas)


@dataclass(frozen=True)
class AmplitudeVector:
    """Single-excitation amplitudes at one instant.

    ``c0`` is the amplitude of the zero-excitation component and is a
    constant of motion; ``c[j]`` is the amplitude for qubit ``j`` holding
    the excitation.  Excitation that has leaked into the reservoir is not
    tracked here, hence ``|c0|^2 + sum |c_j|^2 <= 1``.
    """

    c0: complex
    c: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        arr = np.array(self.c, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("c must be a 1-d vector with at least one entry")
        arr.setflags(write=False)
        object.__setattr__(self, "c", arr)
        object.__setattr__(self, "c0", complex(self.c0))
        norm = abs(self.c0) ** 2 + float((np.abs(arr) ** 2).sum())
        if norm > 1.0 + 1e-9:
            raise ValueError(f"total excitation weight {norm} exceeds 1")
        if self.t < 0.0:
            raise ValueError(f"t must be >= 0 (got {self.t})")

    @property
    def n_qubits(self) -> int:
        return self.c.size


def spectral_density(x, spec: ReservoirSpec):
    """Lorentzian coupling spectrum as a function of the offset from the
    qubit transition frequency.

    The transition frequency itself enters only through that offset, so the
    argument is ``x = omega - omega_qubit`` directly.
    """
    x = np.asarray(x, dtype=np.float64)
    out = (
        spec.gamma0
        * spec.lam**2
        / (2.0 * np.pi * ((x + spec.delta) ** 2 + spec.lam**2))
    )
    return float(out) if out.ndim == 0 else out


def correlation_kernel(tau, spec: ReservoirSpec):
    """Reservoir memory kernel ``(gamma0 lam / 2) exp(-kernel_rate * tau)``.

    Only causal arguments are meaningful; ``tau < 0`` is rejected.
    """
    tau_arr = np.asarray(tau, dtype=np.float64)
    if np.any(tau_arr < 0.0):
        raise ValueError("correlation_kernel is causal: tau must be >= 0")
    out = 0.5 * spec.gamma0 * spec.lam * np.exp(-spec.kernel_rate * tau_arr)
    return complex(out) if out.ndim == 0 else out


def classify_regime(spec: ReservoirSpec) -> Regime:
    """Weak/strong coupling split with a narrow critical band.

    Weak coupling iff ``lam > 2 gamma0 sum(beta^2)``; strong iff ``<``;
    critical when equal within ``CRITICAL_RTOL * lam``.
    """
    threshold = 2.0 * spec.gamma0 * spec.beta_sq_sum
    if abs(spec.lam - threshold) <= CRITICAL_RTOL * spec.lam:
        return Regime.CRITICAL
    if spec.lam > threshold:
        return Regime.WEAK_COUPLING
    return Regime.STRONG_COUPLING


def _envelope(t, spec: ReservoirSpec):
    """Kernel-backed (ec, fs) pair on a time grid; see `_kernels`."""
    t = np.asarray(t, dtype=np.float64)
    ec, fs = decay_envelope(t.reshape(-1), spec.gamma0, spec.lam, spec.delta, spec.beta_sq_sum)
    return ec.reshape(t.shape), fs.reshape(t.shape)


def collective_envelope(t, spec: ReservoirSpec):
    """Decay envelope of the symmetric (coupled) amplitude combination.

    Equals 1 at ``t = 0`` and decays to 0; the fraction of any initial
    amplitude pattern that lies along the symmetric combination decays with
    this factor while the orthogonal (subradiant) remainder is frozen.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    ec, fs = _envelope(t_arr, spec)
    e = ec + spec.kernel_rate * fs
    return complex(e) if t_arr.ndim == 0 else e


def amplitude_general(t: float, c_init: AmplitudeVector, spec: ReservoirSpec) -> AmplitudeVector:
    """Exact amplitudes at time ``t`` for arbitrary weights and initial data.

    The weighted sum ``S = sum(beta_j c_j)`` decays with the collective
    envelope while each amplitude moves only along its own weight:
    ``c_j(t) = c_j(0) + beta_j (E(t) - 1) S(0) / sum(beta^2)``.  ``c0`` is
    a constant of motion.
    """
    if t < 0.0:
        raise ValueError(f"t must be >= 0 (got {t})")
    if c_init.n_qubits != spec.n_qubits:
        raise ValueError(
            f"c_init has {c_init.n_qubits} amplitudes but spec declares "
            f"n_qubits={spec.n_qubits}"
        )
    betas = np.asarray(spec.betas)
    e = collective_envelope(float(t), spec)
    s0 = complex((betas * c_init.c).sum())
    c_t = c_init.c + betas * ((e - 1.0) * s0 / spec.beta_sq_sum)
    return AmplitudeVector(c0=c_init.c0, c=c_t, t=float(t))


def survival_factor(t, spec: ReservoirSpec):
    """Complex factor multiplying a single excited amplitude when all other
    qubits start in the ground state (uniform weights required).

    Equals ``(N-1)/N + E(t)/N``; the frozen ``(N-1)/N`` share is what the
    spectator qubits protect.  ``|survival_factor| <= 1`` for all ``t``.
    """
    if not spec.has_uniform_coupling:
        raise ValueError("survival_factor requires all coupling weights equal to 1")
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be >= 0")
    n = spec.n_qubits
    e = collective_envelope(t_arr, spec)
    # written so that e == 1 gives exactly 1.0 for every n
    g = 1.0 + (e - 1.0) / n
    return complex(g) if t_arr.ndim == 0 else g


def decay_rate(t, spec: ReservoirSpec):
    """Time-local decay rate of the surviving qubit.

    Equals ``-2 Re(G'(t)/G(t))`` with ``G`` the survival factor.  At zeros
    of ``G`` (strong coupling, no spectator qubits) the rate genuinely
    diverges; such points are flagged with NaN rather than clamped.
    """
    if not spec.has_uniform_coupling:
        raise ValueError("decay_rate requires all coupling weights equal to 1")
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be >= 0")
    n = spec.n_qubits
    ec, fs = _envelope(t_arr, spec)
    g = 1.0 + (ec + spec.kernel_rate * fs - 1.0) / n
    num = 2.0 * spec.gamma0 * spec.lam * fs
    regular = np.abs(g) >= POLE_FLOOR
    rate = np.where(regular, (num / np.where(regular, g, 1.0)).real, np.nan)
    return float(rate) if t_arr.ndim == 0 else rate

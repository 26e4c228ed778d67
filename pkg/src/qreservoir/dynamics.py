"""Density matrices and the element-wise dynamical map.

A single qubit in a reservoir evolves by the amplitude-damping-type map

    rho_ee -> |G|^2 rho_ee        rho_eg -> G rho_eg
    rho_ge -> G* rho_ge           rho_gg -> rho_gg + (1 - |G|^2) rho_ee

with ``G`` the qubit's survival factor.  Multi-qubit states of
independently damped qubits evolve by applying the rule to each qubit's
index pair, which is how `two_qubit_evolve` / `three_qubit_evolve` are
implemented (no superoperator matrix is ever materialised).

Basis ordering is fixed and tagged on every `DensityMatrix`: the excited
state comes first, and multi-qubit labels run in lexicographic order, e.g.
``ee, eg, ge, gg`` for two qubits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import smallmat
from .reservoir import ReservoirSpec, survival_factor

BASIS_ONE = ("e", "g")
BASIS_TWO = tuple("".join(p) for p in product("eg", repeat=2))
BASIS_THREE = tuple("".join(p) for p in product("eg", repeat=3))

#: physicality tolerances used by `DensityMatrix.validate`
TRACE_TOL = 1e-12
HERMITICITY_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Dense complex density matrix with its basis ordering attached."""

    matrix: np.ndarray
    basis: tuple[str, ...]

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if m.shape[0] != len(self.basis):
            raise ValueError(
                f"dimension {m.shape[0]} does not match basis of size {len(self.basis)}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "basis", tuple(self.basis))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return int(round(math.log2(self.dim)))

    def validate(self) -> None:
        """Raise if trace, Hermiticity or positivity are violated."""
        tr = complex(np.trace(self.matrix))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
        herm = float(np.abs(self.matrix - self.matrix.conj().T).max())
        if herm > HERMITICITY_TOL:
            raise ValueError(f"Hermiticity violated by {herm:.3e}")
        lo = float(smallmat.eigenvalues_hermitian(self.matrix)[-1])
        if lo < EIGENVALUE_FLOOR:
            raise ValueError(f"negative eigenvalue {lo:.3e} below floor")


def matrix_of(rho) -> np.ndarray:
    """Accept a `DensityMatrix` or a bare array; return the array."""
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=np.complex128)


@dataclass(frozen=True)
class SubsystemSpec:
    """One independently damped qubit: its reservoir and initial amplitude.

    ``amp0`` is the excited-state amplitude at t = 0 of the one active
    qubit in this subsystem's reservoir (the spectators start in the ground
    state, so uniform coupling weights are required).
    """

    label: str
    reservoir: ReservoirSpec
    amp0: complex

    def __post_init__(self):
        if not self.reservoir.has_uniform_coupling:
            raise ValueError(
                f"subsystem {self.label!r}: coupling weights must all be 1"
            )
        object.__setattr__(self, "amp0", complex(self.amp0))
        if abs(self.amp0) > 1.0 + 1e-9:
            raise ValueError(f"subsystem {self.label!r}: |amp0| exceeds 1")

    def survival(self, t):
        return survival_factor(t, self.reservoir)


@dataclass(frozen=True)
class DynamicalMap:
    """Element-wise single-qubit map parameterised by the survival factor."""

    g: complex

    def as_matrix(self) -> np.ndarray:
        """4x4 matrix of the map on the index pairs (ee, eg, ge, gg)."""
        g = complex(self.g)
        p = abs(g) ** 2
        return np.array(
            [
                [p, 0, 0, 0],
                [0, g, 0, 0],
                [0, 0, g.conjugate(), 0],
                [1.0 - p, 0, 0, 1],
            ],
            dtype=np.complex128,
        )

    def apply(self, rho):
        """Apply to a single-qubit state; trace is preserved exactly."""
        m = matrix_of(rho)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 state, got {m.shape}")
        out = _apply_slot(m.copy(), complex(self.g), n_qubits=1, slot=0)
        if isinstance(rho, DensityMatrix):
            return DensityMatrix(out, rho.basis)
        return out


def _apply_slot(m: np.ndarray, g: complex, n_qubits: int, slot: int) -> np.ndarray:
    """Apply the element-wise damping rule to one qubit index pair.

    ``m`` is modified and returned; axes are (row qubits..., col qubits...).
    """
    t = m.reshape((2,) * (2 * n_qubits))
    row = [slice(None)] * (2 * n_qubits)
    ee = list(row)
    eg = list(row)
    ge = list(row)
    gg = list(row)
    ee[slot] = 0; ee[slot + n_qubits] = 0
    eg[slot] = 0; eg[slot + n_qubits] = 1
    ge[slot] = 1; ge[slot + n_qubits] = 0
    gg[slot] = 1; gg[slot + n_qubits] = 1
    ee, eg, ge, gg = tuple(ee), tuple(eg), tuple(ge), tuple(gg)
    p = abs(g) ** 2
    t[gg] += (1.0 - p) * t[ee]
    t[ee] *= p
    t[eg] *= g
    t[ge] *= g.conjugate()
    return m


def single_qubit_state(t, c0: complex, cj0: complex, spec: ReservoirSpec) -> DensityMatrix:
    """Reduced state of the surviving qubit at time ``t``.

    ``c0`` and ``cj0`` are the ground/excited amplitudes of the qubit's
    initial pure state (``|c0|^2 + |cj0|^2 = 1``).
    """
    c0 = complex(c0)
    cj0 = complex(cj0)
    norm = abs(c0) ** 2 + abs(cj0) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"|c0|^2 + |cj0|^2 must be 1 (got {norm})")
    g = survival_factor(t, spec)
    p = abs(g) ** 2 * abs(cj0) ** 2
    off = c0.conjugate() * g * cj0
    m = np.array([[p, off], [off.conjugate(), 1.0 - p]], dtype=np.complex128)
    return DensityMatrix(m, BASIS_ONE)


def coherence_l1(rho) -> float:
    """Sum of moduli of the off-diagonal elements."""
    m = matrix_of(rho)
    return float(np.abs(m).sum() - np.abs(np.diag(m)).sum())


def coherence_asymptote(n_qubits, c0: complex, cj0: complex) -> float:
    """Long-time coherence ``2 |c0 cj0| (N - 1)/N``; N may be ``math.inf``."""
    factor = 1.0 if math.isinf(n_qubits) else (n_qubits - 1.0) / n_qubits
    return 2.0 * abs(complex(c0) * complex(cj0)) * factor


def chi_map(t, sub: SubsystemSpec) -> DynamicalMap:
    """Dynamical map of one subsystem's active qubit at time ``t``."""
    return DynamicalMap(g=complex(sub.survival(t)))


def _evolve(rho0, t, subs) -> DensityMatrix:
    m = matrix_of(rho0).copy()
    n = len(subs)
    if m.shape != (2**n, 2**n):
        raise ValueError(f"expected a {2**n}x{2**n} state for {n} subsystems")
    for slot, sub in enumerate(subs):
        m = _apply_slot(m, complex(sub.survival(t)), n_qubits=n, slot=slot)
    basis = rho0.basis if isinstance(rho0, DensityMatrix) else (BASIS_ONE, BASIS_TWO, BASIS_THREE)[n - 1]
    return DensityMatrix(m, basis)


def two_qubit_evolve(rho0, t, sub_a: SubsystemSpec, sub_b: SubsystemSpec) -> DensityMatrix:
    """Product-map evolution of a two-qubit state."""
    return _evolve(rho0, t, (sub_a, sub_b))


def three_qubit_evolve(
    rho0, t, sub_a: SubsystemSpec, sub_b: SubsystemSpec, sub_c: SubsystemSpec
) -> DensityMatrix:
    """Product-map evolution of a three-qubit state."""
    return _evolve(rho0, t, (sub_a, sub_b, sub_c))


def epr_state(sub_a: SubsystemSpec, sub_b: SubsystemSpec) -> DensityMatrix:
    """Initial two-qubit state ``a|eg> + b|ge>`` from the subsystem amplitudes."""
    a, b = sub_a.amp0, sub_b.amp0
    _check_excitation_norm((a, b))
    psi = np.array([0.0, a, b, 0.0], dtype=np.complex128)
    return DensityMatrix(np.outer(psi, psi.conj()), BASIS_TWO)


def two_qubit_closed_form(t, sub_a: SubsystemSpec, sub_b: SubsystemSpec) -> DensityMatrix:
    """Evolved two-qubit state written directly from the survival factors."""
    a, b = sub_a.amp0, sub_b.amp0
    _check_excitation_norm((a, b))
    ga = complex(sub_a.survival(t))
    gb = complex(sub_b.survival(t))
    m = np.zeros((4, 4), dtype=np.complex128)
    m[1, 1] = abs(ga) ** 2 * abs(a) ** 2
    m[2, 2] = abs(gb) ** 2 * abs(b) ** 2
    m[3, 3] = 1.0 - m[1, 1].real - m[2, 2].real
    m[1, 2] = ga * gb.conjugate() * a * b.conjugate()
    m[2, 1] = m[1, 2].conjugate()
    return DensityMatrix(m, BASIS_TWO)


def w_state(sub_a: SubsystemSpec, sub_b: SubsystemSpec, sub_c: SubsystemSpec) -> DensityMatrix:
    """Initial three-qubit state ``a|egg> + b|geg> + c|gge>``."""
    a, b, c = sub_a.amp0, sub_b.amp0, sub_c.amp0
    _check_excitation_norm((a, b, c))
    psi = np.zeros(8, dtype=np.complex128)
    psi[BASIS_THREE.index("egg")] = a
    psi[BASIS_THREE.index("geg")] = b
    psi[BASIS_THREE.index("gge")] = c
    return DensityMatrix(np.outer(psi, psi.conj()), BASIS_THREE)


def three_qubit_closed_form(
    t, sub_a: SubsystemSpec, sub_b: SubsystemSpec, sub_c: SubsystemSpec
) -> DensityMatrix:
    """Evolved three-qubit state written directly from the survival factors."""
    a, b, c = sub_a.amp0, sub_b.amp0, sub_c.amp0
    _check_excitation_norm((a, b, c))
    ga = complex(sub_a.survival(t))
    gb = complex(sub_b.survival(t))
    gc = complex(sub_c.survival(t))
    i_a = BASIS_THREE.index("egg")
    i_b = BASIS_THREE.index("geg")
    i_c = BASIS_THREE.index("gge")
    i_g = BASIS_THREE.index("ggg")
    m = np.zeros((8, 8), dtype=np.complex128)
    m[i_a, i_a] = abs(ga) ** 2 * abs(a) ** 2
    m[i_b, i_b] = abs(gb) ** 2 * abs(b) ** 2
    m[i_c, i_c] = abs(gc) ** 2 * abs(c) ** 2
    m[i_g, i_g] = 1.0 - m[i_a, i_a].real - m[i_b, i_b].real - m[i_c, i_c].real
    m[i_a, i_b] = ga * gb.conjugate() * a * b.conjugate()
    m[i_a, i_c] = ga * gc.conjugate() * a * c.conjugate()
    m[i_b, i_c] = gb * gc.conjugate() * b * c.conjugate()
    m[i_b, i_a] = m[i_a, i_b].conjugate()
    m[i_c, i_a] = m[i_a, i_c].conjugate()
    m[i_c, i_b] = m[i_b, i_c].conjugate()
    return DensityMatrix(m, BASIS_THREE)


def partial_trace(rho: DensityMatrix, drop: int) -> DensityMatrix:
    """Trace out one qubit of a multi-qubit `DensityMatrix`."""
    n = rho.n_qubits
    if not 0 <= drop < n:
        raise ValueError(f"drop index {drop} out of range for {n} qubits")
    t = rho.matrix.reshape((2,) * (2 * n))
    t = np.trace(t, axis1=drop, axis2=drop + n)
    dim = 2 ** (n - 1)
    # labels of the reduced basis follow the kept qubits in order
    basis = tuple("".join(p) for p in product("eg", repeat=n - 1))
    return DensityMatrix(t.reshape(dim, dim), basis)


def _check_excitation_norm(amps) -> None:
    norm = sum(abs(complex(a)) ** 2 for a in amps)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(
            f"initial excited amplitudes must satisfy sum |amp|^2 = 1 (got {norm})"
        )

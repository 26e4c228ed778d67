"""Entanglement measures: pairwise concurrence and the three-qubit lower
bound of concurrence (LBC), each in a generic eigenvalue form and in the
closed form valid for the single-excitation states produced by `dynamics`.

The generic forms work on arbitrary density matrices and serve as oracles
for the closed forms (and vice versa).  Spin-flip spectra are computed with
the hand-rolled solvers in `smallmat`.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache

import numpy as np

from . import smallmat
from .dynamics import SubsystemSpec, matrix_of

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)

#: eigenvalues of spin-flip products below this fraction of the product's
#: Frobenius norm are treated as exact zeros.  Keeps solver noise (observed
#: <= 3e-16 of scale) from leaking sqrt(noise) into the measures while
#: preserving genuine eigenvalues (observed >= 2e-7 of scale); the gap
#: between the two populations spans nine decades.
SPECTRUM_CLAMP = 1e-11

#: real parts below this floor signal an unphysical input state
NEGATIVE_FLOOR = -1e-9


class Bipartition(enum.Enum):
    """The three cyclic two-versus-one splits of qubits (0, 1, 2)."""

    AB_C = (0, 1, 2)
    BC_A = (1, 2, 0)
    CA_B = (2, 0, 1)


@lru_cache(maxsize=1)
def so4_generators() -> tuple[np.ndarray, ...]:
    """Six Hermitian generators of rotations on a 4-dimensional space.

    Generator for index pair (j, k), j < k, has -i at (j, k) and +i at
    (k, j); each is Hermitian with spectrum {+1, -1, 0, 0}.  This
    normalisation makes the generic LBC reproduce the closed form exactly
    (checked at t = 0 against the pure-state value).
    """
    gens = []
    for j in range(4):
        for k in range(j + 1, 4):
            g = np.zeros((4, 4), dtype=np.complex128)
            g[j, k] = -1.0j
            g[k, j] = 1.0j
            g.setflags(write=False)
            gens.append(g)
    return tuple(gens)


def _sqrt_spectrum(m: np.ndarray) -> np.ndarray:
    """Descending square roots of the eigenvalues of a spin-flip product.

    The spectrum of ``rho M rho* M`` is real and non-negative for physical
    input; tiny imaginary parts and negatives are asserted small, then
    clamped together with magnitudes below ``SPECTRUM_CLAMP`` of the
    product's scale before the square root.
    """
    ev = smallmat.eigenvalues_general(m)
    if float(np.abs(ev.imag).max()) > 1e-9:
        raise ValueError("spin-flip spectrum has non-negligible imaginary part; "
                         "input state is not a valid density matrix")
    re = ev.real.copy()
    if float(re.min()) < NEGATIVE_FLOOR:
        raise ValueError(f"spin-flip spectrum has eigenvalue {re.min():.3e} < {NEGATIVE_FLOOR}")
    scale = float(np.linalg.norm(m))
    re[re < SPECTRUM_CLAMP * scale] = 0.0
    return np.sqrt(np.sort(re)[::-1])


def concurrence_wootters(rho) -> float:
    """Two-qubit concurrence from the spin-flip spectrum.

    Eigenvalues of ``rho (sy x sy) rho* (sy x sy)`` in decreasing order give
    ``max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))``.
    """
    m = matrix_of(rho)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit state, got {m.shape}")
    flip = smallmat.kron(SIGMA_Y, SIGMA_Y)
    s = _sqrt_spectrum(m @ flip @ m.conj() @ flip)
    return max(0.0, float(s[0] - s[1:].sum()))


def concurrence_epr(t, sub_a: SubsystemSpec, sub_b: SubsystemSpec) -> float:
    """Closed-form concurrence of the evolved single-excitation pair state:
    ``2 |G_A G_B| |amp_A amp_B|``."""
    _check_norm((sub_a.amp0, sub_b.amp0))
    ga = complex(sub_a.survival(t))
    gb = complex(sub_b.survival(t))
    return 2.0 * abs(ga * gb) * abs(sub_a.amp0 * sub_b.amp0)


def concurrence_asymptote(n_a, n_b, amp_a: complex, amp_b: complex) -> float:
    """Long-time concurrence ``2 f(N_A) f(N_B) |amp_A amp_B|`` with
    ``f(n) = (n-1)/n`` and ``f(inf) = 1``."""
    return 2.0 * _share(n_a) * _share(n_b) * abs(complex(amp_a) * complex(amp_b))


def lbc_generic(rho) -> float:
    """Lower bound of concurrence for an arbitrary three-qubit state.

    For each of the three bipartitions, the state is permuted so the paired
    qubits occupy the first two slots, then for each of the six generators
    ``L`` the spin-flip spectrum of ``rho (L x sy) rho* (L x sy)`` yields
    ``C_r = max(0, sqrt(l1) - sum_{t>1} sqrt(l_t))``; the result is
    ``sqrt(sum C_r^2 / 3)``.
    """
    m = matrix_of(rho)
    if m.shape != (8, 8):
        raise ValueError(f"expected an 8x8 three-qubit state, got {m.shape}")
    total = 0.0
    for part in Bipartition:
        perm = part.value
        axes = perm + tuple(p + 3 for p in perm)
        mp = np.ascontiguousarray(m.reshape((2,) * 6).transpose(axes).reshape(8, 8))
        for gen in so4_generators():
            flip = smallmat.kron(gen, SIGMA_Y)
            s = _sqrt_spectrum(mp @ flip @ mp.conj() @ flip)
            c = max(0.0, float(s[0] - s[1:].sum()))
            total += c * c
    return math.sqrt(total / 3.0)


def lbc_w(t, sub_a: SubsystemSpec, sub_b: SubsystemSpec, sub_c: SubsystemSpec) -> float:
    """Closed-form LBC of the evolved single-excitation triple state."""
    _check_norm((sub_a.amp0, sub_b.amp0, sub_c.amp0))
    ga = complex(sub_a.survival(t))
    gb = complex(sub_b.survival(t))
    gc = complex(sub_c.survival(t))
    return _lbc_from_products(
        abs(ga * gb) * abs(sub_a.amp0 * sub_b.amp0),
        abs(ga * gc) * abs(sub_a.amp0 * sub_c.amp0),
        abs(gb * gc) * abs(sub_b.amp0 * sub_c.amp0),
    )


def lbc_asymptote(n_a, n_b, n_c, amp_a: complex, amp_b: complex, amp_c: complex) -> float:
    """Long-time LBC with the ``(n-1)/n`` share per subsystem (inf -> 1)."""
    fa, fb, fc = _share(n_a), _share(n_b), _share(n_c)
    amp_a, amp_b, amp_c = complex(amp_a), complex(amp_b), complex(amp_c)
    return _lbc_from_products(
        fa * fb * abs(amp_a * amp_b),
        fa * fc * abs(amp_a * amp_c),
        fb * fc * abs(amp_b * amp_c),
    )


def _lbc_from_products(pab: float, pac: float, pbc: float) -> float:
    return math.sqrt(8.0 / 3.0) * math.sqrt(pab**2 + pac**2 + pbc**2)


def _share(n) -> float:
    """Protected share ``(n-1)/n`` of a reservoir with n qubits; inf -> 1."""
    if isinstance(n, float) and math.isinf(n):
        return 1.0
    if n < 1:
        raise ValueError(f"qubit count must be >= 1 or inf (got {n})")
    return (n - 1.0) / float(n)


def _check_norm(amps) -> None:
    norm = sum(abs(complex(a)) ** 2 for a in amps)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(
            f"initial excited amplitudes must satisfy sum |amp|^2 = 1 (got {norm})"
        )

"""Dense complex linear algebra for tiny fixed-size matrices.

Eigenvalue solvers are hand-rolled (see ``_kernels``): the dimensions here
never exceed 8 and an auditable implementation beats a general-purpose one.
Array plumbing (products, adjoints, kron) is plain numpy.
"""

from __future__ import annotations

import numpy as np

from ._kernels import eig_general as _eig_general
from ._kernels import eig_hermitian as _eig_hermitian

#: hard cap for eigenvalue problems (density matrices are at most 8x8)
MAX_EIG_DIM = 8
#: hard cap for Kronecker products (scratch space for map constructions)
MAX_KRON_DIM = 64


def as_square(m, max_dim: int = MAX_EIG_DIM) -> np.ndarray:
    """Validate and return ``m`` as a square complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[0] > max_dim:
        raise ValueError(f"dimension {a.shape[0]} outside supported range 1..{max_dim}")
    return a


def eigenvalues_general(m) -> np.ndarray:
    """Eigenvalues of a (generally non-Hermitian) small complex matrix.

    Sorted by descending real part, ties broken by descending magnitude;
    the tie-breaking keeps 'take the largest' selections deterministic
    under degeneracy.
    """
    a = as_square(m)
    ev = _eig_general(a)
    order = np.lexsort((-np.abs(ev), -ev.real))
    return ev[order]


def eigenvalues_hermitian(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, descending.

    Rejects input whose anti-Hermitian part exceeds ``1e-10`` of its
    Frobenius norm.
    """
    a = as_square(m)
    scale = float(np.linalg.norm(a))
    if float(np.linalg.norm(a - a.conj().T)) > 1e-10 * max(scale, 1e-300):
        raise ValueError("matrix is not Hermitian within 1e-10 of its norm")
    return _eig_hermitian(a)


def kron(a, b) -> np.ndarray:
    """Kronecker product with the left factor as the most significant index."""
    am = as_square(a, MAX_KRON_DIM)
    bm = as_square(b, MAX_KRON_DIM)
    dim = am.shape[0] * bm.shape[0]
    if dim > MAX_KRON_DIM:
        raise ValueError(f"product dimension {dim} exceeds limit {MAX_KRON_DIM}")
    return np.kron(am, bm)

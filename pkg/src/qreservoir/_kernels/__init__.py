"""Numerical hot kernels with a compiled core and a pure-Python fallback.

The compiled Cython extension (``qreservoir._kernels._core``) and the
pure-Python module (``qreservoir._kernels.pure``) implement the same three
functions with identical semantics:

``decay_envelope(t, gamma0, lam, delta, beta_sq_sum)``
    Overflow-safe evaluation of the collective decay envelope over a time
    grid; returns the pair of building blocks used by every closed form.
``eig_general(a)``
    Eigenvalues of a small dense complex matrix (balance, Householder
    Hessenberg reduction, shifted QR), unordered.
``eig_hermitian(a)``
    Real eigenvalues of a small complex Hermitian matrix (cyclic complex
    Jacobi), sorted in descending order.

The compiled core is preferred when importable.  Set the environment
variable ``QRESERVOIR_PURE_PYTHON=1`` to force the pure-Python fallback
(useful for auditing and for the benchmark in ``benchmarks/``).
"""

import os

if os.environ.get("QRESERVOIR_PURE_PYTHON"):
    from . import pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import pure as _impl

        BACKEND = "pure"

decay_envelope = _impl.decay_envelope
eig_general = _impl.eig_general
eig_hermitian = _impl.eig_hermitian

__all__ = ["BACKEND", "decay_envelope", "eig_general", "eig_hermitian"]

"""Pure-Python reference implementations of the numerical kernels.

These mirror the compiled extension line for line and exist both as the
import-time fallback and as the auditable reference the compiled core is
tested against.  Scalar loops are intentional; do not vectorise.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

# |D*t| below which the envelope switches to its power series.  The split
# keeps both branches far from their failure modes: the series truncation
# error at the threshold is ~(x/2)^6/5040 ~ 3e-18, while the combined
# exponential branch loses at most ~1/(|D| t) * eps ~ 2e-14 to cancellation.
SERIES_THRESHOLD = 1e-2

_EPS = 2.220446049250313e-16


def characteristic_root(gamma0: float, lam: float, delta: float, beta_sq_sum: float) -> complex:
    """Principal square root splitting the two collective decay rates."""
    # 0.0 - delta keeps the imaginary part at +0.0 for delta == 0, pinning
    # the sqrt branch consistently across backends.
    kr = complex(lam, 0.0 - delta)
    return cmath.sqrt(kr * kr - 2.0 * gamma0 * lam * beta_sq_sum)


def _envelope_point(t: float, kr: complex, d: complex) -> tuple[complex, complex]:
    x = d * t
    if abs(x) < SERIES_THRESHOLD:
        e0 = cmath.exp(-kr * t / 2.0)
        xh = x / 2.0
        x2 = xh * xh
        ec = e0 * cmath.cosh(xh)
        fs = e0 * (t / 2.0) * (1.0 + x2 / 6.0 + x2 * x2 / 120.0)
    else:
        # cosh/sinh folded into single exponentials so nothing exceeds
        # exp(Re(d - kr) t / 2) <= 1 for physical parameters.
        ep = cmath.exp((d - kr) * t / 2.0)
        em = cmath.exp(-(d + kr) * t / 2.0)
        ec = 0.5 * (ep + em)
        fs = (ep - em) / (2.0 * d)
    return ec, fs


def decay_envelope(t, gamma0, lam, delta, beta_sq_sum):
    """Evaluate the collective decay envelope blocks on a time grid.

    Returns arrays ``(ec, fs)`` with ``ec = exp(-K t/2) cosh(R t/2)`` and
    ``fs = exp(-K t/2) sinh(R t/2) / R`` where ``K = lam - i delta`` and
    ``R`` is the principal characteristic root.  Every closed form of the
    model (amplitudes, survival factor, decay rate) is assembled from the
    pair, so the overflow and small-root handling lives here only.
    """
    t = np.ascontiguousarray(t, dtype=np.float64).reshape(-1)
    kr = complex(lam, 0.0 - delta)
    d = characteristic_root(gamma0, lam, delta, beta_sq_sum)
    ec = np.empty(t.size, dtype=np.complex128)
    fs = np.empty(t.size, dtype=np.complex128)
    for i in range(t.size):
        ec[i], fs[i] = _envelope_point(float(t[i]), kr, d)
    return ec, fs


# ---------------------------------------------------------------------------
# eigenvalues of small dense complex matrices


def _quad_eig(a: complex, b: complex, c: complex, d: complex) -> tuple[complex, complex]:
    tr = a + d
    disc = cmath.sqrt((a - d) * (a - d) + 4.0 * b * c)
    return 0.5 * (tr + disc), 0.5 * (tr - disc)


def _balance(a: np.ndarray) -> np.ndarray:
    """Osborne balancing with power-of-two scale factors (similarity only)."""
    a = a.copy()
    n = a.shape[0]
    for _ in range(10):
        done = True
        for i in range(n):
            r = sum(abs(a[i, j]) for j in range(n) if j != i)
            c = sum(abs(a[j, i]) for j in range(n) if j != i)
            if r == 0.0 or c == 0.0:
                continue
            f = 1.0
            s = c + r
            while c < r / 2.0:
                c *= 2.0
                r /= 2.0
                f *= 2.0
            while c >= r * 2.0:
                c /= 2.0
                r *= 2.0
                f /= 2.0
            if c + r < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f
        if done:
            break
    return a


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form (in a copy)."""
    a = a.copy()
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        nx = math.sqrt(float((np.abs(x) ** 2).sum()))
        if nx == 0.0:
            continue
        if x[0] != 0.0:
            alpha = -cmath.exp(1j * cmath.phase(complex(x[0]))) * nx
        else:
            alpha = complex(-nx)
        v = x
        v[0] -= alpha
        nv = math.sqrt(float((np.abs(v) ** 2).sum()))
        if nv < 1e-300:
            continue
        v /= nv
        a[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ a[k + 1:, k:])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, v.conj())
        a[k + 2:, k] = 0.0
    return a


def eig_general(a) -> np.ndarray:
    """Eigenvalues of a small dense complex matrix, unordered.

    Balance, reduce to Hessenberg form, then run a Wilkinson-shifted QR
    iteration with deflation of 1x1 and 2x2 trailing blocks.  Raises
    ``ArithmeticError`` if the iteration budget is exhausted.
    """
    a = np.array(a, dtype=np.complex128, order="C")
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy()
    h = _hessenberg(_balance(a))
    eig: list[complex] = []
    hi = n - 1
    iters = 0
    while hi >= 0:
        if hi == 0:
            eig.append(complex(h[0, 0]))
            break
        # scan for the start of the trailing irreducible block
        l = hi
        while l > 0:
            s = abs(h[l - 1, l - 1]) + abs(h[l, l])
            if s == 0.0:
                s = 1.0
            if abs(h[l, l - 1]) <= _EPS * s:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            eig.append(complex(h[hi, hi]))
            hi -= 1
            iters = 0
            continue
        if l == hi - 1:
            e1, e2 = _quad_eig(
                complex(h[hi - 1, hi - 1]),
                complex(h[hi - 1, hi]),
                complex(h[hi, hi - 1]),
                complex(h[hi, hi]),
            )
            eig.append(e1)
            eig.append(e2)
            hi -= 2
            iters = 0
            continue
        iters += 1
        if iters > 40 * n:
            raise ArithmeticError(
                f"QR eigenvalue iteration did not converge within {40 * n} sweeps"
            )
        if iters % 12 == 0:
            # deterministic exceptional shift to break rare cycling
            mu = complex(h[hi, hi]) + abs(h[hi, hi - 1]) * (0.75 + 0.25j)
        else:
            e1, e2 = _quad_eig(
                complex(h[hi - 1, hi - 1]),
                complex(h[hi - 1, hi]),
                complex(h[hi, hi - 1]),
                complex(h[hi, hi]),
            )
            hv = complex(h[hi, hi])
            mu = e1 if abs(e1 - hv) <= abs(e2 - hv) else e2
        # explicit shifted QR sweep on the window [l, hi] via Givens rotations
        rot: list[tuple[complex, complex]] = []
        for i in range(l, hi + 1):
            h[i, i] -= mu
        for k in range(l, hi):
            aa = complex(h[k, k])
            bb = complex(h[k + 1, k])
            r = math.hypot(abs(aa), abs(bb))
            if r == 0.0:
                c, s = complex(1.0), complex(0.0)
            else:
                c, s = aa / r, bb / r
            rot.append((c, s))
            for j in range(k, hi + 1):
                t1, t2 = complex(h[k, j]), complex(h[k + 1, j])
                h[k, j] = c.conjugate() * t1 + s.conjugate() * t2
                h[k + 1, j] = -s * t1 + c * t2
        for k in range(l, hi):
            c, s = rot[k - l]
            for i in range(l, min(k + 2, hi) + 1):
                t1, t2 = complex(h[i, k]), complex(h[i, k + 1])
                h[i, k] = c * t1 + s * t2
                h[i, k + 1] = -s.conjugate() * t1 + c.conjugate() * t2
        for i in range(l, hi + 1):
            h[i, i] += mu
    return np.array(eig, dtype=np.complex128)


def eig_hermitian(a) -> np.ndarray:
    """Real eigenvalues of a complex Hermitian matrix, descending.

    Cyclic complex Jacobi: each pivot is first dephased so the 2x2 block is
    real symmetric, then annihilated with a classical Jacobi rotation.
    """
    a = np.array(a, dtype=np.complex128, order="C")
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    scale = math.sqrt(float((np.abs(a) ** 2).sum()))
    for _ in range(60):
        off = math.sqrt(
            sum(abs(a[p, q]) ** 2 for p in range(n) for q in range(n) if p != q)
        )
        if off <= 1e-15 * max(scale, 1e-300):
            break
        for p in range(n):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                if abs(apq) < 1e-300:
                    continue
                phase = apq / abs(apq)
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * abs(apq))
                tsign = 1.0 if tau >= 0.0 else -1.0
                tt = tsign / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, tt)
                s = tt * c
                up_p = c * phase
                up_q = s * phase
                uq_p = complex(-s)
                uq_q = complex(c)
                for i in range(n):
                    t1, t2 = complex(a[i, p]), complex(a[i, q])
                    a[i, p] = t1 * up_p + t2 * uq_p
                    a[i, q] = t1 * up_q + t2 * uq_q
                for j in range(n):
                    t1, t2 = complex(a[p, j]), complex(a[q, j])
                    a[p, j] = up_p.conjugate() * t1 + uq_p.conjugate() * t2
                    a[q, j] = up_q.conjugate() * t1 + uq_q.conjugate() * t2
    else:
        raise ArithmeticError("Jacobi iteration did not converge within 60 sweeps")
    return np.sort(np.diag(a).real)[::-1].copy()

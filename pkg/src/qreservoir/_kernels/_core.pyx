# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Semantics match ``qreservoir._kernels.pure`` exactly; see that module for
the algorithm notes.  Matrices are limited to dimension 64.
"""

import numpy as np

from libc.math cimport cos, cosh, exp, hypot, sin, sinh, sqrt

ctypedef double complex dcomplex

cdef double SERIES_THRESHOLD = 1e-2
cdef double EPS = 2.220446049250313e-16
cdef int MAXN = 64


cdef inline double _cabs(dcomplex z) nogil:
    return hypot(z.real, z.imag)


cdef inline dcomplex _cexp(dcomplex z) nogil:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * (m * sin(z.imag))


cdef inline dcomplex _csqrt(dcomplex z) nogil:
    # principal branch: non-negative real part
    cdef double re = z.real
    cdef double im = z.imag
    cdef double r = hypot(re, im)
    cdef double a, b
    if r == 0.0:
        return 0.0
    if re >= 0.0:
        a = sqrt(0.5 * (r + re))
        b = im / (2.0 * a)
    else:
        b = sqrt(0.5 * (r - re))
        if im < 0.0:
            b = -b
        a = im / (2.0 * b)
    return a + 1j * b


cdef inline dcomplex _ccosh(dcomplex z) nogil:
    return (cosh(z.real) * cos(z.imag)) + 1j * (sinh(z.real) * sin(z.imag))


def decay_envelope(t, double gamma0, double lam, double delta, double beta_sq_sum):
    """Collective decay envelope blocks (ec, fs) on a 1-d time grid."""
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64).reshape(-1)
    cdef Py_ssize_t n = tv.shape[0]
    ec_arr = np.empty(n, dtype=np.complex128)
    fs_arr = np.empty(n, dtype=np.complex128)
    cdef dcomplex[::1] ec = ec_arr
    cdef dcomplex[::1] fs = fs_arr
    cdef dcomplex kr = lam + 1j * (0.0 - delta)
    cdef dcomplex d = _csqrt(kr * kr - 2.0 * gamma0 * lam * beta_sq_sum)
    cdef dcomplex x, xh, x2, e0, ep, em
    cdef double ti
    cdef Py_ssize_t i
    for i in range(n):
        ti = tv[i]
        x = d * ti
        if _cabs(x) < SERIES_THRESHOLD:
            e0 = _cexp(-kr * ti / 2.0)
            xh = x / 2.0
            x2 = xh * xh
            ec[i] = e0 * _ccosh(xh)
            fs[i] = e0 * (ti / 2.0) * (1.0 + x2 / 6.0 + x2 * x2 / 120.0)
        else:
            ep = _cexp((d - kr) * ti / 2.0)
            em = _cexp(-(d + kr) * ti / 2.0)
            ec[i] = 0.5 * (ep + em)
            fs[i] = (ep - em) / (2.0 * d)
    return ec_arr, fs_arr


# ---------------------------------------------------------------------------
# eigenvalues of small dense complex matrices


cdef inline void _quad_eig(dcomplex a, dcomplex b, dcomplex c, dcomplex d,
                           dcomplex *e1, dcomplex *e2) nogil:
    cdef dcomplex tr = a + d
    cdef dcomplex disc = _csqrt((a - d) * (a - d) + 4.0 * b * c)
    e1[0] = 0.5 * (tr + disc)
    e2[0] = 0.5 * (tr - disc)


cdef void _balance(dcomplex[:, ::1] a, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j, sweep
    cdef double r, c, f, s
    cdef bint done
    for sweep in range(10):
        done = True
        for i in range(n):
            r = 0.0
            c = 0.0
            for j in range(n):
                if j != i:
                    r += _cabs(a[i, j])
                    c += _cabs(a[j, i])
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
                for j in range(n):
                    a[i, j] /= f
                    a[j, i] *= f
        if done:
            break


cdef void _hessenberg(dcomplex[:, ::1] a, Py_ssize_t n) nogil:
    cdef dcomplex v[64]
    cdef Py_ssize_t k, i, j, m
    cdef double nx, nv
    cdef dcomplex x0, alpha, w
    for k in range(n - 2):
        m = n - k - 1
        nx = 0.0
        for i in range(m):
            nx += _cabs(a[k + 1 + i, k]) ** 2
        nx = sqrt(nx)
        if nx == 0.0:
            continue
        x0 = a[k + 1, k]
        if x0 != 0.0:
            alpha = -(x0 / _cabs(x0)) * nx
        else:
            alpha = -nx + 0j
        for i in range(m):
            v[i] = a[k + 1 + i, k]
        v[0] = v[0] - alpha
        nv = 0.0
        for i in range(m):
            nv += _cabs(v[i]) ** 2
        nv = sqrt(nv)
        if nv < 1e-300:
            continue
        for i in range(m):
            v[i] = v[i] / nv
        for j in range(k, n):
            w = 0.0
            for i in range(m):
                w += v[i].conjugate() * a[k + 1 + i, j]
            for i in range(m):
                a[k + 1 + i, j] = a[k + 1 + i, j] - 2.0 * v[i] * w
        for i in range(n):
            w = 0.0
            for j in range(m):
                w += a[i, k + 1 + j] * v[j]
            for j in range(m):
                a[i, k + 1 + j] = a[i, k + 1 + j] - 2.0 * w * v[j].conjugate()
        for i in range(k + 2, n):
            a[i, k] = 0.0


def eig_general(a):
    """Eigenvalues of a small dense complex matrix, unordered."""
    am = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = am.shape[0]
    if n > MAXN:
        raise ValueError(f"matrix dimension {n} exceeds kernel limit {MAXN}")
    out = np.empty(n, dtype=np.complex128)
    cdef dcomplex[::1] eig = out
    if n == 1:
        out[0] = am[0, 0]
        return out
    cdef dcomplex[:, ::1] h = am
    _balance(h, n)
    _hessenberg(h, n)

    cdef dcomplex crot[64]
    cdef dcomplex srot[64]
    cdef Py_ssize_t hi = n - 1
    cdef Py_ssize_t nout = 0
    cdef Py_ssize_t l, i, j, k
    cdef int iters = 0
    cdef double s, r
    cdef dcomplex e1, e2, mu, aa, bb, c, sr, t1, t2
    while hi >= 0:
        if hi == 0:
            eig[nout] = h[0, 0]
            nout += 1
            break
        l = hi
        while l > 0:
            s = _cabs(h[l - 1, l - 1]) + _cabs(h[l, l])
            if s == 0.0:
                s = 1.0
            if _cabs(h[l, l - 1]) <= EPS * s:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            eig[nout] = h[hi, hi]
            nout += 1
            hi -= 1
            iters = 0
            continue
        if l == hi - 1:
            _quad_eig(h[hi - 1, hi - 1], h[hi - 1, hi],
                      h[hi, hi - 1], h[hi, hi], &e1, &e2)
            eig[nout] = e1
            eig[nout + 1] = e2
            nout += 2
            hi -= 2
            iters = 0
            continue
        iters += 1
        if iters > 40 * n:
            raise ArithmeticError(
                f"QR eigenvalue iteration did not converge within {40 * n} sweeps"
            )
        if iters % 12 == 0:
            mu = h[hi, hi] + _cabs(h[hi, hi - 1]) * (0.75 + 0.25j)
        else:
            _quad_eig(h[hi - 1, hi - 1], h[hi - 1, hi],
                      h[hi, hi - 1], h[hi, hi], &e1, &e2)
            if _cabs(e1 - h[hi, hi]) <= _cabs(e2 - h[hi, hi]):
                mu = e1
            else:
                mu = e2
        for i in range(l, hi + 1):
            h[i, i] = h[i, i] - mu
        for k in range(l, hi):
            aa = h[k, k]
            bb = h[k + 1, k]
            r = hypot(_cabs(aa), _cabs(bb))
            if r == 0.0:
                c = 1.0
                sr = 0.0
            else:
                c = aa / r
                sr = bb / r
            crot[k - l] = c
            srot[k - l] = sr
            for j in range(k, hi + 1):
                t1 = h[k, j]
                t2 = h[k + 1, j]
                h[k, j] = c.conjugate() * t1 + sr.conjugate() * t2
                h[k + 1, j] = -sr * t1 + c * t2
        for k in range(l, hi):
            c = crot[k - l]
            sr = srot[k - l]
            j = k + 2
            if j > hi:
                j = hi
            for i in range(l, j + 1):
                t1 = h[i, k]
                t2 = h[i, k + 1]
                h[i, k] = c * t1 + sr * t2
                h[i, k + 1] = -sr.conjugate() * t1 + c.conjugate() * t2
        for i in range(l, hi + 1):
            h[i, i] = h[i, i] + mu
    return out


def eig_hermitian(a):
    """Real eigenvalues of a complex Hermitian matrix, descending."""
    am = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = am.shape[0]
    if n > MAXN:
        raise ValueError(f"matrix dimension {n} exceeds kernel limit {MAXN}")
    if n == 1:
        return np.array([am[0, 0].real])
    cdef dcomplex[:, ::1] m = am
    cdef Py_ssize_t p, q, i, j, sweep
    cdef double scale = 0.0, off, tau, tsign, tt, c, s, app, aqq
    cdef dcomplex apq, phase, up_p, up_q, uq_p, uq_q, t1, t2
    cdef bint converged = False
    for i in range(n):
        for j in range(n):
            scale += _cabs(m[i, j]) ** 2
    scale = sqrt(scale)
    if scale < 1e-300:
        scale = 1e-300
    for sweep in range(60):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += _cabs(m[i, j]) ** 2
        off = sqrt(off)
        if off <= 1e-15 * scale:
            converged = True
            break
        for p in range(n):
            for q in range(p + 1, n):
                apq = m[p, q]
                if _cabs(apq) < 1e-300:
                    continue
                phase = apq / _cabs(apq)
                app = m[p, p].real
                aqq = m[q, q].real
                tau = (aqq - app) / (2.0 * _cabs(apq))
                tsign = 1.0 if tau >= 0.0 else -1.0
                tt = tsign / ((tau if tau >= 0.0 else -tau) + hypot(1.0, tau))
                c = 1.0 / hypot(1.0, tt)
                s = tt * c
                up_p = c * phase
                up_q = s * phase
                uq_p = -s + 0j
                uq_q = c + 0j
                for i in range(n):
                    t1 = m[i, p]
                    t2 = m[i, q]
                    m[i, p] = t1 * up_p + t2 * uq_p
                    m[i, q] = t1 * up_q + t2 * uq_q
                for j in range(n):
                    t1 = m[p, j]
                    t2 = m[q, j]
                    m[p, j] = up_p.conjugate() * t1 + uq_p.conjugate() * t2
                    m[q, j] = up_q.conjugate() * t1 + uq_q.conjugate() * t2
    if not converged:
        raise ArithmeticError("Jacobi iteration did not converge within 60 sweeps")
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double key
    for i in range(n):
        ov[i] = m[i, i].real
    # insertion sort, descending
    for i in range(1, n):
        key = ov[i]
        j = i - 1
        while j >= 0 and ov[j] < key:
            ov[j + 1] = ov[j]
            j -= 1
        ov[j + 1] = key
    return out

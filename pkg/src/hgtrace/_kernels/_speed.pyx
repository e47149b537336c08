# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the _pure kernels. Same contracts, plain C loops."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def dlog_table(int p, int g):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dlog = np.full(p, -1, dtype=np.int64)
    cdef long x = 1
    cdef long k
    for k in range(p - 1):
        dlog[x] = k
        x = x * g % p
    return dlog


def legendre_affine_sweep(int p, cnp.ndarray[cnp.int64_t, ndim=1] qr):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.full(p, 1, dtype=np.int64)
    cdef long x, lam, fx, f
    for x in range(p):
        fx = x * (x - 1) % p
        for lam in range(p):
            f = fx * ((x - lam + p) % p) % p
            counts[lam] += 1 + qr[f]
    return counts


def bracket_table(int n, int e_a, int e_b, cnp.ndarray[cnp.int64_t, ndim=1] d1,
                  cnp.ndarray[cnp.int64_t, ndim=1] d2,
                  cnp.ndarray[cnp.complex128_t, ndim=1] zeta, int dlog_m1):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(n, dtype=np.complex128)
    cdef long e, t, idx, m = d1.shape[0]
    for e in range(n):
        for t in range(m):
            idx = ((e_a + e) * d1[t] - (e_b + e) * d2[t]) % n
            if idx < 0:
                idx += n
            out[e] = out[e] + zeta[idx]
        idx = ((e_b + e) * dlog_m1) % n
        out[e] = -zeta[idx] * out[e]
    return out


def chi_sweep(cnp.ndarray[cnp.complex128_t, ndim=1] w,
              cnp.ndarray[cnp.int64_t, ndim=1] dlogs, int n,
              cnp.ndarray[cnp.complex128_t, ndim=1] zeta):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(dlogs.shape[0], dtype=np.complex128)
    cdef long j, e, d
    cdef double complex acc
    for j in range(dlogs.shape[0]):
        acc = 0
        d = dlogs[j]
        for e in range(n):
            acc = acc + w[e] * zeta[(e * d) % n]
        out[j] = acc
    return out


def superelliptic_sweep(int p, int N, int a, int b, int c,
                        cnp.ndarray[cnp.int64_t, ndim=1] dlog):
    cdef long g0 = N, g1 = p - 1, tmp, e
    while g1:
        tmp = g0 % g1
        g0 = g1
        g1 = tmp
    e = g0
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(p, dtype=np.int64)
    cdef long x, lam, base, xl, d
    for x in range(2, p):
        base = a * dlog[x] + b * dlog[x - 1]
        for lam in range(p):
            xl = (x - lam + p) % p
            if xl == 0:
                continue
            d = (base + c * dlog[xl]) % e
            if d == 0:
                counts[lam] += e
    return counts


def genus2_count_fp(cnp.ndarray[cnp.int64_t, ndim=1] coeffs, int p,
                    cnp.ndarray[cnp.int64_t, ndim=1] qr):
    cdef long cnt = 0, x, v
    cdef long i, m = coeffs.shape[0]
    for x in range(p):
        v = 0
        for i in range(m):
            v = (v * x + coeffs[i]) % p
        cnt += 1 + qr[v]
    cdef long lead = coeffs[0] % p
    if lead != 0:
        cnt += 1 + qr[lead]
    else:
        cnt += 1
    return cnt


def genus2_count_fp2(cnp.ndarray[cnp.int64_t, ndim=1] co_re,
                     cnp.ndarray[cnp.int64_t, ndim=1] co_im, int p, int nu,
                     cnp.ndarray[cnp.int64_t, ndim=1] qr):
    cdef long cnt = 0, re, im, vr, vi, t, norm
    cdef long i, m = co_re.shape[0]
    for re in range(p):
        for im in range(p):
            vr = 0
            vi = 0
            for i in range(m):
                t = (vr * re + nu * vi % p * im + co_re[i]) % p
                vi = (vr * im + vi * re + co_im[i]) % p
                vr = t
            if vr == 0 and vi == 0:
                cnt += 1
            else:
                norm = (vr * vr - nu * vi % p * vi) % p
                if norm < 0:
                    norm += p
                cnt += 1 + qr[norm]
    cdef long lr = co_re[0] % p, li = co_im[0] % p
    if lr == 0 and li == 0:
        cnt += 1
    else:
        norm = (lr * lr - nu * li % p * li) % p
        if norm < 0:
            norm += p
        cnt += 1 + qr[norm]
    return cnt

"""Pure numpy implementations of the hot kernels.

Everything here is exact integer index arithmetic plus complex accumulation;
the compiled twin in _speed.pyx implements the same contracts loop-for-loop.
"""

import numpy as np


def dlog_table(p: int, g: int) -> np.ndarray:
    """Discrete logs base g: dlog[g^k mod p] = k, dlog[0] = -1."""
    dlog = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        dlog[x] = k
        x = x * g % p
    return dlog


def legendre_affine_sweep(p: int, qr: np.ndarray) -> np.ndarray:
    """Projective point counts of y^2 = x(x-1)(x-lam) for every lam in F_p.

    qr[v] must be the Legendre symbol of v (qr[0] = 0). Entries at lam = 0, 1
    are returned but meaningless (singular fibers).
    """
    counts = np.full(p, 1, dtype=np.int64)  # point at infinity
    lams = np.arange(p, dtype=np.int64)
    for x in range(p):
        f = x * (x - 1) % p * ((x - lams) % p) % p
        counts += 1 + qr[f]
    return counts


def bracket_table(n: int, e_a: int, e_b: int, d1: np.ndarray, d2: np.ndarray,
                  zeta: np.ndarray, dlog_m1: int) -> np.ndarray:
    """bracket(A*chi_e, B*chi_e) for e = 0..n-1.

    bracket(X, Y) = -Y(-1) * J(X, Ybar); the Jacobi sum runs over the t with
    t, 1-t both nonzero, whose dlogs are the paired arrays d1, d2.
    """
    e = np.arange(n, dtype=np.int64)
    out = np.zeros(n, dtype=np.complex128)
    for t in range(d1.shape[0]):
        out += zeta[((e_a + e) * d1[t] + (-(e_b + e)) * d2[t]) % n]
    sign = -zeta[((e_b + e) * dlog_m1) % n]
    return sign * out


def chi_sweep(w: np.ndarray, dlogs: np.ndarray, n: int, zeta: np.ndarray) -> np.ndarray:
    """values[j] = sum_e w[e] * zeta[(e * dlogs[j]) % n]."""
    e = np.arange(n, dtype=np.int64)
    out = np.empty(dlogs.shape[0], dtype=np.complex128)
    for j in range(dlogs.shape[0]):
        out[j] = np.dot(w, zeta[(e * dlogs[j]) % n])
    return out


def superelliptic_sweep(p: int, N: int, a: int, b: int, c: int,
                        dlog: np.ndarray) -> np.ndarray:
    """Affine counts over x with f(x) != 0 of y^N = x^a (x-1)^b (x-lam)^c, all lam.

    Zero fibers (x in {0, 1, lam}) are excluded here; the caller adds the
    normalization places.
    """
    e = np.gcd(N, p - 1)
    counts = np.zeros(p, dtype=np.int64)
    lams = np.arange(p, dtype=np.int64)
    for x in range(p):
        if x == 0 or x == 1:
            continue
        base = a * int(dlog[x]) + b * int(dlog[(x - 1) % p])
        xl = (x - lams) % p
        ok = xl != 0
        tot = np.zeros(p, dtype=np.int64)
        tot[ok] = (base + c * dlog[xl[ok]]) % e == 0
        counts += np.where(ok, tot * e, 0)
    return counts


def genus2_count_fp(coeffs: np.ndarray, p: int, qr: np.ndarray) -> int:
    """Points of y^2 = f(x) over F_p, deg f = 6, plus smooth-model infinity."""
    x = np.arange(p, dtype=np.int64)
    v = np.zeros(p, dtype=np.int64)
    for co in coeffs:
        v = (v * x + int(co)) % p
    cnt = int(np.sum(1 + qr[v]))
    lead = int(coeffs[0]) % p
    if lead != 0:
        cnt += 1 + int(qr[lead])
    else:
        cnt += 1  # degree dropped to 5: one place at infinity
    return cnt


def genus2_count_fp2(co_re: np.ndarray, co_im: np.ndarray, p: int, nu: int,
                     qr: np.ndarray) -> int:
    """Points of y^2 = f(x) over F_{p^2} = F_p(sqrt(nu)).

    Squareness in F_{p^2} is tested via the norm: z is a square iff
    N(z) = re^2 - nu*im^2 is a square in F_p (or z = 0).
    """
    re = np.arange(p, dtype=np.int64).repeat(p)
    im = np.tile(np.arange(p, dtype=np.int64), p)
    vr = np.zeros(p * p, dtype=np.int64)
    vi = np.zeros(p * p, dtype=np.int64)
    for cr, ci in zip(co_re, co_im):
        vr, vi = (vr * re + nu * vi * im + int(cr)) % p, (vr * im + vi * re + int(ci)) % p
    norm = (vr * vr - nu * vi * vi) % p
    cnt = int(np.sum(np.where((vr == 0) & (vi == 0), 1, 1 + qr[norm])))
    lr, li = int(co_re[0]) % p, int(co_im[0]) % p
    if lr == 0 and li == 0:
        cnt += 1
    else:
        lead_norm = (lr * lr - nu * li * li) % p
        cnt += 1 + int(qr[lead_norm])
    return cnt

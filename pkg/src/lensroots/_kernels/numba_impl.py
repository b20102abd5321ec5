"""Numba kernel backend: per-box scalar loops compiled with @njit.

Mirrors numpy_impl exactly (same outward-rounded interval semantics); the
box batch is split across threads with prange, each box writing only its
own output slot, so results are deterministic.
"""

import math

import numpy as np
from numba import njit, prange

NAME = "numba"

_NINF = -math.inf
_PINF = math.inf


@njit(cache=True, inline="always")
def _add_iv(alo, ahi, blo, bhi):
    return math.nextafter(alo + blo, _NINF), math.nextafter(ahi + bhi, _PINF)


@njit(cache=True, inline="always")
def _sub_iv(alo, ahi, blo, bhi):
    return math.nextafter(alo - bhi, _NINF), math.nextafter(ahi - blo, _PINF)


@njit(cache=True, inline="always")
def _mul_iv(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    lo = min(min(p1, p2), min(p3, p4))
    hi = max(max(p1, p2), max(p3, p4))
    return math.nextafter(lo, _NINF), math.nextafter(hi, _PINF)


@njit(cache=True, inline="always")
def _sq_iv(alo, ahi):
    lo = min(alo * alo, ahi * ahi)
    hi = max(alo * alo, ahi * ahi)
    if alo <= 0.0 <= ahi:
        lo = 0.0
    lo = math.nextafter(lo, _NINF)
    if lo < 0.0:
        lo = 0.0
    return lo, math.nextafter(hi, _PINF)


@njit(cache=True, inline="always")
def _smul_iv(s, alo, ahi):
    p1 = s * alo
    p2 = s * ahi
    return math.nextafter(min(p1, p2), _NINF), math.nextafter(max(p1, p2), _PINF)


@njit(cache=True, inline="always")
def _cmul(a0, a1, a2, a3, b0, b1, b2, b3):
    rr = _mul_iv(a0, a1, b0, b1)
    ii = _mul_iv(a2, a3, b2, b3)
    ri = _mul_iv(a0, a1, b2, b3)
    ir = _mul_iv(a2, a3, b0, b1)
    re = _sub_iv(rr[0], rr[1], ii[0], ii[1])
    im = _add_iv(ri[0], ri[1], ir[0], ir[1])
    return re[0], re[1], im[0], im[1]


@njit(cache=True)
def _enclose_one(nu, mu, cre, cim, xlo, xhi, ylo, yhi, zp, zbp):
    nmax = zp.shape[0] - 1
    mmax = zbp.shape[0] - 1
    zp[0, 0] = 1.0; zp[0, 1] = 1.0; zp[0, 2] = 0.0; zp[0, 3] = 0.0
    for k in range(1, nmax + 1):
        r0, r1, i0, i1 = _cmul(zp[k - 1, 0], zp[k - 1, 1], zp[k - 1, 2], zp[k - 1, 3],
                               xlo, xhi, ylo, yhi)
        zp[k, 0] = r0; zp[k, 1] = r1; zp[k, 2] = i0; zp[k, 3] = i1
    zbp[0, 0] = 1.0; zbp[0, 1] = 1.0; zbp[0, 2] = 0.0; zbp[0, 3] = 0.0
    for k in range(1, mmax + 1):
        r0, r1, i0, i1 = _cmul(zbp[k - 1, 0], zbp[k - 1, 1], zbp[k - 1, 2], zbp[k - 1, 3],
                               xlo, xhi, -yhi, -ylo)
        zbp[k, 0] = r0; zbp[k, 1] = r1; zbp[k, 2] = i0; zbp[k, 3] = i1
    relo = 0.0; rehi = 0.0; imlo = 0.0; imhi = 0.0
    for k in range(nu.shape[0]):
        a = zp[nu[k]]
        b = zbp[mu[k]]
        t0, t1, t2, t3 = _cmul(a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3])
        t0, t1, t2, t3 = _cmul(t0, t1, t2, t3, cre[k], cre[k], cim[k], cim[k])
        relo, rehi = _add_iv(relo, rehi, t0, t1)
        imlo, imhi = _add_iv(imlo, imhi, t2, t3)
    return relo, rehi, imlo, imhi


@njit(cache=True, parallel=True)
def enclose(nu, mu, cre, cim, boxes):
    n = boxes.shape[0]
    nmax = 0
    mmax = 0
    for k in range(nu.shape[0]):
        nmax = max(nmax, nu[k])
        mmax = max(mmax, mu[k])
    out = np.empty((n, 4))
    for i in prange(n):
        zp = np.empty((nmax + 1, 4))
        zbp = np.empty((mmax + 1, 4))
        r0, r1, i0, i1 = _enclose_one(nu, mu, cre, cim,
                                      boxes[i, 0], boxes[i, 1], boxes[i, 2], boxes[i, 3],
                                      zp, zbp)
        out[i, 0] = r0; out[i, 1] = r1; out[i, 2] = i0; out[i, 3] = i1
    return out


# relative pad covering float rounding in the Taylor shift
_TAYLOR_PAD = 1e-12


@njit(cache=True)
def _taylor_disk_one(nu, mu, cre, cim, cx, cy, rho, T, binom, cp, cbp):
    """Centered Taylor form on one box: f(c), bound with |f - f(c)| <= bound."""
    nmax = cp.shape[0] - 1
    mmax = cbp.shape[0] - 1
    for k in range(nmax + 1):
        for l in range(mmax + 1):
            T[k, l] = 0.0 + 0.0j
    c = complex(cx, cy)
    cb = complex(cx, -cy)
    cp[0] = 1.0
    for k in range(1, nmax + 1):
        cp[k] = cp[k - 1] * c
    cbp[0] = 1.0
    for k in range(1, mmax + 1):
        cbp[k] = cbp[k - 1] * cb
    pad_scale = 0.0
    ac = abs(c) + rho
    for t in range(nu.shape[0]):
        a = complex(cre[t], cim[t])
        pad_scale += abs(a) * ac ** (nu[t] + mu[t])
        for k in range(nu[t] + 1):
            f1 = a * (binom[nu[t], k] * cp[nu[t] - k])
            for l in range(mu[t] + 1):
                T[k, l] += f1 * (binom[mu[t], l] * cbp[mu[t] - l])
    fc = T[0, 0]
    bound = _TAYLOR_PAD * pad_scale
    for k in range(nmax + 1):
        for l in range(mmax + 1):
            if k == 0 and l == 0:
                continue
            m = abs(T[k, l])
            if m != 0.0:
                bound += m * rho ** (k + l)
    return fc.real, fc.imag, bound


def _pascal(n):
    out = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        out[i, 0] = 1.0
        for j in range(1, i + 1):
            out[i, j] = out[i - 1, j - 1] + out[i - 1, j]
    return out


@njit(cache=True, parallel=True)
def _enclose_taylor_impl(nu, mu, cre, cim, boxes, binom, nmax, mmax):
    n = boxes.shape[0]
    out = np.empty((n, 4))
    for i in prange(n):
        T = np.empty((nmax + 1, mmax + 1), dtype=np.complex128)
        cp = np.empty(nmax + 1, dtype=np.complex128)
        cbp = np.empty(mmax + 1, dtype=np.complex128)
        cx = 0.5 * (boxes[i, 0] + boxes[i, 1])
        cy = 0.5 * (boxes[i, 2] + boxes[i, 3])
        rho = 0.5 * math.hypot(boxes[i, 1] - boxes[i, 0], boxes[i, 3] - boxes[i, 2])
        fre, fim, bound = _taylor_disk_one(nu, mu, cre, cim, cx, cy, rho, T, binom, cp, cbp)
        out[i, 0] = math.nextafter(fre - bound, _NINF)
        out[i, 1] = math.nextafter(fre + bound, _PINF)
        out[i, 2] = math.nextafter(fim - bound, _NINF)
        out[i, 3] = math.nextafter(fim + bound, _PINF)
    return out


def enclose_taylor(nu, mu, cre, cim, boxes):
    """Rectangle enclosure of f over each box via the centered Taylor form."""
    nmax = int(nu.max()) if nu.size else 0
    mmax = int(mu.max()) if mu.size else 0
    binom = _pascal(max(nmax, mmax))
    return _enclose_taylor_impl(nu, mu, cre, cim, boxes, binom, nmax, mmax)


@njit(cache=True, parallel=True)
def eval_points(nu, mu, cre, cim, zre, zim):
    n = zre.shape[0]
    nmax = 0
    mmax = 0
    for k in range(nu.shape[0]):
        nmax = max(nmax, nu[k])
        mmax = max(mmax, mu[k])
    out_re = np.empty(n)
    out_im = np.empty(n)
    for i in prange(n):
        z = complex(zre[i], zim[i])
        zb = complex(zre[i], -zim[i])
        zp = np.empty(nmax + 1, dtype=np.complex128)
        zbp = np.empty(mmax + 1, dtype=np.complex128)
        zp[0] = 1.0
        for k in range(1, nmax + 1):
            zp[k] = zp[k - 1] * z
        zbp[0] = 1.0
        for k in range(1, mmax + 1):
            zbp[k] = zbp[k - 1] * zb
        acc = complex(0.0, 0.0)
        for k in range(nu.shape[0]):
            acc += complex(cre[k], cim[k]) * zp[nu[k]] * zbp[mu[k]]
        out_re[i] = acc.real
        out_im[i] = acc.imag
    return out_re, out_im


@njit(cache=True, parallel=True)
def jacobian_range(znu, zmu, zre, zim, bnu, bmu, bre, bim, boxes):
    n = boxes.shape[0]
    nmax1 = 0; mmax1 = 0
    for k in range(znu.shape[0]):
        nmax1 = max(nmax1, znu[k]); mmax1 = max(mmax1, zmu[k])
    nmax2 = 0; mmax2 = 0
    for k in range(bnu.shape[0]):
        nmax2 = max(nmax2, bnu[k]); mmax2 = max(mmax2, bmu[k])
    lo = np.empty(n)
    hi = np.empty(n)
    for i in prange(n):
        zp = np.empty((max(nmax1, nmax2) + 1, 4))
        zbp = np.empty((max(mmax1, mmax2) + 1, 4))
        a0, a1, a2, a3 = _enclose_one(znu, zmu, zre, zim,
                                      boxes[i, 0], boxes[i, 1], boxes[i, 2], boxes[i, 3],
                                      zp[:nmax1 + 1], zbp[:mmax1 + 1])
        b0, b1, b2, b3 = _enclose_one(bnu, bmu, bre, bim,
                                      boxes[i, 0], boxes[i, 1], boxes[i, 2], boxes[i, 3],
                                      zp[:nmax2 + 1], zbp[:mmax2 + 1])
        s1 = _sq_iv(a0, a1)
        s2 = _sq_iv(a2, a3)
        m1 = _add_iv(s1[0], s1[1], s2[0], s2[1])
        s3 = _sq_iv(b0, b1)
        s4 = _sq_iv(b2, b3)
        m2 = _add_iv(s3[0], s3[1], s4[0], s4[1])
        d = _sub_iv(m1[0], m1[1], m2[0], m2[1])
        lo[i] = d[0]
        hi[i] = d[1]
    return lo, hi


def krawczyk(fnu, fmu, fre, fim,
             znu, zmu, zre, zim,
             bnu, bmu, bre, bim,
             boxes, inflate):
    nmax = 0
    mmax = 0
    for arr_n, arr_m in ((fnu, fmu), (znu, zmu), (bnu, bmu)):
        if arr_n.size:
            nmax = max(nmax, int(arr_n.max()))
            mmax = max(mmax, int(arr_m.max()))
    binom = _pascal(max(nmax, mmax))
    return _krawczyk_impl(fnu, fmu, fre, fim, znu, zmu, zre, zim,
                          bnu, bmu, bre, bim, boxes, inflate, binom,
                          nmax, mmax)


@njit(cache=True, parallel=True)
def _krawczyk_impl(fnu, fmu, fre, fim,
                   znu, zmu, zre, zim,
                   bnu, bmu, bre, bim,
                   boxes, inflate, binom, kmax, lmax):
    n = boxes.shape[0]
    fn = 0; fm = 0
    for k in range(fnu.shape[0]):
        fn = max(fn, fnu[k]); fm = max(fm, fmu[k])

    status = np.zeros(n, dtype=np.int64)
    out = np.empty((n, 4))
    for i in prange(n):
        zp = np.empty((kmax + 1, 4))
        zbp = np.empty((lmax + 1, 4))
        T = np.empty((kmax + 1, lmax + 1), dtype=np.complex128)
        cp = np.empty(kmax + 1, dtype=np.complex128)
        cbp = np.empty(lmax + 1, dtype=np.complex128)
        cx = 0.5 * (boxes[i, 0] + boxes[i, 1])
        cy = 0.5 * (boxes[i, 2] + boxes[i, 3])
        hx = (0.5 + inflate) * (boxes[i, 1] - boxes[i, 0])
        hy = (0.5 + inflate) * (boxes[i, 3] - boxes[i, 2])
        xl = cx - hx; xh = cx + hx
        yl = cy - hy; yh = cy + hy
        rho = math.hypot(hx, hy)

        # rigorous residual at the midpoint
        fc0, fc1, fc2, fc3 = _enclose_one(fnu, fmu, fre, fim, cx, cx, cy, cy,
                                          zp[:fn + 1], zbp[:fm + 1])

        # float Jacobian at the midpoint -> approximate inverse
        fzv = complex(0.0, 0.0)
        zc = complex(cx, cy)
        zcb = complex(cx, -cy)
        for k in range(znu.shape[0]):
            fzv += complex(zre[k], zim[k]) * zc ** znu[k] * zcb ** zmu[k]
        fbv = complex(0.0, 0.0)
        for k in range(bnu.shape[0]):
            fbv += complex(bre[k], bim[k]) * zc ** bnu[k] * zcb ** bmu[k]
        j11 = fzv.real + fbv.real
        j12 = fbv.imag - fzv.imag
        j21 = fzv.imag + fbv.imag
        j22 = fzv.real - fbv.real
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-300 or not math.isfinite(det):
            out[i, 0] = xl; out[i, 1] = xh; out[i, 2] = yl; out[i, 3] = yh
            continue
        y11 = j22 / det; y12 = -j12 / det
        y21 = -j21 / det; y22 = j11 / det

        # interval Jacobian over the inflated box (centered Taylor form)
        zr, zi, zb_ = _taylor_disk_one(znu, zmu, zre, zim, cx, cy, rho,
                                       T, binom, cp, cbp)
        a0 = math.nextafter(zr - zb_, _NINF); a1 = math.nextafter(zr + zb_, _PINF)
        a2 = math.nextafter(zi - zb_, _NINF); a3 = math.nextafter(zi + zb_, _PINF)
        br, bi, bb_ = _taylor_disk_one(bnu, bmu, bre, bim, cx, cy, rho,
                                       T, binom, cp, cbp)
        b0 = math.nextafter(br - bb_, _NINF); b1 = math.nextafter(br + bb_, _PINF)
        b2 = math.nextafter(bi - bb_, _NINF); b3 = math.nextafter(bi + bb_, _PINF)
        J11 = _add_iv(a0, a1, b0, b1)
        J12 = _sub_iv(b2, b3, a2, a3)
        J21 = _add_iv(a2, a3, b2, b3)
        J22 = _sub_iv(a0, a1, b0, b1)

        u1 = _smul_iv(y11, J11[0], J11[1]); u2 = _smul_iv(y12, J21[0], J21[1])
        t1 = _add_iv(u1[0], u1[1], u2[0], u2[1])
        M11 = _sub_iv(1.0, 1.0, t1[0], t1[1])
        u1 = _smul_iv(y11, J12[0], J12[1]); u2 = _smul_iv(y12, J22[0], J22[1])
        t2 = _add_iv(u1[0], u1[1], u2[0], u2[1])
        M12 = _sub_iv(0.0, 0.0, t2[0], t2[1])
        u1 = _smul_iv(y21, J11[0], J11[1]); u2 = _smul_iv(y22, J21[0], J21[1])
        t3 = _add_iv(u1[0], u1[1], u2[0], u2[1])
        M21 = _sub_iv(0.0, 0.0, t3[0], t3[1])
        u1 = _smul_iv(y21, J12[0], J12[1]); u2 = _smul_iv(y22, J22[0], J22[1])
        t4 = _add_iv(u1[0], u1[1], u2[0], u2[1])
        M22 = _sub_iv(1.0, 1.0, t4[0], t4[1])

        # K = c - Y f(c) + M (X' - c)
        u1 = _smul_iv(y11, fc0, fc1); u2 = _smul_iv(y12, fc2, fc3)
        t5 = _add_iv(u1[0], u1[1], u2[0], u2[1])
        px = _sub_iv(cx, cx, t5[0], t5[1])
        u1 = _smul_iv(y21, fc0, fc1); u2 = _smul_iv(y22, fc2, fc3)
        t6 = _add_iv(u1[0], u1[1], u2[0], u2[1])
        py = _sub_iv(cy, cy, t6[0], t6[1])
        dx = _sub_iv(xl, xh, cx, cx)
        dy = _sub_iv(yl, yh, cy, cy)
        v1 = _mul_iv(M11[0], M11[1], dx[0], dx[1])
        v2 = _mul_iv(M12[0], M12[1], dy[0], dy[1])
        t7 = _add_iv(v1[0], v1[1], v2[0], v2[1])
        kx = _add_iv(px[0], px[1], t7[0], t7[1])
        v1 = _mul_iv(M21[0], M21[1], dx[0], dx[1])
        v2 = _mul_iv(M22[0], M22[1], dy[0], dy[1])
        t8 = _add_iv(v1[0], v1[1], v2[0], v2[1])
        ky = _add_iv(py[0], py[1], t8[0], t8[1])

        r1 = max(abs(M11[0]), abs(M11[1])) + max(abs(M12[0]), abs(M12[1]))
        r2 = max(abs(M21[0]), abs(M21[1])) + max(abs(M22[0]), abs(M22[1]))
        contraction = max(r1, r2)
        inside = kx[0] > xl and kx[1] < xh and ky[0] > yl and ky[1] < yh
        disjoint = kx[1] < xl or kx[0] > xh or ky[1] < yl or ky[0] > yh
        if inside and contraction < 1.0:
            status[i] = 1
        elif disjoint:
            status[i] = 2
        out[i, 0] = max(kx[0], xl)
        out[i, 1] = min(kx[1], xh)
        out[i, 2] = max(ky[0], yl)
        out[i, 3] = min(ky[1], yh)
    return status, out

"""Pure-numpy kernel backend, vectorized across the box batch.

Intervals are pairs of float64 arrays; every arithmetic result is widened
by one ulp per endpoint (np.nextafter), which keeps all enclosures
rigorous without touching the FPU rounding mode.
"""

import math

import numpy as np

NAME = "numpy"

_NINF = -np.inf
_PINF = np.inf


def _widen(lo, hi):
    return np.nextafter(lo, _NINF), np.nextafter(hi, _PINF)


def _iadd(a, b):
    return _widen(a[0] + b[0], a[1] + b[1])


def _isub(a, b):
    return _widen(a[0] - b[1], a[1] - b[0])


def _imul(a, b):
    p1 = a[0] * b[0]
    p2 = a[0] * b[1]
    p3 = a[1] * b[0]
    p4 = a[1] * b[1]
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return _widen(lo, hi)


def _isq(a):
    # tighter than _imul(a, a): the square is nonnegative
    lo_raw = np.minimum(a[0] * a[0], a[1] * a[1])
    hi = np.maximum(a[0] * a[0], a[1] * a[1])
    lo = np.where((a[0] <= 0.0) & (a[1] >= 0.0), 0.0, lo_raw)
    lo2, hi2 = _widen(lo, hi)
    return np.maximum(lo2, 0.0), hi2


def _cmul(a, b):
    """Complex interval product; operands are (relo, rehi, imlo, imhi)."""
    re = _isub(_imul(a[:2], b[:2]), _imul(a[2:], b[2:]))
    im = _iadd(_imul(a[:2], b[2:]), _imul(a[2:], b[:2]))
    return (re[0], re[1], im[0], im[1])


def _smul(s, a):
    """Exact scalar times interval."""
    p1 = s * a[0]
    p2 = s * a[1]
    return _widen(np.minimum(p1, p2), np.maximum(p1, p2))


def _pow_tables(z, kmax):
    n = z[0].shape[0]
    one = np.ones(n)
    zero = np.zeros(n)
    tables = [(one, one, zero, zero)]
    for _ in range(kmax):
        tables.append(_cmul(tables[-1], z))
    return tables


def eval_points(nu, mu, cre, cim, zre, zim):
    """Plain float evaluation of the polynomial at many points."""
    z = zre + 1j * zim
    zb = zre - 1j * zim
    nmax = int(nu.max()) if nu.size else 0
    mmax = int(mu.max()) if mu.size else 0
    zp = [np.ones_like(z)]
    for _ in range(nmax):
        zp.append(zp[-1] * z)
    zbp = [np.ones_like(z)]
    for _ in range(mmax):
        zbp.append(zbp[-1] * zb)
    acc = np.zeros_like(z)
    for k in range(nu.shape[0]):
        acc += (cre[k] + 1j * cim[k]) * zp[nu[k]] * zbp[mu[k]]
    return np.ascontiguousarray(acc.real), np.ascontiguousarray(acc.imag)


def enclose(nu, mu, cre, cim, boxes):
    """Interval enclosure of f over each box [xlo, xhi, ylo, yhi].

    Returns an (n, 4) array [relo, rehi, imlo, imhi].
    """
    boxes = np.asarray(boxes, dtype=np.float64)
    x = (boxes[:, 0], boxes[:, 1])
    y = (boxes[:, 2], boxes[:, 3])
    z = (x[0], x[1], y[0], y[1])
    zb = (x[0], x[1], -y[1], -y[0])
    nmax = int(nu.max()) if nu.size else 0
    mmax = int(mu.max()) if mu.size else 0
    zp = _pow_tables(z, nmax)
    zbp = _pow_tables(zb, mmax)
    n = boxes.shape[0]
    re = (np.zeros(n), np.zeros(n))
    im = (np.zeros(n), np.zeros(n))
    for k in range(nu.shape[0]):
        t = _cmul(zp[nu[k]], zbp[mu[k]])
        c = (np.full(n, cre[k]), np.full(n, cre[k]), np.full(n, cim[k]), np.full(n, cim[k]))
        t = _cmul(t, c)
        re = _iadd(re, t[:2])
        im = _iadd(im, t[2:])
    out = np.empty((n, 4))
    out[:, 0], out[:, 1], out[:, 2], out[:, 3] = re[0], re[1], im[0], im[1]
    return out


# relative pad covering float rounding in the Taylor shift; the exact
# computation keeps ~1e-14 relative accuracy, padded with a safety decade
_TAYLOR_PAD = 1e-12


def taylor_disks(nu, mu, cre, cim, boxes):
    """Centered Taylor form: returns (fc, bound) with f(box) inside the
    disk around fc = f(center) of the given radius.

    Shifting to the box center removes the coefficient cancellation that
    cripples the direct form: the bound is sum |T_kl| rho^(k+l) over the
    recentered coefficients, plus a rounding pad.
    """
    boxes = np.asarray(boxes, dtype=np.float64)
    n = boxes.shape[0]
    cx = 0.5 * (boxes[:, 0] + boxes[:, 1])
    cy = 0.5 * (boxes[:, 2] + boxes[:, 3])
    rho = 0.5 * np.hypot(boxes[:, 1] - boxes[:, 0], boxes[:, 3] - boxes[:, 2])
    c = cx + 1j * cy
    cb = cx - 1j * cy
    nmax = int(nu.max()) if nu.size else 0
    mmax = int(mu.max()) if mu.size else 0
    dmax = nmax + mmax
    cp = [np.ones(n, complex)]
    for _ in range(nmax):
        cp.append(cp[-1] * c)
    cbp = [np.ones(n, complex)]
    for _ in range(mmax):
        cbp.append(cbp[-1] * cb)
    rp = [np.ones(n)]
    for _ in range(dmax):
        rp.append(rp[-1] * rho)
    T = {}
    pad_scale = np.zeros(n)
    ac = np.abs(c) + rho
    for t in range(nu.shape[0]):
        a = cre[t] + 1j * cim[t]
        pad_scale += abs(a) * ac ** (int(nu[t]) + int(mu[t]))
        for k in range(int(nu[t]) + 1):
            f1 = math.comb(int(nu[t]), k) * cp[int(nu[t]) - k]
            for l in range(int(mu[t]) + 1):
                key = (k, l)
                contrib = a * f1 * (math.comb(int(mu[t]), l) * cbp[int(mu[t]) - l])
                if key in T:
                    T[key] = T[key] + contrib
                else:
                    T[key] = contrib
    fc = T.get((0, 0), np.zeros(n, complex))
    bound = _TAYLOR_PAD * pad_scale
    for (k, l), val in T.items():
        if k == 0 and l == 0:
            continue
        bound = bound + np.abs(val) * rp[k + l]
    return fc, bound


def enclose_taylor(nu, mu, cre, cim, boxes):
    """Rectangle enclosure of f over each box via the centered Taylor form."""
    fc, bound = taylor_disks(nu, mu, cre, cim, boxes)
    out = np.empty((fc.shape[0], 4))
    out[:, 0] = np.nextafter(fc.real - bound, _NINF)
    out[:, 1] = np.nextafter(fc.real + bound, _PINF)
    out[:, 2] = np.nextafter(fc.imag - bound, _NINF)
    out[:, 3] = np.nextafter(fc.imag + bound, _PINF)
    return out


def jacobian_range(znu, zmu, zre, zim, bnu, bmu, bre, bim, boxes):
    """Interval of |df/dz|^2 - |df/dzbar|^2 over each box."""
    fz = enclose(znu, zmu, zre, zim, boxes)
    fzb = enclose(bnu, bmu, bre, bim, boxes)
    m1 = _iadd(_isq((fz[:, 0], fz[:, 1])), _isq((fz[:, 2], fz[:, 3])))
    m2 = _iadd(_isq((fzb[:, 0], fzb[:, 1])), _isq((fzb[:, 2], fzb[:, 3])))
    lo, hi = _isub(m1, m2)
    return lo, hi


def krawczyk(fnu, fmu, fre, fim,
             znu, zmu, zre, zim,
             bnu, bmu, bre, bim,
             boxes, inflate):
    """Krawczyk existence/uniqueness test on each inflated box.

    Status per box: 0 undecided, 1 certified unique root inside the
    inflated box (out = K intersected with it), 2 certified empty.
    """
    boxes = np.asarray(boxes, dtype=np.float64)
    n = boxes.shape[0]
    cx = 0.5 * (boxes[:, 0] + boxes[:, 1])
    cy = 0.5 * (boxes[:, 2] + boxes[:, 3])
    hx = (0.5 + inflate) * (boxes[:, 1] - boxes[:, 0])
    hy = (0.5 + inflate) * (boxes[:, 3] - boxes[:, 2])
    xl, xh = cx - hx, cx + hx
    yl, yh = cy - hy, cy + hy
    infl = np.stack([xl, xh, yl, yh], axis=1)

    # rigorous residual at the midpoint
    pt = np.stack([cx, cx, cy, cy], axis=1)
    fc = enclose(fnu, fmu, fre, fim, pt)
    fcr = (fc[:, 0], fc[:, 1])
    fci = (fc[:, 2], fc[:, 3])

    # approximate inverse Jacobian at the midpoint (float)
    fzr, fzi = eval_points(znu, zmu, zre, zim, cx, cy)
    fbr, fbi = eval_points(bnu, bmu, bre, bim, cx, cy)
    j11 = fzr + fbr
    j12 = fbi - fzi
    j21 = fzi + fbi
    j22 = fzr - fbr
    det = j11 * j22 - j12 * j21
    ok = np.abs(det) > 1e-300
    safe = np.where(ok, det, 1.0)
    y11 = j22 / safe
    y12 = -j12 / safe
    y21 = -j21 / safe
    y22 = j11 / safe

    # interval Jacobian over the inflated box (centered Taylor form)
    fz = enclose_taylor(znu, zmu, zre, zim, infl)
    fzb = enclose_taylor(bnu, bmu, bre, bim, infl)
    J11 = _iadd((fz[:, 0], fz[:, 1]), (fzb[:, 0], fzb[:, 1]))
    J12 = _isub((fzb[:, 2], fzb[:, 3]), (fz[:, 2], fz[:, 3]))
    J21 = _iadd((fz[:, 2], fz[:, 3]), (fzb[:, 2], fzb[:, 3]))
    J22 = _isub((fz[:, 0], fz[:, 1]), (fzb[:, 0], fzb[:, 1]))

    one = (np.ones(n), np.ones(n))
    zero = (np.zeros(n), np.zeros(n))
    M11 = _isub(one, _iadd(_smul(y11, J11), _smul(y12, J21)))
    M12 = _isub(zero, _iadd(_smul(y11, J12), _smul(y12, J22)))
    M21 = _isub(zero, _iadd(_smul(y21, J11), _smul(y22, J21)))
    M22 = _isub(one, _iadd(_smul(y21, J12), _smul(y22, J22)))

    # K = c - Y f(c) + M (X' - c)
    px = _isub((cx, cx), _iadd(_smul(y11, fcr), _smul(y12, fci)))
    py = _isub((cy, cy), _iadd(_smul(y21, fcr), _smul(y22, fci)))
    dx = _isub((xl, xh), (cx, cx))
    dy = _isub((yl, yh), (cy, cy))
    Kx = _iadd(px, _iadd(_imul(M11, dx), _imul(M12, dy)))
    Ky = _iadd(py, _iadd(_imul(M21, dx), _imul(M22, dy)))

    mag = lambda iv: np.maximum(np.abs(iv[0]), np.abs(iv[1]))
    contraction = np.maximum(mag(M11) + mag(M12), mag(M21) + mag(M22))
    inside = (Kx[0] > xl) & (Kx[1] < xh) & (Ky[0] > yl) & (Ky[1] < yh)
    disjoint = (Kx[1] < xl) | (Kx[0] > xh) | (Ky[1] < yl) | (Ky[0] > yh)

    status = np.zeros(n, dtype=np.int64)
    status[ok & disjoint] = 2
    status[ok & inside & (contraction < 1.0)] = 1

    out = np.empty((n, 4))
    out[:, 0] = np.maximum(Kx[0], xl)
    out[:, 1] = np.minimum(Kx[1], xh)
    out[:, 2] = np.maximum(Ky[0], yl)
    out[:, 3] = np.minimum(Ky[1], yh)
    return status, out

"""Certified isolation of the zeros of f(z, zbar) inside a rectangle.

Subdivision with outward-rounded interval arithmetic: a box is discarded
when the interval enclosure of f excludes zero, certified when the
Krawczyk operator on a slightly inflated copy contracts into its interior
(existence and uniqueness of a simple zero), and quartered otherwise.
Certified boxes are contracted to near machine precision and the Jacobian
sign over the final disk grades the root positive or negative.

Boxes are half-open on their high edges, so the boxes of any one depth
partition the plane and a root is counted by exactly one of them.  Split
points use the off-center ratio 33/64, which keeps subdivision edges away
from the axes where the symmetric families put their roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from . import mixedpoly as mp
from . import signed_index as si
from .errors import (
    CircleThroughZero,
    NonIsolatedZeroSet,
    NotAdmissible,
    UncertifiedCount,
    ZeroPolynomial,
)

SPLIT_RATIO = 33.0 / 64.0
INFLATE = 0.5
CHAIN_LIMIT = 100
BOX_BUDGET = 2_000_000
# jitter factors for the automatic box; avoids subdivision edges landing
# exactly on roots that sit on the coordinate axes
_JITTER = (1.0131, 1.0079, 1.0073, 1.0113)


@dataclass
class CertifiedRoot:
    center: complex
    radius: float
    orientation: int
    residual: float
    multiplicity: int = 1
    certified: bool = True  # True: contraction certificate; False: winding only

    def to_json_dict(self) -> dict:
        return {
            "re": self.center.real,
            "im": self.center.imag,
            "radius": self.radius,
            "orientation": self.orientation,
            "residual": self.residual,
            "multiplicity": self.multiplicity,
            "certified": self.certified,
        }


@dataclass
class RootInventory:
    roots: list = field(default_factory=list)            # certified simple roots
    multiple_points: list = field(default_factory=list)  # winding-flagged clusters
    unresolved_boxes: list = field(default_factory=list)
    rho: int = 0
    signed_sum: int = 0
    certified: bool = True
    count_multiplicity: bool = False
    boxes_processed: int = 0
    depth_reached: int = 0

    def all_roots(self):
        return self.roots + self.multiple_points

    def nonzero_roots(self, origin_tol: float = 1e-8):
        return [r for r in self.roots if abs(r.center) > origin_tol]

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho,
            "signed_sum": self.signed_sum,
            "certified": self.certified,
            "count_multiplicity": self.count_multiplicity,
            "roots": [r.to_json_dict() for r in self.roots],
            "multiple_points": [r.to_json_dict() for r in self.multiple_points],
            "unresolved_boxes": [list(b) for b in self.unresolved_boxes],
            "boxes_processed": self.boxes_processed,
            "depth_reached": self.depth_reached,
        }


# ---------------------------------------------------------------------------
# Root bound for admissible polynomials
# ---------------------------------------------------------------------------

def root_bound(f: mp.MixedPolynomial, band: float = si.ADMISSIBILITY_BAND) -> float:
    """Radius R with a certificate that f has no zero with |z| >= R.

    On |z| = r the top part dominates: |f_d| >= |c| prod ||gamma_j|-1|^nu_j r^d,
    while the filtration part of degree l contributes at most its coefficient
    sum times r^l.  Beyond the radius where domination holds (with a factor-2
    safety margin on the factored constant) no root can live; interval
    evaluation then certifies a chain of halving annuli [R/2, R] below it,
    shrinking the returned radius toward the actual root region.
    """
    if f.is_zero():
        raise ZeroPolynomial("root bound of the zero polynomial")
    fact = si.top_part_factor(f)
    top_min = abs(fact.coefficient)
    for g, nu in fact.factors:
        gap = abs(abs(g) - 1.0)
        if gap <= band:
            raise NotAdmissible(f"top factor with |gamma| = {abs(g)}")
        top_min *= gap ** nu
    d = fact.mixed_degree
    by_degree = {}
    for (n, m), c in f.items():
        if n + m < d:
            by_degree[n + m] = by_degree.get(n + m, 0.0) + abs(c)

    def dominates(r):
        return 0.5 * top_min * r ** d >= 2.0 * sum(
            cl * r ** l for l, cl in by_degree.items())

    radius = 1.25
    while radius < 1e60 and not dominates(radius):
        radius *= 2.0
    attempts = 0
    while not _annulus_root_free(f, radius):
        radius *= 2.0
        attempts += 1
        if attempts > 40:
            raise UncertifiedCount("could not certify a root-free annulus")
    while radius > 1.0 and _annulus_root_free(f, 0.5 * radius):
        radius *= 0.5
    return radius


_TRIG_SLACK = 4e-15


def _cos_range(lo, hi):
    """Enclosure of cos over [lo, hi] per row (vectorized, widened)."""
    two_pi = 2.0 * math.pi
    clo, chi = np.cos(lo), np.cos(hi)
    cmin = np.minimum(clo, chi)
    cmax = np.maximum(clo, chi)
    has_max = np.floor(hi / two_pi) >= np.ceil(lo / two_pi)
    has_min = np.floor((hi - math.pi) / two_pi) >= np.ceil((lo - math.pi) / two_pi)
    cmax = np.where(has_max, 1.0, cmax + _TRIG_SLACK)
    cmin = np.where(has_min, -1.0, cmin - _TRIG_SLACK)
    return np.maximum(cmin, -1.0), np.minimum(cmax, 1.0)


def _polar_nonzero(f_polar, cells):
    """Mask of polar cells [r0, r1, th0, th1] where f is provably nonzero.

    Terms are grouped by total degree s: f(r e^it) = sum_s r^s g_s(t) with
    g_s a trigonometric polynomial of the angle alone.  Enclosing g_s(t)
    first and multiplying by the exact modulus range [r0^s, r1^s] keeps
    the slack linear in the angular width even when huge coefficients of
    equal degree nearly cancel along special rays.
    """
    from ._kernels import numpy_impl as K

    s, k, amps, phases = f_polar
    r0, r1 = cells[:, 0], cells[:, 1]
    t0, t1 = cells[:, 2], cells[:, 3]
    n = cells.shape[0]
    re = (np.zeros(n), np.zeros(n))
    im = (np.zeros(n), np.zeros(n))
    for deg in np.unique(s):
        gre = (np.zeros(n), np.zeros(n))
        gim = (np.zeros(n), np.zeros(n))
        for j in np.flatnonzero(s == deg):
            plo = phases[j] + k[j] * (t0 if k[j] >= 0 else t1)
            phi = phases[j] + k[j] * (t1 if k[j] >= 0 else t0)
            amp = (amps[j], amps[j])
            gre = K._iadd(gre, K._imul(amp, _cos_range(plo, phi)))
            gim = K._iadd(gim, K._imul(amp, _cos_range(plo - 0.5 * math.pi,
                                                       phi - 0.5 * math.pi)))
        rs = (np.nextafter(r0 ** deg, -np.inf), np.nextafter(r1 ** deg, np.inf))
        re = K._iadd(re, K._imul(rs, gre))
        im = K._iadd(im, K._imul(rs, gim))
    return (re[0] > 0) | (re[1] < 0) | (im[0] > 0) | (im[1] < 0)


def _polar_form(f: mp.MixedPolynomial):
    nu, mu, cre, cim = f.as_arrays()
    coeff = cre + 1j * cim
    return (nu + mu, nu - mu, np.abs(coeff), np.angle(coeff))


def _annulus_root_free(f: mp.MixedPolynomial, radius: float,
                       levels: int = 60, cap: int = 100_000) -> bool:
    """Interval proof that f has no zero with radius <= |z| <= 2 radius.

    Splits angle first: sign resolution is governed by the angular
    polynomials g_s, while the radial block [R, 2R] enters only through
    the exact modulus ranges.  Radial splits are a deep fallback for rays
    where the two components vanish at different radii.
    """
    fp = _polar_form(f)
    tedges = np.linspace(0.0, 2.0 * math.pi, 65)
    cells = np.array([(radius, 2.0 * radius, tedges[j], tedges[j + 1])
                      for j in range(64)])
    for level in range(levels):
        alive = cells[~_polar_nonzero(fp, cells)]
        if alive.shape[0] == 0:
            return True
        if level == levels - 1 or alive.shape[0] > cap:
            return False
        rmid = 0.5 * (alive[:, 0] + alive[:, 1])
        tmid = 0.5 * (alive[:, 2] + alive[:, 3])
        wide_t = (alive[:, 3] - alive[:, 2]) > 1e-9
        a = alive.copy()
        b = alive.copy()
        a[:, 3] = np.where(wide_t, tmid, a[:, 3])
        a[:, 1] = np.where(wide_t, a[:, 1], rmid)
        b[:, 2] = np.where(wide_t, tmid, b[:, 2])
        b[:, 0] = np.where(wide_t, b[:, 0], rmid)
        cells = np.concatenate([a, b], axis=0)
    return False


def _split(boxes: np.ndarray) -> np.ndarray:
    xm = boxes[:, 0] + SPLIT_RATIO * (boxes[:, 1] - boxes[:, 0])
    ym = boxes[:, 2] + SPLIT_RATIO * (boxes[:, 3] - boxes[:, 2])
    quads = [
        np.stack([boxes[:, 0], xm, boxes[:, 2], ym], axis=1),
        np.stack([xm, boxes[:, 1], boxes[:, 2], ym], axis=1),
        np.stack([boxes[:, 0], xm, ym, boxes[:, 3]], axis=1),
        np.stack([xm, boxes[:, 1], ym, boxes[:, 3]], axis=1),
    ]
    return np.concatenate(quads, axis=0)


# ---------------------------------------------------------------------------
# Newton polishing (float, non-certified; centers only)
# ---------------------------------------------------------------------------

def _newton_polish(f, fz, fzb, z0: complex, steps: int = 40) -> complex:
    z = complex(z0)
    for _ in range(steps):
        fv = mp.evaluate(f, z)
        dz = mp.evaluate(fz, z)
        db = mp.evaluate(fzb, z)
        det = abs(dz) ** 2 - abs(db) ** 2
        if det == 0.0 or not math.isfinite(det):
            break
        step = (db * fv.conjugate() - dz.conjugate() * fv) / det
        z = z + step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


# ---------------------------------------------------------------------------
# Main subdivision loop
# ---------------------------------------------------------------------------

def isolate_roots(f: mp.MixedPolynomial, box, tol: float = 1e-10,
                  max_depth: int = 60, count_multiplicity: bool = False) -> RootInventory:
    """Isolate every zero of f in the half-open box (x0, x1, y0, y1)."""
    if f.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    x0, x1, y0, y1 = map(float, box)
    if not (x0 < x1 and y0 < y1):
        raise ValueError(f"degenerate box {box!r}")

    F = f.as_arrays()
    fz = mp.diff_z(f)
    fzb = mp.diff_zb(f)
    FZ = fz.as_arrays()
    FZB = fzb.as_arrays()
    scale = max(abs(x0), abs(x1), abs(y0), abs(y1), 1.0)
    width_floor = 1e-14 * scale

    inv = RootInventory(count_multiplicity=count_multiplicity)
    accepted = []  # (root, tight_box)
    boxes = np.array([[x0, x1, y0, y1]])
    depth = 0
    processed = 0
    budget_exhausted = False
    while boxes.shape[0]:
        processed += boxes.shape[0]
        if processed > BOX_BUDGET:
            budget_exhausted = True
            inv.unresolved_boxes.extend(map(tuple, boxes))
            break
        enc = _kernels.enclose(*F, boxes)
        alive = ~((enc[:, 0] > 0) | (enc[:, 1] < 0) | (enc[:, 2] > 0) | (enc[:, 3] < 0))
        boxes = boxes[alive]
        if not boxes.shape[0]:
            break
        # the centered Taylor form kills survivors whose direct enclosures
        # are dominated by cancelling large coefficients
        ty = _kernels.enclose_taylor(*F, boxes)
        alive = ~((ty[:, 0] > 0) | (ty[:, 1] < 0) | (ty[:, 2] > 0) | (ty[:, 3] < 0))
        boxes = boxes[alive]
        if not boxes.shape[0]:
            break
        status, kout = _kernels.krawczyk(*F, *FZ, *FZB, boxes, INFLATE)
        for i in np.flatnonzero(status == 1):
            root = _certify(f, fz, fzb, F, FZ, FZB, kout[i], boxes[i], tol)
            if root is not None:
                accepted.append(root)
        undecided = boxes[status == 0]
        widths = np.maximum(undecided[:, 1] - undecided[:, 0],
                            undecided[:, 3] - undecided[:, 2])
        stalled = widths <= width_floor
        if depth >= max_depth:
            stalled |= True
        inv.unresolved_boxes.extend(map(tuple, undecided[stalled]))
        boxes = _split(undecided[~stalled])
        depth += 1

    inv.boxes_processed = processed
    inv.depth_reached = depth
    _merge_roots(inv, accepted)
    if budget_exhausted and len(inv.unresolved_boxes) > 50 * CHAIN_LIMIT:
        # a one-dimensional zero set doubles the live wave every depth and
        # is the only realistic way to burn the whole budget
        raise NonIsolatedZeroSet(
            f"subdivision budget exhausted with {len(inv.unresolved_boxes)} "
            "boxes still undecided; the zero set appears positive-dimensional")
    _absorb_clusters(f, inv, (x0, x1, y0, y1))
    inv.rho = len(inv.roots)
    if count_multiplicity:
        inv.rho += sum(abs(r.multiplicity) for r in inv.multiple_points)
    inv.signed_sum = (sum(r.orientation for r in inv.roots)
                      + sum(r.multiplicity for r in inv.multiple_points))
    inv.certified = not inv.unresolved_boxes and not inv.multiple_points
    return inv


def _certify(f, fz, fzb, F, FZ, FZB, tight, original, tol):
    """Contract a Krawczyk-certified box and grade the root, or reject it
    when its polished center falls outside the owning half-open box."""
    box = np.asarray(tight, dtype=float)
    target = tol * max(1.0, abs(box[0]), abs(box[2]))
    for _ in range(64):
        w = max(box[1] - box[0], box[3] - box[2])
        if w <= target:
            break
        status, out = _kernels.krawczyk(*F, *FZ, *FZB, box[None, :], 0.0)
        if status[0] != 1:
            break
        nw = max(out[0, 1] - out[0, 0], out[0, 3] - out[0, 2])
        if nw >= 0.9 * w:
            box = out[0]
            break
        box = out[0]
    cx = 0.5 * (box[0] + box[1])
    cy = 0.5 * (box[2] + box[3])
    center = _newton_polish(f, fz, fzb, complex(cx, cy))
    if not (box[0] <= center.real <= box[1] and box[2] <= center.imag <= box[3]):
        center = complex(cx, cy)
    # ownership: exactly one subdivision box of each depth may claim a root
    ox0, ox1, oy0, oy1 = original
    if not (ox0 <= center.real < ox1 and oy0 <= center.imag < oy1):
        return None
    # smallest disk around the reported center covering the certified box
    radius = max(math.hypot(center.real - bx, center.imag - by)
                 for bx in (box[0], box[1]) for by in (box[2], box[3]))
    radius = math.nextafter(radius, math.inf)
    disk = np.array([[center.real - radius, center.real + radius,
                      center.imag - radius, center.imag + radius]])
    jlo, jhi = _kernels.jacobian_range(*FZ, *FZB, disk)
    if jlo[0] > 0.0:
        orient = 1
    elif jhi[0] < 0.0:
        orient = -1
    else:
        # the contraction certificate already forces a nonsingular Jacobian
        # over the inflated box, so the sign at the center is the sign on
        # the whole disk even when the interval range straddles zero
        j_center = mp.wirtinger_jacobian(f, center)
        if j_center == 0.0:
            return None
        orient = 1 if j_center > 0.0 else -1
    residual = abs(mp.evaluate(f, center))
    return CertifiedRoot(center, radius, orient, residual), tuple(box)


def _merge_roots(inv: RootInventory, accepted) -> None:
    roots = []
    for root, _ in accepted:
        dup = False
        for other in roots:
            if abs(root.center - other.center) <= max(
                    root.radius + other.radius, 1e-12 * max(1.0, abs(root.center))):
                dup = True
                break
        if not dup:
            roots.append(root)
    roots.sort(key=lambda r: (r.center.real, r.center.imag))
    inv.roots = roots


def _cluster_boxes(boxes: np.ndarray):
    n = boxes.shape[0]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    order = np.lexsort((boxes[:, 2], boxes[:, 0]))
    bs = boxes[order]
    for i in range(n):
        for j in range(i + 1, n):
            if bs[j, 0] > bs[i, 1] + 1e-300:
                break
            if not (bs[j, 2] > bs[i, 3] or bs[j, 3] < bs[i, 2]):
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[ra] = rb
    clusters = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(order[i])
    return [np.array(ix) for ix in clusters.values()]


def _absorb_clusters(f, inv: RootInventory, box) -> None:
    """Explain leftover boxes by winding numbers around their clusters.

    Near a non-simple zero |f| stays tiny well beyond the undecided boxes,
    so the winding circle grows geometrically until the samples clear the
    through-zero threshold, capped so it swallows neither certified roots,
    other clusters, nor territory outside the solve box.
    """
    if not inv.unresolved_boxes:
        return
    x0, x1, y0, y1 = map(float, box)
    boxes = np.array(inv.unresolved_boxes)
    geom = []
    for idx in _cluster_boxes(boxes):
        cl = boxes[idx]
        if len(idx) > CHAIN_LIMIT:
            raise NonIsolatedZeroSet(
                f"{len(idx)} undecided boxes at maximal depth form a chain")
        cx = 0.5 * (cl[:, 0].min() + cl[:, 1].max())
        cy = 0.5 * (cl[:, 2].min() + cl[:, 3].max())
        base = 0.5 * math.hypot(cl[:, 1].max() - cl[:, 0].min(),
                                cl[:, 3].max() - cl[:, 2].min())
        geom.append((complex(cx, cy), base, cl))

    leftovers = []
    flagged = []
    for center, base, cl in geom:
        cap = min(center.real - x0, x1 - center.real,
                  center.imag - y0, y1 - center.imag)
        for r in inv.roots:
            cap = min(cap, abs(r.center - center) - r.radius)
        for other_center, other_base, _ in geom:
            if other_center != center:
                cap = min(cap, abs(other_center - center) - other_base)
        cap *= 0.8
        winding = None
        radius = base * 1.25
        while radius <= cap:
            try:
                winding = si.local_multiplicity(f, center, radius)
                break
            except CircleThroughZero:
                radius *= 4.0
        if winding is None or winding == 0:
            # could not resolve any root content; boxes stay unexplained
            leftovers.extend(map(tuple, cl))
            continue
        flagged.append(CertifiedRoot(
            center=center,
            radius=radius,
            orientation=1 if winding > 0 else -1,
            residual=abs(mp.evaluate(f, center)),
            multiplicity=winding,
            certified=False,
        ))
    flagged.sort(key=lambda r: (r.center.real, r.center.imag))
    inv.multiple_points = flagged
    inv.unresolved_boxes = leftovers


# ---------------------------------------------------------------------------
# Certified counting
# ---------------------------------------------------------------------------

def default_box(f: mp.MixedPolynomial, band: float = si.ADMISSIBILITY_BAND):
    """Jittered square covering the certified root-enclosing disk."""
    r = root_bound(f, band)
    return (-r * _JITTER[0], r * _JITTER[1], -r * _JITTER[2], r * _JITTER[3])


def rho(f: mp.MixedPolynomial, box=None, tol: float = 1e-10,
        max_depth: int = 60) -> int:
    """Certified number of simple roots; fails loudly when uncertifiable."""
    if box is None:
        box = default_box(f)
    inv = isolate_roots(f, box, tol=tol, max_depth=max_depth)
    if inv.unresolved_boxes:
        raise UncertifiedCount(
            f"{len(inv.unresolved_boxes)} boxes left unresolved")
    if inv.multiple_points:
        raise UncertifiedCount(
            "non-simple zero content found; rho assumes simple roots "
            "(rerun isolate_roots with count_multiplicity for a graded count)")
    return inv.rho

"""Signed root count from the top-degree part, plus winding-number oracles.

The highest mixed-degree part of a nonzero f factors uniquely as
c z^p zbar^q prod_j (z + gamma_j zbar)^{nu_j}.  When every |gamma_j| stays
away from 1 (admissible at infinity) the signed number of roots is

    beta(f) = p - q + sum_j sign(1 - |gamma_j|) nu_j,

and it can be cross-checked against the degree of f/|f| on a circle that
encloses all roots.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import mixedpoly as mp
from .errors import CircleThroughZero, NotAdmissible, ZeroPolynomial

ADMISSIBILITY_BAND = 1e-6
CLUSTER_TOL = 1e-8
MIN_CIRCLE_MODULUS = 1e-12


@dataclass
class TopFactorization:
    """f_d = coefficient * z^p zbar^q prod (z + gamma_j zbar)^{nu_j}."""

    coefficient: complex
    p: int
    q: int
    factors: list = field(default_factory=list)  # [(gamma, nu), ...]
    mixed_degree: int = 0

    def degree_check(self) -> bool:
        return self.p + self.q + sum(nu for _, nu in self.factors) == self.mixed_degree

    def expand(self) -> mp.MixedPolynomial:
        out = mp.monomial(self.p, self.q, self.coefficient)
        for gamma, nu in self.factors:
            factor = mp.MixedPolynomial({(1, 0): 1.0, (0, 1): gamma})
            out = out * factor ** nu
        return out

    def gammas(self):
        return [g for g, _ in self.factors]


def top_part(f: mp.MixedPolynomial) -> mp.MixedPolynomial:
    if f.is_zero():
        raise ZeroPolynomial("top part of the zero polynomial")
    d = f.deg_mixed
    return mp.MixedPolynomial({e: c for e, c in f.items() if e[0] + e[1] == d})


def top_part_factor(f: mp.MixedPolynomial) -> TopFactorization:
    """Factor the top part by the roots of its dehomogenized slice.

    With t = z/zbar, f_d(t, 1) / t^p is an honest univariate polynomial;
    its roots are t = -gamma_j.  Roots closer than CLUSTER_TOL are merged
    into one factor with the cluster size as multiplicity.
    """
    fd = top_part(f)
    d = fd.deg_mixed
    p = min(nu for (nu, _) in fd.terms())
    q = min(mu for (_, mu) in fd.terms())
    s = d - p - q
    coeffs = np.zeros(s + 1, dtype=complex)  # ascending in t
    for (nu, mu), c in fd.items():
        coeffs[nu - p] = c
    lead = coeffs[s]
    if s == 0:
        return TopFactorization(complex(lead), p, q, [], d)
    roots = np.roots(coeffs[::-1])
    gammas = sorted((-r for r in roots), key=lambda g: (round(g.real, 12), round(g.imag, 12)))
    # numerically factored k-fold roots scatter by about eps^(1/k), so the
    # merge tolerance must grow with the degree being factored
    tol = max(CLUSTER_TOL, (1e-13) ** (1.0 / s))
    factors = []
    for g in gammas:
        for idx, (g0, nu) in enumerate(factors):
            if abs(g - g0) <= tol * max(1.0, abs(g), abs(g0)):
                # running mean keeps the merged factor centered
                factors[idx] = ((g0 * nu + g) / (nu + 1), nu + 1)
                break
        else:
            factors.append((g, 1))
    return TopFactorization(complex(lead), p, q, factors, d)


def is_admissible(f: mp.MixedPolynomial, band: float = ADMISSIBILITY_BAND) -> bool:
    """True when every top factor satisfies ||gamma| - 1| > band."""
    fact = top_part_factor(f)
    return all(abs(abs(g) - 1.0) > band for g in fact.gammas())


def beta(f: mp.MixedPolynomial, band: float = ADMISSIBILITY_BAND) -> int:
    """Signed root count p - q + sum eps(gamma_j) nu_j for admissible f."""
    fact = top_part_factor(f)
    total = fact.p - fact.q
    for g, nu in fact.factors:
        r = abs(g)
        if abs(r - 1.0) <= band:
            raise NotAdmissible(f"|gamma| = {r} lies within {band} of 1")
        total += nu if r < 1.0 else -nu
    return total


# ---------------------------------------------------------------------------
# Winding numbers on circles
# ---------------------------------------------------------------------------

def _circle_winding(f: mp.MixedPolynomial, center: complex, radius: float,
                    initial: int = 64, max_points: int = 1 << 20) -> int:
    """Degree of f/|f| on the circle, by adaptive argument accumulation.

    Angular steps are bisected until consecutive samples differ in argument
    by less than pi/2, which pins the continuous argument lift and makes
    the accumulated total an exact multiple of 2*pi.
    """
    if radius <= 0:
        raise ValueError("circle radius must be positive")
    # local coefficient scale on the circle, so that tiny-|z| circles near
    # a high-order zero are still resolvable
    reach = abs(center) + radius
    scale = max(sum(abs(c) * reach ** (nu + mu) for (nu, mu), c in f.items()),
                1e-300)

    thetas = list(np.linspace(0.0, 2.0 * math.pi, initial, endpoint=False))
    values = {}

    def fill(new):
        zs = center + radius * np.exp(1j * np.array(new))
        vals = mp.evaluate_many(f, zs)
        for t, v in zip(new, vals):
            if abs(v) < MIN_CIRCLE_MODULUS * scale:
                raise CircleThroughZero(
                    f"|f| = {abs(v):.3e} at angle {t:.6f} on circle "
                    f"(center {center}, radius {radius})")
            values[t] = v

    fill(thetas)
    while True:
        refine = []
        total = 0.0
        ordered = sorted(values)
        for i, t0 in enumerate(ordered):
            t1 = ordered[(i + 1) % len(ordered)]
            span = (t1 - t0) % (2.0 * math.pi)
            dphi = cmath.phase(values[t1] / values[t0])
            if abs(dphi) >= 0.5 * math.pi:
                refine.append((t0 + 0.5 * span) % (2.0 * math.pi))
            else:
                total += dphi
        if not refine:
            w = total / (2.0 * math.pi)
            wi = round(w)
            if abs(w - wi) > 0.25:
                raise CircleThroughZero("winding accumulation did not close up")
            return int(wi)
        if len(values) + len(refine) > max_points:
            raise CircleThroughZero("winding refinement exceeded the sample budget")
        fill(refine)


def winding_beta(f: mp.MixedPolynomial, radius: float) -> int:
    """Winding of f on |z| = radius; equals beta(f) when the circle encloses
    every root (independent oracle for the factorization formula)."""
    if f.is_zero():
        raise ZeroPolynomial("winding of the zero polynomial")
    return _circle_winding(f, 0j, float(radius))


def local_multiplicity(f: mp.MixedPolynomial, center: complex, radius: float) -> int:
    """Local rotation number of f/|f| on the circle |z - center| = radius.

    Equals +1 (resp. -1) at a simple positive (negative) root and the
    signed multiplicity at isolated non-simple zeros.
    """
    if f.is_zero():
        raise ZeroPolynomial("multiplicity for the zero polynomial")
    return _circle_winding(f, complex(center), float(radius))

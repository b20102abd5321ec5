"""Weighted homogenization of mixed polynomials and fibration invariants.

A polynomial f in M(n+m; n, m) lifts, for any weight (p, q) with
gcd(p, q) = 1, to a strongly mixed weighted homogeneous polynomial of two
variables by z^i zbar^j -> z1^(qi) zbar1^(qj) z2^(p(n-i)) zbar2^(p(m-j)).
The lift has polar degree (n-m)pq and radial degree (n+m)pq, and the
topology of its global fibration is pinned by the certified root count:
the link has rho components, chi of the Milnor fiber is
-(n-m) p q rho + (n-m)(p+q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import mixedpoly as mp
from . import solver as slv
from .errors import (
    BadWeight,
    NonPositivePolarDegree,
    NotConvenient,
    NotInClass,
)


@dataclass
class WeightedHomogPoly:
    """Four-index term map (nu1, mu1, nu2, mu2) -> coefficient."""

    terms: dict
    weight: tuple  # (p, q)
    polar_degree: int
    radial_degree: int

    def evaluate(self, z1: complex, z2: complex) -> complex:
        acc = 0j
        for (n1, m1, n2, m2), c in self.terms.items():
            acc += (c * z1 ** n1 * z1.conjugate() ** m1
                    * z2 ** n2 * z2.conjugate() ** m2)
        return acc

    def degrees_consistent(self) -> bool:
        p, q = self.weight
        for (n1, m1, n2, m2) in self.terms:
            if (n1 - m1) * p + (n2 - m2) * q != self.polar_degree:
                return False
            if (n1 + m1) * p + (n2 + m2) * q != self.radial_degree:
                return False
        return True

    def euler_identity_residual(self, rho: float, theta: float,
                                z1: complex, z2: complex) -> float:
        """Relative defect of F(r e^(i t) . z) = r^dr e^(i dp t) F(z)."""
        p, q = self.weight
        scale = rho * cmath.exp(1j * theta)
        lhs = self.evaluate(z1 * scale ** p, z2 * scale ** q)
        rhs = (rho ** self.radial_degree
               * cmath.exp(1j * self.polar_degree * theta)
               * self.evaluate(z1, z2))
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


@dataclass
class MilnorReport:
    weight: tuple
    polar_degree: int
    radial_degree: int
    rho: int
    chi_fiber: int | None          # chi(M) of the weighted lift
    chi_fiber_reduced: int | None  # chi(M(G)) of the associated linear action
    link_components: int
    convenient: bool = True

    def to_json_dict(self) -> dict:
        return {
            "weight": list(self.weight),
            "polar_degree": self.polar_degree,
            "radial_degree": self.radial_degree,
            "rho": self.rho,
            "chi_fiber": self.chi_fiber,
            "chi_fiber_reduced": self.chi_fiber_reduced,
            "link_components": self.link_components,
            "convenient": self.convenient,
        }


def _check_weight(weight):
    p, q = weight
    if p < 1 or q < 1 or math.gcd(int(p), int(q)) != 1:
        raise BadWeight(f"weight {weight!r}: need positive coprime integers")
    return int(p), int(q)


def _class_degrees(f: mp.MixedPolynomial):
    info = mp.degrees(f)
    if not info.in_M_shape:
        raise NotInClass(
            f"mixed degree {info.deg_mixed} != deg_z + deg_zbar = "
            f"{info.deg_z + info.deg_zb}; not an M(n+m; n, m) member")
    return info.deg_z, info.deg_zb


def homogenize(f: mp.MixedPolynomial, weight=(1, 1)) -> WeightedHomogPoly:
    """Lift f in M(n+m; n, m) to the weighted homogeneous two-variable form."""
    p, q = _check_weight(weight)
    n, m = _class_degrees(f)
    terms = {}
    for (i, j), c in f.items():
        terms[(q * i, q * j, p * (n - i), p * (m - j))] = c
    return WeightedHomogPoly(terms, (p, q), (n - m) * p * q, (n + m) * p * q)


def dehomogenize(F: WeightedHomogPoly) -> mp.MixedPolynomial:
    """Invert homogenize; requires the convenient pure-axis monomials."""
    p, q = _check_weight(F.weight)
    if not F.degrees_consistent():
        raise NotInClass("terms do not satisfy the weighted degree relations")
    pq = p * q
    if F.polar_degree % pq or F.radial_degree % pq:
        raise NotInClass("polar/radial degree not divisible by p*q")
    dp = F.polar_degree // pq
    dr = F.radial_degree // pq
    if (dr + dp) % 2 or (dr - dp) % 2:
        raise NotInClass("polar and radial degree of different parity")
    n = (dr + dp) // 2
    m = (dr - dp) // 2
    if m < 0 or n < 0:
        raise NotInClass("negative class degrees")
    if (q * n, q * m, 0, 0) not in F.terms:
        raise NotConvenient("missing the pure z1-axis monomial")
    if (0, 0, p * n, p * m) not in F.terms:
        raise NotConvenient("missing the pure z2-axis monomial (zero constant term)")
    terms = {}
    for (n1, m1, n2, m2), c in F.terms.items():
        if n1 % q or m1 % q or n2 % p or m2 % p:
            raise NotInClass(f"exponents {(n1, m1, n2, m2)} not multiples of the weight")
        i, j = n1 // q, m1 // q
        if n2 != p * (n - i) or m2 != p * (m - j):
            raise NotInClass(f"term {(n1, m1, n2, m2)} inconsistent with the lift")
        terms[(i, j)] = c
    return mp.MixedPolynomial(terms)


def invariants(f: mp.MixedPolynomial, weight=(1, 1), rho: int | None = None,
               box=None) -> MilnorReport:
    """Milnor-fibration invariants of the weighted lift of f.

    rho may be passed in (a certified count); otherwise the solver runs
    with an automatic box.  Requires positive polar degree.
    """
    p, q = _check_weight(weight)
    n, m = _class_degrees(f)
    n_pol = n - m
    if n_pol <= 0:
        raise NonPositivePolarDegree(
            f"deg_z - deg_zbar = {n_pol}; the correspondence needs it positive")
    if rho is None:
        rho = slv.rho(f, box=box)
    convenient = f.coefficient(0, 0) != 0
    chi_fiber = None
    chi_reduced = None
    if convenient:
        chi_fiber = -n_pol * p * q * rho + n_pol * (p + q)
        chi_reduced = n_pol * (2 - rho)
    return MilnorReport(
        weight=(p, q),
        polar_degree=n_pol * p * q,
        radial_degree=(n + m) * p * q,
        rho=rho,
        chi_fiber=chi_fiber,
        chi_fiber_reduced=chi_reduced,
        link_components=rho,
        convenient=convenient,
    )

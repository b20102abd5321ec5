"""Cyclic symmetry of the extended-lens root sets and the radial oracle.

For the symmetric families every nonzero root z satisfies z^(2n) > 0, so
roots live on the 2n rays at angles j*pi/n and come in orbits under
multiplication by e^(2 pi i / n).  Restricting to a ray turns the family
into a real polynomial whose real roots can be counted exactly by Sturm
sequences over rational arithmetic; combined with the per-branch orbit
multiplicities this reproduces the two-dimensional count independently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadParameters,
    NotInvariant,
    NotSquarefree,
    RayViolation,
)

# ---------------------------------------------------------------------------
# Exact univariate polynomials over Fraction (ascending coefficients)
# ---------------------------------------------------------------------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _degree(p):
    return len(p) - 1


def _derivative(p):
    return [k * c for k, c in enumerate(p)][1:]


def _poly_mod(a, b):
    """Remainder of a mod b over Fraction, both ascending."""
    a = a[:]
    db = _degree(b)
    lead = b[-1]
    while _degree(a) >= db and a:
        k = _degree(a) - db
        factor = a[-1] / lead
        for i in range(db + 1):
            a[i + k] -= factor * b[i]
        a.pop()
        _trim(a)
        if not a:
            break
    return a


def _gcd_degree(a, b):
    a, b = a[:], b[:]
    while b:
        a, b = b, _poly_mod(a, b)
        _trim(b)
    return _degree(a)


def sturm_chain(coeffs):
    """Sturm chain of a squarefree rationalized polynomial."""
    p0 = _trim([Fraction(c) for c in coeffs])
    if _degree(p0) < 1:
        raise BadParameters("need a nonconstant polynomial")
    p1 = _derivative(p0)
    if _gcd_degree(p0, p1) > 0:
        raise NotSquarefree("polynomial shares a factor with its derivative")
    chain = [p0, p1]
    while _degree(chain[-1]) > 0:
        rem = [-c for c in _poly_mod(chain[-2], chain[-1])]
        _trim(rem)
        if not rem:
            break
        chain.append(rem)
    return chain


def _sign_at(p, x):
    if x == math.inf:
        return (1 if p[-1] > 0 else -1) if p else 0
    if x == -math.inf:
        s = 1 if p[-1] > 0 else -1
        return s if _degree(p) % 2 == 0 else -s
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return 0 if acc == 0 else (1 if acc > 0 else -1)


def _variations(chain, x):
    signs = [s for s in (_sign_at(p, x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(coeffs, interval=(-math.inf, math.inf)) -> int:
    """Exact number of real roots in (lo, hi].

    Coefficients are rationalized exactly (floats are dyadic rationals),
    so no rounding occurs anywhere in the chain.
    """
    lo, hi = interval
    if not lo < hi:
        raise BadParameters(f"empty interval {interval!r}")
    chain = sturm_chain(coeffs)
    lo_q = lo if lo == -math.inf else Fraction(lo)
    hi_q = hi if hi == math.inf else Fraction(hi)
    return _variations(chain, lo_q) - _variations(chain, hi_q)


# ---------------------------------------------------------------------------
# Radial equations of the symmetric families
# ---------------------------------------------------------------------------

BRANCHES = ("L", "Lp")


@dataclass(frozen=True)
class RadialEquation:
    """Real restriction of a symmetric family to one ray bundle.

    coefficients: ascending, exact dyadic rationals; real roots off zero
    correspond to family roots on the tagged rays.
    """

    coefficients: tuple
    branch: str
    n: int
    m: int

    def count(self, interval=(-math.inf, math.inf)) -> int:
        return sturm_count(self.coefficients, interval)

    def as_floats(self):
        return [float(c) for c in self.coefficients]


def radial_equation(n: int, m: int, a: float, eps: float = 0.0,
                    branch: str = "L") -> RadialEquation:
    """Real polynomial whose roots are the family's roots on the branch rays.

    Branch L restricts to the lines through angle 0; branch Lp (only for
    even n) to the lines through angle pi/n.  For eps > 0 the polynomial
    comes from the rotation-invariant form of the perturbed family, with
    |z|^(2m) = z^(2m) on the real line.
    """
    if branch not in BRANCHES:
        raise BadParameters(f"branch must be L or Lp, not {branch!r}")
    if not (n > m > 0):
        raise BadParameters(f"(n, m) = ({n}, {m}): need n > m > 0")
    if a <= 0:
        raise BadParameters(f"a = {a}: need a > 0")
    if eps < 0:
        raise BadParameters(f"eps = {eps}: need eps >= 0")
    if branch == "Lp" and n % 2 == 1:
        raise BadParameters("branch Lp exists only for even n (odd n has L = Lp)")
    an = Fraction(float(a ** n))
    ee = Fraction(float(eps))
    if eps == 0:
        if n > 2 * m:
            if branch == "L":
                # z^n - z^(n-2m) - a^n
                c = [Fraction(0)] * (n + 1)
                c[n] = Fraction(1)
                c[n - 2 * m] -= 1
                c[0] -= an
            else:
                # u^n + a^n - u^(n-2m)
                c = [Fraction(0)] * (n + 1)
                c[n] = Fraction(1)
                c[n - 2 * m] -= 1
                c[0] += an
        else:
            if branch == "L":
                # z^(2m-n) (z^n - a^n) - 1
                c = [Fraction(0)] * (2 * m + 1)
                c[2 * m] = Fraction(1)
                c[2 * m - n] -= an
                c[0] -= 1
            else:
                # u^(2m-n) (u^n + a^n) - 1
                c = [Fraction(0)] * (2 * m + 1)
                c[2 * m] = Fraction(1)
                c[2 * m - n] += an
                c[0] -= 1
    else:
        if branch == "L":
            # z^(n+2m) - (1+eps) z^n - a^n z^(2m) + a^n eps
            c = [Fraction(0)] * (n + 2 * m + 1)
            c[n + 2 * m] = Fraction(1)
            c[n] -= 1 + ee
            c[2 * m] -= an
            c[0] += an * ee
        else:
            # u^(n+2m) - (1+eps) u^n + a^n u^(2m) - a^n eps
            c = [Fraction(0)] * (n + 2 * m + 1)
            c[n + 2 * m] = Fraction(1)
            c[n] -= 1 + ee
            c[2 * m] += an
            c[0] -= an * ee
    return RadialEquation(tuple(c), branch, n, m)


def branch_multiplicity(n: int, branch: str) -> int:
    """Roots contributed per real radial root: n for odd n (the full line
    orbit), n/2 for even n where each line is doubled in the union."""
    if branch not in BRANCHES:
        raise BadParameters(f"branch must be L or Lp, not {branch!r}")
    if n % 2 == 1:
        if branch == "Lp":
            raise BadParameters("branch Lp exists only for even n")
        return n
    return n // 2


def radial_census(n: int, m: int, a: float, eps: float = 0.0) -> int:
    """Total nonzero-root count predicted by the radial Sturm oracle."""
    total = radial_equation(n, m, a, eps, "L").count() * branch_multiplicity(n, "L")
    if n % 2 == 0:
        total += (radial_equation(n, m, a, eps, "Lp").count()
                  * branch_multiplicity(n, "Lp"))
    return total


# ---------------------------------------------------------------------------
# Ray constraints and orbit decomposition of a solved inventory
# ---------------------------------------------------------------------------

ORIGIN_TOL = 1e-8


@dataclass
class RayConfiguration:
    """Assignment of nonzero roots to the 2n rays at angles j pi / n."""

    n: int
    assignments: dict = field(default_factory=dict)  # root index -> ray j
    orbits: list = field(default_factory=list)       # lists of root indices

    def ray_angle(self, j: int) -> float:
        return j * math.pi / self.n

    def branch_of_ray(self, j: int) -> str:
        return "L" if j % 2 == 0 else "Lp"

    def count_on_branch(self, branch: str) -> int:
        return sum(1 for j in self.assignments.values()
                   if self.branch_of_ray(j) == branch)


def verify_ray_constraint(inventory, n: int, tol: float = 1e-8) -> RayConfiguration:
    """Check z^(2n) is positive real for every nonzero root and assign rays.

    Raises RayViolation listing the offending roots; origin roots (and
    flagged origin clusters) are exempt, matching the nonzero-root
    statements of the symmetric families.
    """
    config = RayConfiguration(n=n)
    violations = []
    for idx, root in enumerate(inventory.roots):
        z = root.center
        if abs(z) <= ORIGIN_TOL:
            continue
        w = z ** (2 * n)
        if w.real <= 0.0 or abs(w.imag) > tol * abs(z) ** (2 * n):
            violations.append((idx, z, w))
            continue
        j = round(cmath.phase(z) / (math.pi / n)) % (2 * n)
        config.assignments[idx] = j
    if violations:
        head = ", ".join(f"root {i} at {z:.6g}" for i, z, _ in violations[:5])
        raise RayViolation(
            f"{len(violations)} roots violate the z^(2n) > 0 constraint: {head}")
    config.orbits = orbit_decompose(inventory, n, tol=None)
    return config


def orbit_decompose(inventory, n: int, tol=None) -> list:
    """Partition nonzero roots into orbits under rotation by e^(2 pi i/n).

    Two roots match when the rotated certified disk of one meets the disk
    of the other (tol=None); an explicit tol overrides that radius sum.
    Raises NotInvariant if any rotation leaves the root set.
    """
    roots = [(i, r) for i, r in enumerate(inventory.roots)
             if abs(r.center) > ORIGIN_TOL]
    zeta = cmath.exp(2j * math.pi / n)
    parent = {i: i for i, _ in roots}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, r in roots:
        target = r.center * zeta
        hit = None
        for j, s in roots:
            allowed = tol if tol is not None else (r.radius + s.radius + 1e-12)
            if abs(s.center - target) <= allowed:
                hit = j
                break
        if hit is None:
            raise NotInvariant(
                f"rotation of root {r.center:.6g} by e^(2 pi i/{n}) misses the root set")
        if inventory.roots[hit].orientation != r.orientation:
            raise NotInvariant(
                f"orientation flips along the orbit of {r.center:.6g}")
        ra, rb = find(i), find(hit)
        if ra != rb:
            parent[ra] = rb
    orbits = {}
    for i, _ in roots:
        orbits.setdefault(find(i), []).append(i)
    return sorted(orbits.values(), key=lambda o: (len(o), o))

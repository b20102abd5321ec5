"""Constructors for every parameterized family studied by the library.

All constructors return the mixed-polynomial numerator of the defining
rational equation.  Rational preset constants (1/30, 1/8, 1/800, ...) are
written once as exact fractions of doubles so repeated construction never
drifts.

Sign convention for the bifurcated family: the numerator analyzed here is

    ell_eps(n, m, a, e) = z^m zbar^m (z^n - a^n) - z^n - e (z^n - a^n),

the zero set of zbar^m - z^(n-m)/(z^n - a^n) - e/z^m.  The same convention
(a small positive point mass at the origin) reproduces the maximal-count
configurations; the opposite sign only keeps the unperturbed roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import mixedpoly as mp
from .errors import (
    BadParameters,
    DegreeViolation,
    DuplicatePoles,
    InputError,
    ZeroIsRoot,
)

Z = mp.Z
ZB = mp.ZBAR


def _from_coeffs(coeffs, conj=False) -> mp.MixedPolynomial:
    """Univariate polynomial from ascending coefficients, in z or zbar."""
    terms = {}
    for k, c in enumerate(coeffs):
        c = complex(c)
        if c != 0:
            terms[(0, k) if conj else (k, 0)] = c
    return mp.MixedPolynomial(terms)


def generalized_lens(p_coeffs, q_coeffs, m: int) -> mp.MixedPolynomial:
    """Numerator zbar^m q(z) - p(z) of the generalized lens equation.

    Coefficient lists are ascending; requires deg q = n >= 1, deg p <= n
    and m >= 1, which puts the result in L(n+m; n, m).
    """
    if m < 1:
        raise BadParameters(f"m = {m}: need m >= 1")
    p = _from_coeffs(p_coeffs)
    q = _from_coeffs(q_coeffs)
    if q.is_zero():
        raise DegreeViolation("q must be nonzero")
    n = q.deg_z
    if n < 1:
        raise DegreeViolation("deg q must be at least 1")
    if not p.is_zero() and p.deg_z > n:
        raise DegreeViolation(f"deg p = {p.deg_z} exceeds deg q = {n}")
    return mp.monomial(0, m) * q - p


def from_point_masses(sigmas, alphas) -> mp.MixedPolynomial:
    """Numerator of zbar - sum_i sigma_i / (z - alpha_i), an n-mass lens.

    Multiplied through by prod (z - alpha_i); lands in M(n+1; n, 1).
    """
    sigmas = [complex(s) for s in sigmas]
    alphas = [complex(a) for a in alphas]
    if len(sigmas) != len(alphas) or not sigmas:
        raise InputError("need matching nonempty mass and position lists")
    if any(s == 0 for s in sigmas):
        raise BadParameters("zero mass sigma_i")
    for i in range(len(alphas)):
        for j in range(i + 1, len(alphas)):
            if alphas[i] == alphas[j]:
                raise DuplicatePoles(f"alpha repeated at {alphas[i]}")
    prod = mp.ONE
    for a in alphas:
        prod = prod * (Z - a)
    out = ZB * prod
    for i, s in enumerate(sigmas):
        partial = mp.ONE
        for j, a in enumerate(alphas):
            if j != i:
                partial = partial * (Z - a)
        out = out - s * partial
    return out


def ell(n: int, m: int, a: float) -> mp.MixedPolynomial:
    """Symmetric extended lens numerator zbar^m (z^n - a^n) - z^(n-m)."""
    _check_nma(n, m, a)
    return mp.monomial(0, m) * (Z ** n - a ** n) - mp.monomial(n - m, 0)


def ell_eps(n: int, m: int, a: float, eps: float) -> mp.MixedPolynomial:
    """Bifurcated symmetric lens numerator; member of L(n1+m; n1, m), n1 = n+m."""
    _check_nma(n, m, a)
    if eps < 0:
        raise BadParameters(f"eps = {eps}: need eps >= 0")
    if eps == 0:
        return ell(n, m, a)
    an = a ** n
    return (mp.monomial(m, m) * (Z ** n - an)
            - mp.monomial(n, 0)
            - eps * (Z ** n - mp.monomial(0, 0, an)))


def default_eps(n: int, m: int, a: float) -> float:
    """Perturbation scale that keeps the bifurcating roots well separated
    from the unperturbed ones (new roots sit near |z| = eps^(1/2m), the
    smallest old ones near a^(n/(n-2m)) when n > 2m)."""
    _check_nma(n, m, a)
    if n > 2 * m:
        return min(1e-3, 0.01 * a ** (2.0 * m * n / (n - 2.0 * m)))
    return 0.01 * a ** n


def _check_nma(n, m, a):
    if not (n > m > 0):
        raise BadParameters(f"(n, m) = ({n}, {m}): need n > m > 0")
    if not a > 0:
        raise BadParameters(f"a = {a}: need a > 0")


def phi_t(lens: mp.MixedPolynomial, m: int, t: float) -> mp.MixedPolynomial:
    """Harmonically splitting perturbation -t zbar^m q(z) + zbar q(z) - p(z).

    `lens` must be a generalized-lens numerator with anti-holomorphic
    degree 1 and no zero at the origin; t = 0 returns it unchanged.
    """
    if t < 0:
        raise BadParameters(f"t = {t}: need t >= 0")
    if m < 2:
        raise BadParameters(f"m = {m}: need m >= 2 for the splitting term")
    if lens.is_zero() or lens.deg_zb != 1:
        raise DegreeViolation("lens must have anti-holomorphic degree 1")
    q_terms = {(nu, 0): c for (nu, mu), c in lens.items() if mu == 1}
    q = mp.MixedPolynomial(q_terms)
    if q.deg_z != lens.deg_z:
        raise DegreeViolation("lens is not of the shape zbar q(z) - p(z)")
    if abs(mp.evaluate(lens, 0j)) == 0.0:
        raise ZeroIsRoot("the origin is a root of the lens polynomial")
    if t == 0:
        return lens
    return lens - t * (mp.monomial(0, m) * q)


_RHIE_PRESETS = {
    2: ("f2", [(2, 1, 1.0), (0, 1, -1 / 2), (1, 0, -1.0), (0, 0, 1 / 30)]),
    3: ("f3", [(3, 1, 1.0), (0, 1, -1 / 8), (2, 0, -1.0), (0, 0, 1 / 1000)]),
}


def rhie(n: int, a: float | None = None, eps: float | None = None) -> mp.MixedPolynomial:
    """Maximal lens configurations: numerator of zbar = f_n(z).

    Presets: n = 2 uses (z - 1/30)/(z^2 - 1/2); n = 3 uses
    (z^2 - 1/1000)/(z^3 - 1/8); n >= 4 uses the ring-plus-central-mass
    family z^(n-2)/(z^(n-1) - a^(n-1)) + eps/z with defaults
    a^(n-1) = 1/5 and eps = 1/800 as in the degree-4 configuration.
    """
    if n < 2:
        raise BadParameters(f"n = {n}: need n >= 2")
    if n in _RHIE_PRESETS:
        _, terms = _RHIE_PRESETS[n]
        return mp.MixedPolynomial({(nu, mu): c for nu, mu, c in terms})
    if a is None:
        a = (1 / 5) ** (1.0 / (n - 1))
    if eps is None:
        eps = 1 / 800
    return ell_eps(n - 1, 1, a, eps)


def product_family(n: int, m: int, a: int) -> mp.MixedPolynomial:
    """(z^(n-a) zbar^(m-a) - 1)(z^a - 2)(zbar^a - 3), with rho = n - m + 2a.

    a = 0 returns the bare z^n zbar^m - 1 (the minimal-count member).
    """
    if not (0 <= a <= m <= n) or m < 1:
        raise BadParameters(f"(n, m, a) = ({n}, {m}, {a}): need 0 <= a <= m <= n, m >= 1")
    core = mp.monomial(n - a, m - a) - 1
    if a == 0:
        return core
    return core * (Z ** a - 2) * (ZB ** a - 3)


def chebyshev_t(k: int, x: mp.MixedPolynomial) -> mp.MixedPolynomial:
    """T_k evaluated on a mixed-polynomial argument, by the recurrence."""
    if k == 0:
        return mp.ONE
    t_prev, t_cur = mp.ONE, x
    for _ in range(k - 1):
        t_prev, t_cur = t_cur, 2 * x * t_cur - t_prev
    return t_cur


def chebyshev_example(n: int, a: float = 10.0, b: float = 10.0) -> mp.MixedPolynomial:
    """(y - T_n(x)) + i (x - a T_n(b y)) as a mixed polynomial.

    Substitutes x = (z + zbar)/2 and y = -i(z - zbar)/2; for a, b >> 1 all
    n^2 zeros are real points inside (-1, 1) x (-1, 1).
    """
    if n < 1:
        raise BadParameters(f"n = {n}: need n >= 1")
    x = mp.MixedPolynomial({(1, 0): 0.5, (0, 1): 0.5})
    y = mp.MixedPolynomial({(1, 0): -0.5j, (0, 1): 0.5j})
    return (y - chebyshev_t(n, x)) + 1j * (x - a * chebyshev_t(n, b * y))


def symmetric_power(m: int) -> mp.MixedPolynomial:
    """The degree-2 preset composed with z -> z^m; lies in L(3m; 2m, m)
    and keeps five roots per sheet (rho = 5m)."""
    if m < 1:
        raise BadParameters(f"m = {m}: need m >= 1")
    return mp.substitute_power(rhie(2), m)


# ---------------------------------------------------------------------------
# Declarative family specs (CLI surface)
# ---------------------------------------------------------------------------

FAMILY_KINDS = ("generalized", "point_masses", "ell", "ell_eps", "phi_t",
                "rhie_preset", "product", "chebyshev", "symmetric_power")


@dataclass
class LensFamilySpec:
    """Symbolic description of a family member; elaborate() builds it."""

    kind: str
    n: int | None = None
    m: int | None = None
    a: float | None = None
    b: float | None = None
    eps: float | None = None
    t: float | None = None
    preset: int | None = None
    p_coeffs: list = field(default_factory=list)
    q_coeffs: list = field(default_factory=list)
    sigmas: list = field(default_factory=list)
    alphas: list = field(default_factory=list)

    def elaborate(self) -> mp.MixedPolynomial:
        k = self.kind
        if k not in FAMILY_KINDS:
            raise InputError(f"unknown family kind {k!r} (choose from {FAMILY_KINDS})")
        if k == "generalized":
            return generalized_lens(self.p_coeffs, self.q_coeffs, self.m or 1)
        if k == "point_masses":
            return from_point_masses(self.sigmas, self.alphas)
        if k == "ell":
            self._need("n", "m", "a")
            return ell(self.n, self.m, self.a)
        if k == "ell_eps":
            self._need("n", "m", "a")
            eps = self.eps if self.eps is not None else default_eps(self.n, self.m, self.a)
            return ell_eps(self.n, self.m, self.a, eps)
        if k == "phi_t":
            self._need("m", "t")
            base = rhie(self.preset or 2)
            return phi_t(base, self.m, self.t)
        if k == "rhie_preset":
            if self.preset is None:
                raise InputError("rhie_preset needs --preset")
            return rhie(self.preset, self.a, self.eps)
        if k == "product":
            self._need("n", "m")
            return product_family(self.n, self.m, int(self.a or 0))
        if k == "chebyshev":
            self._need("n")
            return chebyshev_example(self.n,
                                     self.a if self.a is not None else 10.0,
                                     self.b if self.b is not None else 10.0)
        if k == "symmetric_power":
            self._need("m")
            return symmetric_power(self.m)
        raise InputError(f"unhandled kind {k!r}")

    def _need(self, *names):
        missing = [x for x in names if getattr(self, x) is None]
        if missing:
            raise InputError(f"family {self.kind!r} needs {', '.join('--' + x for x in missing)}")

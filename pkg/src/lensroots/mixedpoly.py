"""Sparse algebra for mixed polynomials in one complex variable.

A mixed polynomial is a finite sum  sum_{nu,mu} a_{nu,mu} z^nu zbar^mu
with complex coefficients.  Writing z = x + iy it splits into a pair of
real bivariate polynomials f = g(x,y) + i h(x,y); simple zeros are graded
positive or negative by the sign of the Jacobian of (g, h).

Terms are kept in an exponent map {(nu, mu): coefficient}; coefficients are
double precision and zero coefficients are never stored.  Values are
immutable after construction, so they can be shared freely across workers.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ZeroPolynomial

# Relative threshold below which a coefficient produced by arithmetic is
# treated as cancellation noise and dropped (prevents phantom degrees).
DROP_RELATIVE = 1e-14


def _cleaned(terms: dict, scale: float) -> dict:
    cutoff = DROP_RELATIVE * scale
    return {e: c for e, c in terms.items() if abs(c) > cutoff}


class MixedPolynomial:
    """Immutable sparse polynomial in z and zbar."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (nu, mu), c in terms.items():
                if nu < 0 or mu < 0 or nu != int(nu) or mu != int(mu):
                    raise InputError(f"bad exponent pair ({nu}, {mu})")
                c = complex(c)
                if c != 0:
                    key = (int(nu), int(mu))
                    clean[key] = clean.get(key, 0j) + c
            clean = {e: c for e, c in clean.items() if c != 0}
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MixedPolynomial is immutable")

    # -- basic queries ----------------------------------------------------

    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, nu: int, mu: int) -> complex:
        return self._terms.get((nu, mu), 0j)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def max_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    @property
    def deg_z(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(nu for nu, _ in self._terms)

    @property
    def deg_zb(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(mu for _, mu in self._terms)

    @property
    def deg_mixed(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(nu + mu for nu, mu in self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0j) + c
        scale = max(self.max_coeff(), other.max_coeff())
        return MixedPolynomial(_cleaned(out, scale))

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return MixedPolynomial({e: c * other for e, c in self._terms.items()})
        other = _coerce(other)
        out = {}
        for (n1, m1), c1 in self._terms.items():
            for (n2, m2), c2 in other._terms.items():
                e = (n1 + n2, m1 + m2)
                out[e] = out.get(e, 0j) + c1 * c2
        scale = self.max_coeff() * other.max_coeff()
        return MixedPolynomial(_cleaned(out, scale))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0 or k != int(k):
            raise InputError("only nonnegative integer powers")
        out = MixedPolynomial({(0, 0): 1.0})
        base = self
        k = int(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def conjugate(self) -> "MixedPolynomial":
        """Complex conjugate: swaps (nu, mu) and conjugates coefficients."""
        return MixedPolynomial({(mu, nu): c.conjugate() for (nu, mu), c in self._terms.items()})

    # -- evaluation -------------------------------------------------------

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def as_arrays(self):
        """(nu, mu, re, im) arrays sorted by exponents, for the kernels."""
        items = sorted(self._terms.items())
        nu = np.array([e[0] for e, _ in items], dtype=np.int64)
        mu = np.array([e[1] for e, _ in items], dtype=np.int64)
        cre = np.array([c.real for _, c in items], dtype=np.float64)
        cim = np.array([c.imag for _, c in items], dtype=np.float64)
        return nu, mu, cre, cim

    # -- text forms ---------------------------------------------------------

    def __repr__(self):
        return f"MixedPolynomial({to_text(self)!r})"


def _coerce(v) -> MixedPolynomial:
    if isinstance(v, MixedPolynomial):
        return v
    if isinstance(v, (int, float, complex)):
        return MixedPolynomial({(0, 0): v})
    raise TypeError(f"cannot coerce {type(v)!r} to MixedPolynomial")


# Convenience generators.
Z = MixedPolynomial({(1, 0): 1.0})
ZBAR = MixedPolynomial({(0, 1): 1.0})
ONE = MixedPolynomial({(0, 0): 1.0})


def monomial(nu: int, mu: int, c=1.0) -> MixedPolynomial:
    return MixedPolynomial({(nu, mu): c})


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def evaluate(f: MixedPolynomial, z: complex) -> complex:
    """Evaluate sum a_{nu,mu} z^nu conj(z)^mu at a point."""
    z = complex(z)
    zb = z.conjugate()
    nmax = max((nu for (nu, _), _c in f.items()), default=0)
    mmax = max((mu for (_, mu), _c in f.items()), default=0)
    zp = [1.0 + 0j]
    for _ in range(nmax):
        zp.append(zp[-1] * z)
    zbp = [1.0 + 0j]
    for _ in range(mmax):
        zbp.append(zbp[-1] * zb)
    return sum((c * zp[nu] * zbp[mu] for (nu, mu), c in f.items()), 0j)


def evaluate_many(f: MixedPolynomial, zs) -> np.ndarray:
    """Vectorized evaluation, dispatched through the active kernel backend."""
    from . import _kernels

    zs = np.asarray(zs, dtype=np.complex128)
    nu, mu, cre, cim = f.as_arrays()
    wre, wim = _kernels.eval_points(nu, mu, cre, cim,
                                    np.ascontiguousarray(zs.real.ravel()),
                                    np.ascontiguousarray(zs.imag.ravel()))
    return (wre + 1j * wim).reshape(zs.shape)


@dataclass(frozen=True)
class DegreeInfo:
    deg_z: int
    deg_zb: int
    deg_mixed: int
    in_M_shape: bool      # deg_mixed == deg_z + deg_zb
    in_L_shape: bool      # zbar^m q(z) - p(z) with deg q = deg_z
    in_Lhs_shape: bool    # r(zbar) q(z) - p(z)

    def in_class(self, n: int, m: int) -> bool:
        return (self.deg_z, self.deg_zb, self.deg_mixed) == (n, m, n + m)

    def astuple(self):
        return (self.deg_z, self.deg_zb, self.deg_mixed)


def degrees(f: MixedPolynomial) -> DegreeInfo:
    """Holomorphic, anti-holomorphic and mixed degree plus shape tags."""
    if f.is_zero():
        raise ZeroPolynomial("degrees of the zero polynomial")
    n, m, d = f.deg_z, f.deg_zb, f.deg_mixed
    return DegreeInfo(n, m, d, d == n + m, _is_l_shape(f, n, m), _is_lhs_shape(f, n, m))


def _is_l_shape(f, n, m) -> bool:
    if m < 1:
        return False
    mus = {mu for (_, mu) in f.terms()}
    if not mus <= {0, m}:
        return False
    top = max(nu for (nu, mu) in f.terms() if mu == m)
    return top == n


def _is_lhs_shape(f, n, m) -> bool:
    # All zbar-degree >= 1 slices must be proportional to a single q(z).
    if m < 1:
        return False
    cols = {}
    for (nu, mu), c in f.items():
        if mu >= 1:
            cols.setdefault(mu, {})[nu] = c
    if m not in cols:
        return False
    qcol = cols[m]
    if max(qcol) != n:
        return False
    qnorm = max(abs(c) for c in qcol.values())
    for mu, col in cols.items():
        if mu == m:
            continue
        # col == r_mu * qcol for one scalar r_mu
        lead = max(col)
        if lead not in qcol:
            return False
        ratio = col[lead] / qcol[lead]
        for nu in set(col) | set(qcol):
            lhs = col.get(nu, 0j)
            rhs = ratio * qcol.get(nu, 0j)
            if abs(lhs - rhs) > 1e-9 * max(1.0, abs(ratio) * qnorm):
                return False
    return True


# ---------------------------------------------------------------------------
# Realification: f(z, zbar) = g(x, y) + i h(x, y)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealPair:
    """The pair (g, h) of real bivariate polynomials with f = g + i h.

    Coefficient maps are {(i, j): float} for x^i y^j.
    """

    g: dict
    h: dict

    def evaluate(self, x: float, y: float):
        return (_eval_xy(self.g, x, y), _eval_xy(self.h, x, y))


def _eval_xy(coeffs: dict, x: float, y: float) -> float:
    imax = max((i for i, _ in coeffs), default=0)
    jmax = max((j for _, j in coeffs), default=0)
    xp = [1.0]
    for _ in range(imax):
        xp.append(xp[-1] * x)
    yp = [1.0]
    for _ in range(jmax):
        yp.append(yp[-1] * y)
    return sum(c * xp[i] * yp[j] for (i, j), c in coeffs.items())


def realify(f: MixedPolynomial) -> RealPair:
    """Exact expansion under z = x + iy, zbar = x - iy."""
    acc = {}
    for (nu, mu), a in f.items():
        # z^nu = sum_k C(nu,k) x^(nu-k) (iy)^k ; zbar^mu likewise with (-iy)^l
        for k in range(nu + 1):
            ck = math.comb(nu, k) * (1j) ** k
            for l in range(mu + 1):
                cl = math.comb(mu, l) * (-1j) ** l
                e = (nu - k + mu - l, k + l)
                acc[e] = acc.get(e, 0j) + a * ck * cl
    g = {e: c.real for e, c in acc.items() if c.real != 0.0}
    h = {e: c.imag for e, c in acc.items() if c.imag != 0.0}
    return RealPair(g, h)


def substitute_power(f: MixedPolynomial, m: int) -> MixedPolynomial:
    """f(z^m, zbar^m): every exponent pair scales by m."""
    if m < 1 or m != int(m):
        raise InputError("power substitution needs m >= 1")
    m = int(m)
    return MixedPolynomial({(nu * m, mu * m): c for (nu, mu), c in f.items()})


# ---------------------------------------------------------------------------
# Wirtinger derivatives and the Jacobian of (g, h)
# ---------------------------------------------------------------------------

def diff_z(f: MixedPolynomial) -> MixedPolynomial:
    return MixedPolynomial({(nu - 1, mu): nu * c for (nu, mu), c in f.items() if nu})


def diff_zb(f: MixedPolynomial) -> MixedPolynomial:
    return MixedPolynomial({(nu, mu - 1): mu * c for (nu, mu), c in f.items() if mu})


def wirtinger_jacobian(f: MixedPolynomial, z: complex) -> float:
    """Jacobian determinant of (g, h) at (Re z, Im z).

    Equals |df/dz|^2 - |df/dzbar|^2; its sign classifies a simple root as
    orientation preserving (positive) or reversing (negative).
    """
    fz = evaluate(diff_z(f), z)
    fzb = evaluate(diff_zb(f), z)
    return abs(fz) ** 2 - abs(fzb) ** 2


# ---------------------------------------------------------------------------
# Canonical text form and JSON interchange
# ---------------------------------------------------------------------------

def to_text(f: MixedPolynomial) -> str:
    """Canonical form: '+'-joined '(re,im) z^nu zb^mu' terms, sorted."""
    if f.is_zero():
        return "(0,0)"
    parts = []
    for (nu, mu) in sorted(f.terms()):
        c = f.coefficient(nu, mu)
        s = f"({c.real:.17g},{c.imag:.17g})"
        if nu:
            s += f" z^{nu}"
        if mu:
            s += f" zb^{mu}"
        parts.append(s)
    return " + ".join(parts)


_TERM_RE = re.compile(
    r"^\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)"
    r"(?:\s*\*?\s*z(?:\^(\d+))?)?"
    r"(?:\s*\*?\s*zb(?:\^(\d+))?)?\s*$"
)


def parse_text(text: str) -> MixedPolynomial:
    """Parse the canonical text form; 'zb' stands for zbar."""
    terms = {}
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            continue
        m = _TERM_RE.match(raw)
        if not m:
            raise InputError(f"cannot parse term {raw!r}")
        re_s, im_s, znu, zmu = m.groups()
        try:
            c = complex(float(re_s), float(im_s))
        except ValueError as exc:
            raise InputError(f"bad coefficient in {raw!r}") from exc
        nu = int(znu) if znu else (1 if re.search(r"z(?!b)", raw) else 0)
        mu = int(zmu) if zmu else (1 if "zb" in raw else 0)
        e = (nu, mu)
        terms[e] = terms.get(e, 0j) + c
    return MixedPolynomial(terms)


def to_json_dict(f: MixedPolynomial) -> dict:
    return {
        "terms": [
            {"nu": nu, "mu": mu,
             "re": f.coefficient(nu, mu).real, "im": f.coefficient(nu, mu).imag}
            for (nu, mu) in sorted(f.terms())
        ]
    }


def from_json_dict(data: dict) -> MixedPolynomial:
    if not isinstance(data, dict) or "terms" not in data:
        raise InputError("polynomial JSON must be an object with a 'terms' list")
    terms = {}
    for t in data["terms"]:
        try:
            nu, mu = int(t["nu"]), int(t["mu"])
            c = complex(float(t["re"]), float(t["im"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad term entry {t!r}") from exc
        if nu < 0 or mu < 0:
            raise InputError(f"negative exponent in {t!r}")
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise InputError(f"non-finite coefficient in {t!r}")
        e = (nu, mu)
        terms[e] = terms.get(e, 0j) + c
    return MixedPolynomial(terms)


def dumps(f: MixedPolynomial) -> str:
    return json.dumps(to_json_dict(f))


def loads(s: str) -> MixedPolynomial:
    try:
        data = json.loads(s)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)

"""Complex polynomial and rational-function arithmetic.

Coefficient vectors are stored in ascending degree.  All scalars are
double-precision complex; degrees stay at desk scale (m+n <= 8 or so),
which keeps every solve here well inside what doubles can certify.
"""
from __future__ import annotations

import numbers

import numpy as np

from .errors import PoleAtEvaluationPoint

#: trailing coefficients below TRIM_REL * max|coeff| are dropped
TRIM_REL = 1e-13
#: |den(0)| above DEN_NORM_REL * max|den coeff| allows the q(0)=1 normalization
DEN_NORM_REL = 1e-10
#: default tolerance for matching a numerator root to a denominator root
DEFECT_ROOT_TOL = 1e-9
#: pole signalling threshold for rational evaluation
POLE_REL = 1e-14
#: coefficient arrays with imaginary dust below this (relative) are realified
REALIFY_REL = 1e-12


class ComplexPolynomial:
    """Polynomial over complex scalars, trimmed of trailing near-zero terms."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        scale = np.abs(c).max()
        if scale == 0.0:
            c = np.zeros(1, dtype=complex)
        else:
            keep = np.nonzero(np.abs(c) > TRIM_REL * scale)[0]
            c = c[: keep[-1] + 1] if keep.size else np.zeros(1, dtype=complex)
        self.coeffs = c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    def __call__(self, z):
        """Horner evaluation; works on scalars and numpy arrays."""
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.coeffs[-1], dtype=complex)
        for ck in self.coeffs[-2::-1]:
            out = out * z + ck
        return out if out.shape else complex(out)

    def derivative(self) -> "ComplexPolynomial":
        if self.degree == 0:
            return ComplexPolynomial([0.0])
        k = np.arange(1, len(self.coeffs))
        return ComplexPolynomial(self.coeffs[1:] * k)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = np.zeros(n, dtype=complex)
        out[: len(a)] += a
        out[: len(b)] += b
        return ComplexPolynomial(out)

    def __sub__(self, other):
        return self + (other * (-1.0))

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return ComplexPolynomial(self.coeffs * complex(other))
        return ComplexPolynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ComplexPolynomial({self.coeffs.tolist()})"


def poly_from_roots(roots, leading=1.0) -> ComplexPolynomial:
    """Polynomial leading * prod (z - root)."""
    c = np.array([complex(leading)])
    for r in np.asarray(roots, dtype=complex).ravel():
        c = np.convolve(c, np.array([-r, 1.0], dtype=complex))
    return ComplexPolynomial(c)


def poly_eval(p: ComplexPolynomial, z) -> complex:
    return p(z)


def poly_roots(p: ComplexPolynomial) -> np.ndarray:
    """All complex roots (with multiplicity) via companion-matrix eigenvalues.

    A short Newton polish is applied to simple roots; the contract is the
    residual bound |p(root)| <= 1e-8 * max|coeff| * (1 + |root|)^degree.
    """
    if p.is_zero:
        raise ValueError("roots of the zero polynomial are undefined")
    if p.degree == 0:
        raise ValueError("no roots of a nonzero constant")
    roots = np.roots(p.coeffs[::-1])
    dp = p.derivative()
    scale = np.abs(p.coeffs).max()
    for _ in range(2):
        pv = p(roots)
        dv = dp(roots)
        ok = np.abs(dv) > 1e-8 * scale * (1.0 + np.abs(roots)) ** max(p.degree - 1, 0)
        step = np.where(ok, pv / np.where(ok, dv, 1.0), 0.0)
        roots = roots - step
    return roots


class RationalFunction:
    """Quotient num/den with declared degree bounds (m, n).

    Normalization at construction: den(0) = 1 whenever |den(0)| clears
    DEN_NORM_REL relative to the largest denominator coefficient, otherwise
    the largest-magnitude denominator coefficient is scaled to 1.
    """

    def __init__(self, num, den, m=None, n=None):
        num = num if isinstance(num, ComplexPolynomial) else ComplexPolynomial(num)
        den = den if isinstance(den, ComplexPolynomial) else ComplexPolynomial(den)
        if den.is_zero:
            raise ValueError("denominator is identically zero")
        d0 = den(0.0)
        dmax = np.abs(den.coeffs).max()
        if abs(d0) > DEN_NORM_REL * dmax:
            factor = 1.0 / d0
        else:
            factor = 1.0 / den.coeffs[np.abs(den.coeffs).argmax()]
        nc = num.coeffs * factor
        dc = den.coeffs * factor
        cmax = max(np.abs(nc).max(), np.abs(dc).max())
        if cmax > 0 and max(np.abs(nc.imag).max(), np.abs(dc.imag).max()) <= REALIFY_REL * cmax:
            nc = nc.real.astype(complex)
            dc = dc.real.astype(complex)
        self.num = ComplexPolynomial(nc)
        self.den = ComplexPolynomial(dc)
        self.m = self.num.degree if m is None else int(m)
        self.n = self.den.degree if n is None else int(n)
        self._defect = None

    @property
    def defect(self) -> int:
        if self._defect is None:
            self._defect = compute_defect(self)
        return self._defect

    def __call__(self, z):
        """Evaluate; scalars get pole signalling, arrays evaluate blindly."""
        if np.ndim(z) == 0:
            nv = self.num(complex(z))
            dv = self.den(complex(z))
            if abs(dv) < POLE_REL * (1.0 + abs(nv)):
                raise PoleAtEvaluationPoint(f"denominator vanishes at z={z}")
            return nv / dv
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.num(z) / self.den(z)

    def derivative(self) -> "RationalFunction":
        """(p/q)' = (p'q - pq')/q^2, with refreshed degree bounds."""
        p, q = self.num, self.den
        return RationalFunction(p.derivative() * q - p * q.derivative(), q * q)

    def poles(self) -> np.ndarray:
        if self.den.degree == 0:
            return np.array([], dtype=complex)
        return poly_roots(self.den)

    def taylor_coeffs(self, count: int) -> np.ndarray:
        """First `count` Taylor coefficients at 0 by series division."""
        q0 = self.den(0.0)
        if abs(q0) < POLE_REL * (1.0 + abs(self.num(0.0))):
            raise PoleAtEvaluationPoint("series at 0 undefined: den(0) ~ 0")
        p = np.zeros(count, dtype=complex)
        q = np.zeros(count, dtype=complex)
        p[: min(count, len(self.num.coeffs))] = self.num.coeffs[:count]
        q[: min(count, len(self.den.coeffs))] = self.den.coeffs[:count]
        t = np.zeros(count, dtype=complex)
        for k in range(count):
            t[k] = (p[k] - np.dot(q[1 : k + 1], t[k - 1 :: -1] if k else [])) / q[0]
        return t

    def __repr__(self):
        return (
            f"RationalFunction(num={self.num.coeffs.tolist()}, "
            f"den={self.den.coeffs.tolist()}, m={self.m}, n={self.n})"
        )


def rational_eval(r: RationalFunction, z) -> complex:
    return r(z)


def compute_defect(r: RationalFunction, tol: float = DEFECT_ROOT_TOL) -> int:
    """Largest d with r in R_{m-d,n-d}: common num/den root pairs (matched
    within `tol`, relative to 1+|root|) plus any slack in the declared bounds.
    """
    if r.num.is_zero:
        return min(r.m, r.n)
    matched = 0
    if r.num.degree >= 1 and r.den.degree >= 1:
        nroots = list(poly_roots(r.num))
        droots = list(poly_roots(r.den))
        for dr in droots:
            if not nroots:
                break
            dist = [abs(nr - dr) for nr in nroots]
            i = int(np.argmin(dist))
            if dist[i] <= tol * (1.0 + abs(dr)):
                nroots.pop(i)
                matched += 1
    d = min(r.m - (r.num.degree - matched), r.n - (r.den.degree - matched))
    return max(0, d)

"""Pade approximants at the origin and their leading error coefficient.

The approximant solves the linearized Taylor-matching system
p - q*f = O(z^(m+n+1)).  Hankel determinants of the Taylor coefficients
detect degeneracy and give the leading coefficient of the error r - f,

    a_mn = -D(m+1, n+1) / D(m, n),

where D(m, n) is the n x n determinant with entries c_(m-n+1+i+j).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePade
from .functions import HoloFunction
from .poly import RationalFunction

#: |D(m,n)| below DEGENERACY_REL times the Hankel entry scale flags degeneracy
DEGENERACY_REL = 1e-10


@dataclass
class PadeResult:
    r: RationalFunction
    a_mn: complex
    hankel_mn: complex
    hankel_m1n1: complex
    degenerate: bool


def taylor_slice(f: HoloFunction, upto: int) -> np.ndarray:
    """c_0 ... c_upto as a dense vector."""
    return np.array([f.taylor(j) for j in range(upto + 1)], dtype=complex)


def _hankel_matrix(f: HoloFunction, m: int, n: int) -> np.ndarray:
    return np.array(
        [[f.taylor(m - n + 1 + i + j) for j in range(n)] for i in range(n)],
        dtype=complex,
    )


def hankel_det(f: HoloFunction, m: int, n: int) -> complex:
    """D(m, n); the empty determinant (n = 0) is 1 by convention."""
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    if n == 0:
        return 1.0 + 0.0j
    return complex(np.linalg.det(_hankel_matrix(f, m, n)))


def _hankel_scale(f: HoloFunction, m: int, n: int) -> float:
    if n == 0:
        return 1.0
    return max(1.0, np.abs(_hankel_matrix(f, m, n)).max())


def is_degenerate(f: HoloFunction, m: int, n: int) -> bool:
    return abs(hankel_det(f, m, n)) <= DEGENERACY_REL * _hankel_scale(f, m, n)


def _taylor_system(f: HoloFunction, m: int, n: int) -> np.ndarray:
    """Rows k = 0..m+n of the coefficient of z^k in p - q*f."""
    c = taylor_slice(f, m + n)
    A = np.zeros((m + n + 1, m + n + 2), dtype=complex)
    for k in range(m + n + 1):
        if k <= m:
            A[k, k] = 1.0
        for i in range(min(k, n) + 1):
            A[k, m + 1 + i] = -c[k - i]
    return A


def pade_approx(f: HoloFunction, m: int, n: int) -> PadeResult:
    """(m, n) Pade approximant of f at 0.

    Solved as a least-norm problem with the q(0)=1 normalization row
    appended; if that normalization is unreachable (q(0) ~ 0), the smallest
    singular direction of the homogeneous system is used instead.  The
    result carries a degeneracy flag rather than raising; callers that
    require non-degeneracy should use `leading_coeff` or check the flag.
    """
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    A = _taylor_system(f, m, n)
    norm_row = np.zeros(m + n + 2, dtype=complex)
    norm_row[m + 1] = 1.0
    aug = np.vstack([A, norm_row])
    rhs = np.zeros(m + n + 2, dtype=complex)
    rhs[-1] = 1.0
    x, *_ = np.linalg.lstsq(aug, rhs, rcond=None)
    scale = max(np.abs(A).max(), 1.0) * max(np.linalg.norm(x), 1.0)
    if np.abs(A @ x).max() > 1e-8 * scale:
        _, _, Vh = np.linalg.svd(A)
        x = Vh[-1].conj()
    r = RationalFunction(x[: m + 1], x[m + 1 :], m, n)
    d_mn = hankel_det(f, m, n)
    d_m1n1 = hankel_det(f, m + 1, n + 1)
    degenerate = abs(d_mn) <= DEGENERACY_REL * _hankel_scale(f, m, n)
    a_mn = complex("nan") if degenerate else -d_m1n1 / d_mn
    return PadeResult(r=r, a_mn=a_mn, hankel_mn=d_mn, hankel_m1n1=d_m1n1, degenerate=degenerate)


def leading_coeff(f: HoloFunction, m: int, n: int) -> complex:
    """Leading coefficient a_mn of the error r - f = a_mn z^(m+n+1) + ...

    Raises DegeneratePade when D(m, n) is numerically zero.
    """
    d_mn = hankel_det(f, m, n)
    if abs(d_mn) <= DEGENERACY_REL * _hankel_scale(f, m, n):
        raise DegeneratePade(f"D({m},{n}) vanishes for {f.name}: a_mn undefined")
    return -hankel_det(f, m + 1, n + 1) / d_mn


def amn_exp_closed_form(m: int, n: int) -> complex:
    """Closed form of a_mn for the exponential function."""
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    return complex(
        (-1.0) ** (n + 1)
        * math.factorial(m)
        * math.factorial(n)
        / (math.factorial(m + n) * math.factorial(m + n + 1))
    )


def taylor_leading_coeff(f: HoloFunction, m: int) -> complex:
    """a_m0 for the degree-m Taylor polynomial, in the r - f sign convention.

    The Taylor remainder is f - taylor = c_(m+1) z^(m+1) + ..., so the
    coefficient of the error taylor - f is -c_(m+1); this matches
    leading_coeff(f, m, 0).
    """
    return -complex(f.deriv(m + 1, 0)) / math.factorial(m + 1)

"""Registry of holomorphic test functions.

Each entry carries analytic derivatives of every order (confluent divided
differences need them exactly) and Taylor coefficients at the origin, with
the convention c_j = 0 for j < 0.  `domain_radius` is the radius of a disk
centered at 0 on which the function is holomorphic; callers use it to refuse
scaled domains that leave the holomorphy region.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import UnknownFunction


@dataclass(frozen=True)
class HoloFunction:
    name: str
    eval: Callable
    deriv: Callable  # (order k, point z) -> f^(k)(z)
    taylor: Callable  # j -> f^(j)(0)/j!, zero for j < 0
    domain_radius: float

    def __call__(self, z):
        return self.eval(z)


def _guard_taylor(fn):
    def taylor(j: int) -> complex:
        return 0.0 if j < 0 else complex(fn(j))

    return taylor


def _exp() -> HoloFunction:
    return HoloFunction(
        name="exp",
        eval=np.exp,
        deriv=lambda k, z: np.exp(z),
        taylor=_guard_taylor(lambda j: 1.0 / math.factorial(j)),
        domain_radius=math.inf,
    )


def _geom() -> HoloFunction:
    # 1/(1-z), f^(k)(z) = k!/(1-z)^(k+1)
    return HoloFunction(
        name="geom",
        eval=lambda z: 1.0 / (1.0 - z),
        deriv=lambda k, z: math.factorial(k) / (1.0 - z) ** (k + 1),
        taylor=_guard_taylor(lambda j: 1.0),
        domain_radius=1.0,
    )


def _log1p() -> HoloFunction:
    def deriv(k, z):
        if k == 0:
            return np.log1p(z)
        return (-1.0) ** (k - 1) * math.factorial(k - 1) / (1.0 + z) ** k

    return HoloFunction(
        name="log1p",
        eval=np.log1p,
        deriv=deriv,
        taylor=_guard_taylor(lambda j: 0.0 if j == 0 else (-1.0) ** (j - 1) / j),
        domain_radius=1.0,
    )


def _cosz() -> HoloFunction:
    return HoloFunction(
        name="cosz",
        eval=np.cos,
        deriv=lambda k, z: np.cos(z + k * np.pi / 2.0),
        taylor=_guard_taylor(
            lambda j: 0.0 if j % 2 else (-1.0) ** (j // 2) / math.factorial(j)
        ),
        domain_radius=math.inf,
    )


def _geom2() -> HoloFunction:
    # 1/(1-2z), a rational witness with a pole at 1/2
    return HoloFunction(
        name="geom2",
        eval=lambda z: 1.0 / (1.0 - 2.0 * z),
        deriv=lambda k, z: 2.0 ** k * math.factorial(k) / (1.0 - 2.0 * z) ** (k + 1),
        taylor=_guard_taylor(lambda j: 2.0 ** j),
        domain_radius=0.5,
    )


_REGISTRY = {f.name: f for f in (_exp(), _geom(), _log1p(), _cosz(), _geom2())}


def registry_get(name: str) -> HoloFunction:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownFunction(
            f"unknown function {name!r}; registered: {', '.join(sorted(_REGISTRY))}"
        ) from None


def registry_names() -> list[str]:
    return sorted(_REGISTRY)


def monomial_times(f: HoloFunction | None, k: int) -> HoloFunction:
    """z^k * f(z) (or plain z^k for f=None), with Leibniz-rule derivatives.

    These are the basis functions of the linearized interpolation system.
    """
    if k < 0:
        raise ValueError("monomial degree must be >= 0")

    def falling(i):
        return math.factorial(k) // math.factorial(k - i)

    if f is None:

        def ev(z):
            return np.asarray(z, dtype=complex) ** k if k else np.ones_like(
                np.asarray(z, dtype=complex)
            )

        def deriv(j, z):
            if j > k:
                return np.zeros_like(np.asarray(z, dtype=complex))
            return falling(j) * np.asarray(z, dtype=complex) ** (k - j)

        return HoloFunction(
            name=f"z^{k}",
            eval=ev,
            deriv=deriv,
            taylor=_guard_taylor(lambda j: 1.0 if j == k else 0.0),
            domain_radius=math.inf,
        )

    def ev(z):
        return np.asarray(z, dtype=complex) ** k * f.eval(z)

    def deriv(j, z):
        z = np.asarray(z, dtype=complex)
        total = 0.0
        for i in range(min(j, k) + 1):
            total = total + math.comb(j, i) * falling(i) * z ** (k - i) * f.deriv(j - i, z)
        return total

    return HoloFunction(
        name=f"z^{k}*{f.name}",
        eval=ev,
        deriv=deriv,
        taylor=_guard_taylor(lambda j: f.taylor(j - k)),
        domain_radius=f.domain_radius,
    )

"""Special-function kernel: gamma, Bessel J, spherical Bessel, Tricomi U,
and Whittaker W.

Gamma and Bessel wrap scipy.special (cross-checked in the test suite against
independent series/product oracles).  Tricomi U is evaluated here directly:
adaptive quadrature of its Laplace integral for a > 0, extended to a <= 0 by
downward contiguity, with an exact polynomial path for non-positive integer a.
This one route covers integer b without logarithmic-case special-casing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

__all__ = [
    "GammaPoleError",
    "LogarithmicCaseError",
    "WhittakerParams",
    "gamma_fn",
    "bessel_j",
    "spherical_bessel_j",
    "tricomi_u",
    "whittaker_w",
    "whittaker_small_x",
]


class GammaPoleError(ValueError):
    """Gamma evaluated at a non-positive integer; carries the pole index."""

    def __init__(self, x: float):
        self.pole_index = int(round(-x))
        super().__init__(f"gamma pole at x={x} (pole index {self.pole_index})")


class LogarithmicCaseError(ValueError):
    """Two-term small-x Whittaker expansion invalid: 2*mu is an integer."""


@dataclass(frozen=True)
class WhittakerParams:
    """Order parameters and argument of W_{kappa,mu}(x).

    Attributes
    ----------
    kappa, mu : float
        Real order parameters.
    x : float
        Positive real argument.
    """

    kappa: float
    mu: float
    x: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.kappa) and math.isfinite(self.mu)):
            raise ValueError("kappa and mu must be finite")
        if not (math.isfinite(self.x) and self.x > 0):
            raise ValueError(f"x must be positive and finite, got {self.x!r}")


def gamma_fn(x: float) -> float:
    """Euler gamma function of a real argument.

    Raises
    ------
    GammaPoleError
        For non-positive integer x.
    """
    if not math.isfinite(x):
        raise ValueError(f"gamma argument must be finite, got {x!r}")
    if x <= 0 and x == math.floor(x):
        raise GammaPoleError(x)
    return float(special.gamma(x))


def bessel_j(order: float, x: float) -> float:
    """Bessel function of the first kind J_order(x), real order >= 0, x >= 0."""
    if not (math.isfinite(order) and math.isfinite(x)):
        raise ValueError("bessel_j arguments must be finite")
    if order < 0 or x < 0:
        raise ValueError(f"bessel_j requires order >= 0 and x >= 0, got ({order}, {x})")
    return float(special.jv(order, x))


def spherical_bessel_j(l: int, x: float) -> float:
    """Spherical Bessel function j_l(x) = sqrt(pi/(2x)) J_{l+1/2}(x)."""
    if not isinstance(l, int) or isinstance(l, bool) or l < 0:
        raise ValueError(f"l must be a non-negative integer, got {l!r}")
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"x must be positive and finite, got {x!r}")
    return float(special.spherical_jn(l, x))


def _laplace_truncation(a: float, b: float, x: float) -> float:
    """Upper limit T with e^{-xT} times the polynomial factor below 1e-18."""
    growth = max(b - a - 1.0, 0.0) + max(a - 1.0, 0.0)
    t = 45.0 / x
    # two fixed-point passes absorb the t^growth factor into the exponent
    for _ in range(2):
        t = (45.0 + growth * math.log1p(t)) / x
    return max(t, 2.0)


def _tricomi_u_quadrature(a: float, b: float, x: float) -> float:
    """Laplace-integral evaluation, valid for a > 0:
    U(a,b,x) = (1/Gamma(a)) * int_0^inf e^{-xt} t^{a-1} (1+t)^{b-a-1} dt.

    Integrates on [0, T] with the t^{a-1} endpoint factor handled by weighted
    quadrature, then verifies the truncation by doubling T.
    """
    power = b - a - 1.0

    def smooth_part(t: float) -> float:
        return math.exp(-x * t) * (1.0 + t) ** power

    def run(t_upper: float) -> float:
        val, _ = integrate.quad(
            smooth_part,
            0.0,
            t_upper,
            weight="alg",
            wvar=(a - 1.0, 0.0),
            epsabs=0.0,
            epsrel=1e-12,
            limit=400,
        )
        return val

    t_upper = _laplace_truncation(a, b, x)
    value = run(t_upper)
    for _ in range(3):
        wider = run(2.0 * t_upper)
        if abs(wider - value) <= 1e-11 * max(abs(wider), 1e-300):
            value = wider
            break
        t_upper *= 2.0
        value = wider
    return value / gamma_fn(a)


def tricomi_u(a: float, b: float, x: float) -> float:
    """Tricomi confluent hypergeometric U(a, b, x) for real parameters, x > 0.

    Non-positive integer a yields the exact polynomial case.  Other a <= 0 are
    reached from the a > 0 quadrature by downward contiguity
    U(a-1) = (2a - b + x) U(a) - a (a - b + 1) U(a+1),
    which recurses along the dominant solution and is therefore stable.
    """
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(x)):
        raise ValueError("tricomi_u arguments must be finite")
    if x <= 0:
        raise ValueError(f"tricomi_u requires x > 0, got {x!r}")
    if a == 0:
        return 1.0
    if a < 0 and a == math.floor(a):
        # polynomial case: first step from a=0 multiplies U(1) by zero
        u_up, u_here = 0.0, 1.0
        k = 0.0
        while k > a:
            u_down = (2.0 * k - b + x) * u_here - k * (k - b + 1.0) * u_up
            u_up, u_here = u_here, u_down
            k -= 1.0
        return u_here
    if a < 0:
        shift = math.ceil(-a)
        top = a + shift  # in (0, 1)
        u_up = _tricomi_u_quadrature(top + 1.0, b, x)
        u_here = _tricomi_u_quadrature(top, b, x)
        k = top
        while k > a:
            u_down = (2.0 * k - b + x) * u_here - k * (k - b + 1.0) * u_up
            u_up, u_here = u_here, u_down
            k -= 1.0
        return u_here
    return _tricomi_u_quadrature(a, b, x)


def whittaker_w(p: WhittakerParams) -> float:
    """Whittaker W_{kappa,mu}(x) = e^{-x/2} x^{mu+1/2} U(mu-kappa+1/2, 1+2mu, x).

    Uses the mu -> -mu symmetry to evaluate with mu >= 0.
    """
    mu = abs(p.mu)
    a = mu - p.kappa + 0.5
    b = 1.0 + 2.0 * mu
    return math.exp(-p.x / 2.0) * p.x ** (mu + 0.5) * tricomi_u(a, b, p.x)


def whittaker_small_x(p: WhittakerParams) -> float:
    """Two-term small-x expansion of W_{kappa,mu}(x).

    W ~ Gamma(2mu)/Gamma(1/2 - kappa + mu) x^{1/2-mu}
      + Gamma(-2mu)/Gamma(1/2 - kappa - mu) x^{1/2+mu}.

    Reciprocal gammas absorb denominator poles (terms vanish there).

    Raises
    ------
    LogarithmicCaseError
        When 2*mu is an integer and the expansion is invalid.
    """
    g = p.mu
    if abs(2.0 * g - round(2.0 * g)) < 1e-12:
        raise LogarithmicCaseError(
            f"logarithmic case: 2*mu = {2.0 * g} is an integer; expansion invalid"
        )
    term_lead = gamma_fn(2.0 * g) * float(special.rgamma(0.5 - p.kappa + g)) * p.x ** (0.5 - g)
    term_sub = gamma_fn(-2.0 * g) * float(special.rgamma(0.5 - p.kappa - g)) * p.x ** (0.5 + g)
    return term_lead + term_sub

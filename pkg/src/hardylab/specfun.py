"""Complex log-gamma, digamma and the theta phase function.

theta(t) is the phase of pi^{-it/2} Gamma(1/4 + it/2)/|Gamma(1/4 + it/2)|
on a continuous branch; it is the angular backbone of every weighted-sum
evaluation in this package.  Everything here is plain double precision,
which caps the trustworthy range at t ~ 1e5.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, PoleError

LOG_PI = math.log(math.pi)
_LOG_TWO_PI = math.log(2.0 * math.pi)

# B_{2k} for k = 1..8; with the shift radius below, the first dropped term
# of either Stirling tail is < 1e-15.
_B2K = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)

_SHIFT_RADIUS = 10.0


def log_gamma_complex(z: complex) -> complex:
    """Principal-branch log Gamma(z).

    Stirling asymptotic series after shifting the argument upward until
    |z| >= 10; exact recurrence log Gamma(z) = log Gamma(z+1) - log z.
    Accurate to ~1e-13 relative for Re(z) >= 1/4, |Im(z)| <= 1e5.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"log_gamma_complex: pole at z = {z}")
    shift = 0.0 + 0.0j
    while abs(z) < _SHIFT_RADIUS:
        shift += cmath.log(z)
        z += 1.0
    inv2 = 1.0 / (z * z)
    w = 1.0 / z
    tail = 0.0 + 0.0j
    for k, b in enumerate(_B2K, start=1):
        tail += b / (2 * k * (2 * k - 1)) * w
        w *= inv2
    return (z - 0.5) * cmath.log(z) - z + 0.5 * _LOG_TWO_PI + tail - shift


def digamma_complex(z: complex) -> complex:
    """psi(z) = Gamma'(z)/Gamma(z), same shift-then-Stirling scheme."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"digamma_complex: pole at z = {z}")
    shift = 0.0 + 0.0j
    while abs(z) < _SHIFT_RADIUS:
        shift += 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    w = inv2
    tail = 0.0 + 0.0j
    for k, b in enumerate(_B2K, start=1):
        tail += b / (2 * k) * w
        w *= inv2
    return cmath.log(z) - 0.5 / z - tail - shift


@dataclass(frozen=True)
class ThetaEval:
    """theta and its derivative at one point, continuous branch."""

    t: float
    theta: float
    theta_prime: float


def theta(t: float) -> ThetaEval:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, with derivative.

    The argument 1/4 + it/2 stays in the right half plane, so the principal
    branch of log_gamma_complex is already continuous in t; no unwinding.
    """
    if t < 0.0:
        raise DomainError(f"theta: t must be >= 0, got {t}")
    z = complex(0.25, 0.5 * t)
    th = log_gamma_complex(z).imag - 0.5 * t * LOG_PI
    # d/dt Im log Gamma(z(t)) with z'(t) = i/2 is Re psi(z)/2.
    thp = 0.5 * digamma_complex(z).real - 0.5 * LOG_PI
    return ThetaEval(t=float(t), theta=th, theta_prime=thp)


def theta_asymptotic(t: float) -> float:
    """(t/2) log(t/2pi) - t/2 - pi/8 + 1/(48 t), the classical expansion."""
    return 0.5 * t * math.log(0.5 * t / math.pi) - 0.5 * t - math.pi / 8.0 + 1.0 / (48.0 * t)

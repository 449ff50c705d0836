"""Complex-scalar foundations: gamma functions, Pochhammer symbols and
branch-tracked powers.

All public routines take and return Python ``complex`` values.  Non-finite
input is rejected; the library never hands NaN or infinity to a caller.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import DiscontinuityError, DomainError, PoleError

POLE_TOL = 1e-12
# Largest per-step change of a tracked argument that is still trusted.
MAX_ARG_STEP = 0.75 * math.pi


def as_complex(z, name="value") -> complex:
    """Coerce to ``complex`` and refuse NaN or infinite components."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"{name} must be finite, got {w!r}")
    return w


def nearest_int_distance(z) -> float:
    z = complex(z)
    return abs(z - round(z.real))


def is_nonpositive_integer(z, tol=POLE_TOL) -> bool:
    z = complex(z)
    n = round(z.real)
    return n <= 0 and abs(z - n) < tol


def is_integer(z, tol=POLE_TOL) -> bool:
    return nearest_int_distance(z) < tol


def log_gamma(z) -> complex:
    """Principal branch of log Γ(z).

    Raises PoleError when z is within 1e-12 of a nonpositive integer.
    """
    z = as_complex(z, "z")
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma has a pole at {z!r}")
    return complex(special.loggamma(z))


def gamma(z) -> complex:
    z = as_complex(z, "z")
    if is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z!r}")
    return complex(special.gamma(z))


def rgamma(z) -> complex:
    """1/Γ(z); entire, so exactly zero at the poles of Γ."""
    z = as_complex(z, "z")
    if is_nonpositive_integer(z):
        return 0j
    return complex(special.rgamma(z))


def gamma_ratio(num, den) -> complex:
    """Π Γ(num) / Π Γ(den) through log-gamma sums.

    A pole in the denominator makes the ratio vanish; a pole in the
    numerator raises PoleError.
    """
    for z in num:
        if is_nonpositive_integer(z):
            raise PoleError(f"gamma pole at {complex(z)!r} in numerator")
    if any(is_nonpositive_integer(z) for z in den):
        return 0j
    s = sum(log_gamma(z) for z in num) - sum(log_gamma(z) for z in den)
    return cmath.exp(s)


def pochhammer(a, k: int) -> complex:
    """Pochhammer symbol (a)_k for any integer shift k.

    For k >= 0 this is the plain product a(a+1)...(a+k-1); for k < 0 it is
    (-1)^k / (1-a)_{-k}.
    """
    a = as_complex(a, "a")
    k = int(k)
    if k >= 0:
        p = 1 + 0j
        for j in range(k):
            p *= a + j
        return p
    den = pochhammer(1 - a, -k)
    if abs(den) == 0.0 or any(abs(1 - a + j) < POLE_TOL for j in range(-k)):
        raise PoleError(f"(a)_k undefined for a={a!r}, k={k}")
    return (-1) ** (-k) / den


def principal_power(base, exponent) -> complex:
    """base**exponent on the principal branch, arg in (-π, π]."""
    base = complex(base)
    if base == 0:
        if complex(exponent).real > 0:
            return 0j
        raise DomainError("zero base with non-positive exponent")
    return cmath.exp(complex(exponent) * cmath.log(base))


def wrap_angle(d):
    """Reduce an angle difference into (-π, π]."""
    return np.pi - np.mod(np.pi - d, 2 * np.pi)


@dataclass
class TrackedFactor:
    arg: float
    log_modulus: float = 0.0


@dataclass
class BranchState:
    """Continuously accumulated arguments of multivalued factors.

    ``factors`` maps a factor id to its current accumulated argument and log
    modulus.  A fresh state for a contour starting at t0 in (0, 1) uses
    ``BranchState.initial({"t": 0.0, "1-t": 0.0})``.
    """

    factors: dict = field(default_factory=dict)
    max_step: float = MAX_ARG_STEP

    @classmethod
    def initial(cls, args: dict, max_step: float = MAX_ARG_STEP) -> "BranchState":
        return cls({k: TrackedFactor(float(v)) for k, v in args.items()}, max_step)

    def arg(self, factor_id) -> float:
        return self.factors[factor_id].arg

    def update(self, factor_id, base) -> complex:
        """Advance the tracked argument of ``factor_id`` to ``base``.

        Returns the continuous logarithm log|base| + i·θ.
        """
        base = as_complex(base, "base")
        if base == 0:
            raise DomainError(f"factor {factor_id!r} hit a branch point")
        entry = self.factors.get(factor_id)
        if entry is None:
            theta = cmath.phase(base)
            self.factors[factor_id] = entry = TrackedFactor(theta)
        else:
            step = float(wrap_angle(cmath.phase(base) - entry.arg))
            if abs(step) > self.max_step:
                raise DiscontinuityError(
                    f"argument of {factor_id!r} jumped by {step:.3f} rad; refine the path"
                )
            entry.arg += step
        entry.log_modulus = math.log(abs(base))
        return complex(entry.log_modulus, entry.arg)

    def copy(self) -> "BranchState":
        return BranchState(
            {k: TrackedFactor(v.arg, v.log_modulus) for k, v in self.factors.items()},
            self.max_step,
        )


def tracked_power(base, exponent, state: BranchState, factor_id) -> complex:
    """exp(exponent·(log|base| + iθ)) with θ continued from ``state``."""
    log_base = state.update(factor_id, base)
    return cmath.exp(as_complex(exponent, "exponent") * log_base)


def continuous_log(bases: np.ndarray, theta0: float, max_step: float = MAX_ARG_STEP):
    """Vectorised branch tracking along an ordered sequence of bases.

    ``theta0`` is the accumulated argument at a point immediately preceding
    ``bases[0]``'s predecessor, i.e. ``bases[0]`` is the first tracked point.
    Returns (logs, final_theta).
    """
    bases = np.asarray(bases, dtype=complex)
    if np.any(bases == 0):
        raise DomainError("tracked factor hit a branch point")
    phases = np.angle(bases)
    prev = np.concatenate(([theta0], phases[:-1]))
    steps = wrap_angle(phases - prev)
    # the first step is measured against the accumulated, not principal, angle
    steps[0] = wrap_angle(phases[0] - theta0)
    if np.any(np.abs(steps) > max_step):
        raise DiscontinuityError("tracked argument jumped too far; refine the path")
    theta = theta0 + np.cumsum(steps)
    return np.log(np.abs(bases)) + 1j * theta, float(theta[-1])

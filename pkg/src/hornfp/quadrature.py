"""Integration kernels.

* ``integrate_weighted_01``: ∫₀¹ t^α (1-t)^β g(t) dt by a tanh-sinh rule whose
  weights are formed in log space, so complex α, β with real part just above
  -1 are handled without cancellation.
* ``integrate_unit_square``: tensor product of the same rule.
* ``integrate_path``: adaptive Gauss-Legendre panels along segments and arcs,
  threading a ``BranchState`` through the path in order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DiscontinuityError, DomainError, NoConvergence, NonIntegrable
from .numerics import BranchState, TrackedFactor, as_complex, continuous_log
from .result import EvalResult

EPS = np.finfo(float).eps
TINY = 1e-300


@dataclass
class WeightedIntegrand1D:
    """t^alpha (1-t)^beta g(t) on [0, 1].

    ``g`` is called with a float array of nodes; when ``complement`` is true
    it is called as ``g(t, 1 - t)`` with the complement computed without
    cancellation.  Set ``vectorized=False`` for scalar-only callables.
    """

    g: Callable
    alpha: complex = 0.0
    beta: complex = 0.0
    complement: bool = False
    vectorized: bool = True

    def __post_init__(self):
        self.alpha = as_complex(self.alpha, "alpha")
        self.beta = as_complex(self.beta, "beta")
        if self.alpha.real <= -1 or self.beta.real <= -1:
            raise NonIntegrable(
                f"endpoint exponents ({self.alpha}, {self.beta}) need real part > -1"
            )

    def smooth(self, t, omt):
        args = (t, omt) if self.complement else (t,)
        if self.vectorized:
            return np.asarray(self.g(*args), dtype=complex) * np.ones_like(t)
        return np.array([complex(self.g(*a)) for a in zip(*args)], dtype=complex)


def _softplus(u):
    return np.logaddexp(0.0, u)


def _half_range(alpha, beta) -> float:
    """Half-width S of the s-interval: the weight is below ~1e-17 beyond it."""
    delta = min(alpha.real + 1, beta.real + 1, 1.0)
    return math.log(80.0 / (math.pi * delta)) + 0.5


def _ts_nodes(S: float, h: float, level: int):
    """Abscissae of level ``level``: all of k·h at level 0, odd k after."""
    n = int(math.ceil(S / h))
    k = np.arange(-n, n + 1)
    if level > 0:
        k = k[k % 2 != 0]
    s = k * h
    u = math.pi * np.sinh(s)
    log_t = -_softplus(-u)
    log_omt = -_softplus(u)
    log_jac = np.log(math.pi * np.cosh(s))
    return log_t, log_omt, log_jac


def _ts_block(f: WeightedIntegrand1D, log_t, log_omt, log_jac):
    t = np.maximum(np.exp(log_t), TINY)
    omt = np.maximum(np.exp(log_omt), TINY)
    log_w = (f.alpha + 1) * log_t + (f.beta + 1) * log_omt + log_jac
    w = np.exp(log_w)
    g = f.smooth(t, omt)
    vals = w * g
    if not np.all(np.isfinite(vals)):
        raise DomainError("integrand is not finite at a quadrature node")
    return vals


def ts_rule(alpha, beta, level: int, S: float, h0: float = 0.5):
    """Nodes and log-weights of the nested rule up to ``level`` (for tests)."""
    blocks = [_ts_nodes(S, h0 / 2**lv, lv) for lv in range(level + 1)]
    return blocks


def integrate_weighted_01(
    f: WeightedIntegrand1D, tol: float = 1e-10, max_level: int = 9, min_level: int = 2
) -> EvalResult:
    """∫₀¹ t^α (1-t)^β g(t) dt with a successive-halving error estimate."""
    if not isinstance(f, WeightedIntegrand1D):
        raise TypeError("expected a WeightedIntegrand1D")
    S = _half_range(f.alpha, f.beta)
    h = 0.5
    vals = _ts_block(f, *_ts_nodes(S, h, 0))
    total = vals.sum()
    abs_total = np.abs(vals).sum()
    value = h * total
    nodes = vals.size
    edge = abs(vals[0]) + abs(vals[-1])
    prev = None
    err = math.inf
    for level in range(1, max_level + 1):
        h /= 2
        vals = _ts_block(f, *_ts_nodes(S, h, level))
        total += vals.sum()
        abs_total += np.abs(vals).sum()
        nodes += vals.size
        prev, value = value, h * total
        l1 = h * abs_total
        err = abs(value - prev) + 4 * EPS * l1 + edge * h
        target = max(tol * abs(value), 100 * EPS * l1)
        if level >= min_level and err <= target:
            return EvalResult(value, err, "single-integral", nodes)
    if err <= max(tol * abs(value), 100 * EPS * h * abs_total) * 10:
        return EvalResult(value, err, "single-integral", nodes)
    raise NoConvergence(f"weighted integral stalled at err={err:.3g}, value={value!r}")


@dataclass
class SquareIntegrand:
    """u^αu (1-u)^βu v^αv (1-v)^βv g(u, v) on the unit square.

    ``g`` is called on broadcastable 2D arrays ``(u, 1-u, v, 1-v)`` when
    ``complement`` is true, else on ``(u, v)``.
    """

    g: Callable
    exponents: tuple = (0.0, 0.0, 0.0, 0.0)
    complement: bool = False

    def __post_init__(self):
        self.exponents = tuple(as_complex(e, "exponent") for e in self.exponents)
        if any(e.real <= -1 for e in self.exponents):
            raise NonIntegrable(f"edge exponents {self.exponents} need real part > -1")


def integrate_unit_square(
    f: SquareIntegrand, tol: float = 1e-8, max_level: int = 6, min_level: int = 2
) -> EvalResult:
    """Tensor-product tanh-sinh rule; each halving adds the new rows and
    columns of the grid to the running sum."""
    au, bu, av, bv = f.exponents
    Su, Sv = _half_range(au, bu), _half_range(av, bv)

    def axis(level, S, a, b):
        lt, lo, lj = _ts_nodes(S, 0.5 / 2**level, level)
        w = np.exp((a + 1) * lt + (b + 1) * lo + lj)
        return np.maximum(np.exp(lt), TINY), np.maximum(np.exp(lo), TINY), w

    def block(ua, va):
        u, ou, wu = ua
        v, ov, wv = va
        U, V = u[:, None], v[None, :]
        if f.complement:
            g = f.g(U, ou[:, None], V, ov[None, :])
        else:
            g = f.g(U, V)
        g = np.asarray(g, dtype=complex) * np.ones((u.size, v.size))
        terms = wu[:, None] * g * wv[None, :]
        if not np.all(np.isfinite(terms)):
            raise DomainError("integrand is not finite at a quadrature node")
        return terms.sum(), np.abs(terms).sum(), terms.size

    us, vs = [axis(0, Su, au, bu)], [axis(0, Sv, av, bv)]
    total, abs_total, nodes = block(us[0], vs[0])
    h = 0.5
    value = h * h * total
    err = math.inf
    for level in range(1, max_level + 1):
        us.append(axis(level, Su, au, bu))
        vs.append(axis(level, Sv, av, bv))
        for i in range(level + 1):
            pieces = [block(us[level], vs[i])]
            if i < level:
                pieces.append(block(us[i], vs[level]))
            for s, a, n in pieces:
                total += s
                abs_total += a
                nodes += n
        h /= 2
        prev, value = value, h * h * total
        l1 = h * h * abs_total
        err = abs(value - prev) + 4 * EPS * l1
        if level >= min_level and err <= max(tol * abs(value), 100 * EPS * l1):
            return EvalResult(value, err, "double-integral", nodes)
    raise NoConvergence(f"square integral stalled at err={err:.3g}, value={value!r}")


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class PathElement:
    """A directed segment ``start -> end`` or an arc ``center + radius·e^{iθ}``
    for θ from ``theta0`` to ``theta1`` (negative orientation if θ1 < θ0)."""

    kind: str
    start: complex = 0j
    end: complex = 0j
    center: complex = 0j
    radius: float = 0.0
    theta0: float = 0.0
    theta1: float = 0.0

    @staticmethod
    def segment(a, b) -> "PathElement":
        return PathElement("segment", start=complex(a), end=complex(b))

    @staticmethod
    def arc(center, radius, theta0, theta1) -> "PathElement":
        if not radius > 0:
            raise ValueError("arc radius must be positive")
        c = complex(center)
        return PathElement(
            "arc",
            start=c + radius * complex(math.cos(theta0), math.sin(theta0)),
            end=c + radius * complex(math.cos(theta1), math.sin(theta1)),
            center=c,
            radius=float(radius),
            theta0=float(theta0),
            theta1=float(theta1),
        )

    @property
    def orientation(self) -> int:
        if self.kind == "arc":
            return 1 if self.theta1 > self.theta0 else -1
        return 1

    @property
    def span(self) -> float:
        """Parameter length: Δθ for arcs, 1 for segments."""
        return self.theta1 - self.theta0 if self.kind == "arc" else 1.0

    @property
    def length(self) -> float:
        if self.kind == "arc":
            return abs(self.span) * self.radius
        return abs(self.end - self.start)

    def point(self, s):
        """Position at parameter s in [0, 1]."""
        s = np.asarray(s, dtype=float)
        if self.kind == "arc":
            return self.center + self.radius * np.exp(1j * (self.theta0 + s * self.span))
        return self.start + s * (self.end - self.start)

    def deriv(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "arc":
            return 1j * self.span * self.radius * np.exp(1j * (self.theta0 + s * self.span))
        return np.full(s.shape, self.end - self.start, dtype=complex)

    def reversed(self) -> "PathElement":
        if self.kind == "arc":
            return PathElement.arc(self.center, self.radius, self.theta1, self.theta0)
        return PathElement.segment(self.end, self.start)

    def initial_panels(self) -> int:
        if self.kind == "arc":
            return max(1, math.ceil(abs(self.span) / (math.pi / 8) - 1e-12))
        return 1


def check_continuity(path: Sequence[PathElement], tol: float = 1e-12):
    for k, (p, q) in enumerate(zip(path[:-1], path[1:])):
        if abs(p.end - q.start) > tol * max(1.0, abs(p.end)):
            raise DomainError(f"path elements {k} and {k + 1} do not join")


class PowerProduct:
    """Integrand coef·Π base_k(t)^{exp_k}·extra(t) with tracked arguments.

    ``factors`` is a list of ``(factor_id, base_fn, exponent)``; a factor id
    of ``None`` means the principal branch is used instead of tracking.
    Called as ``f(ts, state)`` on an ordered array of points; the state is
    advanced to the last point.
    """

    def __init__(self, factors, coef=1.0, extra=None):
        self.factors = list(factors)
        self.coef = complex(coef)
        self.extra = extra

    def __call__(self, ts, state: BranchState):
        ts = np.asarray(ts, dtype=complex)
        log_sum = np.zeros(ts.shape, dtype=complex)
        for fid, base_fn, expo in self.factors:
            bases = np.asarray(base_fn(ts), dtype=complex)
            if fid is None:
                if np.any(bases == 0):
                    raise DomainError("untracked factor vanished on the path")
                logs = np.log(bases)
            else:
                theta0 = state.arg(fid) if fid in state.factors else float(np.angle(bases[0]))
                logs, final = continuous_log(bases, theta0, state.max_step)
                state.factors.setdefault(fid, TrackedFactor(0.0)).arg = final
            log_sum += expo * logs
        vals = self.coef * np.exp(log_sum)
        if self.extra is not None:
            vals = vals * np.asarray(self.extra(ts), dtype=complex)
        return vals


_GL = {n: leggauss(n) for n in (16, 32)}


def _panel(f, el: PathElement, s0: float, s1: float, state: BranchState, n: int, depth: int = 0):
    x, w = _GL[n]
    s = s0 + (s1 - s0) * (x + 1) / 2
    pts = np.concatenate([el.point(s), [el.point(s1)]])
    st = state.copy()
    try:
        vals = np.asarray(f(pts, st), dtype=complex)[:-1]
    except DiscontinuityError:
        # nodes too sparse to follow the argument near a branch point: halve
        if depth >= 40:
            raise
        mid = 0.5 * (s0 + s1)
        v0, a0, st = _panel(f, el, s0, mid, state, n, depth + 1)
        v1, a1, st = _panel(f, el, mid, s1, st, n, depth + 1)
        return v0 + v1, a0 + a1, st
    terms = w * (s1 - s0) / 2 * vals * el.deriv(s)
    if not np.all(np.isfinite(terms)):
        raise DomainError("integrand is not finite on the path")
    return terms.sum(), float(np.abs(terms).sum()), st


def _element(f, el, state, abs_tol, total_len, max_depth, counter):
    """Integrate one element adaptively; returns (value, err, state)."""
    value = 0j
    err = 0.0
    k = el.initial_panels()
    stack = [(j / k, (j + 1) / k, 0) for j in reversed(range(k))]  # popped in order
    while stack:
        s0, s1, depth = stack.pop()
        i16, _, _ = _panel(f, el, s0, s1, state, 16)
        i32, a32, st = _panel(f, el, s0, s1, state, 32)
        counter[0] += 48
        diff = abs(i32 - i16)
        frac = el.length * (s1 - s0) / max(total_len, TINY)
        local_tol = max(abs_tol * frac, 50 * EPS * a32)
        if diff <= local_tol or depth >= max_depth:
            if diff > local_tol:
                raise NoConvergence("path panel refinement exceeded the depth limit")
            value += i32
            err += diff
            state = st
        else:
            mid = 0.5 * (s0 + s1)
            stack.append((mid, s1, depth + 1))
            stack.append((s0, mid, depth + 1))
    return value, err, state


def integrate_path(
    f: Callable,
    path: Sequence[PathElement],
    tol: float = 1e-10,
    state: BranchState | None = None,
    max_depth: int = 60,
    return_state: bool = False,
):
    """Σ over elements of ∫ f(t) dt, in path order.

    ``f(ts, state)`` must evaluate the integrand at the ordered points ``ts``
    and advance ``state``'s tracked arguments to the last point.  The
    tolerance is relative to an L1 estimate from a coarse first pass.
    """
    check_continuity(path)
    state = state if state is not None else BranchState()
    total_len = sum(el.length for el in path)

    # coarse pass for the L1 scale
    st = state.copy()
    l1 = 0.0
    for el in path:
        k = el.initial_panels()
        for j in range(k):
            _, a, st = _panel(f, el, j / k, (j + 1) / k, st, 32)
            l1 += a
    abs_tol = tol * max(l1, TINY)

    counter = [0]
    value = 0j
    err = 0.0
    per_element = []
    for el in path:
        v, e, state = _element(f, el, state, abs_tol, total_len, max_depth, counter)
        per_element.append(v)
        value += v
        err += e
    err += 4 * EPS * l1
    res = EvalResult(value, err, "loop-integral", counter[0], notes={"elements": per_element, "l1": l1})
    return (res, state) if return_state else res

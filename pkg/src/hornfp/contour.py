"""Pochhammer double loops (1+, 0+, 1-, 0-) and integrals over them.

A loop starts at a base point t0 in (0, 1) where arg t = arg(1-t) = 0.  The
circle around 0 can be replaced by a stadium that also encloses a second
point p (a branch point that must be "connected with 0 inside the loop").
Arguments of t and 1-t are accumulated continuously along the path.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConstraintError, DegenerateError, DomainError, GeometryError
from .numerics import (
    BranchState,
    as_complex,
    continuous_log,
    gamma_ratio,
    nearest_int_distance,
    principal_power,
)
from .quadrature import (
    PathElement,
    PowerProduct,
    WeightedIntegrand1D,
    check_continuity,
    integrate_path,
    integrate_weighted_01,
)
from .result import EvalResult
from .series import FPParams, fp_series, hyp2f1, hyp2f1_scaled, in_fp41, in_fp44, region_contains

INTEGER_GAP = 1e-6
CUT_MARGIN = 1e-6
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class LoopSpec:
    """Shape of a double loop.

    ``group`` is a point enclosed together with 0 (None for the plain loop).
    ``excluded`` points must stay more than 2·epsilon away from the path.
    ``epsilon=None`` picks the largest admissible radius up to 0.25.
    """

    epsilon: float | None = None
    t0: float | None = None
    group: complex | None = None
    excluded: tuple = ()


@dataclass
class ContourPath:
    elements: list
    base_point: complex
    tracked: dict = field(default_factory=lambda: {"u": 0.0, "1-u": 0.0})
    epsilon: float = 0.25

    def is_closed(self, tol=1e-12) -> bool:
        return abs(self.elements[-1].end - self.elements[0].start) <= tol

    def samples(self, per_element=64):
        """Yield (element index, s, point) along the path, in order."""
        for k, el in enumerate(self.elements):
            s = np.linspace(0.0, 1.0, per_element + 1)
            for sj, pt in zip(s, el.point(s)):
                yield k, float(sj), complex(pt)

    def track(self, fns: dict, per_element=256):
        """Accumulated arguments of each factor at every sample point.

        ``fns`` maps a factor id to a vectorised function of the point; the
        initial argument is taken from ``self.tracked`` or the principal one.
        Returns (index array, s array, points, {id: args}).
        """
        idx, ss, pts = [], [], []
        for k, el in enumerate(self.elements):
            s = _element_samples(el, per_element)
            idx.append(np.full(s.size, k))
            ss.append(s)
            pts.append(el.point(s))
        idx, ss, pts = np.concatenate(idx), np.concatenate(ss), np.concatenate(pts)
        args = {}
        for fid, fn in fns.items():
            vals = np.asarray(fn(pts), dtype=complex)
            theta0 = self.tracked.get(fid, float(np.angle(vals[0])))
            logs, _ = continuous_log(vals, theta0)
            args[fid] = logs.imag
        return idx, ss, pts, args

    def winding(self, point) -> float:
        """Net number of turns of the path around ``point``."""
        point = complex(point)
        _, _, _, args = self.track({"w": lambda t: t - point})
        return (args["w"][-1] - args["w"][0]) / TWO_PI

    def dump_csv(self, stream, per_element=64):
        """Write element-index, s-parameter, Re u, Im u, arg u, arg(1-u)."""
        idx, ss, pts, args = self.track(
            {"u": lambda t: t, "1-u": lambda t: 1 - t}, per_element
        )
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["element", "s", "re_u", "im_u", "arg_u", "arg_1mu"])
        for k, s, p, au, a1 in zip(idx, ss, pts, args["u"], args["1-u"]):
            w.writerow([int(k), f"{s:.12g}", f"{p.real:.12g}", f"{p.imag:.12g}",
                        f"{au:.12g}", f"{a1:.12g}"])


def _element_samples(el: PathElement, n: int):
    """Parameter samples; segments get extra points near both ends so that
    arguments measured from nearby branch points change in small steps."""
    if el.kind == "arc":
        return np.linspace(0.0, 1.0, n + 1)
    g = np.geomspace(1e-12, 0.5, n // 2)
    s = np.unique(np.concatenate([[0.0], g, 1 - g, [1.0], np.linspace(0, 1, n // 4 + 1)]))
    return s


# ---------------------------------------------------------------------------
# geometry


def _stadium(A: complex, B: complex, eps: float, positive: bool):
    """Closed path around the segment [A, B] starting and ending at A + eps.

    Requires |arg(A - B)| < π/2 so that A + eps lies outside the segment's
    eps-neighbourhood on the far side from B.
    """
    phi = cmath.phase(A - B)
    if abs(phi) >= math.pi / 2:
        raise GeometryError("stadium entry point would fall inside the stadium")
    up, down = phi + math.pi / 2, phi + 3 * math.pi / 2
    off_up = eps * cmath.exp(1j * up)
    off_down = eps * cmath.exp(1j * down)
    els = [
        PathElement.arc(A, eps, 0.0, up),
        PathElement.segment(A + off_up, B + off_up),
        PathElement.arc(B, eps, up, down),
        PathElement.segment(B + off_down, A + off_down),
        PathElement.arc(A, eps, down, TWO_PI),
    ]
    if positive:
        return els
    return [e.reversed() for e in reversed(els)]


def _zero_group(group, eps):
    """(A, B) of the stadium around 0 and ``group``, or None for a circle."""
    if group is None or abs(group) < eps / 3:
        return None
    p = complex(group)
    if p.real < 0:
        return 0j, p
    if p.real > 0 and _dist_to_segment(1 + 0j, 0j, p) > 2 * eps:
        return p, 0j
    raise GeometryError(f"cannot group {p!r} with 0: it is too close to 1 or on the imaginary axis")


def _dist_to_segment(q, a, b):
    d = b - a
    if d == 0:
        return abs(q - a)
    t = min(max(((q - a) * d.conjugate()).real / abs(d) ** 2, 0.0), 1.0)
    return abs(q - (a + t * d))


def auto_epsilon(group=None, excluded=(), cap=0.25) -> float:
    """Largest radius (≤ cap) keeping excluded points > 2ε from the loop."""
    eps = cap
    g = None if group is None else complex(group)
    if g is not None and g.real > 0:
        eps = min(eps, _dist_to_segment(1 + 0j, 0j, g) / 4)
    segs = [(0j, 1 + 0j)]
    if g is not None:
        segs.append((0j, g))
    for q in excluded:
        q = complex(q)
        d = min(_dist_to_segment(q, a, b) for a, b in segs)
        eps = min(eps, 0.99 * d / 3)
    if g is not None and abs(g) >= 1e-300:
        # a point too close to 0 to get its own stadium end is absorbed by the circle
        if abs(g) < eps / 3:
            pass
        elif abs(g) < 3 * eps:
            eps = min(eps, abs(g) / 3)
    if eps < 1e-4:
        raise GeometryError("no admissible loop radius: excluded points are too close")
    return eps


def build_double_loop(spec: LoopSpec = LoopSpec()) -> ContourPath:
    """The loop (1+, {0, group}+, 1-, {0, group}-) from the base point t0."""
    eps = spec.epsilon if spec.epsilon is not None else auto_epsilon(spec.group, spec.excluded)
    if not 0 < eps < 0.5:
        raise GeometryError("epsilon must lie in (0, 1/2)")
    ab = _zero_group(spec.group, eps)
    entry = eps + 0j if ab is None or ab[0] == 0 else ab[0] + eps
    right = 1 - eps
    if entry.real >= right - 1e-12:
        raise GeometryError("loop pieces around 0 and 1 overlap for this epsilon")
    # the base point is real; a complex stadium entry is joined by a segment
    lo = entry.real if entry.imag == 0 else right
    t0 = lo if spec.t0 is None else float(spec.t0)
    if not lo - 1e-12 <= t0 <= right + 1e-12:
        raise GeometryError(f"base point must lie in [{lo}, {right}]")

    def zero_loop(positive):
        if ab is None:
            return [PathElement.arc(0, eps, 0.0, TWO_PI if positive else -TWO_PI)]
        return _stadium(ab[0], ab[1], eps, positive)

    def seg(a, b):
        return [] if abs(a - b) < 1e-15 else [PathElement.segment(a, b)]

    els = (
        seg(t0, right)
        + [PathElement.arc(1, eps, math.pi, 3 * math.pi)]
        + seg(right, entry)
        + zero_loop(True)
        + seg(entry, right)
        + [PathElement.arc(1, eps, math.pi, -math.pi)]
        + seg(right, entry)
        + zero_loop(False)
        + seg(entry, t0)
    )
    path = ContourPath(els, complex(t0), epsilon=eps)
    check_continuity(els)
    _check_clearance(path, spec.excluded, eps)
    return path


def _check_clearance(path: ContourPath, excluded, eps):
    if not excluded:
        return
    pts = np.array([p for _, _, p in path.samples(128)])
    for q in excluded:
        d = float(np.min(np.abs(pts - complex(q))))
        if d <= 2 * eps:
            raise GeometryError(f"point {complex(q)!r} is within 2*epsilon of the loop")


def _loop_prefactor(p, q):
    """1 / ((1 - e^{2πip})(1 - e^{2πiq})), guarding integer parameters."""
    for v, name in ((p, "first"), (q, "second")):
        if nearest_int_distance(v) < INTEGER_GAP:
            raise DegenerateError(f"{name} loop exponent {complex(v)!r} is too close to an integer")
    return 1 / ((1 - cmath.exp(TWO_PI * 1j * p)) * (1 - cmath.exp(TWO_PI * 1j * q)))


# ---------------------------------------------------------------------------
# loop integrals


def loop_integral(factors, path: ContourPath, tol=1e-10, extra=None):
    """∮ Π base^exponent over the path with tracked arguments.

    Returns (EvalResult, final BranchState).
    """
    state = BranchState.initial(path.tracked)
    f = PowerProduct(factors, extra=extra)
    return integrate_path(f, path.elements, tol, state=state, return_state=True)


def _closure_note(state: BranchState, path: ContourPath) -> float:
    return max(abs(state.arg(k) - v) for k, v in path.tracked.items() if k in state.factors)


def beta_double_loop(a, b, spec: LoopSpec = LoopSpec(), tol=1e-11) -> EvalResult:
    """Γ(a)Γ(b)/Γ(a+b) from the loop integral of t^{a-1}(1-t)^{b-1}."""
    a, b = as_complex(a, "a"), as_complex(b, "b")
    pre = _loop_prefactor(a, b)
    path = build_double_loop(spec)
    res, state = loop_integral(
        [("u", lambda t: t, a - 1), ("1-u", lambda t: 1 - t, b - 1)], path, tol
    )
    out = res.scaled(pre)
    out.notes.update(closure=_closure_note(state, path), epsilon=path.epsilon)
    return out


def hyp2f1_loop(mode, a, b, c, z, spec: LoopSpec | None = None, tol=1e-11) -> EvalResult:
    """2F1 from the double-loop Euler integral.

    ``mode="outside"``: 1/z outside the loop, returns 2F1(a, b; c; z).
    ``mode="inside"``: 1/z enclosed with 0 (Re z < 0), returns
    Γ(c)Γ(b-a)/(Γ(b)Γ(c-a))·(-z)^{-a}·2F1(a, a-c+1; a-b+1; 1/z).
    """
    a, b, c = (as_complex(v) for v in (a, b, c))
    z = as_complex(z, "z")
    factors = [
        ("u", lambda t: t, b - 1),
        ("1-u", lambda t: 1 - t, c - b - 1),
        ("1-zu", lambda t: 1 - z * t, -a),
    ]
    g = gamma_ratio([c], [b, c - b])
    if mode == "outside":
        pre = g * _loop_prefactor(b, c - b)
        if spec is None:
            spec = LoopSpec(excluded=(1 / z,) if z != 0 else ())
        if spec.group is not None:
            raise GeometryError("1/z must stay outside the loop in this mode")
    elif mode == "inside":
        if z.imag == 0 and z.real >= 0:
            raise DomainError("z must avoid [0, inf) when 1/z is enclosed")
        pre = g * _loop_prefactor(b - a, c - b)
        if spec is None:
            spec = LoopSpec(group=1 / z)
        elif spec.group is None or abs(spec.group - 1 / z) > 1e-12:
            spec = LoopSpec(spec.epsilon, spec.t0, 1 / z, spec.excluded)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    path = build_double_loop(spec)
    res, state = loop_integral(factors, path, tol)
    out = res.scaled(pre)
    out.notes.update(closure=_closure_note(state, path), epsilon=path.epsilon)
    return out


def hyp2f1_inside_target(a, b, c, z) -> EvalResult:
    """Closed form the enclosed-1/z loop must reproduce."""
    a, b, c, z = (as_complex(v) for v in (a, b, c, z))
    pre = gamma_ratio([c, b - a], [b, c - a]) * principal_power(-z, -a)
    return hyp2f1(a, a - c + 1, a - b + 1, 1 / z).scaled(pre, method="closed-form")


def hyp2f1_two_term(a, b, c, z) -> EvalResult:
    """2F1(a,b;c;z) - Γ(c)Γ(a-b)/(Γ(a)Γ(c-b))·(-z)^{-b}·2F1(b, b-c+1; b-a+1; 1/z)."""
    a, b, c, z = (as_complex(v) for v in (a, b, c, z))
    f = hyp2f1(a, b, c, z)
    pre = gamma_ratio([c, a - b], [a, c - b]) * principal_power(-z, -b)
    g = hyp2f1(b, b - c + 1, b - a + 1, 1 / z)
    return EvalResult(
        f.value - pre * g.value,
        f.err_estimate + abs(pre) * g.err_estimate,
        "closed-form",
        f.terms_or_nodes + g.terms_or_nodes,
    )


def hyp2f1_shrunk(a, b, c, z, tol=1e-12) -> EvalResult:
    """The ε -> 0 limit of the enclosed-1/z loop: two interval integrals.

    Needs z < 0 (real), Re a < 1 and Re c > Re b > 0.
    """
    a, b, c = (as_complex(v) for v in (a, b, c))
    z = as_complex(z, "z")
    if z.imag != 0 or z.real >= 0:
        raise DomainError("the shrunk form is set up for real z < 0")
    if not (a.real < 1 and c.real > b.real > 0):
        raise ConstraintError("shrinking needs Re a < 1 and Re c > Re b > 0")
    pre = gamma_ratio([c], [b, c - b])
    first = integrate_weighted_01(
        WeightedIntegrand1D(lambda t: (1 - z * t) ** (-a), b - 1, c - b - 1), tol
    )
    # t = s/z maps [1/z, 0] onto [0, 1]
    second = integrate_weighted_01(
        WeightedIntegrand1D(lambda s: (1 - s / z) ** (c - b - 1), b - 1, -a), tol
    )
    ratio = cmath.sin(math.pi * a) / cmath.sin(math.pi * (a - b)) * principal_power(-z, -b)
    value = pre * (first.value - ratio * second.value)
    err = abs(pre) * (first.err_estimate + abs(ratio) * second.err_estimate)
    return EvalResult(value, err, "single-integral", first.terms_or_nodes + second.terms_or_nodes)


# ---------------------------------------------------------------------------
# the double-loop integral for H2


def kita_cut_point(y):
    """u where (1/u - 1)y = 1; the cut of the inner 2F1 joins it to 0."""
    y = complex(y)
    if y == -1:
        raise GeometryError("y = -1 puts the cut endpoint at infinity")
    return y / (1 + y)


def kita_loop_spec(x, y, epsilon=None, t0=None) -> LoopSpec:
    x, y = complex(x), complex(y)
    if y.imag == 0 and y.real <= -1:
        raise GeometryError("for real y <= -1 the inner cut joins 0 to infinity; no admissible loop")
    excluded = (1 / x,) if x != 0 else ()
    group = kita_cut_point(y) if y != 0 else None
    return LoopSpec(epsilon, t0, group, excluded)


def _check_nodes(u, x, y):
    ux = u * x
    bad = (np.abs(ux.imag) < CUT_MARGIN) & (ux.real > 1 - CUT_MARGIN)
    w = (1 / u - 1) * y
    bad |= (np.abs(w.imag) < CUT_MARGIN) & (w.real > 1 - CUT_MARGIN)
    if np.any(bad):
        raise GeometryError(f"loop node {complex(u[np.argmax(bad)])!r} touches a cut")


def kita_h2_loop(a, b, c, d, e, x, y, spec: LoopSpec | None = None, tol=1e-10,
                 inner="closed") -> EvalResult:
    """H2(a,b,c,d,e; x, y) from the double-loop integral in u with an inner
    v-integral over [0, 1].

    The inner integral is B(d, e-a-d)·2F1(c, d; e-a; (1/u - 1)y); with
    ``inner="quadrature"`` it is integrated numerically instead (slow, for
    cross-checks; needs Re d > 0 and Re(e-a-d) > 0).
    """
    a, b, c, d, e = (as_complex(v) for v in (a, b, c, d, e))
    x, y = as_complex(x, "x"), as_complex(y, "y")
    pre = _loop_prefactor(a, e - a)
    if spec is None:
        spec = kita_loop_spec(x, y)
    path = build_double_loop(spec)

    if inner == "closed":
        pre *= gamma_ratio([e], [a, e - a])

        def inner_fn(u):
            return np.array([hyp2f1(c, d, e - a, w).value for w in (1 / u - 1) * y])

    elif inner == "quadrature":
        if not (d.real > 0 and (e - a - d).real > 0):
            raise ConstraintError("the inner integral needs Re d > 0 and Re(e-a-d) > 0")
        pre *= gamma_ratio([e], [e - a - d, a, d])

        def inner_fn(u):
            out = []
            for w in (1 / u - 1) * y:
                f = WeightedIntegrand1D(lambda v, w=w: (1 - w * v) ** (-c), d - 1, e - a - d - 1)
                out.append(integrate_weighted_01(f, 1e-12).value)
            return np.array(out)

    else:
        raise ValueError(f"unknown inner evaluation {inner!r}")

    def extra(u):
        _check_nodes(u, x, y)
        return (1 - u * x) ** (-b) * inner_fn(u)

    res, state = loop_integral(
        [("u", lambda t: t, a - 1), ("1-u", lambda t: 1 - t, e - a - 1)], path, tol, extra
    )
    out = res.scaled(pre)
    out.notes.update(closure=_closure_note(state, path), epsilon=path.epsilon)
    return out


REAL_CASES = ("Case1", "Case2", "Case3", "Case4")


def real_case(x, y) -> str:
    for name in REAL_CASES:
        if region_contains(name, x, y):
            return name
    raise DomainError(f"({x!r}, {y!r}) lies in none of the four real cases")


def olsson_I(a, b1, b2, c1, c2, x, y, spec: LoopSpec | None = None, tol=1e-10) -> EvalResult:
    """y^{-b2}·H2(a-b2, b1, b2, b2-c2+1, c1; x, -1/y) by the double loop,
    for real (x, y) in one of the four cases."""
    x, y = as_complex(x, "x"), as_complex(y, "y")
    case = real_case(x, y)
    for v in (a - b2, -a + b2 + c1):
        if nearest_int_distance(v) < INTEGER_GAP:
            raise DegenerateError("a-b2 and c1+b2-a must avoid the integers")
    res = kita_h2_loop(a - b2, b1, b2, b2 - c2 + 1, c1, x, -1 / y, spec, tol)
    out = res.scaled(principal_power(y, -b2))
    out.notes["case"] = case
    return out


# ---------------------------------------------------------------------------
# shrinking in the first case


def hyp2f1_jump(a, b, c, x) -> complex:
    """(2F1(x + i0) - 2F1(x - i0)) / (2πi) for real x > 1."""
    a, b, c = (as_complex(v) for v in (a, b, c))
    x = float(complex(x).real)
    if not x > 1:
        raise DomainError("the jump is defined across the cut x > 1")
    pre = gamma_ratio([c], [a, b, c - a - b + 1])
    return complex(pre * x ** (1 - c) * (x - 1) ** (c - a - b) * hyp2f1(1 - a, 1 - b, c - a - b + 1, 1 - x).value)


def _case1_checks(a, b1, b2, c1, c2, x, y):
    if not (x.imag == 0 and y.imag == 0 and x.real <= 0 and x.real + y.real > 1):
        raise DomainError("shrinking is implemented for x <= 0, x + y > 1 only")
    conds = {
        "Re(b2+c1-a)": (b2 + c1 - a).real,
        "Re a": a.real,
        "Re(a-c2+1)": (a - c2 + 1).real,
        "Re(c1+c2-a-b2)": (c1 + c2 - a - b2).real,
    }
    bad = [k for k, v in conds.items() if not v > 1e-9]
    if bad:
        raise ConstraintError("shrinking constraint violated: " + ", ".join(bad))


def _eq32_integral(a, b1, b2, c1, c2, x, y, tol):
    """∫₀¹ u^{a-b2-1}(1-u)^{b2+c1-a-1}(1-xu)^{-b1} 2F1(b2, b2-c2+1; b2+c1-a; (1-1/u)/y) du."""
    alpha = min((a - 1, a - c2), key=lambda v: v.real)
    shift = a - b2 - 1 - alpha

    def g(u):
        w = (1 - 1 / u) / y
        return (1 - x * u) ** (-b1) * hyp2f1_scaled(b2, b2 - c2 + 1, b2 + c1 - a, w, shift * math.log(u))

    return integrate_weighted_01(WeightedIntegrand1D(g, alpha, b2 + c1 - a - 1, vectorized=False), tol)


def _fp_value(q: FPParams, x, y, tol) -> EvalResult:
    """F_P by series where possible, otherwise by the double integral."""
    from .euler import fp_integral

    if in_fp41(x, y) or in_fp44(x, y):
        try:
            return fp_series(q, x, y, 1e-14)
        except Exception:
            pass
    try:
        return fp_integral("FP4.6", q, x, y, tol)
    except ConstraintError:
        return fp_integral("FP-eq32", q, x, y, tol)


@dataclass(frozen=True)
class ShrinkResult:
    I1: EvalResult
    I2: EvalResult
    I1_closed: EvalResult
    I2_closed: EvalResult


def shrink_case1(a, b1, b2, c1, c2, x, y, tol=1e-10) -> ShrinkResult:
    """Split the first-case loop integral into an integral over [0, 1] and
    one over [1/(1-y), 0], each also given in closed form through F_P."""
    a, b1, b2, c1, c2 = (as_complex(v) for v in (a, b1, b2, c1, c2))
    x, y = as_complex(x, "x"), as_complex(y, "y")
    _case1_checks(a, b1, b2, c1, c2, x, y)

    pre1 = gamma_ratio([c1], [a - b2, -a + b2 + c1]) * principal_power(y, -b2)
    I1 = _eq32_integral(a, b1, b2, c1, c2, x, y, tol).scaled(pre1)
    k1 = gamma_ratio([a, a - c2 + 1], [a + b2 - c2 + 1, a - b2])
    I1_closed = _fp_value(FPParams(a, b1, b2, c1, c2), x, y, tol).scaled(k1, method="closed-form")

    # the jump of the inner 2F1 across its cut, then u = w/(1-y)
    yr = y.real
    pre2 = (
        gamma_ratio([c1, b2 - a + 1], [b2, b2 - c2 + 1, c1 + c2 - a - b2])
        * (yr - 1) ** (-a)
        * (yr / (yr - 1)) ** (b2 - c2)
    )
    I2 = _eq32_integral(a, b1, c2 - b2, c1, c2, x / (1 - y), y / (y - 1), tol).scaled(pre2)
    k2 = gamma_ratio([b2 - a + 1, a, a - c2 + 1], [b2, a - b2 + 1, b2 - c2 + 1]) * (yr - 1) ** (-a)
    I2_closed = _fp_value(FPParams(a, b1, c2 - b2, c1, c2), x / (1 - y), y / (y - 1), tol).scaled(
        k2, method="closed-form"
    )
    return ShrinkResult(I1, I2, I1_closed, I2_closed)


TABLE1 = [
    # (arg u, arg(1-u), side of (1-1/u)/y): side 0 = negative reals, ±1 = (1, ∞) ± i0
    (0.0, 0.0, 0), (0.0, TWO_PI, 0), (math.pi, TWO_PI, +1), (math.pi, TWO_PI, -1),
    (TWO_PI, TWO_PI, 0), (TWO_PI, 0.0, 0), (math.pi, 0.0, -1), (math.pi, 0.0, +1),
]


def case1_checkpoints(x, y, epsilon=1e-10):
    """Tracked data at the midpoints of the eight straight passes of the
    first-case loop, in traversal order.

    Returns a list of (arg u, arg(1-u), (1-1/u)/y) tuples.
    """
    x, y = complex(x), complex(y)
    p = 1 / (1 - y)
    path = build_double_loop(LoopSpec(epsilon, None, p))
    idx, ss, pts, args = path.track({"u": lambda t: t, "1-u": lambda t: 1 - t}, 512)
    out = []
    for k, el in enumerate(path.elements):
        if el.kind != "segment":
            continue
        sel = np.nonzero(idx == k)[0]
        j = sel[np.argmin(np.abs(ss[sel] - 0.5))]
        u = pts[j]
        out.append((float(args["u"][j]), float(args["1-u"][j]), complex((1 - 1 / u) / y)))
    return out

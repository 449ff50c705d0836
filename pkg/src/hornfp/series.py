"""Power-series evaluation of 2F1, Appell F1/F2/F3, Horn H2 and F_P.

These routines are the reference values against which every integral
representation in the package is checked.  Double series are summed over
anti-diagonals i+j = n, each built from the previous one by term ratios.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, NoConvergence, PoleError, UnsupportedRegion
from .numerics import (
    as_complex,
    gamma_ratio,
    is_integer,
    is_nonpositive_integer,
    nearest_int_distance,
    principal_power,
)
from .result import EvalResult

EPS = np.finfo(float).eps
RUN_LENGTH = 20  # consecutive small terms required before stopping
DEGENERATE_GAP = 1e-6
MAX_TERMS = 200_000
MAX_WAVEFRONTS = 3000


@dataclass(frozen=True)
class H2Params:
    a: complex
    b: complex
    c: complex
    d: complex
    e: complex

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, as_complex(getattr(self, name), name))
        if is_nonpositive_integer(self.e):
            raise PoleError("H2 parameter e is a nonpositive integer")

    def swap_cd(self) -> "H2Params":
        return H2Params(self.a, self.b, self.d, self.c, self.e)


@dataclass(frozen=True)
class FPParams:
    a: complex
    b1: complex
    b2: complex
    c1: complex
    c2: complex

    def __post_init__(self):
        for name in ("a", "b1", "b2", "c1", "c2"):
            object.__setattr__(self, name, as_complex(getattr(self, name), name))
        if is_nonpositive_integer(self.c1):
            raise PoleError("F_P parameter c1 is a nonpositive integer")
        if is_nonpositive_integer(self.a + self.b2 - self.c2 + 1):
            raise PoleError("F_P parameter a+b2-c2+1 is a nonpositive integer")

    @property
    def g(self) -> complex:
        return self.a + self.b2 - self.c2 + 1

    @property
    def h(self) -> complex:
        return self.a - self.c2 + 1


# ---------------------------------------------------------------------------
# one-variable series


def _stop_ok(abs_terms_run: int, tail: float, s: complex, tol: float) -> bool:
    return abs_terms_run >= RUN_LENGTH and tail <= tol * max(abs(s), 1e-300)


def pfq_series(num, den, z, tol=1e-15, max_terms=MAX_TERMS):
    """Sum a pFq series with p = q+1 (or fewer) numerator parameters.

    Returns (value, err_estimate, n_terms).  The tail is bounded
    geometrically by the current term ratio or |z|, whichever is larger.
    """
    z = complex(z)
    num = [complex(v) for v in num]
    den = [complex(v) for v in den]
    for q in den:
        if is_nonpositive_integer(q):
            # harmless only if a numerator zero terminates the series first
            m = -round(q.real)
            if not any(is_nonpositive_integer(p) and -round(p.real) < m for p in num):
                raise PoleError(f"series denominator parameter {q!r} is a nonpositive integer")
    s = 1 + 0j
    t = 1 + 0j
    abs_sum = 1.0
    run = 0
    asym = abs(z) if len(num) == len(den) + 1 else 0.0
    for k in range(max_terms):
        r = z / (k + 1)
        for p in num:
            r *= p + k
        for q in den:
            r /= q + k
        t = t * r
        s += t
        at = abs(t)
        abs_sum += at
        if at == 0.0:
            # exact termination: every later term vanishes as well
            return s, 2 * EPS * abs_sum, k + 2
        run = run + 1 if at <= tol * abs(s) else 0
        rho = max(abs(r), asym)
        tail = at * rho / (1 - rho) if rho < 1 else math.inf
        if _stop_ok(run, tail, s, tol):
            return s, tail + 2 * EPS * abs_sum, k + 2
    raise NoConvergence(f"pFq series did not converge within {max_terms} terms at z={z!r}")


def hyp3f2(a1, a2, a3, b1, b2, z, tol=1e-15) -> EvalResult:
    """3F2 by direct series; only |z| < 1 is supported."""
    z = as_complex(z, "z")
    if abs(z) >= 1:
        raise DomainError("hyp3f2 series needs |z| < 1")
    v, e, n = pfq_series([a1, a2, a3], [b1, b2], z, tol)
    return EvalResult(v, e, "series", n)


def levin_u(terms, n0: int, k: int, beta: float = 1.0) -> complex:
    """Levin u-transform of order k built from partial sums S_{n0}..S_{n0+k}.

    Suited to series whose terms behave like n^{-p}(c0 + c1/n + ...).
    """
    a = np.asarray(terms, dtype=complex)
    if a.size < n0 + k + 1:
        raise ValueError("not enough terms for the requested transform")
    partial = np.cumsum(a)
    j = np.arange(k + 1)
    n = n0 + j
    omega = (n + beta) * a[n]
    if np.any(omega == 0):
        raise ZeroDivisionError("vanishing term inside the transform window")
    binom = np.array([math.comb(k, int(i)) for i in j], dtype=float)
    c = (-1.0) ** j * binom * ((n + beta) / (n0 + k + beta)) ** (k - 1)
    return complex((c * partial[n] / omega).sum() / (c / omega).sum())


# ---------------------------------------------------------------------------
# 2F1 with analytic continuation


def _polynomial_degree(a, b):
    degs = [-round(complex(p).real) for p in (a, b) if is_nonpositive_integer(p)]
    return min(degs) if degs else None


def _polynomial(a, b, c, z, deg):
    """Finite sum up to z^deg.  A parameter only within POLE_TOL of the
    integer leaves a remainder of that relative size, charged to the error."""
    t, s, abs_sum = 1 + 0j, 1 + 0j, 1.0
    for k in range(deg):
        t *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        s += t
        abs_sum += abs(t)
    last = t * (a + deg) * (b + deg) / ((c + deg) * (deg + 1)) * z
    return s, 2 * EPS * abs_sum * (deg + 1) + 2 * abs(last), deg + 1


def _direct(a, b, c, z, tol):
    v, e, n = pfq_series([a, b], [c], z, tol)
    return v, e, n


def _two_term(coef1, part1, coef2, part2):
    (v1, e1, n1), (v2, e2, n2) = part1, part2
    t1, t2 = coef1 * v1, coef2 * v2
    value = t1 + t2
    err = abs(coef1) * e1 + abs(coef2) * e2 + 8 * EPS * (abs(t1) + abs(t2))
    return value, err, n1 + n2


def _candidates(a, b, c, z):
    """(modulus, name, degenerate-gap) of each argument map applicable at z."""
    out = [("pfaff", z / (z - 1), math.inf)]
    out.append(("one_minus", 1 - z, nearest_int_distance(c - a - b)))
    out.append(("inverse", 1 / z, nearest_int_distance(b - a)))
    out.append(("inv_one_minus", 1 / (1 - z), nearest_int_distance(b - a)))
    if z.real > 0:
        out.append(("one_minus_inv", 1 - 1 / z, nearest_int_distance(c - a - b)))
    return [(abs(w), name, gap) for name, w, gap in out]


def _apply_map(name, a, b, c, z, tol):
    if name == "pfaff":
        w = z / (z - 1)
        v, e, n = _direct(a, c - b, c, w, tol)
        f = principal_power(1 - z, -a)
        return f * v, abs(f) * e, n
    if name == "one_minus":
        w = 1 - z
        c1 = gamma_ratio([c, c - a - b], [c - a, c - b])
        c2 = gamma_ratio([c, a + b - c], [a, b]) * principal_power(1 - z, c - a - b)
        return _two_term(
            c1, _direct(a, b, a + b - c + 1, w, tol), c2, _direct(c - a, c - b, c - a - b + 1, w, tol)
        )
    if name == "inverse":
        w = 1 / z
        c1 = gamma_ratio([c, b - a], [b, c - a]) * principal_power(-z, -a)
        c2 = gamma_ratio([c, a - b], [a, c - b]) * principal_power(-z, -b)
        return _two_term(
            c1, _direct(a, a - c + 1, a - b + 1, w, tol), c2, _direct(b, b - c + 1, b - a + 1, w, tol)
        )
    if name == "inv_one_minus":
        w = 1 / (1 - z)
        c1 = gamma_ratio([c, b - a], [b, c - a]) * principal_power(1 - z, -a)
        c2 = gamma_ratio([c, a - b], [a, c - b]) * principal_power(1 - z, -b)
        return _two_term(
            c1, _direct(a, c - b, a - b + 1, w, tol), c2, _direct(b, c - a, b - a + 1, w, tol)
        )
    if name == "one_minus_inv":
        w = 1 - 1 / z
        c1 = gamma_ratio([c, c - a - b], [c - a, c - b]) * principal_power(z, -a)
        c2 = (
            gamma_ratio([c, a + b - c], [a, b])
            * principal_power(1 - z, c - a - b)
            * principal_power(z, a - c)
        )
        return _two_term(
            c1, _direct(a, a - c + 1, a + b - c + 1, w, tol), c2, _direct(c - a, 1 - a, c - a - b + 1, w, tol)
        )
    raise ValueError(name)


def _ode_waypoints(z):
    """Start point on |z0| = 1/2 and waypoints that keep clear of z = 1."""
    # distance from 1 to the segment [0, z]
    t = min(max((z.conjugate() * 1).real / abs(z) ** 2, 0.0), 1.0)
    if abs(t * z - 1) >= 0.3:
        return [0.5 * z / abs(z), z]
    s = 1.0 if z.imag >= 0 else -1.0
    return [0.5j * s, complex(z.real, s * max(abs(z.imag), 1.0)), z]


def _taylor_step(a, b, c, zk, h, f, fp):
    """Advance (F, F') of the hypergeometric equation from zk to zk+h."""
    p0 = zk * (1 - zk)
    p1 = 1 - 2 * zk
    q0 = c - (a + b + 1) * zk
    q1 = -(a + b + 1)
    r = -a * b
    u0, u1 = f, fp * h
    val = u0 + u1
    der = u1
    abs_sum = abs(u0) + abs(u1)
    small = 0
    n = 0
    while n < 2000:
        u2 = -(
            (p1 * n * (n + 1) + q0 * (n + 1)) * h * u1
            + (-n * (n - 1) + q1 * n + r) * h * h * u0
        ) / (p0 * (n + 1) * (n + 2))
        val += u2
        der += (n + 2) * u2
        abs_sum += abs(u2)
        small = small + 1 if abs(u2) <= 1e-17 * max(abs(val), 1e-300) else 0
        if small >= 3:
            break
        u0, u1 = u1, u2
        n += 1
    return val, der / h, abs_sum


def _hyp2f1_ode(a, b, c, z, tol):
    pts = _ode_waypoints(z)
    z0 = pts[0]
    f, fe, n0 = _direct(a, b, c, z0, tol)
    g, ge, n1 = _direct(a + 1, b + 1, c + 1, z0, tol)
    fp = a * b / c * g
    rel = fe / max(abs(f), 1e-300) + ge / max(abs(g), 1e-300)
    zk = z0
    steps = 0
    for target in pts[1:]:
        while abs(target - zk) > 1e-15 * max(1.0, abs(target)):
            dist = abs(target - zk)
            h_len = min(0.5 * min(abs(zk), abs(1 - zk)), dist)
            h = (target - zk) / dist * h_len
            f, fp, abs_sum = _taylor_step(a, b, c, zk, h, f, fp)
            zk = target if h_len == dist else zk + h
            rel += 4 * EPS * abs_sum / max(abs(f), 1e-300)
            steps += 1
            if steps > 10_000:
                raise NoConvergence("ODE continuation of 2F1 took too many steps")
    return f, rel * abs(f), n0 + n1 + steps


def hyp2f1(a, b, c, z, tol=1e-15, *, inner=0.5, max_modulus=0.8, on_degenerate="continue") -> EvalResult:
    """Gauss hypergeometric function on the principal sheet, z off [1, ∞).

    |z| <= ``inner`` is summed directly.  Otherwise the argument map
    (Pfaff, 1-z, 1/z, 1/(1-z), 1-1/z) giving the smallest modulus is used when
    that modulus is at most ``max_modulus``; failing that, the differential
    equation is integrated by Taylor steps from |z| = 1/2.

    Connection formulas whose parameter differences lie within 1e-6 of an
    integer are skipped; with ``on_degenerate="raise"`` that situation raises
    DegenerateError instead of falling back to the ODE path.
    """
    a, b, c = (as_complex(v, n) for v, n in ((a, "a"), (b, "b"), (c, "c")))
    z = as_complex(z, "z")
    deg = _polynomial_degree(a, b)
    if is_nonpositive_integer(c) and (deg is None or deg >= -round(c.real)):
        raise PoleError(f"2F1 undefined for c={c!r}")
    if deg is not None:
        v, e, n = _polynomial(a, b, c, z, deg)
        return EvalResult(v, e, "series", n)
    if z.imag == 0 and z.real >= 1:
        raise DomainError(f"2F1 argument {z!r} lies on the branch cut [1, inf)")
    if abs(z) <= inner:
        v, e, n = _direct(a, b, c, z, tol)
        return EvalResult(v, e, "series", n)

    cands = sorted(_candidates(a, b, c, z))
    usable = [cd for cd in cands if cd[2] >= DEGENERATE_GAP]
    best = usable[0] if usable else None
    if best is not None and best[0] <= max_modulus:
        v, e, n = _apply_map(best[1], a, b, c, z, tol)
        if e <= max(tol, 1e3 * EPS) * abs(v) or on_degenerate == "raise":
            return EvalResult(v, e, "series", n, notes={"map": best[1]})
        # cancellation between the two terms: compare with the ODE path
        vo, eo, no = _hyp2f1_ode(a, b, c, z, tol)
        if eo < e:
            return EvalResult(vo, eo, "series", no, notes={"map": "ode"})
        return EvalResult(v, e, "series", n, notes={"map": best[1]})
    if on_degenerate == "raise" and cands[0][0] <= max_modulus:
        raise DegenerateError(
            f"connection formula {cands[0][1]} is degenerate for a={a!r}, b={b!r}, c={c!r}"
        )
    v, e, n = _hyp2f1_ode(a, b, c, z, tol)
    return EvalResult(v, e, "series", n, notes={"map": "ode"})


def hyp2f1_value(a, b, c, z, tol=1e-15) -> complex:
    return hyp2f1(a, b, c, z, tol).value


HUGE_ARG = 1e60


def hyp2f1_scaled(a, b, c, z, log_scale=0j) -> complex:
    """exp(log_scale)·2F1(a, b; c; z) without intermediate overflow.

    For |z| > 1e60 only the leading terms of the expansion at infinity
    matter, C1 (-z)^{-a} + C2 (-z)^{-b}; they are combined with the scale
    in log space.  Integrands with a small power of the integration
    variable in front of a 2F1 at a huge argument need this.
    """
    z = complex(z)
    if abs(z) <= HUGE_ARG or is_integer(a - b, DEGENERATE_GAP):
        return complex(cmath.exp(log_scale) * hyp2f1(a, b, c, z).value)
    lz = cmath.log(-z)
    out = 0j
    for p, q in ((a, b), (b, a)):
        if is_nonpositive_integer(c - p):
            continue
        coef = gamma_ratio([c, q - p], [q, c - p])
        if coef != 0:
            out += cmath.exp(log_scale + cmath.log(coef) - p * lz)
    return out


# ---------------------------------------------------------------------------
# double series


def wavefront_sum(rx, ry0, x, y, tol, max_n=MAX_WAVEFRONTS):
    """Sum Σ A(i,j) x^i y^j over anti-diagonals.

    ``rx(i, j)`` is A(i+1, j)/A(i, j) (vectorised over arrays) and ``ry0(j)`` is
    A(0, j+1)/A(0, j).  Returns (value, err_estimate, n_terms).
    """
    x, y = complex(x), complex(y)
    w = np.ones(1, dtype=complex)
    s = 1 + 0j
    abs_sum = 1.0
    mags = [1.0]
    run = 0
    nterms = 1
    with np.errstate(over="raise", invalid="raise"):
        for n in range(1, max_n + 1):
            new = np.empty(n + 1, dtype=complex)
            new[0] = w[0] * ry0(n - 1) * y
            ii = np.arange(n)
            new[1:] = w * rx(ii, n - 1 - ii) * x
            w = new
            nterms += n + 1
            s += w.sum()
            aw = np.abs(w)
            m = float(aw.sum())
            abs_sum += m
            mags.append(m)
            run = run + 1 if float(aw.max()) <= tol * abs(s) else 0
            if run >= RUN_LENGTH:
                recent = mags[-RUN_LENGTH - 1 :]
                ratios = [q / p for p, q in zip(recent[:-1], recent[1:]) if p > 0]
                rho = max(ratios) if ratios else 0.0
                tail = m * rho / (1 - rho) if rho < 1 else math.inf
                if m == 0.0:
                    tail = 0.0
                if tail <= tol * max(abs(s), 1e-300):
                    return s, tail + 4 * EPS * abs_sum, nterms
    raise NoConvergence(f"double series did not converge within {max_n} anti-diagonals")


def _check_den(*params):
    for p in params:
        if is_nonpositive_integer(p):
            raise PoleError(f"series denominator parameter {complex(p)!r} is a nonpositive integer")


def appell_f1(a, b1, b2, c, x, y, tol=1e-15) -> EvalResult:
    """Appell F1 inside the unit bidisk."""
    a, b1, b2, c = (as_complex(v) for v in (a, b1, b2, c))
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if abs(x) >= 1 or abs(y) >= 1:
        raise DomainError("appell_f1 series needs |x| < 1 and |y| < 1")
    _check_den(c)
    v, e, n = wavefront_sum(
        lambda i, j: (a + i + j) * (b1 + i) / ((c + i + j) * (i + 1)),
        lambda j: (a + j) * (b2 + j) / ((c + j) * (j + 1)),
        x, y, tol,
    )
    return EvalResult(v, e, "series", n)


def appell_f2(a, b1, b2, c1, c2, x, y, tol=1e-15) -> EvalResult:
    """Appell F2 for |x| + |y| < 1."""
    a, b1, b2, c1, c2 = (as_complex(v) for v in (a, b1, b2, c1, c2))
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if abs(x) + abs(y) >= 1:
        raise DomainError("appell_f2 series needs |x| + |y| < 1")
    _check_den(c1, c2)
    v, e, n = wavefront_sum(
        lambda i, j: (a + i + j) * (b1 + i) / ((c1 + i) * (i + 1)),
        lambda j: (a + j) * (b2 + j) / ((c2 + j) * (j + 1)),
        x, y, tol,
    )
    return EvalResult(v, e, "series", n)


def appell_f3(a1, a2, b1, b2, c, x, y, tol=1e-15) -> EvalResult:
    """Appell F3 inside the unit bidisk."""
    a1, a2, b1, b2, c = (as_complex(v) for v in (a1, a2, b1, b2, c))
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if abs(x) >= 1 or abs(y) >= 1:
        raise DomainError("appell_f3 series needs |x| < 1 and |y| < 1")
    _check_den(c)
    v, e, n = wavefront_sum(
        lambda i, j: (a1 + i) * (b1 + i) / ((c + i + j) * (i + 1)),
        lambda j: (a2 + j) * (b2 + j) / ((c + j) * (j + 1)),
        x, y, tol,
    )
    return EvalResult(v, e, "series", n)


# ---------------------------------------------------------------------------
# Horn H2


def in_omega1(x, y) -> bool:
    return abs(x) < 1 and abs(y) < 1 / (abs(x) + 1)


def h2_series(p: H2Params, x, y, tol=1e-14, form="3.1") -> EvalResult:
    """Horn H2 by its double series (``form="3.1"``) or as a single sum of
    2F1 values over the y-index (``form="3.2"``)."""
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if not in_omega1(x, y):
        raise DomainError(f"({x!r}, {y!r}) is outside Omega1, where the H2 series converges")
    a, b, c, d, e = p.a, p.b, p.c, p.d, p.e
    if is_integer(a) and a.real > 0.5:
        # (a)_{-j} has a pole once j >= a
        raise PoleError("H2 series undefined for positive integer a")
    if form == "3.1":
        v, err, n = wavefront_sum(
            lambda i, j: (a + i - j) * (b + i) / ((e + i) * (i + 1)),
            lambda j: (c + j) * (d + j) / ((a - j - 1) * (j + 1)),
            x, y, tol,
        )
        return EvalResult(v, err, "series", n, notes={"form": "3.1"})
    if form == "3.2":
        return _h2_single_sum(p, x, y, tol)
    raise ValueError(f"unknown H2 form {form!r}")


def _single_sum(coef_ratio, inner, tol, max_terms=20_000):
    """Σ_k C_k·G_k with C_{k+1} = C_k·coef_ratio(k) and G_k = inner(k)."""
    coef = 1 + 0j
    s = 0j
    err = 0.0
    abs_sum = 0.0
    run = 0
    prev = None
    nterms = 0
    for k in range(max_terms):
        if k > 0:
            coef *= coef_ratio(k - 1)
        if coef == 0:
            return s, err + 4 * EPS * abs_sum, nterms
        g = inner(k)
        t = coef * g.value
        s += t
        err += abs(coef) * g.err_estimate
        abs_sum += abs(t)
        nterms += g.terms_or_nodes
        at = abs(t)
        run = run + 1 if at <= tol * abs(s) else 0
        if run >= RUN_LENGTH and prev is not None:
            rho = at / prev if prev > 0 else 0.0
            tail = at * rho / (1 - rho) if rho < 1 else math.inf
            if tail <= tol * max(abs(s), 1e-300):
                return s, err + tail + 4 * EPS * abs_sum, nterms
        prev = at if at > 0 else prev
    raise NoConvergence("single-sum series did not converge")


def _h2_single_sum(p, x, y, tol):
    a, b, c, d, e = p.a, p.b, p.c, p.d, p.e
    v, err, n = _single_sum(
        lambda j: (c + j) * (d + j) / ((1 - a + j) * (j + 1)) * (-y),
        lambda j: hyp2f1(a - j, b, e, x, tol * 1e-2),
        tol,
    )
    return EvalResult(v, err, "series", n, notes={"form": "3.2"})


# ---------------------------------------------------------------------------
# F_P


def in_fp41(x, y) -> bool:
    return abs(x) < 1 and abs(1 - y) < 1


def in_fp44(x, y) -> bool:
    return y != 0 and abs(x / y) + abs(1 - 1 / y) < 1


def _fp41(p: FPParams, x, y, tol):
    a, b1, b2, c1 = p.a, p.b1, p.b2, p.c1
    g, h = p.g, p.h
    return wavefront_sum(
        lambda i, j: (a + i + j) * (h + i) * (b1 + i) / ((g + i + j) * (c1 + i) * (i + 1)),
        lambda j: (a + j) * (b2 + j) / ((g + j) * (j + 1)),
        x, 1 - y, tol,
    )


def _fp44(p: FPParams, x, y, tol):
    a, b1, c1 = p.a, p.b1, p.c1
    g, h = p.g, p.h
    v, e, n = wavefront_sum(
        lambda i, j: (a + i + j) * (h + i + j) * (b1 + i) / ((g + i + j) * (c1 + i) * (i + 1)),
        lambda j: (a + j) * (h + j) / ((g + j) * (j + 1)),
        x / y, (y - 1) / y, tol,
    )
    f = principal_power(y, -a)
    return f * v, abs(f) * e, n


def _fp42(p: FPParams, x, y, tol):
    a, b1, b2, c1 = p.a, p.b1, p.b2, p.c1
    g, h = p.g, p.h
    return _single_sum(
        lambda i: (a + i) * (h + i) * (b1 + i) / ((g + i) * (c1 + i) * (i + 1)) * x,
        lambda i: hyp2f1(a + i, b2, g + i, 1 - y, tol * 1e-2),
        tol,
    )


def _fp43(p: FPParams, x, y, tol):
    a, b1, c1 = p.a, p.b1, p.c1
    g, h = p.g, p.h
    v, e, n = _single_sum(
        lambda i: (a + i) * (h + i) * (b1 + i) / ((g + i) * (c1 + i) * (i + 1)) * (x / y),
        lambda i: hyp2f1(a + i, h + i, g + i, (y - 1) / y, tol * 1e-2),
        tol,
    )
    f = principal_power(y, -a)
    return f * v, abs(f) * e, n


def _fp45(p: FPParams, x, y, tol):
    a, b1, b2, c1 = p.a, p.b1, p.b2, p.c1
    g, h = p.g, p.h
    return _single_sum(
        lambda j: (a + j) * (b2 + j) / ((g + j) * (j + 1)) * (1 - y),
        lambda j: hyp3f2(a + j, b1, h, c1, g + j, x, tol * 1e-2),
        tol,
    )


_FP_FORMS = {"4.1": _fp41, "4.2": _fp42, "4.3": _fp43, "4.4": _fp44, "4.5": _fp45}


def fp_series(p: FPParams, x, y, tol=1e-14, form=None) -> EvalResult:
    """F_P by series.

    With ``form=None`` the double series about (0, 1) and the one in
    (x/y, (y-1)/y) are used wherever they converge; when both apply the
    err_estimate also covers their mutual discrepancy.  ``form`` may name
    one of "4.1" to "4.5" to force a particular summation order.
    """
    x, y = as_complex(x, "x"), as_complex(y, "y")
    ok41, ok44 = in_fp41(x, y), in_fp44(x, y)
    if form is not None:
        if form not in _FP_FORMS:
            raise ValueError(f"unknown F_P form {form!r}")
        needs44 = form in ("4.3", "4.4")
        if (needs44 and not ok44) or (not needs44 and not ok41):
            raise DomainError(f"form {form} does not converge at ({x!r}, {y!r})")
        v, e, n = _FP_FORMS[form](p, x, y, tol)
        return EvalResult(v, e, "series", n, notes={"form": form})
    if not (ok41 or ok44):
        raise DomainError(f"({x!r}, {y!r}) is outside both F_P series regions")
    results = []
    for ok, name in ((ok41, "4.1"), (ok44, "4.4")):
        if ok:
            try:
                results.append((name, *_FP_FORMS[name](p, x, y, tol)))
            except NoConvergence:
                if not results and name == "4.4":
                    raise
    if not results:
        raise NoConvergence("F_P series did not converge")
    name, v, e, n = min(results, key=lambda r: r[2])
    if len(results) == 2:
        e = max(results[0][2], results[1][2], abs(results[0][1] - results[1][1]))
        n = results[0][3] + results[1][3]
    return EvalResult(v, e, "series", n, notes={"form": name})


# ---------------------------------------------------------------------------
# regions


def _on_ray(z: complex, start: float) -> bool:
    """z lies on [start, ∞)."""
    return z.imag == 0 and z.real >= start


def in_omega2_complex(x, y) -> bool:
    """x off [1, ∞) and y(xu-1) off [1, ∞) for every u in [0, 1].

    The segment {y(xu-1)} runs from -y to y(x-1); it meets [1, ∞) iff some
    point of it is real and at least 1.
    """
    x, y = complex(x), complex(y)
    if _on_ray(x, 1.0):
        return False
    p, q = -y, y * (x - 1)
    if p.imag == q.imag == 0:
        return max(p.real, q.real) < 1
    if (p.imag > 0) == (q.imag > 0) and p.imag != 0 and q.imag != 0:
        return True
    t = p.imag / (p.imag - q.imag) if p.imag != q.imag else 0.0
    cross = p + t * (q - p)
    return cross.real < 1


def _real_pair(region, x, y):
    x, y = complex(x), complex(y)
    if x.imag != 0 or y.imag != 0:
        raise UnsupportedRegion(f"region {region} is defined for real (x, y) only")
    return x.real, y.real


def region_contains(region: str, x, y) -> bool:
    """Membership test for the named convergence or validity region."""
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if region == "Omega1":
        return in_omega1(x, y)
    if region == "FP-41":
        return in_fp41(x, y)
    if region == "FP-44":
        return in_fp44(x, y)
    if region == "Thm41-domain":
        return not _on_ray(x, 1.0) and not (y.imag == 0 and y.real <= 0)
    if region == "Omega2-complex":
        return in_omega2_complex(x, y)
    if region == "Omega2-real":
        xr, yr = _real_pair(region, x, y)
        return (xr < 0 and (xr - 1) * yr < 1) or (0 <= xr < 1 and yr > -1)
    cases = {
        "Case1": lambda u, v: u <= 0 and u + v > 1,
        "Case2": lambda u, v: 0 <= u < 1 and v > 1,
        "Case3": lambda u, v: u <= 0 and v < 0,
        "Case4": lambda u, v: 0 <= u < 1 and v < 0,
    }
    if region in cases:
        return cases[region](*_real_pair(region, x, y))
    raise ValueError(f"unknown region id {region!r}")


REGIONS = (
    "Omega1", "Omega2-real", "Omega2-complex", "FP-41", "FP-44",
    "Thm41-domain", "Case1", "Case2", "Case3", "Case4",
)

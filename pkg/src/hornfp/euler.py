"""Classical integral representations of 2F1, H2 and F_P.

Each function returns the integral value (times its gamma prefactor) so it
can be compared directly with the series in ``hornfp.series``.  Singular
endpoint powers go into the quadrature weights; everything else is a smooth
factor evaluated on the principal branch, which the stated domains make
unambiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, DomainError, NoConvergence
from .numerics import as_complex, gamma_ratio, pochhammer, principal_power
from .quadrature import (
    SquareIntegrand,
    WeightedIntegrand1D,
    integrate_unit_square,
    integrate_weighted_01,
)
from .result import EvalResult
from .series import (
    EPS,
    FPParams,
    H2Params,
    appell_f1,
    hyp2f1,
    hyp2f1_scaled,
    in_omega2_complex,
    levin_u,
)

MARGIN = 1e-9

HYP2F1_FORMS = ("E2.2", "E2.3", "E2.4", "E2.5")
H2_FORMS = ("H3.3", "H3.5", "H3.7", "H3.8")
FP_FORMS = ("FP4.6", "FP-eq32", "FP4.7", "FP4.7a")
REWRITE_FORMS = ("C4.8", "C4.8a", "C4.8b")


def _require(**conds):
    """Each keyword maps a label to a real part that must exceed MARGIN."""
    bad = [k for k, v in conds.items() if not v > MARGIN]
    if bad:
        raise ConstraintError("parameter constraint violated: " + ", ".join(bad))


def _off_ray(z, start, what):
    if z.imag == 0 and z.real >= start:
        raise DomainError(f"{what}={z!r} lies on the cut [{start}, inf)")


def _lower(*exps):
    """The exponent with the smallest real part."""
    return min(exps, key=lambda e: complex(e).real)


# ---------------------------------------------------------------------------
# 2F1


def hyp2f1_euler(variant, a, b, c, z, tol=1e-10) -> EvalResult:
    a, b, c = (as_complex(v) for v in (a, b, c))
    z = as_complex(z, "z")
    _off_ray(z, 1.0, "z")
    if variant in ("E2.4", "E2.5"):
        a, b = b, a
        variant = "E2.2" if variant == "E2.4" else "E2.3"
    _require(**{"Re b": b.real, "Re(c-b)": (c - b).real})
    pre = gamma_ratio([c], [b, c - b])
    if variant == "E2.2":
        f = WeightedIntegrand1D(lambda t: (1 - z * t) ** (-a), b - 1, c - b - 1)
    elif variant == "E2.3":
        pre *= principal_power(1 - z, c - a - b)
        f = WeightedIntegrand1D(lambda t: (1 - z * t) ** (a - c), c - b - 1, b - 1)
    else:
        raise ValueError(f"unknown 2F1 representation {variant!r}")
    return integrate_weighted_01(f, tol).scaled(pre)


@dataclass(frozen=True)
class MoebiusResult:
    """The transformed Euler integral and the Appell F1 value it reduces to.

    ``reduction`` is None when the F1 arguments leave the unit bidisk.
    """

    integral: EvalResult
    reduction: EvalResult | None

    @property
    def skipped(self) -> bool:
        return self.reduction is None


def hyp2f1_moebius(kind, p, a, b, c, z, tol=1e-10) -> MoebiusResult:
    """Euler integral after the substitution t -> t/(p+(1-p)t) (``phi``) or
    t -> (1-t)/(1-(1-p)t) (``psi``)."""
    a, b, c = (as_complex(v) for v in (a, b, c))
    z = as_complex(z, "z")
    p = float(p)
    if not p > 0:
        raise ConstraintError("p must be positive")
    _off_ray(z, 1.0, "z")
    _require(**{"Re b": b.real, "Re(c-b)": (c - b).real})
    g = gamma_ratio([c], [b, c - b])
    if kind == "phi":
        s, w = (p - 1) / p, (z + p - 1) / p
        pre = g * p ** (-b)
        f = WeightedIntegrand1D(
            lambda t: (1 - s * t) ** (a - c) * (1 - w * t) ** (-a), b - 1, c - b - 1
        )
        f1_args = (b, c - a, a, c, s, w)
        f1_pre = p ** (-b)
    elif kind == "psi":
        s, w = 1 - p, (1 - p - z) / (1 - z)
        pre = g * p ** (c - b) * principal_power(1 - z, -a)
        f = WeightedIntegrand1D(
            lambda t: (1 - s * t) ** (a - c) * (1 - w * t) ** (-a), c - b - 1, b - 1
        )
        f1_args = (c - b, c - a, a, c, s, w)
        f1_pre = p ** (c - b) * principal_power(1 - z, -a)
    else:
        raise ValueError(f"unknown substitution {kind!r}")
    integral = integrate_weighted_01(f, tol).scaled(pre)
    if abs(f1_args[4]) < 1 and abs(f1_args[5]) < 1:
        reduction = appell_f1(*f1_args, tol=min(tol, 1e-14)).scaled(f1_pre)
    else:
        reduction = None
    return MoebiusResult(integral, reduction)


# ---------------------------------------------------------------------------
# H2


def in_omega2_shifted(x, y, samples=1001) -> bool:
    """x off [1, ∞) and y(x-1)/(1-xu) off [1, ∞) for u on a grid of [0, 1].

    Sampled, so this is a numerical predicate; the endpoints u = 0, 1 are
    always included.
    """
    x, y = complex(x), complex(y)
    if x.imag == 0 and x.real >= 1:
        return False
    u = np.linspace(0.0, 1.0, samples)
    w = y * (x - 1) / (1 - x * u)
    on_cut = (np.abs(w.imag) <= 1e-12 * np.maximum(1.0, np.abs(w))) & (w.real >= 1 - 1e-12)
    if np.any(on_cut):
        return False
    # a sign change of Im w with Re w >= 1 between samples is a crossing
    im = w.imag
    flips = np.nonzero(np.sign(im[:-1]) * np.sign(im[1:]) < 0)[0]
    for k in flips:
        t = im[k] / (im[k] - im[k + 1])
        if (w[k] + t * (w[k + 1] - w[k])).real >= 1:
            return False
    return True


def _h2_checks(form, p: H2Params, x, y):
    a, b, c, e = p.a, p.b, p.c, p.e
    _require(**{"Re b": b.real, "Re(e-b)": (e - b).real})
    if form in ("H3.5", "H3.8"):
        _require(**{"Re c": c.real, "Re(1-a-c)": (1 - a - c).real})
    if form in ("H3.3", "H3.5"):
        if not in_omega2_complex(x, y):
            raise DomainError(f"({x!r}, {y!r}) is outside the region of this representation")
    elif not in_omega2_shifted(x, y):
        raise DomainError(f"({x!r}, {y!r}) is outside the region of this representation")


def h2_integral(form, p: H2Params, x, y, tol=1e-10) -> EvalResult:
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if form not in H2_FORMS:
        raise ValueError(f"unknown H2 representation {form!r}")
    _h2_checks(form, p, x, y)
    a, b, c, d, e = p.a, p.b, p.c, p.d, p.e
    pre = gamma_ratio([e], [b, e - b])
    if form == "H3.3":

        def g(u):
            return (1 - x * u) ** (-a) * hyp2f1(d, c, 1 - a, -y * (1 - x * u)).value

        f = WeightedIntegrand1D(g, b - 1, e - b - 1, vectorized=False)
        return integrate_weighted_01(f, tol).scaled(pre)
    if form == "H3.7":
        pre *= principal_power(1 - x, e - a - b)

        def g(u):
            return (1 - x * u) ** (a - e) * hyp2f1(d, c, 1 - a, y * (x - 1) / (1 - x * u)).value

        f = WeightedIntegrand1D(g, e - b - 1, b - 1, vectorized=False)
        return integrate_weighted_01(f, tol).scaled(pre)

    pre *= gamma_ratio([1 - a], [c, 1 - a - c])
    if form == "H3.5":
        f = SquareIntegrand(
            lambda u, v: (1 - x * u) ** (-a) * (1 + y * v - x * y * u * v) ** (-d),
            (b - 1, e - b - 1, c - 1, -a - c),
        )
    else:
        pre *= principal_power(1 - x, e - a - b)

        def g(u, v):
            w = y * (x - 1) / (1 - x * u)
            return (1 - x * u) ** (a - e) * (1 - v * w) ** (-d)

        f = SquareIntegrand(g, (e - b - 1, b - 1, c - 1, -a - c))
    return integrate_unit_square(f, tol).scaled(pre)


# ---------------------------------------------------------------------------
# F_P


def _fp_domain(x, y):
    _off_ray(x, 1.0, "x")
    if y.imag == 0 and y.real <= 0:
        raise DomainError(f"y={y!r} lies on the cut (-inf, 0]")


def _fp_full_constraints(p: FPParams):
    a, b2, c1, c2 = p.a, p.b2, p.c1, p.c2
    _require(**{
        "Re a": a.real,
        "Re(a-b2)": (a - b2).real,
        "Re(b2+c1-a)": (b2 + c1 - a).real,
        "Re(b2-c2+1)": (b2 - c2 + 1).real,
        "Re(c1+c2-a-1)": (c1 + c2 - a - 1).real,
    })


def fp_integral(form, p: FPParams, x, y, tol=1e-10) -> EvalResult:
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if form not in FP_FORMS:
        raise ValueError(f"unknown F_P representation {form!r}")
    _fp_domain(x, y)
    a, b1, b2, c1, c2 = p.a, p.b1, p.b2, p.c1, p.c2
    if form == "FP-eq32":
        _require(**{"Re a": a.real, "Re(a-c2+1)": (a - c2 + 1).real, "Re(b2+c1-a)": (b2 + c1 - a).real})
        return _fp_eq32(p, x, y, tol)
    _fp_full_constraints(p)
    if form == "FP4.6":
        return _fp46(p, x, y, tol)
    if form == "FP4.7":
        return _fp47(p, x, y, tol)
    if y.real <= 0.5:
        raise NoConvergence("the product series needs Re y > 1/2")
    return _fp47a(p, x, y, tol)


def _fp46(p, x, y, tol):
    a, b1, b2, c1, c2 = p.a, p.b1, p.b2, p.c1, p.c2
    pre = gamma_ratio([p.g, c1], [a, p.h, b2 - c2 + 1, c1 + c2 - a - 1]) * principal_power(y, -b2)
    f = SquareIntegrand(
        lambda u, v: (1 - x * u) ** (-b1) * (u + (1 - u) * v / y) ** (-b2),
        (a - 1, b2 + c1 - a - 1, b2 - c2, c1 + c2 - a - 2),
    )
    return integrate_unit_square(f, tol).scaled(pre)


def _fp_eq32(p, x, y, tol):
    a, b1, b2, c1, c2 = p.a, p.b1, p.b2, p.c1, p.c2
    pre = gamma_ratio([c1, p.g], [a, p.h, b2 + c1 - a]) * principal_power(y, -b2)
    # near u = 0 the 2F1 contributes u^{b2} and u^{b2-c2+1}
    alpha = _lower(a - 1, a - c2)
    shift = a - b2 - 1 - alpha

    def g(u):
        w = (1 - 1 / u) / y
        return (1 - x * u) ** (-b1) * hyp2f1_scaled(b2, b2 - c2 + 1, b2 + c1 - a, w, shift * math.log(u))

    f = WeightedIntegrand1D(g, alpha, b2 + c1 - a - 1, vectorized=False)
    return integrate_weighted_01(f, tol).scaled(pre)


def _f1_x_series(a, b1, b2, c, x, w, tol):
    """Σ_m (a)_m (b1)_m / ((c)_m m!) x^m 2F1(a+m, b2; c+m; w), for |x| < 1.

    Accurate for large |w|, where the Euler integral develops a thin layer.
    """
    total, err, coef, small = 0j, 0.0, 1 + 0j, 0
    for m in range(20_000):
        r = hyp2f1(a + m, b2, c + m, w)
        term = coef * r.value
        total += term
        err += abs(coef) * r.err_estimate
        small = small + 1 if abs(term) <= tol * abs(total) else 0
        if small >= 8:
            return EvalResult(total, err + abs(term), "series", m + 1)
        coef *= (a + m) * (b1 + m) / ((c + m) * (m + 1)) * x
    raise NoConvergence("x-series for F1 did not converge")


def _f1_scaled(a, b1, b2, c, x, v, y, tol):
    """v^{-b2}·F1(a; b1, b2; c; x, (v-y)/v) for v in (0, 1]."""
    w = (v - y) / v
    if abs(x) < 0.9 and abs(w) < 0.9:
        return appell_f1(a, b1, b2, c, x, w, tol).scaled(v ** (-b2))
    if abs(x) < 0.9:
        return _f1_x_series(a, b1, b2, c, x, w, tol).scaled(v ** (-b2))
    pre = gamma_ratio([c], [a, c - a])
    # v^{-b2}(1-wu)^{-b2} = (v(1-u) + yu)^{-b2} for v > 0
    f = WeightedIntegrand1D(
        lambda u, omu: (1 - x * u) ** (-b1) * (v * omu + y * u) ** (-b2),
        a - 1, c - a - 1, complement=True,
    )
    return integrate_weighted_01(f, tol).scaled(pre)


def _fp47(p, x, y, tol):
    a, b1, b2, c1, c2 = p.a, p.b1, p.b2, p.c1, p.c2
    pre = gamma_ratio([p.g, c1, b2 + c1 - a], [b2 + c1, p.h, b2 - c2 + 1, c1 + c2 - a - 1])
    inner_err = [0.0]

    def g(v):
        r = _f1_scaled(a, b1, b2, b2 + c1, x, v, y, tol * 1e-2)
        inner_err[0] = max(inner_err[0], r.err_estimate / max(abs(r.value), 1e-300))
        return r.value

    f = WeightedIntegrand1D(g, b2 - c2, c1 + c2 - a - 2, vectorized=False)
    res = integrate_weighted_01(f, tol)
    res = EvalResult(
        res.value, res.err_estimate + inner_err[0] * abs(res.value), res.method, res.terms_or_nodes
    )
    return res.scaled(pre)


def terminating_2f1_sequence(n_max, b, c, w):
    """[2F1(-n, b; c; w) for n = 0..n_max] by the contiguous recurrence in n."""
    out = np.empty(n_max + 1, dtype=complex)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1 - b * w / c
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + c - (b + n) * w) * out[n] + n * (w - 1) * out[n - 1]) / (c + n)
    return out


def _fp47a(p, x, y, tol):
    """Product series; its terms decay only algebraically, so the sum is
    accelerated by a Levin transform once the geometric part has died out."""
    a, b1, b2, c1, c2 = p.a, p.b1, p.b2, p.c1, p.c2
    pre = gamma_ratio([c1, p.g], [p.h, b2 + c1]) * principal_power(y, -b2)
    w = 1 / y
    beta, gam = b2 - c2 + 1, b2 + c1 - a
    q = abs(1 - w)
    n0 = 10 if q < 1e-3 else max(10, math.ceil(-27 / math.log(q)))
    if n0 > 5000:
        raise NoConvergence("product series converges too slowly this close to Re y = 1/2")
    n_terms = n0 + 16
    seq = terminating_2f1_sequence(n_terms, beta, gam, w)
    terms = np.empty(n_terms, dtype=complex)
    coef = 1 + 0j
    h_err = 0.0
    for i in range(n_terms):
        if i > 0:
            coef *= (b2 + i - 1) * (gam + i - 1) / ((b2 + c1 + i - 1) * i)
        h = hyp2f1(a, b1, b2 + c1 + i, x)
        terms[i] = coef * h.value * seq[i]
        h_err += abs(coef * seq[i]) * h.err_estimate
    if np.all(terms[n0:] == 0):
        s = complex(terms.sum())
        return EvalResult(s, h_err + 8 * EPS * np.abs(terms).sum(), "series", n_terms).scaled(pre)
    best = None
    for k in range(3, 9):
        lk, lk1 = levin_u(terms, n0, k), levin_u(terms, n0, k - 1)
        spread = max(abs(lk - lk1), abs(lk - levin_u(terms, n0 + 3, k)))
        if best is None or spread < best[1]:
            best = (lk, spread)
    value, spread = best
    err = spread + h_err + 64 * EPS * np.abs(terms).sum()
    return EvalResult(value, err, "series", n_terms).scaled(pre)


# ---------------------------------------------------------------------------
# the rewritten F_P integral that resembles an H2 evaluation


def _rewrite_checks(a, c, d, e, x, y):
    _require(**{
        "Re a": a.real, "Re d": d.real, "Re(a+c)": (a + c).real,
        "Re(a+d)": (a + d).real, "Re(e-a-d)": (e - a - d).real,
    })
    _off_ray(x, 1.0, "x")
    _off_ray(y, 0.0, "y")


def h2_rewrite_target(a, b, c, d, e, x, y, tol=1e-12) -> EvalResult:
    """Γ(a+c)Γ(a+d)/(Γ(a+c+d)Γ(a))·(-y)^{-c}·F_P(a+c, b, c, e, c-d+1; x, -1/y).

    Uses the F_P series where it converges and the single integral otherwise.
    """
    from .series import fp_series

    a, b, c, d, e = (as_complex(v) for v in (a, b, c, d, e))
    x, y = as_complex(x, "x"), as_complex(y, "y")
    q = FPParams(a + c, b, c, e, c - d + 1)
    pre = gamma_ratio([a + c, a + d], [a + c + d, a]) * principal_power(-y, -c)
    try:
        return fp_series(q, x, -1 / y, tol).scaled(pre)
    except (DomainError, NoConvergence):
        return fp_integral("FP-eq32", q, x, -1 / y, min(tol * 100, 1e-10)).scaled(pre)


def h2_rewrite(form, a, b, c, d, e, x, y, tol=1e-8) -> EvalResult:
    """A classical double integral that resembles H2, in three coordinate
    systems.  All of them equal ``h2_rewrite_target``, not H2."""
    a, b, c, d, e = (as_complex(v) for v in (a, b, c, d, e))
    x, y = as_complex(x, "x"), as_complex(y, "y")
    if form not in REWRITE_FORMS:
        raise ValueError(f"unknown form {form!r}")
    _rewrite_checks(a, c, d, e, x, y)
    pre = gamma_ratio([e], [e - a - d, a, d])
    if form == "C4.8":
        # (1-(1-u)vy/u)^{-c} = u^c (u-(1-u)vy)^{-c}; the u^c joins the weight if it helps
        cu = c if c.real < 0 else 0j

        def g(u, omu, v, omv):
            return u ** (c - cu) * (1 - u * x) ** (-b) * (u - omu * v * y) ** (-c)

        f = SquareIntegrand(g, (a - 1 + cu, e - a - 1, d - 1, e - a - d - 1), complement=True)
    elif form == "C4.8a":

        def g(q, omq, r, omr):
            return (1 - omq * r * x) ** (-b) * (omq - q * y) ** (-c)

        f = SquareIntegrand(g, (d - 1, a + c - 1, a + d - 1, e - a - d - 1), complement=True)
    else:
        cr = c if c.real < 0 else 0j

        def g(v, omv, r, omr):
            return (
                r ** (c - cr)
                * omv**c
                * (1 - omv * r * x) ** (-b)
                * (omv * r - v * y) ** (-c)
            )

        f = SquareIntegrand(g, (d - 1, e - d - 1, a - 1 + cr, e - a - d - 1), complement=True)
    return integrate_unit_square(f, tol).scaled(pre)

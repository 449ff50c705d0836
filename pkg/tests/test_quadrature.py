import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hornfp.errors import DiscontinuityError, DomainError, NonIntegrable
from hornfp.numerics import BranchState
from hornfp.quadrature import (
    PathElement,
    PowerProduct,
    SquareIntegrand,
    WeightedIntegrand1D,
    check_continuity,
    integrate_path,
    integrate_unit_square,
    integrate_weighted_01,
)
from hornfp.series import H2Params, h2_series, hyp2f1
from hornfp.numerics import gamma_ratio

BETA_03_09 = 3.481796250499139


def rel(u, v):
    return abs(u - v) / abs(v)


def test_arcsine_weight():
    r = integrate_weighted_01(WeightedIntegrand1D(lambda t: 1.0, -0.5, -0.5))
    assert abs(r.value - math.pi) < 1e-12
    assert r.method == "single-integral"
    assert r.err_estimate < 1e-9


def test_beta_weight():
    r = integrate_weighted_01(WeightedIntegrand1D(lambda t: 1.0, -0.7, -0.1))
    assert rel(r.value, BETA_03_09) < 1e-12


def test_euler_integrand_gives_2f1():
    a, b, c, z = 0.4, 0.6, 1.3, -0.5
    f = WeightedIntegrand1D(lambda t: (1 - z * t) ** (-a), b - 1, c - b - 1)
    r = integrate_weighted_01(f, 1e-12)
    ref = 0.9249150106441284 / gamma_ratio([c], [b, c - b])
    assert rel(r.value, ref) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.95, 2.0), st.floats(-0.95, 2.0), st.floats(-0.5, 0.5))
def test_beta_weights_complex(a, b, im):
    alpha = complex(a, im)
    r = integrate_weighted_01(WeightedIntegrand1D(lambda t: 1.0, alpha, b), 1e-11)
    ref = gamma_ratio([alpha + 1, b + 1], [alpha + b + 2])
    assert abs(r.value - ref) <= 1e-9 * abs(ref) + 10 * r.err_estimate


def test_complement_argument_is_exact():
    seen = []

    def g(t, omt):
        seen.append(np.max(np.abs(t + omt - 1)))
        return np.ones_like(t)

    integrate_weighted_01(WeightedIntegrand1D(g, 0.0, 0.0, complement=True))
    assert max(seen) < 1e-15


def test_scalar_integrand():
    f = WeightedIntegrand1D(lambda t: math.exp(t), 0.0, 0.0, vectorized=False)
    assert abs(integrate_weighted_01(f).value - (math.e - 1)) < 1e-12


def test_nonintegrable_endpoint():
    with pytest.raises(NonIntegrable):
        WeightedIntegrand1D(lambda t: 1.0, -1.0, 0.0)


def test_square_pi_squared():
    r = integrate_unit_square(SquareIntegrand(lambda u, v: 1.0, (-0.5, -0.5, -0.5, -0.5)), 1e-10)
    assert abs(r.value - math.pi**2) < 1e-9
    assert r.method == "double-integral"


def test_square_product_of_betas():
    e = (-0.7, -0.1, 0.4, -0.3)
    r = integrate_unit_square(SquareIntegrand(lambda u, v: 1.0, e), 1e-10)
    ref = gamma_ratio([0.3, 0.9], [1.2]) * gamma_ratio([1.4, 0.7], [2.1])
    assert rel(r.value, ref) < 1e-10


def test_square_h2_integrand():
    a, b, c, d, e = 0.2, 0.5, 0.3, 0.4, 1.5
    x, y = 0.3, 0.5
    f = SquareIntegrand(
        lambda u, v: (1 - x * u) ** (-a) * (1 + y * v - x * y * u * v) ** (-d),
        (b - 1, e - b - 1, c - 1, -a - c),
    )
    r = integrate_unit_square(f, 1e-11)
    pre = gamma_ratio([e], [b, e - b]) * gamma_ratio([1 - a], [c, 1 - a - c])
    ref = h2_series(H2Params(a, b, c, d, e), x, y).value
    assert rel(pre * r.value, ref) < 1e-10


def unit_circle():
    return [PathElement.arc(0, 1, 0, 2 * math.pi)]


def test_constant_over_closed_path_vanishes():
    path = [
        PathElement.segment(0, 1),
        PathElement.arc(0.5, 0.5, 0, math.pi),
    ]
    r = integrate_path(lambda t, s: np.ones_like(t), path)
    assert abs(r.value) < 1e-13


def test_residue():
    r = integrate_path(lambda t, s: 1 / t, unit_circle())
    assert abs(r.value - 2j * math.pi) < 1e-12
    r = integrate_path(lambda t, s: 1 / t, [unit_circle()[0].reversed()])
    assert abs(r.value + 2j * math.pi) < 1e-12


def test_tracked_power_product_returns_state():
    a = 0.3 + 0.2j
    f = PowerProduct([("t", lambda t: t, a - 1)])
    st0 = BranchState.initial({"t": 0.0})
    r, st1 = integrate_path(f, unit_circle(), 1e-12, state=st0, return_state=True)
    assert abs(st1.arg("t") - 2 * math.pi) < 1e-12
    # ∮ t^(a-1) dt over a circle from the positive axis = (e^{2πia} - 1)/a
    assert abs(r.value - (cmath.exp(2j * math.pi * a) - 1) / a) < 1e-11


def test_path_must_join():
    with pytest.raises(DomainError):
        check_continuity([PathElement.segment(0, 1), PathElement.segment(2, 3)])


def test_near_miss_of_branch_point_is_refined():
    f = PowerProduct([("t", lambda t: t, 0.5)])
    # passing just below 0 swings the argument from -π to 0 in a tiny stretch
    path = [PathElement.segment(-1 - 1e-9j, 1 - 1e-9j)]
    r, st = integrate_path(f, path, 1e-10, state=BranchState.initial({"t": -math.pi}),
                           return_state=True)
    assert abs(st.arg("t")) < 1e-8
    # ∫ t^(1/2) dt from -1 to 1 below the cut: (2/3)(1 - (-i)^3)
    assert abs(r.value - 2 / 3 * (1 - 1j)) < 1e-8


def test_inconsistent_start_argument_is_refused():
    f = PowerProduct([("t", lambda t: t, 0.5)])
    path = [PathElement.segment(-1 - 1e-3j, 1 - 1e-3j)]
    with pytest.raises(DiscontinuityError):
        integrate_path(f, path, state=BranchState.initial({"t": 0.0}))


def test_arc_geometry():
    el = PathElement.arc(1, 0.25, math.pi, -math.pi)
    assert el.orientation == -1
    assert abs(el.start - 0.75) < 1e-15 and abs(el.end - 0.75) < 1e-15
    assert abs(el.length - 0.5 * math.pi) < 1e-15
    with pytest.raises(ValueError):
        PathElement.arc(0, 0, 0, 1)

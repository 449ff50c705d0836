import time

import pytest

from hornfp.errors import ConstraintError, DomainError
from hornfp.euler import (
    fp_integral,
    h2_integral,
    h2_rewrite,
    h2_rewrite_target,
    hyp2f1_euler,
    hyp2f1_moebius,
    in_omega2_shifted,
)
from hornfp.series import FPParams, H2Params, h2_series, hyp2f1
from hornfp.numerics import principal_power

HYP_04_06_13_AT_M05 = 0.9249150106441284
HYP_04_06_13_AT_03 = 1.0654309213275848
HYP_03_05_14_AT_M02 = 0.9801387583031951
H2_POINT = 0.965931357118128
FP_POINT = 1.0333493308432897
EQ34_POINT = 0.8683923816481351


def rel(u, v):
    return abs(u - v) / abs(v)


@pytest.mark.parametrize("variant", ["E2.2", "E2.3", "E2.4", "E2.5"])
def test_euler_variants(variant):
    r = hyp2f1_euler(variant, 0.4, 0.6, 1.3, -0.5, 1e-12)
    assert rel(r.value, HYP_04_06_13_AT_M05) < 1e-11
    assert r.method == "single-integral"


def test_euler_at_origin_and_transform():
    assert abs(hyp2f1_euler("E2.2", 0.7, 0.3, 1.1, 0).value - 1) < 1e-12
    r = hyp2f1_euler("E2.3", 0.4, 0.6, 1.3, 0.3, 1e-12)
    assert rel(r.value, HYP_04_06_13_AT_03) < 1e-11


def test_euler_constraints():
    with pytest.raises(ConstraintError):
        hyp2f1_euler("E2.2", 0.4, -0.2, 1.3, 0.3)
    with pytest.raises(DomainError):
        hyp2f1_euler("E2.2", 0.4, 0.6, 1.3, 1.5)


def test_moebius_phi_identity_map():
    m = hyp2f1_moebius("phi", 1.0, 0.3, 0.5, 1.4, -0.2, 1e-12)
    assert rel(m.integral.value, HYP_03_05_14_AT_M02) < 1e-11
    assert rel(m.reduction.value, HYP_03_05_14_AT_M02) < 1e-12


def test_moebius_phi_p2():
    m = hyp2f1_moebius("phi", 2.0, 0.3, 0.5, 1.4, -0.2, 1e-12)
    assert rel(m.integral.value, HYP_03_05_14_AT_M02) < 1e-11
    assert rel(m.reduction.value, HYP_03_05_14_AT_M02) < 1e-12


def test_moebius_psi_p1_is_pfaff():
    a, b, c, z = 0.3, 0.5, 1.4, -0.2
    m = hyp2f1_moebius("psi", 1.0, a, b, c, z, 1e-12)
    pfaff = principal_power(1 - z, -a) * hyp2f1(a, c - b, c, z / (z - 1)).value
    assert rel(m.reduction.value, pfaff) < 1e-12
    assert rel(m.integral.value, HYP_03_05_14_AT_M02) < 1e-11


def test_moebius_reduction_skipped_outside_bidisk():
    m = hyp2f1_moebius("phi", 0.3, 0.3, 0.5, 1.4, -0.2)
    assert m.skipped
    assert rel(m.integral.value, HYP_03_05_14_AT_M02) < 1e-9


P = H2Params(0.2, 0.5, 0.3, 0.4, 1.5)


@pytest.mark.parametrize("form", ["H3.3", "H3.5", "H3.7", "H3.8"])
def test_h2_representations_at_series_point(form):
    r = h2_integral(form, P, 0.3, 0.5, 1e-11)
    assert rel(r.value, H2_POINT) < 1e-9


def test_h2_representation_at_origin():
    assert abs(h2_integral("H3.5", P, 0, 0).value - 1) < 1e-10


def test_h2_continuation_outside_omega1():
    u = h2_integral("H3.3", P, -2.0, 0.4, 1e-11).value
    v = h2_integral("H3.5", P, -2.0, 0.4, 1e-10).value
    assert rel(u, v) < 1e-8
    with pytest.raises(DomainError):
        h2_series(P, -2.0, 0.4)


def test_h2_representation_constraints():
    with pytest.raises(ConstraintError):
        h2_integral("H3.5", H2Params(0.2, 0.5, -0.3, 0.4, 1.5), 0.3, 0.5)


def test_shifted_region_predicate():
    assert in_omega2_shifted(0.3, 0.5)
    assert not in_omega2_shifted(1.5, 0.1)
    assert not in_omega2_shifted(-1.0, -1.0)


FP = FPParams(0.9, 0.4, 0.3, 1.2, 0.8)


@pytest.mark.parametrize("form", ["FP4.6", "FP-eq32", "FP4.7", "FP4.7a"])
def test_fp_representations(form):
    r = fp_integral(form, FP, 0.2, 1.1, 1e-11)
    assert rel(r.value, FP_POINT) < 1e-8


def test_fp_double_integral_at_base_point():
    assert abs(fp_integral("FP4.6", FP, 0, 1, 1e-11).value - 1) < 1e-9


def test_fp_specialisation_through_integral():
    q = FPParams(0.9, 0.4, 0.3, 0.9, 0.8)
    assert rel(fp_integral("FP-eq32", q, 0, 2.0, 1e-12).value, EQ34_POINT) < 1e-10


def test_fp_integral_extends_past_series():
    # x + y far from both series regions
    q = FPParams(0.9, 0.4, 0.3, 1.2, 0.8)
    u = fp_integral("FP-eq32", q, -0.7, 3.5, 1e-11).value
    v = fp_integral("FP4.7", q, -0.7, 3.5, 1e-10).value
    assert rel(u, v) < 1e-8


def test_fp_cut():
    with pytest.raises(DomainError):
        fp_integral("FP-eq32", FP, 0.2, -0.5)


def test_classical_rewrites_agree_and_differ_from_h2():
    args = (0.8, 0.3, 0.4, 0.5, 2.0, 0.2, -0.5)
    t0 = time.perf_counter()
    forms = [h2_rewrite(f, *args, tol=1e-9) for f in ("C4.8", "C4.8a", "C4.8b")]
    target = h2_rewrite_target(*args)
    for r in forms:
        assert rel(r.value, target.value) < 1e-7
    h2 = h2_series(H2Params(*args[:5]), args[5], args[6])
    r = forms[2]
    assert abs(r.value - h2.value) > 10 * (r.err_estimate + h2.err_estimate)
    assert time.perf_counter() - t0 < 120

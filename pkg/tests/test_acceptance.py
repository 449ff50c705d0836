"""Acceptance criteria, one test each.  Every test prints a single
``criterion N [PASS|FAIL] ...`` line; the lines are repeated in the pytest
terminal summary."""

import cmath
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from hornfp.contour import (
    LoopSpec,
    beta_double_loop,
    build_double_loop,
    hyp2f1_inside_target,
    hyp2f1_loop,
    hyp2f1_shrunk,
    kita_h2_loop,
    olsson_I,
    shrink_case1,
)
from hornfp.errors import GeometryError, SkippedError
from hornfp.euler import h2_integral, h2_rewrite, h2_rewrite_target
from hornfp.identities import (
    REGISTRY,
    Draw,
    Redraw,
    check_identity,
    generic,
    sample_points,
)
from hornfp.numerics import BranchState, gamma_ratio, nearest_int_distance
from hornfp.quadrature import PathElement, PowerProduct, integrate_path
from hornfp.series import H2Params, h2_series, hyp2f1, in_omega1, region_contains

SEED = 20240


def rel(u, v):
    return abs(u - v) / max(abs(u), abs(v), 1e-300)


def valid_points(id, n, seed):
    """``n`` sampled points of identity ``id`` on which both sides evaluate."""
    pts, k = [], 0
    while len(pts) < n:
        batch, _ = sample_points(id, n + k, seed)
        for p in batch[len(pts) + k:]:
            try:
                pts.append((p, check_identity(id, p)))
            except SkippedError:
                k += 1
            if len(pts) == n:
                break
    return pts


def test_criterion_01_generalised_beta(acceptance_report):
    t0 = time.perf_counter()
    pts, _ = sample_points("eq1", 50, SEED + 1)
    worst = 0.0
    for p in pts:
        a, b = p.params
        assert -1.5 < a.real < 3 and -1.5 < b.real < 3
        assert nearest_int_distance(a) > 1e-3 and nearest_int_distance(b) > 1e-3
        r = beta_double_loop(a, b)
        worst = max(worst, rel(r.value, gamma_ratio([a, b], [a + b])))
    dt = time.perf_counter() - t0
    ok = worst < 1e-8 and dt < 30
    acceptance_report(1, "double-loop beta vs gamma quotient, 50 draws",
                      ok, f"max rel {worst:.2e}, {dt:.1f}s")
    assert ok


REPRESENTATION_IDS = ["E2.2", "E2.3", "E2.4", "E2.5", "H3.3", "H3.5", "H3.7", "H3.8",
                      "FP4.6", "FP-eq32", "4.7", "4.7a"]


def test_criterion_02_euler_representations(acceptance_report):
    t0 = time.perf_counter()
    worst = {}
    failures = []
    for id in REPRESENTATION_IDS:
        spec = REGISTRY[id]
        assert spec.floor == 1e-7 and spec.multiplier == 10
        ratio = 0.0
        for p, r in valid_points(id, 50, SEED + 2):
            ratio = max(ratio, r.rel_residual / r.threshold)
            if not r.passed:
                failures.append((id, p, r.rel_residual, r.threshold))
        worst[id] = ratio
    dt = time.perf_counter() - t0
    ok = not failures and dt < 300
    top = max(worst, key=worst.get)
    acceptance_report(2, "Euler-type representations vs series, 12 x 50 draws", ok,
                      f"worst residual/threshold {worst[top]:.2f} ({top}), {dt:.1f}s")
    assert not failures, failures[:3]
    assert dt < 300


def test_criterion_03_2f1_loops(acceptance_report):
    out_worst = 0.0
    for p in sample_points("loop-outside", 25, SEED + 3)[0]:
        assert abs(p.x) < 0.9
        r = hyp2f1_loop("outside", *p.params, p.x)
        out_worst = max(out_worst, rel(r.value, hyp2f1(*p.params, p.x).value))
    in_fail, in_worst = [], 0.0
    for p in sample_points("eq6", 25, SEED + 3)[0]:
        assert p.x.real < -1.5 and p.x.imag == 0
        lhs = hyp2f1_loop("inside", *p.params, p.x)
        rhs = hyp2f1_inside_target(*p.params, p.x)
        res = rel(lhs.value, rhs.value)
        in_worst = max(in_worst, res)
        if res >= max(10 * (lhs.err_estimate + rhs.err_estimate) / abs(rhs.value), 1e-8):
            in_fail.append(p)
    shrink_worst = 0.0
    for p in sample_points("eq11", 25, SEED + 3)[0]:
        s = hyp2f1_shrunk(*p.params, p.x)
        shrink_worst = max(shrink_worst, rel(s.value, hyp2f1_inside_target(*p.params, p.x).value))
    ok = out_worst < 1e-8 and not in_fail and shrink_worst < 1e-7
    acceptance_report(3, "2F1 loops: outside / enclosed 1/z / shrunk form", ok,
                      f"max rel {out_worst:.1e} / {in_worst:.1e} / {shrink_worst:.1e}")
    assert ok


def _h2_loop_params(d: Draw):
    b = d.cx(0, 1.5)
    e = b + d.cx(0, 1.5)
    a, c, dd = d.cx(-1.5, 0.9), d.cx(-1, 1.5), d.cx(-1, 1.5)
    generic(a, e - a, poles=(e, 1 - a))
    return a, b, c, dd, e


def _omega1_point(d: Draw):
    x = d.disk(0.7)
    return x, d.disk(0.9 / (1 + abs(x)))


def _omega2_real_point(d: Draw):
    x = d.re(-3.0, 0.9)
    lo = -0.9 if x >= 0 else max(-0.9, -1 / (1 - x) + 0.05)
    y = d.re(lo, 3.0)
    if in_omega1(x, y) or not region_contains("Omega2-real", x, y):
        raise Redraw
    return complex(x), complex(y)


def _draw_until(d, fn):
    while True:
        try:
            return fn(d)
        except Redraw:
            continue


def test_criterion_04_h2_double_loop(acceptance_report):
    d = Draw(np.random.default_rng([SEED, 4]))
    series_worst, done = 0.0, 0
    while done < 25:
        params = _draw_until(d, _h2_loop_params)
        x, y = _draw_until(d, _omega1_point)
        try:
            r = kita_h2_loop(*params, x, y)
        except GeometryError:
            continue
        series_worst = max(series_worst, rel(r.value, h2_series(H2Params(*params), x, y).value))
        done += 1
    cont_worst, done = 0.0, 0
    while done < 10:
        params = _draw_until(d, _h2_loop_params)
        x, y = _draw_until(d, _omega2_real_point)
        r = kita_h2_loop(*params, x, y)
        ref = h2_integral("H3.3", H2Params(*params), x, y, 1e-11)
        cont_worst = max(cont_worst, rel(r.value, ref.value))
        done += 1
    ok = series_worst < 1e-6 and cont_worst < 1e-6
    acceptance_report(4, "H2 double loop vs series (25, Omega1) and continuation (10)", ok,
                      f"max rel {series_worst:.1e} / {cont_worst:.1e}")
    assert ok


def test_criterion_05_three_term_relation(acceptance_report):
    t0 = time.perf_counter()
    worst = 0.0
    for p in sample_points("eq25", 20, SEED + 5)[0]:
        assert p.x.real < 0 and (p.x + p.y).real > 1
        total = olsson_I(*p.params, p.x, p.y)
        s = shrink_case1(*p.params, p.x, p.y)
        worst = max(worst, abs(total.value - s.I1_closed.value - s.I2_closed.value) / abs(total.value))
    dt = time.perf_counter() - t0
    ok = worst < 1e-6 and dt < 180
    acceptance_report(5, "loop integral I = I1 + I2 in the first case, 20 points", ok,
                      f"max rel {worst:.1e}, {dt:.1f}s")
    assert ok


def test_criterion_06_classical_is_not_h2(acceptance_report):
    match_worst, gap_min = 0.0, math.inf
    for p in sample_points("C4.4", 10, SEED + 6)[0]:
        assert -0.9 < p.x.real < 0.9 and p.y.real < -0.1
        classical = h2_rewrite("C4.8b", *p.params, p.x, p.y, 1e-9)
        target = h2_rewrite_target(*p.params, p.x, p.y)
        h2 = kita_h2_loop(*p.params, p.x, p.y)
        match_worst = max(match_worst, rel(classical.value, target.value))
        gap = abs(classical.value - h2.value) / (10 * (classical.err_estimate + h2.err_estimate))
        gap_min = min(gap_min, gap)
    ok = match_worst < 1e-6 and gap_min > 1
    acceptance_report(6, "classical double integral = F_P side, != H2 loop value", ok,
                      f"max rel {match_worst:.1e}, min gap/(10 x est) {gap_min:.1e}")
    assert ok


def test_criterion_07_series_invariances(acceptance_report):
    worst = {}
    for id in ("2.6", "2.7", "3.6", "c-d", "eq33", "eq35", "eq34"):
        worst[id] = max(r.rel_residual for _, r in valid_points(id, 20, SEED + 7))
    top = max(worst, key=worst.get)
    ok = worst[top] < 1e-9
    acceptance_report(7, "transformations and specialisations, 7 x 20 draws", ok,
                      f"max rel {worst[top]:.1e} ({top})")
    assert ok


def test_criterion_08_f2_system_solutions(acceptance_report):
    failures, worst = [], {}
    for id in ("5.1", "5.2", "5.3", "5.4"):
        assert REGISTRY[id].floor == 1e-6
        rs = valid_points(id, 10, SEED + 8)
        worst[id] = max(r.rel_residual for _, r in rs)
        failures += [(id, p) for p, r in rs if not r.passed]
    top = max(worst, key=worst.get)
    ok = not failures
    acceptance_report(8, "F2-system solutions as real double integrals, 4 x 10 draws", ok,
                      f"max rel {worst[top]:.1e} ({top})")
    assert ok


def _circle_loop(base, center, radius, turns):
    """base -> circle -> base, ``turns`` signed full turns."""
    phi = cmath.phase(base - center)
    start = center + radius * cmath.exp(1j * phi)
    return [
        PathElement.segment(base, start),
        PathElement.arc(center, radius, phi, phi + 2 * math.pi * turns),
        PathElement.segment(start, base),
    ]


def _reverse(path):
    return [el.reversed() for el in reversed(path)]


def _clearance(path, points):
    s = np.linspace(0, 1, 201)
    pts = np.concatenate([el.point(s) for el in path])
    return min(float(np.min(np.abs(pts - q))) for q in points)


def _random_closed_path(rng, branch):
    if rng.uniform() < 0.5:
        spec = LoopSpec(float(rng.uniform(0.05, 0.3)))
        if rng.uniform() < 0.5:
            spec = LoopSpec(spec.epsilon, None, complex(-rng.uniform(0.2, 2.0), rng.uniform(-0.5, 0.5)))
        return build_double_loop(spec).elements
    # commutator A B A^-1 B^-1 of two loops around branch points
    base = complex(rng.uniform(-1, 2), rng.uniform(0.4, 1.5) * rng.choice([-1, 1]))
    loops = []
    for _ in range(2):
        center = branch[rng.integers(len(branch))]
        radius = rng.uniform(0.05, 0.3)
        loops.append(_circle_loop(base, center, radius, int(rng.choice([-2, -1, 1, 2]))))
    a, b = loops
    return a + b + _reverse(a) + _reverse(b)


def test_criterion_09_branch_closure(acceptance_report):
    rng = np.random.default_rng([SEED, 9])
    q = 0.5 + 0.8j
    branch = [0j, 1 + 0j, q]
    fns = {"u": lambda t: t, "1-u": lambda t: 1 - t, "u-q": lambda t: t - q}
    worst, done = 0.0, 0
    while done < 100:
        path = _random_closed_path(rng, branch)
        if _clearance(path, branch) < 0.02:
            continue
        start = path[0].start
        init = {k: cmath.phase(f(start)) for k, f in fns.items()}
        expo = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-0.5, 0.5, 3)
        f = PowerProduct([(k, fn, e) for (k, fn), e in zip(fns.items(), expo)])
        _, state = integrate_path(f, path, 1e-8, state=BranchState.initial(init), return_state=True)
        worst = max(worst, max(abs(state.arg(k) - v) for k, v in init.items()))
        done += 1
    ok = worst < 1e-8
    acceptance_report(9, "tracked arguments restored on 100 closed zero-winding paths", ok,
                      f"max drift {worst:.1e} rad")
    assert ok


def test_criterion_10_determinism(acceptance_report):
    cmd = [sys.executable, "-m", "hornfp", "verify", "--suite", "fast", "--seed", "42",
           "--format", "machine"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    lines = first.stdout.decode().splitlines()
    all_pass = all('"status": "pass"' in line for line in lines)
    ok = first.stdout == second.stdout and first.returncode == 0 and all_pass and len(lines) == len(REGISTRY)
    acceptance_report(10, "verify --suite fast --seed 42 twice: identical machine reports", ok,
                      f"{len(first.stdout)} bytes, {len(lines)} identities, all pass: {all_pass}")
    assert ok

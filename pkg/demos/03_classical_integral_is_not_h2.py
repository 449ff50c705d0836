"""
A classical double integral that looks like H2 but is not
=========================================================

Rewriting the F_P double integral gives an integral over the unit square
whose integrand resembles an H2 kernel.  For y < 0 it is perfectly
convergent, and its value is a gamma factor times F_P at (x, -1/y), not H2.
"""

# %%
from hornfp import h2_rewrite, h2_rewrite_target, h2_series, kita_h2_loop, H2Params

a, b, c, d, e = 0.8, 0.3, 0.4, 0.5, 2.0
for x, y in [(0.2, -0.5), (-0.6, -0.3), (0.7, -0.15)]:
    classical = h2_rewrite("C4.8b", a, b, c, d, e, x, y)
    fp_side = h2_rewrite_target(a, b, c, d, e, x, y)
    loop = kita_h2_loop(a, b, c, d, e, x, y)
    series = h2_series(H2Params(a, b, c, d, e), x, y)
    print(f"(x, y) = ({x}, {y})")
    print(f"  square integral   {classical.value.real:.12f}  (est. {classical.err_estimate:.1e})")
    print(f"  F_P closed form   {fp_side.value.real:.12f}")
    print(f"  H2 by the loop    {loop.value.real:.12f}")
    print(f"  H2 by the series  {series.value.real:.12f}")

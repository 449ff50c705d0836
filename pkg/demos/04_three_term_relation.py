"""
Shrinking the loop: a three-term relation
=========================================

For x <= 0, x + y > 1 the double loop giving y^(-b2) H2(...; x, -1/y) can be
collapsed onto two intervals.  Each interval integral has a closed form
through F_P, so the loop value splits as I = I1 + I2.
"""

# %%
import numpy as np

from hornfp import olsson_I, shrink_case1
from hornfp.contour import TABLE1, case1_checkpoints

params = (1.1, 0.4, 0.3, 1.7, 0.6)

# %%
# Where each straight pass of the collapsed loop sits: arguments of u and
# 1-u and the argument of the inner 2F1 (negative, or on its cut from above
# or below).
for (au, a1, w), (tu, t1, side) in zip(case1_checkpoints(-0.5, 2.0), TABLE1):
    where = "negative axis" if side == 0 else ("cut, +i0" if side > 0 else "cut, -i0")
    print(f"arg u = {au / np.pi:4.1f}π  arg(1-u) = {a1 / np.pi:4.1f}π  w = {w.real:+.2f}  {where}")

# %%
for x, y in [(-0.5, 2.0), (-0.2, 1.6), (-0.7, 3.0), (0.0, 1.8)]:
    total = olsson_I(*params, x, y)
    s = shrink_case1(*params, x, y)
    rest = total.value - s.I1_closed.value - s.I2_closed.value
    print(f"(x, y) = ({x:5.2f}, {y:4.2f})  I = {total.value.real:.12f}  "
          f"I1 = {s.I1_closed.value.real:+.8f}  I2 = {s.I2_closed.value.real:+.8f}  "
          f"|I - I1 - I2|/|I| = {abs(rest) / abs(total.value):.1e}")

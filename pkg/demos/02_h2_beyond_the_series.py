"""
Horn H2 outside its series region
=================================

The double series for H2 converges only for |x| < 1, |y| < 1/(|x| + 1).
Walk along x from inside that region to x = -3 at fixed y and compare three
evaluations: the series (while it lasts), a single Euler integral with a
2F1 inside, and the double-loop integral.
"""

# %%
import numpy as np

from hornfp import H2Params, h2_integral, h2_series, kita_h2_loop
from hornfp.errors import DomainError

params = (0.2 + 0.1j, 0.5, 0.3, 0.4, 1.5)
p = H2Params(*params)
y = 0.4

print(f"{'x':>6} {'series':>30} {'single integral':>30} {'double loop':>30}")
for x in np.linspace(0.5, -3.0, 8):
    try:
        s = f"{h2_series(p, x, y).value:.10f}"
    except DomainError:
        s = "(diverges)"
    i = h2_integral("H3.3", p, x, y).value
    loop = kita_h2_loop(*params, x, y).value
    print(f"{x:6.2f} {s:>30} {i:30.10f} {loop:30.10f}")

# %%
# The loop needs the cut of the inner 2F1 to stay bounded: for real y <= -1 it
# runs off to infinity and no admissible contour exists.
from hornfp.errors import GeometryError

try:
    kita_h2_loop(*params, 0.2, -1.5)
except GeometryError as exc:
    print("y = -1.5:", exc)

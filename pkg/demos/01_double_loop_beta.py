"""
Beta values from a double loop
==============================

The Euler integral of t^(a-1)(1-t)^(b-1) over [0, 1] needs Re a, Re b > 0.
Taken over a closed double loop around 0 and 1 instead, it converges for all
a, b, and dividing by (1 - e^{2πia})(1 - e^{2πib}) gives Γ(a)Γ(b)/Γ(a+b) back.
"""

# %%
import numpy as np

from hornfp import LoopSpec, beta_double_loop, build_double_loop
from hornfp.numerics import gamma_ratio

path = build_double_loop(LoopSpec(epsilon=0.25))
print(len(path.elements), "elements:", [el.kind for el in path.elements])

# %%
# Follow arg(u) and arg(1-u) around the loop.  Each factor turns once each way,
# so both arguments end where they started.
idx, s, pts, args = path.track({"u": lambda t: t, "1-u": lambda t: 1 - t}, 64)
for k in range(len(path.elements)):
    last = np.nonzero(idx == k)[0][-1]
    print(f"after element {k}: arg u = {args['u'][last]:+.4f}, arg(1-u) = {args['1-u'][last]:+.4f}")

# %%
# Parameters where the interval integral diverges.
for a, b in [(0.3, 0.9), (-0.5 + 0.2j, 0.7), (-1.3, -0.4 + 1j), (2.5, -1.2)]:
    r = beta_double_loop(a, b)
    exact = gamma_ratio([a, b], [a + b])
    print(f"a={a!s:>12} b={b!s:>10}  loop={r.value:.12f}  rel.diff={abs(r.value - exact) / abs(exact):.1e}")

# %%
# Close to an integer the loop integral and the prefactor both blow up or
# vanish, and their product stays on the gamma quotient.
for delta in (1e-1, 1e-2, 1e-3, 1e-4):
    a = 1 + delta
    r = beta_double_loop(a, 0.4)
    print(f"a = 1 + {delta:g}: rel.diff {abs(r.value / gamma_ratio([a, 0.4], [a + 0.4]) - 1):.1e}")

"""Tour of the three quadrature supports.

Every other capability sits on these rules: Gauss-Legendre on [a, b]
(plain and endpoint-graded), the stadium loop around the interval with
complex weights, and the rescaled Gauss-Laguerre rule on the half-line.
"""

import numpy as np

from cshiftlab import gauss_interval, laguerre_halfline, stadium_contour
from cshiftlab.quadgrid import graded_interval

# -- interval ---------------------------------------------------------------
rule = gauss_interval(20, 0.0, 1.0)
print("20-point Gauss rule on [0, 1]")
print("  int x^5 dx       =", rule.integrate(rule.nodes ** 5), "(exact 1/6)")
print("  weights sum      =", rule.weights.sum(), "(exact 1)")

graded = graded_interval(-1.0, 1.0, n_panel=16, levels=8)
beta = 0.3
vals = np.exp(1j * beta * np.log(1.0 - graded.nodes))
exact = 2.0 ** (1.0 + 1j * beta) / (1.0 + 1j * beta)
print("\ngraded rule vs the endpoint-oscillatory integrand (1-x)^{0.3 i}")
print("  graded error     =", abs(graded.integrate(vals) - exact))
plain = gauss_interval(graded.n, -1.0, 1.0)
pvals = np.exp(1j * beta * np.log(1.0 - plain.nodes))
print("  plain rule error =", abs(plain.integrate(pvals) - exact),
      f" (same node count n={graded.n})")

# -- loop around the interval -------------------------------------------------
loop = stadium_contour(-1.0, 1.0, 0.25)
print(f"\nstadium loop, radius 0.25, {loop.n} samples")
print("  oint dz/z        =", loop.integrate(1.0 / loop.samples),
      "(exact 2 pi i)")
print("  oint z dz        =", abs(loop.integrate(loop.samples)), "(exact 0)")
print("  winding number   =", loop.winding_number(0.3))
d = loop.distance_to_segment()
print(f"  distance band    = [{d.min():.15f}, {d.max():.15f}]")

# -- half-line ----------------------------------------------------------------
half = laguerre_halfline(40, 2.0)
print("\n40-point half-line rule with decay scale c = 2")
print("  int e^{-2s} ds   =", half.integrate(np.exp(-2 * half.snodes)),
      "(exact 0.5)")
print("  int s e^{-2s} ds =",
      half.integrate(half.snodes * np.exp(-2 * half.snodes)), "(exact 0.25)")

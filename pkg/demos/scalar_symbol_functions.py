"""The scalar layer: nu, tau_k, and the Cauchy-exponent function alpha.

alpha solves the scalar jump problem alpha_+ (1 + F) = alpha_- on the
interval and normalizes to 1 at infinity; everything downstream (loop
kernels, the operator problems, the parametrices) is built from it.
"""

import numpy as np

from cshiftlab import (ScalarRH, boundary_value, constant_symbol,
                       identity_phase, make_problem, nu, tau)

pd = make_problem(a=-1.0, b=1.0, c=1.0, t=1.0, x=10.0,
                  F=constant_symbol(0.2), p=identity_phase())
srh = ScalarRH(pd)

print("nu(0)        =", complex(nu(pd, 0.0)),
      "  (= -log(1.2)/(2 i pi))")
print("tau_1, tau_2 =", complex(tau(1, pd, 0.0)), complex(tau(2, pd, 0.0)))
print("(1+tau_1)(1+tau_2) =", complex((1 + tau(1, pd, 0.0))
                                      * (1 + tau(2, pd, 0.0))))

# closed form for a constant symbol: alpha = ((b - lam)/(a - lam))^nu
lam = 2.0j
nuv = complex(nu(pd, 0.0))
closed = np.exp(nuv * (np.log(pd.b - lam) - np.log(pd.a - lam)))
print("\nalpha(2i)    =", srh.alpha(lam))
print("closed form  =", closed)

# one-sided boundary values via the Richardson delta schedule
ap, est_p = boundary_value(srh.alpha, 0.0, +1, scale=2.0)
am, est_m = boundary_value(srh.alpha, 0.0, -1, scale=2.0)
print("\nalpha_+(0)   =", ap, " (estimate", est_p, ")")
print("alpha_-(0)   =", am)
print("jump residual |alpha_+ (1+F) - alpha_-| =", abs(ap * 1.2 - am))

# reciprocal pair alpha_1 alpha_2 = 1 off the interval
z = 0.7 + 0.9j
print("\nalpha_1(z) alpha_2(z) =", srh.alpha_k(1, z) * srh.alpha_k(2, z))

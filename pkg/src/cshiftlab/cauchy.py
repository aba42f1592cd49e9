"""Cauchy transforms of densities sampled at Gauss-Legendre nodes.

For a density f known at the nodes of an :class:`~cshiftlab.quadgrid.IntervalRule`,
C[f](lam) = int_a^b f(mu) / (mu - lam) dmu
is evaluated as a weighted sum over the node values.  Far from the
interval the plain Gauss weights w_j / (mu_j - lam) are already spectrally
accurate.  Near the cut they are useless, so there the integral of the
degree n-1 Legendre interpolant is taken instead: a finite combination of
Legendre functions of the second kind, uniformly accurate up to the cut.
On the cut itself the principal log convention returns the +side (upper)
boundary value.

The upward Q recurrence is contaminated by the dominant (P_k ~ rho^k)
solution once k log(rho) outruns the precision; since the true Q_k ~
rho^{-k} is below roundoff there anyway, the table is cut at its modulus
minimum.  For densities analytic in any neighbourhood of [a, b] (all
densities in this package) the truncation error is negligible.
"""

from __future__ import annotations

import numpy as np

from .quadgrid import IntervalRule

__all__ = ["CauchyKit", "legendre_q"]


def legendre_q(z: np.ndarray, kmax: int) -> np.ndarray:
    """Legendre-Q values Q_0..Q_kmax at points z off [-1, 1], growth-truncated.

    Points on (-1, 1) get the +side boundary value Q_k(x) - i pi P_k(x)/2.
    Entries beyond the modulus minimum of each column are zeroed; the true
    values there are below double-precision resolution.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    q = np.empty((kmax + 1,) + z.shape, dtype=complex)
    q[0] = 0.5 * (np.log(z + 1.0) - np.log(z - 1.0))
    if kmax >= 1:
        q[1] = z * q[0] - 1.0
    for k in range(1, kmax):
        q[k + 1] = ((2 * k + 1) * z * q[k] - k * q[k - 1]) / (k + 1)
    _truncate_grown(q)
    return q


def _truncate_grown(q: np.ndarray, slack: float = 1e3):
    """Zero recurrence output beyond the point contamination takes over."""
    mag = np.abs(q)
    running_min = np.minimum.accumulate(mag, axis=0)
    q[mag > slack * running_min] = 0.0


def _legendre_q_deriv(z: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Q_k'(z) from the Q_k table, via (z^2-1) Q_k' = k (z Q_k - Q_{k-1})."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    kmax = q.shape[0] - 1
    dq = np.empty_like(q)
    dq[0] = 1.0 / (1.0 - z * z)
    k = np.arange(1, kmax + 1).reshape((-1,) + (1,) * z.ndim)
    dq[1:] = k * (z * q[1:] - q[:-1]) / (z * z - 1.0)
    return dq


class CauchyKit:
    """Cauchy-transform weights bound to one interval rule.

    ``weights(lam)`` returns the vector omega with
    C[f](lam) ~= omega @ f_nodes, and ``dweights`` the analogous vector for
    int f(mu)/(mu - lam)^2 dmu = d/dlam C[f](lam).
    """

    #: distance from [-1, 1] (unit coordinates) beyond which plain
    #: quadrature weights are used
    FAR = 0.35

    def __init__(self, rule: IntervalRule):
        self.rule = rule
        n = rule.n
        x = rule.to_unit(rule.nodes)
        # discrete Legendre transform:  coeffs = T @ f_nodes, exact for
        # polynomials of degree < n sampled at Gauss nodes
        V = np.polynomial.legendre.legvander(x, n - 1)  # (n, k)
        wu = rule.weights * (2.0 / (rule.b - rule.a))
        self._T = (V * wu[:, None]).T * ((2.0 * np.arange(n) + 1.0) / 2.0)[:, None]
        self._unit_nodes = x

    def _unit_distance(self, xi: np.ndarray) -> np.ndarray:
        re = np.clip(xi.real, -1.0, 1.0)
        return np.abs(xi - re)

    def _split(self, lam):
        lam = np.asarray(lam, dtype=complex)
        xi = np.atleast_1d(self.rule.to_unit(lam))
        far = self._unit_distance(xi) > self.FAR
        return lam, xi, far

    def weights(self, lam) -> np.ndarray:
        """Cauchy weights at one or many points; shape (..., n)."""
        lam, xi, far = self._split(lam)
        out = np.empty(xi.shape + (self.rule.n,), dtype=complex)
        if far.any():
            pts = np.atleast_1d(lam)[far][..., None]
            out[far] = self.rule.weights / (self.rule.nodes - pts)
        if (~far).any():
            q = legendre_q(xi[~far], self.rule.n - 1)  # (k, m)
            out[~far] = -2.0 * np.einsum("km,kj->mj", q, self._T)
        return out[0] if lam.ndim == 0 else out

    def dweights(self, lam) -> np.ndarray:
        """Weights for the squared-pole transform int f/(mu-lam)^2 dmu."""
        lam, xi, far = self._split(lam)
        scale = 2.0 / (self.rule.b - self.rule.a)
        out = np.empty(xi.shape + (self.rule.n,), dtype=complex)
        if far.any():
            pts = np.atleast_1d(lam)[far][..., None]
            out[far] = self.rule.weights / (self.rule.nodes - pts) ** 2
        if (~far).any():
            q = legendre_q(xi[~far], self.rule.n - 1)
            dq = _legendre_q_deriv(xi[~far], q)
            out[~far] = -2.0 * scale * np.einsum("km,kj->mj", dq, self._T)
        return out[0] if lam.ndim == 0 else out

    def value(self, f_nodes: np.ndarray, lam) -> complex:
        """C[f](lam) for node samples f_nodes."""
        return self.weights(lam) @ np.asarray(f_nodes, dtype=complex)

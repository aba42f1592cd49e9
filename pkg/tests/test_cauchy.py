import numpy as np
import pytest

from cshiftlab.cauchy import CauchyKit, legendre_q
from cshiftlab.quadgrid import gauss_interval


def brute_cauchy(f, lam, n=4000):
    """Principal-value-free brute force for lam off the axis: fine midpoint
    rule on a path split at Re(lam); good to ~1e-9 for |Im lam| >= 1e-3."""
    xs = np.linspace(-1.0, 1.0, n, endpoint=False) + 1.0 / n
    return np.sum(f(xs) / (xs - lam)) * (2.0 / n)


@pytest.fixture(scope="module")
def kit():
    return CauchyKit(gauss_interval(160, -1.0, 1.0))


DENSITY = lambda x: np.exp(0.3 * x) / (1.3 + x)


class TestCauchyKit:
    def test_matches_quadrature_oracle_far(self, kit):
        fv = DENSITY(kit.rule.nodes)
        for lam in (2.0 + 1.0j, -3.0, 0.5 + 0.8j):
            ref = brute_cauchy(DENSITY, lam, n=200000)
            assert kit.value(fv, lam) == pytest.approx(ref, abs=2e-9)

    def test_matches_series_oracle_near(self, kit):
        # near the cut the oracle is the closed form for a polynomial
        # density: C[x^k] via the Legendre expansion computed recursively
        # from C[1] and mu^k/(mu-lam) = mu^{k-1} + lam mu^{k-1}/(mu-lam)
        lam = 0.3 + 1e-4j
        c0 = np.log(1.0 - lam) - np.log(-1.0 - lam)

        def cpoly(k):
            # C[x^k] = m_{k-1} + lam C[x^{k-1}] with m_j the plain moments
            val = c0
            for j in range(1, k + 1):
                m = (1.0 - (-1.0) ** j) / j
                val = m + lam * val
            return val

        for k in (0, 1, 3, 6):
            fv = kit.rule.nodes ** k
            assert kit.value(fv, lam) == pytest.approx(cpoly(k), abs=1e-12)

    def test_plus_side_value_on_cut(self, kit):
        # the on-axis evaluation returns the +side limit
        fv = DENSITY(kit.rule.nodes)
        lam0 = 0.37
        above = kit.value(fv, lam0 + 1e-9j)
        on = kit.value(fv, lam0 + 0.0j)
        assert on == pytest.approx(above, abs=1e-7)

    def test_near_far_routes_agree_in_overlap(self, kit):
        fv = DENSITY(kit.rule.nodes)
        # points on both sides of the switching distance
        for lam in (0.2 + 0.34j, 0.2 + 0.36j, -1.34, -1.36):
            w_near = kit.weights(np.array([lam]))[0]
            far = kit.rule.weights / (kit.rule.nodes - lam)
            assert w_near @ fv == pytest.approx(far @ fv, abs=1e-11)

    def test_dweights_match_derivative(self, kit):
        fv = DENSITY(kit.rule.nodes)
        h = 1e-6
        for lam in (0.1 + 0.2j, 1.5 + 0.5j):
            fd = (kit.value(fv, lam + h) - kit.value(fv, lam - h)) / (2 * h)
            assert kit.dweights(lam) @ fv == pytest.approx(fd, abs=1e-7)


class TestLegendreQ:
    def test_q0_q1_closed_forms(self):
        z = np.array([2.0 + 1.0j])
        q = legendre_q(z, 3)
        q0 = 0.5 * np.log((z + 1) / (z - 1))
        assert q[0, 0] == pytest.approx(complex(q0[0]), abs=1e-15)
        assert q[1, 0] == pytest.approx(complex(z[0] * q0[0] - 1.0), abs=1e-14)

    def test_growth_truncation(self):
        # far from the cut the high-order entries are cut to exact zero
        # instead of exploding with the recurrence contamination
        q = legendre_q(np.array([1.25 + 0.0j]), 159)
        assert np.all(np.abs(q) < 10.0)
        assert q[-1, 0] == 0.0

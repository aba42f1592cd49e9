import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.special import exp1, gamma

from cshiftlab.chf import OVERLAP, _asymptotic, _principal, tricomi_psi
from cshiftlab.errors import AccuracyError, BranchError, ParameterDomainError

#: exponent values used by the default symbol family
NU = 1j * np.log(1.2) / (2 * np.pi)
ARTIFACT_PARAMS = [NU, -NU, 1 + NU, 1 - NU, 0.12 + 0.05j, -0.3j]


def ode_continue(a, z0, direction, turns=1.0):
    """Analytic continuation around 0 by integrating the defining ODE.

    Independent oracle for the monodromy relations: start from the
    principal value, integrate z y'' + (1-z) y' - a y = 0 along a circle.
    """
    t0 = tricomi_psi(a, z0, strict=False)
    y0 = [t0.value, t0.dvalue]

    def rhs(th, y):
        z = abs(z0) * np.exp(1j * (np.angle(z0) + direction * th))
        dz = 1j * direction * z
        return [y[1] * dz, dz * (a * y[0] - (1.0 - z) * y[1]) / z]

    sol = solve_ivp(rhs, [0.0, 2 * np.pi * turns], y0, rtol=3e-13,
                    atol=1e-14, method="DOP853")
    return sol.y[0][-1]


class TestPrincipalValues:
    def test_exponential_integral_representation(self):
        # Psi(1, 1; z) = e^z E_1(z)
        got = tricomi_psi(1.0, 1.0).value
        assert got == pytest.approx(np.e * exp1(1.0), abs=1e-10)
        assert abs(got - 0.596347) < 1e-6

    def test_a_zero_is_identically_one(self):
        for z in (0.3, 5.0 + 2.0j, -7.0 + 0.5j):
            assert tricomi_psi(0.0, z).value == pytest.approx(1.0, abs=1e-14)
        for sheet in (-1, 1):
            assert tricomi_psi(0.0, 2.0 + 1j, sheet=sheet).value \
                == pytest.approx(1.0, abs=1e-12)

    def test_nonpositive_integer_parameter_is_polynomial(self):
        for z in (0.5, 3.0 - 2.0j, 30.0j):
            assert tricomi_psi(-1.0, z).value == pytest.approx(z - 1.0,
                                                               abs=1e-12)

    def test_ode_residual_across_routes(self):
        rng = np.random.default_rng(4)
        for _ in range(40):
            a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            z = rng.uniform(0.5, 60.0) * np.exp(1j * rng.uniform(-np.pi, np.pi))
            te = tricomi_psi(a, z, strict=False)
            assert te.ode_residual() < 1e-6

    def test_asymptotic_leading_term(self):
        # Psi(a, 1; z) z^a -> 1 at |z| = 1e3 on the upper imaginary ray
        for a in (0.3, -0.2 + 0.4j, NU):
            z = 1e3 * np.exp(1j * np.pi / 2)
            val = tricomi_psi(a, z).value * np.exp(a * np.log(z))
            assert abs(val - 1.0) < 1e-3


class TestMonodromy:
    def test_relations_against_ode_continuation(self):
        cases = [(0.3 + 0.2j, 2.0 + 1.0j), (1 + NU, 5.0j), (-0.4, 3.0),
                 (0.9 - 0.6j, 1.5 - 2.0j), (NU, 7.0), (0.5, 1.0 - 0.8j)]
        for a, z0 in cases:
            for d in (+1, -1):
                ref = ode_continue(a, z0, d)
                got = tricomi_psi(a, z0, sheet=d, strict=False).value
                assert abs(got - ref) / max(abs(ref), 1.0) < 1e-8

    def test_residuals_of_both_connection_formulas(self):
        # residual of the two sheet-connection identities over random
        # (a, z) with |a| <= 1, 1 <= |z| <= 10
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(20):
            a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(a) > 1:
                a = a / abs(a) * rng.uniform(0.1, 1.0)
            z = rng.uniform(1.0, 10.0) * np.exp(1j * rng.uniform(-np.pi, np.pi))
            up = tricomi_psi(a, z, sheet=+1, strict=False).value
            dn = tricomi_psi(a, z, sheet=-1, strict=False).value
            base = tricomi_psi(a, z, strict=False).value
            g2 = gamma(a) ** 2
            rot = np.exp(-2j * np.pi * a)
            term = 2j * np.pi * np.exp(-1j * np.pi * a + z) / g2 \
                * tricomi_psi(1.0 - a, -z, sheet=(1 if np.angle(z) > 0 else 0),
                              strict=False).value
            r1 = abs(up - (rot * base + term))
            term2 = 2j * np.pi * np.exp(1j * np.pi * a + z) / g2 \
                * tricomi_psi(1.0 - a, -z,
                              sheet=(-1 if np.angle(z) < 0 else 0),
                              strict=False).value
            r2 = abs(dn - (base / rot - term2))
            scale = max(abs(up), abs(dn), 1.0)
            worst = max(worst, r1 / scale, r2 / scale)
        assert worst < 1e-9

    def test_round_trip_up_then_down(self):
        # one turn up followed by one turn down returns the start value;
        # exercises both connection formulas jointly
        for a, z in [(0.25 - 0.7j, 3.0 + 1.0j), (1 - NU, 6.0j)]:
            ref = ode_continue(a, z, +1)
            back = ode_continue(a, z * np.exp(0j), -1)  # placeholder path
            up = tricomi_psi(a, z, sheet=+1, strict=False).value
            assert abs(up - ref) < 1e-8 * max(1.0, abs(ref))
            assert abs(tricomi_psi(a, z, sheet=0).value
                       - ode_continue(a, z, -1, turns=0.0)) < 1e-10

    def test_two_turns(self):
        a, z = 0.3, 2.0
        ref = ode_continue(a, z, +1, turns=2.0)
        got = tricomi_psi(a, z, sheet=2, strict=False).value
        assert abs(got - ref) / abs(ref) < 1e-7


class TestRouteConsistency:
    def test_overlap_agreement_across_switch(self):
        # interior route against the asymptotic expansion where both meet
        # their budgets, including the switch radius itself
        worst = 0.0
        for a in ARTIFACT_PARAMS:
            for r in (20.0, 20.5, 22.0, 25.0):
                for th in (-np.pi / 2, np.pi / 2, 1.2):
                    z = r * np.exp(1j * th)
                    vi = _principal(complex(a), z, th)[0]
                    va = _asymptotic(complex(a), z, th)[0]
                    worst = max(worst, abs(vi - va) / abs(vi))
        assert worst < 1e-7

    def test_interior_routes_in_full_annulus(self):
        # laplace and series agree within their own (honest) error
        # monitors through 15..25; the laplace route separately matches
        # the arbitrary-precision oracle
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 30
        from cshiftlab.chf import _laplace, _series
        for a in (1 + NU, 0.8, 1.3 - 0.2j):
            for r in (15.0, 18.0, 22.0, 25.0):
                z = r * np.exp(1j * np.pi / 2)
                vl, _, _, el = _laplace(complex(a), z)
                vs, _, _, es = _series(complex(a), z)
                ref = complex(mpmath.hyperu(mpmath.mpc(a), 1, mpmath.mpc(z)))
                assert abs(vl - ref) / abs(ref) < 1e-8
                assert abs(vl - vs) / abs(vl) < 5.0 * (es + el) + 1e-12
                assert abs(vs - ref) / abs(ref) < 5.0 * es + 1e-12

    def test_error_monitor_populated(self):
        te = tricomi_psi(0.3, 30.0j)
        assert te.route == "asymptotic"
        assert 0.0 <= te.err < 1e-10


class TestErrors:
    def test_branch_point(self):
        with pytest.raises(BranchError):
            tricomi_psi(0.3, 0.0)

    def test_parameter_cap(self):
        with pytest.raises(ParameterDomainError):
            tricomi_psi(6.0, 1.0)
        assert tricomi_psi(6.0, 30.0, a_cap=10.0).value is not None

    def test_strict_overlap_budget(self):
        # a small-Re-a, large-Im-a parameter near the switch radius pushes
        # the series cancellation monitor over budget: strict mode raises
        bad = (0.2 + 0.9j, 19.9j)
        te = tricomi_psi(*bad, strict=False)
        assert te.route == "series" and te.err > 1e-8
        with pytest.raises(AccuracyError):
            tricomi_psi(*bad, strict=True)

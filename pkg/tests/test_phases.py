import math

import numpy as np
import pytest

from geogate.design import solve_forward
from geogate.errors import AmbiguousPathError, DomainError, UndefinedPhaseError
from geogate.evolve import RK4, Exact, evolve, hamiltonian_rotating
from geogate.phases import (analytic_phases, canonical_phase, decompose_two_loop,
                            dynamic_phase, pancharatnam_phase, phase_distance,
                            simulate_two_loop, solid_angle_phase)
from geogate.qmath import psi_minus, psi_plus

from conftest import sweep_designs
from oracles import cap_circle, precessed_z_integral

SQRT2, SQRT10 = math.sqrt(2), math.sqrt(10)


class TestCanonical:
    @pytest.mark.parametrize("phi,expected", [(0.0, 0.0), (-0.0, 0.0), (0.5, 0.5 - 2 * math.pi),
                                              (-2 * math.pi, 0.0), (-7.0, -7.0 + 2 * math.pi),
                                              (2 * math.pi, 0.0)])
    def test_values(self, phi, expected):
        assert canonical_phase(phi) == pytest.approx(expected, abs=1e-15)

    def test_range(self, rng):
        for phi in rng.uniform(-50, 50, 500):
            c = canonical_phase(phi)
            assert -2 * math.pi < c <= 0
            assert phase_distance(c, phi) < 1e-12


class TestPancharatnam:
    def test_same_state(self):
        assert pancharatnam_phase(psi_plus(0.4), psi_plus(0.4)) == 0

    def test_pure_phase(self):
        p = psi_plus(0.9)
        assert pancharatnam_phase(p, np.exp(-1j * math.pi / 3) * p) == \
            pytest.approx(-math.pi / 3, abs=1e-15)

    def test_minus_pi_maps_to_pi(self):
        p = psi_plus(0.9)
        assert pancharatnam_phase(p, -p) == pytest.approx(math.pi, abs=1e-15)

    def test_after_loop1(self, x1_design):
        d = x1_design
        tr = evolve(d.loop1, psi_plus(d.theta), d.period, Exact(), 101)
        expected = math.remainder(-math.pi * (1 + SQRT2), 2 * math.pi)
        assert pancharatnam_phase(tr.initial, tr.final) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(-1.30129, abs=1e-5)

    def test_orthogonal_rejected(self):
        with pytest.raises(UndefinedPhaseError):
            pancharatnam_phase(psi_plus(0.3), psi_minus(0.3))


class TestDynamicPhase:
    def test_loop1(self, x1_design):
        d = x1_design
        tr = evolve(d.loop1, psi_plus(d.theta), d.period, Exact(), 101)
        assert dynamic_phase(tr) == pytest.approx(-math.pi * (1 / SQRT2 + SQRT2), abs=1e-9)
        assert dynamic_phase(tr) == pytest.approx(-6.66432, abs=1e-5)

    def test_loop2(self, x1_design):
        d = x1_design
        tr = evolve(d.loop2, psi_plus(d.theta), d.period, Exact(), 101)
        assert dynamic_phase(tr) == pytest.approx(-math.pi * (1 / SQRT2 - 2 * SQRT2), abs=1e-9)

    def test_too_few_samples(self, x1_design):
        tr = evolve(x1_design.loop1, psi_plus(x1_design.theta), 1e-9, Exact(), 2)
        with pytest.raises(DomainError):
            dynamic_phase(tr)

    def test_even_samples(self, x1_design):
        tr = evolve(x1_design.loop1, psi_plus(x1_design.theta), 1.0, Exact(), 10)
        with pytest.raises(DomainError, match="odd"):
            dynamic_phase(tr)


class TestDecompose:
    def test_x_one(self, x1_design):
        dec = decompose_two_loop(x1_design, Exact(), 201)
        assert dec.total == pytest.approx(-1.84030, abs=1e-5)
        assert abs(dec.dynamic) < 1e-9
        assert dec.geometric == pytest.approx(-2 * math.pi * (1 - 1 / SQRT2), abs=1e-9)
        assert dec.per_loop_dynamic[0] == pytest.approx(-3 * math.pi * SQRT2 / 2, abs=1e-9)
        assert dec.per_loop_dynamic[1] == pytest.approx(3 * math.pi * SQRT2 / 2, abs=1e-9)
        assert dec.cyclicity_defect < 1e-10
        assert phase_distance(dec.geometric, dec.total - dec.dynamic) < 1e-12

    def test_x_point_six_minus(self):
        dec = decompose_two_loop(solve_forward(0.6, "minus"), Exact(), 401)
        assert dec.geometric == pytest.approx(-2 * math.pi * (1 - 1 / SQRT10), abs=1e-8)
        assert dec.geometric == pytest.approx(-4.296268, abs=1e-6)

    def test_broken_design_reports_dynamic_phase(self, x1_design):
        d = x1_design.with_fields(omega0_prime=x1_design.omega0_prime + 0.1)
        dec = decompose_two_loop(d, Exact(), 401)
        assert abs(dec.dynamic) > 1e-3
        assert dec.cyclicity_defect > 1e-6
        # loop 1 untouched; loop 2 from the precession of the rotating-frame Bloch vector
        T, w = d.period, d.omega
        assert dec.per_loop_dynamic[0] == pytest.approx(
            -math.pi * (d.cos_theta + d.Omega / w), abs=1e-9)
        h = hamiltonian_rotating(d.loop2)
        hvec = np.array([h.cx, h.cy, h.cz])
        n0 = np.array([math.sin(d.theta), 0, math.cos(d.theta)])
        z_int = precessed_z_integral(n0, hvec, 2 * np.linalg.norm(hvec), T)
        expected = -(T * float(hvec @ n0) + 0.5 * w * z_int)
        assert dec.per_loop_dynamic[1] == pytest.approx(expected, abs=1e-9)

    def test_requires_odd_samples(self, x1_design):
        with pytest.raises(DomainError):
            decompose_two_loop(x1_design, Exact(), 400)

    @pytest.mark.parametrize("d", sweep_designs(10), ids=lambda d: f"{d.x:.2f}{d.branch.value}")
    def test_psi_minus_opposite(self, d):
        plus = decompose_two_loop(d, Exact(), 401)
        minus = decompose_two_loop(d, Exact(), 401, psi0=psi_minus(d.theta))
        assert phase_distance(minus.geometric, 2 * math.pi * (1 - d.cos_theta)) < 1e-8
        assert phase_distance(minus.geometric, -plus.geometric) < 1e-8

    def test_method_agreement(self):
        d = solve_forward(0.35, "plus", 1.4, 1.0)
        a = decompose_two_loop(d, Exact(), 401).to_dict()
        b = decompose_two_loop(d, RK4(20000), 401).to_dict()
        for k in ("total", "dynamic", "geometric", "cyclicity_defect"):
            assert abs(a[k] - b[k]) < 1e-6
        assert np.allclose(a["per_loop_dynamic"], b["per_loop_dynamic"], atol=1e-6, rtol=0)

    @pytest.mark.parametrize("branch", ["plus", "minus"])
    def test_omega1_independence(self, branch):
        ref = decompose_two_loop(solve_forward(0.55, branch, 1.0), Exact(), 401)
        seen = set()
        for w1 in (0.25, 0.5, 2.0, 4.0):
            dec = decompose_two_loop(solve_forward(0.55, branch, w1), Exact(), 401)
            assert phase_distance(dec.geometric, ref.geometric) < 1e-8
            seen.add(round(dec.per_loop_dynamic[0], 6))
        assert len(seen) == 4

    def test_serialized_keys(self, x1_design):
        doc = decompose_two_loop(x1_design, Exact(), 11).to_dict()
        assert list(doc) == ["total", "dynamic", "geometric", "cyclicity_defect",
                             "per_loop_dynamic", "phi_g_predicted"]
        assert len(doc["per_loop_dynamic"]) == 2


class TestAnalytic:
    def test_x_one(self, x1_design):
        (g1, d1), (g2, d2) = analytic_phases(x1_design)
        assert g1 == g2 == pytest.approx(-math.pi * (1 - 1 / SQRT2))
        assert d1 == pytest.approx(-math.pi * (1 / SQRT2 + SQRT2))
        assert d2 == pytest.approx(math.pi * (2 * SQRT2 - 1 / SQRT2))
        assert abs(d1 + d2) < 1e-12

    def test_equator_limit(self):
        (g1, _), (g2, _) = analytic_phases(solve_forward(1e-6, "minus"))
        assert g1 == pytest.approx(-math.pi, abs=1e-5)
        assert g2 == g1

    @pytest.mark.parametrize("d", sweep_designs(12), ids=lambda d: f"{d.x:.2f}{d.branch.value}")
    def test_dynamic_sum_zero(self, d):
        (g1, d1), (g2, d2) = analytic_phases(d)
        assert g1 == g2
        assert abs(d1 + d2) < 1e-12 * max(1, abs(d1))


class TestSolidAngle:
    def test_equator(self):
        assert solid_angle_phase(cap_circle(math.pi / 2, 1000)) == \
            pytest.approx(-math.pi, abs=1e-4)

    def test_cap_sixty_degrees(self):
        assert solid_angle_phase(cap_circle(math.pi / 3, 1000)) == \
            pytest.approx(-math.pi / 2, abs=1e-4)

    @pytest.mark.parametrize("theta", [0.1, 0.5, 1.0, 1.4])
    def test_cap_400(self, theta):
        assert solid_angle_phase(cap_circle(theta, 401, phase0=0.3)) == \
            pytest.approx(-math.pi * (1 - math.cos(theta)), abs=1e-4)

    def test_reverse_orientation(self):
        path = cap_circle(0.8, 500)[::-1]
        assert phase_distance(solid_angle_phase(path), math.pi * (1 - math.cos(0.8))) < 1e-4

    def test_open_path_closed_by_geodesic(self):
        # octant triangle: solid angle pi/2
        path = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        with pytest.raises(AmbiguousPathError):
            solid_angle_phase(path, closed=False)
        pts = []
        for a, b in [((1, 0, 0), (0, 1, 0)), ((0, 1, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0))]:
            for s in np.linspace(0, 1, 20, endpoint=False):
                v = (1 - s) * np.array(a) + s * np.array(b)
                pts.append(v / np.linalg.norm(v))
        assert solid_angle_phase(pts, closed=False) == pytest.approx(-math.pi / 4, abs=1e-12)

    def test_degenerate_geodesic(self):
        path = [(math.cos(a), math.sin(a), 0) for a in (0.0, 0.3, 0.6)]
        assert abs(solid_angle_phase(path, closed=False)) < 1e-12

    def test_antipodal_rejected(self):
        with pytest.raises(AmbiguousPathError):
            solid_angle_phase([(0, 0, 1), (0, 0, -1), (1, 0, 0)], closed=False)

    def test_closed_must_close(self):
        with pytest.raises(DomainError):
            solid_angle_phase(cap_circle(0.5, 100)[:-5], closed=True)

    @pytest.mark.parametrize("d", sweep_designs(6), ids=lambda d: f"{d.x:.2f}{d.branch.value}")
    def test_loop_trajectories(self, d):
        first, second = simulate_two_loop(d, Exact(), 401)
        target = -math.pi * (1 - d.cos_theta)
        assert solid_angle_phase(first.bloch) == pytest.approx(target, abs=1e-3)
        assert solid_angle_phase(second.bloch) == pytest.approx(target, abs=1e-3)

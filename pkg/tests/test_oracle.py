"""Independent reference solutions: parabolic cylinder functions, the exact
constant-field basis, the ideal-field plateau value, and Richardson reference."""

import math

import mpmath as mp
import numpy as np
import pytest

from diracpairs import (FieldConfig, OracleDomainError, PrecisionLossWarning,
                        analytic_basis, analytic_transport, apply_spinor,
                        build_grid, compose_propagator, fine_grid_reference,
                        incident_spinor, nuclei_preset, pcf_params, pcf_u,
                        sauter_probability)

SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)


class TestPcfU:
    def test_value_at_origin(self):
        # U(-1/2, 0) = sqrt(pi)/Gamma(1/2) = 1
        assert pcf_u(-0.5, 0.0) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("a,z", [
        (0.3, 1.2),
        (-1.7, 2.5),
        (2.0 + 1.5j, 0.7 - 0.3j),
        (-0.5 + 2.5j, 3.0 + 3.0j),
        (5.0, -4.0),
    ])
    def test_against_mpmath_backend(self, a, z):
        ours = pcf_u(a, z)
        with mp.workdps(40):
            ref = complex(mp.pcfu(a, z))
        assert abs(ours - ref) <= 1e-9 * max(abs(ref), 1e-30)

    @pytest.mark.parametrize("a,z", [
        (0.5, 1.0),
        (-0.5 + 2.0j, 1.5 + 0.5j),
        (1.2 - 0.7j, -2.0 + 1.0j),
    ])
    def test_three_term_recurrence(self, a, z):
        # U(a-1, z) = z U(a, z) + (a + 1/2) U(a+1, z)
        lhs = pcf_u(a - 1, z)
        rhs = z * pcf_u(a, z) + (a + 0.5) * pcf_u(a + 1, z)
        assert abs(lhs - rhs) <= 1e-8 * max(abs(lhs), 1.0)

    @pytest.mark.parametrize("a,z", [
        (0.7, 1.3),
        (-0.5 + 1.0j, 2.0),
        (1.5, 0.4 + 0.9j),
    ])
    def test_weber_ode_residual(self, a, z):
        # U'' = (z^2/4 + a) U, residual via Richardson-improved stencil
        def resid(h):
            second = (pcf_u(a, z + h) - 2 * pcf_u(a, z)
                      + pcf_u(a, z - h)) / h ** 2
            return second - (z * z / 4 + a) * pcf_u(a, z)

        r1, r2 = resid(1e-2), resid(5e-3)
        extrap = (4 * r2 - r1) / 3
        assert abs(extrap) <= 1e-7 * max(abs(pcf_u(a, z)), 1.0)

    def test_domain_envelope(self):
        with pytest.raises(OracleDomainError):
            pcf_u(60.0, 1.0)
        with pytest.raises(OracleDomainError):
            pcf_u(1.0, 31.0)

    def test_precision_warning_is_a_user_warning(self):
        assert issubclass(PrecisionLossWarning, UserWarning)


class TestBasisParams:
    def test_order_and_maps(self):
        field = FieldConfig(F=0.2, L=98.4)
        p = pcf_params(20.0, field)
        assert p.gamma == complex(-0.5, 1.0 / (2 * 0.2))
        assert p.gamma.imag == pytest.approx(1.0 / (2 * field.F))
        assert p.phase == pytest.approx(complex(math.sqrt(0.5),
                                                math.sqrt(0.5)))
        assert p.scale == pytest.approx(math.sqrt(2.0 / field.F))
        # at x = L the argument is phase*scale*E
        assert p.y_of_x(field.L) == pytest.approx(p.phase * p.scale * 20.0)
        # at x = -L it is phase*scale*(E - 2FL)
        assert p.y_of_x(-field.L) == pytest.approx(
            p.phase * p.scale * (20.0 - 2 * field.F * field.L))


class TestAnalyticBasis:
    def test_small_field_refused(self):
        with pytest.raises(OracleDomainError):
            analytic_basis(2.0, FieldConfig(F=0.01, L=200.0))

    def test_dirac_residual_along_the_ramp(self):
        # both families must satisfy d/dx psi = (i sigma_z Q + sigma_y) psi
        # with Q(x) = E + F(x - L); 4th-order stencil, 100 points
        field = FieldConfig(F=0.8, L=4.0)
        e = 3.0
        basis = analytic_basis(e, field)
        h = 1e-4
        rng = np.random.default_rng(7)
        xs = rng.uniform(-field.L + 2 * h, field.L - 2 * h, size=50)
        for fam in (basis.u_a, basis.u_b):
            for x in xs:
                f_m2, f_m1 = fam(x - 2 * h), fam(x - h)
                f_p1, f_p2 = fam(x + h), fam(x + 2 * h)
                deriv = (f_m2 - 8 * f_m1 + 8 * f_p1 - f_p2) / (12 * h)
                q = e + field.F * (x - field.L)
                gen = 1j * q * SIGMA_Z + np.array([[0, -1j], [1j, 0]])
                resid = deriv - gen @ fam(x)
                scale = max(float(np.abs(fam(x)).max()), 1.0)
                assert np.abs(resid).max() <= 1e-8 * scale

    def test_families_linearly_independent(self):
        field = FieldConfig(F=0.8, L=4.0)
        basis = analytic_basis(3.0, field)
        w = np.linalg.det(np.column_stack([basis.u_a(0.0), basis.u_b(0.0)]))
        assert abs(w) > 1e-12

    def test_transport_properties(self):
        field = FieldConfig(F=0.8, L=4.0)
        t = analytic_transport(3.0, field)
        assert t.shape == (2, 2)
        # traceless generator -> unit determinant; sigma_z pseudo-unitary
        assert abs(np.linalg.det(t) - 1.0) <= 1e-8
        assert np.allclose(t.conj().T @ SIGMA_Z @ t, SIGMA_Z, atol=1e-8)

    def test_transport_matches_composite(self):
        # quick strong-field version of the full equivalence check
        field = FieldConfig(F=0.8, L=4.0)
        e = 3.0
        t = analytic_transport(e, field)
        nuclei = nuclei_preset(0, 1.0, 0.0)
        grid = build_grid(field, nuclei, 1e-3)
        comp = compose_propagator(e, grid, field, nuclei)
        rel = np.abs(comp.matrix - t).max() / np.abs(t).max()
        assert rel <= 1e-5


class TestSauter:
    def test_reference_value(self):
        assert sauter_probability(0.2) == pytest.approx(math.exp(-5 * math.pi),
                                                        rel=1e-15)

    def test_monotone_in_field(self):
        assert sauter_probability(0.1) < sauter_probability(0.2) \
            < sauter_probability(1.0) < 1.0

    def test_rejects_nonpositive(self):
        for bad in (0.0, -0.3):
            with pytest.raises(OracleDomainError):
                sauter_probability(bad)


class TestFineGridReference:
    FIELD = FieldConfig(F=0.8, L=4.0)
    NUCLEI = nuclei_preset(2, 2.0, 0.8)

    def test_richardson_algebra(self):
        # halving sequence: extrapolation adds one third of the last increment
        seq = (4e-3, 2e-3, 1e-3)
        e = 3.0
        ref = fine_grid_reference(e, self.FIELD, self.NUCLEI, seq)
        psi0 = incident_spinor(e, self.FIELD)
        vals = []
        for dxv in seq:
            grid = build_grid(self.FIELD, self.NUCLEI, dxv)
            comp = compose_propagator(e, grid, self.FIELD, self.NUCLEI)
            vals.append(apply_spinor(comp.matrix, psi0))
        assert ref.monotone
        expected = vals[-1] + (vals[-1] - vals[-2]) / 3.0
        assert np.allclose(ref.spinor, expected, rtol=0, atol=1e-14)
        inc = float(np.max(np.abs(vals[-1] - vals[-2])))
        assert ref.error_estimate == pytest.approx(inc / 3.0)

    def test_reference_beats_finest_grid(self):
        e = 2.4
        ref = fine_grid_reference(e, self.FIELD, self.NUCLEI,
                                  (8e-3, 4e-3, 2e-3))
        grid = build_grid(self.FIELD, self.NUCLEI, 1e-4)
        comp = compose_propagator(e, grid, self.FIELD, self.NUCLEI)
        truth = apply_spinor(comp.matrix, incident_spinor(e, self.FIELD))
        err = float(np.max(np.abs(ref.spinor - truth)))
        assert err <= ref.error_estimate

    def test_custom_initial_spinor(self):
        init = np.array([0.3 - 0.2j, 1.1 + 0.4j])
        ref = fine_grid_reference(3.0, self.FIELD, self.NUCLEI,
                                  (4e-3, 2e-3, 1e-3), initial=init)
        assert ref.monotone and np.isfinite(ref.spinor).all()

    def test_degenerate_zero_initial_is_flagged_not_trusted(self):
        ref = fine_grid_reference(3.0, self.FIELD, self.NUCLEI,
                                  (4e-3, 2e-3, 1e-3),
                                  initial=np.zeros(2, dtype=complex))
        assert not ref.monotone
        assert ref.error_estimate == 0.0
        assert np.all(ref.spinor == 0.0)

    def test_sequence_validation(self):
        with pytest.raises(ValueError):
            fine_grid_reference(3.0, self.FIELD, self.NUCLEI, (1e-2, 5e-3))
        with pytest.raises(ValueError):
            fine_grid_reference(3.0, self.FIELD, self.NUCLEI,
                                (1e-2, 1e-2, 5e-3))

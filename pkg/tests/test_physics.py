"""Units, geometry, presets, delta-well jump operator, Klein window."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diracpairs import (UNITS, FieldConfig, GeometryError, NucleiConfig,
                        check_wells_inside, klein_region, nuclei_preset,
                        potential_a0, transfer_matrix,
                        transfer_matrix_inverse)


class TestUnits:
    def test_length_scale(self):
        assert UNITS.length_unit_pm == 0.386159

    def test_pm_conversion(self):
        assert UNITS.pm_to_lu(38.0) == pytest.approx(98.405, abs=5e-3)

    @given(st.floats(min_value=1e-6, max_value=1e6))
    def test_round_trip(self, x_pm):
        back = UNITS.lu_to_pm(UNITS.pm_to_lu(x_pm))
        assert abs(back - x_pm) <= 1e-12 * x_pm


class TestFieldPotential:
    def test_plateau_values(self):
        field = FieldConfig(F=0.2, L=98.4)
        assert potential_a0(-200.0, field) == pytest.approx(2 * 0.2 * 98.4)
        assert potential_a0(200.0, field) == 0.0
        assert potential_a0(98.4, field) == 0.0

    def test_linear_ramp_midpoint(self):
        field = FieldConfig(F=0.2, L=98.4)
        assert potential_a0(0.0, field) == pytest.approx(0.2 * 98.4)

    def test_continuity_at_edges(self):
        field = FieldConfig(F=0.7, L=5.0)
        eps = 1e-9
        for edge in (-field.L, field.L):
            lo = potential_a0(edge - eps, field)
            hi = potential_a0(edge + eps, field)
            assert abs(hi - lo) < 1e-6

    def test_array_input(self):
        field = FieldConfig(F=0.5, L=2.0)
        x = np.array([-3.0, 0.0, 3.0])
        out = potential_a0(x, field)
        assert out.shape == (3,)
        assert out[0] == pytest.approx(2.0)
        assert out[2] == 0.0

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            FieldConfig(F=-0.1, L=1.0)
        with pytest.raises(ValueError):
            FieldConfig(F=0.2, L=0.0)
        with pytest.raises(ValueError):
            FieldConfig(F=float("nan"), L=1.0)

    def test_zero_field_allowed(self):
        field = FieldConfig(F=0.0, L=4.0)
        assert potential_a0(0.0, field) == 0.0


class TestNucleiPresets:
    def test_counts_and_symmetry(self):
        for n in range(6):
            nuc = nuclei_preset(n, 3.0, 0.8)
            assert nuc.n == n
            pos = np.array(nuc.positions)
            assert np.allclose(pos, -pos[::-1])

    def test_two_wells(self):
        nuc = nuclei_preset(2, 8.0, 0.8)
        assert nuc.positions == (-4.0, 4.0)

    def test_five_wells(self):
        nuc = nuclei_preset(5, 3.0, 1.0)
        assert nuc.positions == (-6.0, -3.0, 0.0, 3.0, 6.0)

    @given(st.integers(min_value=2, max_value=5),
           st.floats(min_value=0.1, max_value=50.0))
    def test_constant_spacing(self, n, spacing):
        nuc = nuclei_preset(n, spacing, 0.5)
        gaps = np.diff(nuc.positions)
        assert np.allclose(gaps, spacing, rtol=1e-12)

    def test_rejects_bad_preset(self):
        with pytest.raises(ValueError):
            nuclei_preset(6, 1.0, 0.5)
        with pytest.raises(ValueError):
            nuclei_preset(-1, 1.0, 0.5)
        with pytest.raises(ValueError):
            nuclei_preset(2, 0.0, 0.5)

    def test_rejects_unsorted_positions(self):
        with pytest.raises(ValueError):
            NucleiConfig(g=0.5, positions=(1.0, -1.0))
        with pytest.raises(ValueError):
            NucleiConfig(g=0.5, positions=(0.0, 0.0))

    def test_geometry_guard(self):
        field = FieldConfig(F=0.8, L=4.0)
        check_wells_inside(field, nuclei_preset(2, 7.0, 0.8))
        with pytest.raises(GeometryError):
            check_wells_inside(field, nuclei_preset(2, 8.0, 0.8))
        with pytest.raises(GeometryError):
            check_wells_inside(field, nuclei_preset(2, 7.9, 0.8),
                               margin=0.1)


class TestTransferMatrix:
    def test_identity_at_zero_strength(self):
        assert np.allclose(transfer_matrix(0.0), np.eye(2))

    def test_reference_value(self):
        G = transfer_matrix(0.8)
        expected = complex(1 - 0.16, 0.8) / (1 + 0.16)
        assert G[0, 0] == pytest.approx(expected)
        assert G[1, 1] == pytest.approx(expected.conjugate())
        assert G[0, 1] == 0.0 and G[1, 0] == 0.0

    @given(st.floats(min_value=0.0, max_value=10.0))
    def test_unitary_det_one(self, g):
        G = transfer_matrix(g)
        assert np.allclose(G.conj().T @ G, np.eye(2), atol=1e-14)
        assert abs(np.linalg.det(G) - 1.0) < 1e-14

    @given(st.floats(min_value=0.0, max_value=10.0))
    def test_inverse(self, g):
        G = transfer_matrix(g)
        Gi = transfer_matrix_inverse(g)
        assert np.allclose(G @ Gi, np.eye(2), atol=1e-14)

    def test_phase_is_attractive(self):
        # an attractive well advances the upper component's phase
        assert np.angle(transfer_matrix(0.8)[0, 0]) > 0


class TestKleinWindow:
    def test_reference_window(self):
        w = klein_region(FieldConfig(F=0.2, L=98.4))
        assert (w.e_min, w.e_max) == (1.0, pytest.approx(38.36))
        assert not w.empty

    def test_empty_when_drop_too_small(self):
        w = klein_region(FieldConfig(F=0.2, L=4.0))
        assert w.empty
        assert w.width == 0.0

    def test_threshold(self):
        # window opens exactly at FL = 1
        assert klein_region(FieldConfig(F=0.5, L=2.0)).empty
        assert not klein_region(FieldConfig(F=0.5, L=2.01)).empty

    @given(st.floats(min_value=0.01, max_value=2.0),
           st.floats(min_value=0.1, max_value=200.0))
    def test_width_formula(self, f, l):
        w = klein_region(FieldConfig(F=f, L=l))
        if f * l > 1.0:
            assert w.width == pytest.approx(2.0 * f * l - 2.0)
        else:
            assert w.empty

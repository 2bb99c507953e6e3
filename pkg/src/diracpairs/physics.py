"""Core physical setup: units, field geometry, nuclei configurations, delta-well
transfer matrix, and the Klein energy window.

Everything internal works in natural units (hbar = c = m = 1, elementary charge
absorbed into the field strength).  The only unit-carrying quantities are
lengths (l_u = hbar/(m c) = 0.386159 pm) and times (t_u = hbar/(m c^2) =
1.288 zs); conversions live here and are applied strictly at I/O boundaries.

Field strength F is stored as a dimensionless multiple of the critical field
E_S = m^2 c^3 / (|e| hbar).  In natural units with the charge absorbed this
coincides with the field's numerical value, so no separate conversion exists.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

# Pauli matrices, used throughout the propagation and matching algebra.
sigma_0 = np.eye(2, dtype=np.complex128)
sigma_x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
sigma_y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
sigma_z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)


@dataclass(frozen=True)
class NaturalUnits:
    """Conversion factors between natural units and SI-ish laboratory units."""

    length_unit_pm: float = 0.386159
    time_unit_zs: float = 1.288

    def pm_to_lu(self, x_pm: float) -> float:
        return x_pm / self.length_unit_pm

    def lu_to_pm(self, x_lu: float) -> float:
        return x_lu * self.length_unit_pm


UNITS = NaturalUnits()


class GeometryError(ValueError):
    """Configuration places nuclei outside the field region (or similar)."""


@dataclass(frozen=True)
class FieldConfig:
    """Constant electric field of strength ``F`` (units of E_S) filling |x| < L.

    The electrostatic potential is
        A0(x) = 2FL          for x <= -L
              = -F(x - L)    for -L < x < L
              = 0            for x >= L
    which is continuous and monotone non-increasing in x.
    """

    F: float
    L: float

    def __post_init__(self) -> None:
        if not (self.F >= 0.0):
            raise ValueError(f"field strength must be >= 0, got {self.F}")
        if not (self.L > 0.0):
            raise ValueError(f"field half-extent must be > 0, got {self.L}")


@dataclass(frozen=True)
class NucleiConfig:
    """Delta-well nuclei: potential V(x) = -g * sum_i delta(x - positions[i])."""

    g: float
    positions: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (self.g >= 0.0):
            raise ValueError(f"well strength must be >= 0, got {self.g}")
        pos = tuple(float(p) for p in self.positions)
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("well positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class KleinInterval:
    """Energy window (e_min, e_max) where a right-side positive-energy state
    overlaps the left-side negative continuum, i.e. pair production is open."""

    e_min: float
    e_max: float

    @property
    def empty(self) -> bool:
        return self.e_max <= self.e_min

    @property
    def width(self) -> float:
        return max(self.e_max - self.e_min, 0.0)


def potential_a0(x, field: FieldConfig):
    """Electrostatic potential A0(x); accepts scalars or arrays."""
    F, L = field.F, field.L
    x = np.asarray(x, dtype=float)
    out = np.where(x <= -L, 2.0 * F * L, np.where(x >= L, 0.0, -F * (x - L)))
    if out.ndim == 0:
        return float(out)
    return out


def nuclei_preset(n: int, spacing: float, g: float) -> NucleiConfig:
    """The six standard nuclei layouts (0..5 wells), symmetric about x = 0 with
    constant nearest-neighbour spacing."""
    if n not in (0, 1, 2, 3, 4, 5):
        raise ValueError(f"preset must be an integer in 0..5, got {n!r}")
    if n >= 2 and not (spacing > 0.0):
        raise ValueError(f"spacing must be > 0, got {spacing}")
    R = float(spacing)
    if n == 0:
        pos: tuple[float, ...] = ()
    elif n == 1:
        pos = (0.0,)
    elif n == 2:
        pos = (-R / 2.0, R / 2.0)
    elif n == 3:
        pos = (-R, 0.0, R)
    elif n == 4:
        pos = (-1.5 * R, -0.5 * R, 0.5 * R, 1.5 * R)
    else:
        pos = (-2.0 * R, -R, 0.0, R, 2.0 * R)
    return NucleiConfig(g=g, positions=pos)


def transfer_matrix(g: float) -> np.ndarray:
    """Jump operator across one attractive delta well, psi(r+) = G psi(r-).

    G = diag((1 - g^2/4 + i g)/(1 + g^2/4), conj) with c = 1: diagonal,
    unitary, det 1.  The symmetric (theta(0) = 1/2) regularization of the
    delta produces the Cayley form, hence the exactly-unit modulus.
    """
    a = g * g / 4.0
    d = 1.0 + a
    g11 = complex(1.0 - a, g) / d
    return np.array([[g11, 0.0], [0.0, g11.conjugate()]], dtype=np.complex128)


def transfer_matrix_inverse(g: float) -> np.ndarray:
    """G^-1 = conj(G) for the diagonal unitary G; used when propagating from
    +L toward -L across a well."""
    return transfer_matrix(g).conj()


def klein_region(field: FieldConfig) -> KleinInterval:
    """Klein window (m c^2, 2FL - m c^2); empty when the total potential drop
    2FL does not exceed two electron rest masses."""
    return KleinInterval(e_min=1.0, e_max=2.0 * field.F * field.L - 1.0)


def check_wells_inside(field: FieldConfig, nuclei: NucleiConfig,
                       margin: float = 0.0) -> None:
    """Every well must sit strictly inside the field region, optionally with a
    safety margin (e.g. one grid step)."""
    for p in nuclei.positions:
        if abs(p) >= field.L - margin:
            raise GeometryError(
                f"well at x = {p} l_u is not strictly inside (-L, L) "
                f"with L = {field.L} l_u (margin {margin})"
            )

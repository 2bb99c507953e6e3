"""Pair production by delta-function wells embedded in a finite electric field.

Transmission/reflection treatment of the 1D Dirac equation: a linear
potential ramp of half-extent L (strength F in Schwinger units) with up to
five attractive point wells inside.  The created-pair spectrum per unit time
is |A(E)|^2 / 2pi over the open Klein window (1, 2FL - 1), where A is the
transmission coefficient of a unit-flux wave incident from the downstream
asymptotic region.
"""

from .oracle import (AnalyticBasis, FineGridReference, OracleDomainError,
                     PcfParams, PrecisionLossWarning, analytic_basis,
                     analytic_transport, fine_grid_reference, pcf_params,
                     pcf_u, sauter_probability)
from .physics import (UNITS, FieldConfig, GeometryError, KleinInterval,
                      NaturalUnits, NucleiConfig, check_wells_inside,
                      klein_region, nuclei_preset, potential_a0,
                      transfer_matrix, transfer_matrix_inverse)
from .propagator import (Branch, CompositePropagator, PropagationGrid,
                         ResolutionError, StepCoefficients, apply_spinor,
                         build_grid, compose_propagator, current,
                         propagate_samples, step_coefficients, step_operator)
from .scattering import (AsymptoticState, DegenerateMatchError,
                         EnergyGridSpec, KleinDomainError, QuadratureSpec,
                         RateResult, ResonantQuadratureSpec, ScatterPoint,
                         SpectrumTable, asymptotic_state, incident_spinor,
                         reflection, resonant_rate, spectrum, spectrum_at,
                         total_rate, transmission)
from .svgplot import polyline_svg

__all__ = [
    "AnalyticBasis", "AsymptoticState", "Branch", "CompositePropagator",
    "DegenerateMatchError", "EnergyGridSpec", "FieldConfig",
    "FineGridReference", "GeometryError", "KleinDomainError", "KleinInterval",
    "NaturalUnits", "NucleiConfig", "OracleDomainError", "PcfParams",
    "PrecisionLossWarning", "PropagationGrid", "QuadratureSpec", "RateResult",
    "ResolutionError", "ResonantQuadratureSpec", "ScatterPoint",
    "SpectrumTable", "StepCoefficients",
    "UNITS", "analytic_basis", "analytic_transport", "apply_spinor",
    "asymptotic_state", "build_grid", "check_wells_inside",
    "compose_propagator", "current", "fine_grid_reference", "incident_spinor",
    "klein_region", "nuclei_preset", "pcf_params", "pcf_u", "polyline_svg",
    "potential_a0", "propagate_samples", "reflection", "resonant_rate",
    "sauter_probability",
    "spectrum", "spectrum_at", "step_coefficients", "step_operator",
    "total_rate", "transfer_matrix", "transfer_matrix_inverse",
    "transmission",
]

__version__ = "0.1.0"

"""Asymmetric-pump SPDC orbital-angular-momentum simulator."""

from ._oamsim import (
    BandSchmidt,
    BConvention,
    CountRecord,
    CrystalParams,
    DensityMatrix,
    FidelityPoint,
    Grid,
    JointSpectrum,
    LgParams,
    OamSpectrum,
    PumpSpec,
    QubitBasis,
    ScalarField,
    SchmidtParams,
    SweepRow,
    __version__,
    analytic_schmidt_gaussian,
    azimuthal_schmidt,
    b_parameter,
    band_schmidt,
    conditional_spectrum,
    dominant_modes,
    far_field,
    fidelity,
    fidelity_sweep,
    fwhm_radius_factor,
    inner_product,
    joint_spectrum,
    lg_mode,
    overlap_coefficient,
    power_spectrum,
    pump_at_crystal,
    reconstruct,
    run_tomography,
    schmidt_sweep,
    spectrum_mean,
    synthesize_shifted_vortex,
)

__all__ = [
    "BandSchmidt",
    "BConvention",
    "CountRecord",
    "CrystalParams",
    "DensityMatrix",
    "FidelityPoint",
    "Grid",
    "JointSpectrum",
    "LgParams",
    "OamSpectrum",
    "PumpSpec",
    "QubitBasis",
    "ScalarField",
    "SchmidtParams",
    "SweepRow",
    "__version__",
    "analytic_schmidt_gaussian",
    "azimuthal_schmidt",
    "b_parameter",
    "band_schmidt",
    "conditional_spectrum",
    "dominant_modes",
    "far_field",
    "fidelity",
    "fidelity_sweep",
    "fwhm_radius_factor",
    "inner_product",
    "joint_spectrum",
    "lg_mode",
    "overlap_coefficient",
    "power_spectrum",
    "pump_at_crystal",
    "reconstruct",
    "run_tomography",
    "schmidt_sweep",
    "spectrum_mean",
    "synthesize_shifted_vortex",
]

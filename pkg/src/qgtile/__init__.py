"""Spectra of periodic quantum graphs on Archimedean tilings.

The package computes dispersion relations, spectral bands, point
spectra and flat-band eigenfunctions for the equilateral quantum graphs
built on the eleven Archimedean tilings of the plane, with an identical
even potential on every edge.  Five tilings carry full vertex models
and secular determinants; the remaining six are available through their
closed dispersion relations.
"""

from .intervals import (
    DEFAULT_STEPS,
    EdgeSolutionBasis,
    GrapheneSine,
    Potential,
    SampledTable,
    ZeroPotential,
    backend_name,
    basis_arrays,
    discriminant_scan,
    evenness_residual,
    load_potential_csv,
    potential_from_spec,
    sample_solution,
    solve_basis,
)
from .tilings import (
    FULL_MODEL_NAMES,
    TILING_NAMES,
    Attachment,
    End,
    TilingSpec,
    UnsupportedTilingError,
    VertexSpec,
    get_tiling,
    tiling_to_json,
    validate_tiling,
)
from .dispersion import (
    DispersionForm,
    TrigInvariants,
    dispersion_coefficients,
    dispersion_form,
    dispersion_root_set,
    evaluate_dispersion,
    identity_residuals,
    mu_value,
    prefactor_value,
    roots_for_coefficient_stack,
    trig_invariants,
)
from .charsystem import (
    EquivalenceReport,
    GoldenComparison,
    assemble,
    check_equivalence,
    compare_with_published,
    determinant,
    published_trh_matrix,
)
from .spectra import (
    EIGENFUNCTION_KINDS,
    EdgewiseFunction,
    PointSpectrumGroup,
    ResidualReport,
    SpectralBand,
    SpectrumReport,
    VertexJoint,
    ac_range,
    bands_general,
    bands_zero_potential,
    build_eigenfunction,
    classify_point_lambda,
    invert_discriminant_levels,
    point_spectrum,
    spectrum_report,
)
from .oracles import (
    SUITE_NAMES,
    inequality_suite,
    inequality_theta_values,
    inequality_values,
    eigenfunction_suite,
    equivalence_suite,
    identity_suite,
    ranges_suite,
    recover_ac_range,
    report_to_jsonable,
    run_suites,
    suites_passed,
)

__version__ = "0.1.0"

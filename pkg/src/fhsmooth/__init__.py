"""Disc-averaged Frechet-Hoeffding copulas.

The sharp bivariate bounds W(u,v) = max(u+v-1, 0) and M(u,v) = min(u,v)
are singular; averaging them over discs of position-dependent radius
r(w, z) in the rotated frame yields absolutely continuous copulas with
closed-form values, partials, and density.  This package builds those
closed forms, certifies when a radius field actually produces a copula,
verifies everything against a brute-force quadrature/finite-difference
oracle, and samples by conditional inversion.
"""

from .checker import CopulaCheckReport, check_copula, rectangle_volume
from .copulas import (
    CopulaSpec,
    SmoothedEvaluation,
    band_average,
    band_average_second_partials,
    copula_density,
    copula_partials,
    copula_values,
    evaluate_smoothed,
    fh_value,
    smoothed_density,
    smoothed_partials,
    smoothed_value,
)
from .geometry import (
    DIAMOND_RADIUS,
    DiamondPoint,
    DomainError,
    DomainLocation,
    SquarePoint,
    classify,
    diamond_to_square,
    square_to_diamond,
)
from .kernel import (
    KernelJet,
    kernel_jet,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)
from .oracle import OracleError, OracleRequest, disc_average, fd_second_partials
from .radius import (
    ConstantRadius,
    GaussianBandRadius,
    ModelSpecError,
    ProductRadius,
    RadiusEvalError,
    RadiusJet,
    SupportBand,
    UnboundedBandError,
    constant_radius,
    gaussian_band_radius,
    model_from_json,
    model_to_json,
    product_radius,
    radius_jet,
    support_band,
)
from .sampler import (
    InvalidModelError,
    SampleBatch,
    conditional_inverse,
    counter_uniforms,
    sample_batch,
    to_gaussian,
)
from .validator import (
    ContainmentResult,
    Orientation,
    QuadraticCertificate,
    ValidationReport,
    certify_pointwise,
    containment_check,
    orientation_for_family,
    sharper_exact_condition,
    validate_model,
)

__version__ = "0.1.0"

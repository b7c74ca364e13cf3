"""Tools for few-distance point sets: ratio integrality certificates,
inversion of ratio tuples back to distance systems, and exhaustive catalogs
of admissible systems."""

from .bounds import (
    TheoremContext,
    antipodal_ratio_bound,
    cardinality_bound,
    dim_poly_space,
    ratio_bound_U,
    theorem_context,
)
from .certificate import (
    CertificateVerdict,
    IndicatorMatrix,
    SpectrumReport,
    eigen_multiplicities,
    indicator_matrix,
    numeric_rank,
    verify_key_lemma,
    verify_sign_matrix_bound,
)
from .embed import (
    EmbeddingVerdict,
    congruent,
    double_center,
    euclidean_embeddable,
    spherical_embeddable,
)
from .errors import FewdistError, InputError, NumericalError
from .inverse import (
    ClosedFormResult,
    InversionResult,
    forward_K,
    forward_K_full,
    invert_K,
    invert_auto,
    invert_s3_closed,
    jacobian,
    jacobian_det_closed,
)
from .pointset import (
    AntipodalStructure,
    DistanceProfile,
    InnerProductProfile,
    PointSet,
    antipodal_structure,
    construct_johnson,
    construct_named,
    distance_profile,
    half_set,
    inner_product_profile,
    is_antipodal,
    load_points,
)
from .ratios import (
    AnalysisReport,
    RatioReport,
    analyze,
    antipodal_even_ratios,
    antipodal_odd_ratios,
    euclidean_ratios,
    rational_inner_products,
    spherical_ratios,
)
from .search import (
    CandidateCatalog,
    catalog_report,
    enumerate_tuples,
    realize_catalog,
)

__version__ = "0.1.0"

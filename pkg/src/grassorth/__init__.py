"""Orthogonal maps between indefinite Grassmannians and their rigidity."""
from .automorphisms import (
    IndefUnitary,
    act_on_chart,
    act_on_point,
    move_null_to_base,
    random_automorphism,
    verify_indefinite_unitary,
)
from .config import RunConfig
from .errors import GrassorthError
from .forms import Signature, VectorClass, classify_vector, inner_product, norm_sq
from .grassmannian import (
    GrassPoint,
    PointClass,
    chart_point,
    classify_point,
    in_domain,
    in_shilov,
    is_orthogonal,
    pairing,
    point_from_matrix,
    sample_orthogonal_partner,
    sample_shilov,
    to_chart,
)
from .maps import (
    MultiPoly,
    PolyMatrixMap,
    VerificationReport,
    check_null_preservation,
    check_orthogonality_preservation,
    evaluate,
    pit_orthogonality,
    polarized_gram,
    standard_embedding,
    whitney_map,
)
from .rigidity import (
    RigidityConfig,
    RigidityReport,
    classify_map,
    common_null_subspace,
    decompose,
    dimension_bound_check,
    hyperplane_span_test,
    null_slice,
    regime,
)
from .scalars import GaussianRational
from .subspaces import (
    Subspace,
    gram,
    inertia,
    intersect,
    is_maximal_null,
    orth_complement,
    span,
    subspace_signature,
    subspace_sum,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "GrassPoint",
    "GrassorthError",
    "IndefUnitary",
    "MultiPoly",
    "PointClass",
    "PolyMatrixMap",
    "RigidityConfig",
    "RigidityReport",
    "RunConfig",
    "Signature",
    "Subspace",
    "VectorClass",
    "VerificationReport",
    "act_on_chart",
    "act_on_point",
    "chart_point",
    "check_null_preservation",
    "check_orthogonality_preservation",
    "classify_map",
    "classify_point",
    "classify_vector",
    "common_null_subspace",
    "decompose",
    "dimension_bound_check",
    "evaluate",
    "gram",
    "hyperplane_span_test",
    "in_domain",
    "in_shilov",
    "inertia",
    "inner_product",
    "intersect",
    "is_maximal_null",
    "is_orthogonal",
    "move_null_to_base",
    "norm_sq",
    "null_slice",
    "orth_complement",
    "pairing",
    "pit_orthogonality",
    "point_from_matrix",
    "polarized_gram",
    "random_automorphism",
    "regime",
    "sample_orthogonal_partner",
    "sample_shilov",
    "span",
    "standard_embedding",
    "subspace_signature",
    "subspace_sum",
    "to_chart",
    "verify_indefinite_unitary",
    "whitney_map",
]

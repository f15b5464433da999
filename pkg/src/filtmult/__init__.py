"""Exact multiplicities, mixed multiplicities and Newton-Okounkov bodies
for filtrations of m-primary monomial ideals."""

from .components import (
    Component,
    ComponentModel,
    component_growth,
    component_limits,
    component_mixed,
    model,
    two_branch_model,
)
from .filtration import (
    Filtration,
    PeriodCertificate,
    PeriodNotCertified,
    SurdScalar,
    adic,
    check_submultiplicative,
    fixed_plus_adic,
    noetherian_period,
    rational_scale,
    rescale,
    root_scale,
    rounded_valuation,
    truncate,
)
from .monomial import MonomialIdeal, ideal, maximal_ideal, unit_ideal
from .multiplicity import (
    DIRECT,
    TRUNCATION_EXACT,
    LimitEstimate,
    MixedMultiplicityReport,
    PositivityReport,
    length_sequence,
    limit_estimate,
    mixed_multiplicities,
    multiplicity_estimate,
    positivity_report,
    truncation_ladder,
)
from .okounkov import (
    MonomialValuation,
    OkounkovBody,
    ValueSemigroup,
    body,
    containment_bound_search,
    degree_bound,
    minkowski_checks,
    origin_collapse_check,
    shared_degree_bound,
    value_semigroup,
    volume_identity_report,
)
from .polytope import (
    Halfspace,
    RationalPolytope,
    clip,
    contains_body,
    contains_point,
    hull,
    minkowski_sum,
    volume,
)

__version__ = "0.1.0"

__all__ = [
    "Component",
    "ComponentModel",
    "DIRECT",
    "Filtration",
    "Halfspace",
    "LimitEstimate",
    "MixedMultiplicityReport",
    "MonomialIdeal",
    "MonomialValuation",
    "OkounkovBody",
    "PeriodCertificate",
    "PeriodNotCertified",
    "PositivityReport",
    "RationalPolytope",
    "SurdScalar",
    "TRUNCATION_EXACT",
    "ValueSemigroup",
    "adic",
    "body",
    "check_submultiplicative",
    "clip",
    "component_growth",
    "component_limits",
    "component_mixed",
    "containment_bound_search",
    "contains_body",
    "contains_point",
    "degree_bound",
    "fixed_plus_adic",
    "hull",
    "ideal",
    "length_sequence",
    "limit_estimate",
    "maximal_ideal",
    "minkowski_checks",
    "minkowski_sum",
    "mixed_multiplicities",
    "model",
    "multiplicity_estimate",
    "noetherian_period",
    "origin_collapse_check",
    "positivity_report",
    "rational_scale",
    "rescale",
    "root_scale",
    "rounded_valuation",
    "shared_degree_bound",
    "truncate",
    "truncation_ladder",
    "two_branch_model",
    "unit_ideal",
    "value_semigroup",
    "volume",
    "volume_identity_report",
]

"""Trace codes of linear codes over extension fields, and the probability
that a random multiplier vector gives maximum trace dimension."""

__version__ = "0.1.0"

from maxtrace.gf import Element, FieldTower, field_tower, trace_to_subfield
from maxtrace.codes import (
    LinearCode,
    WeightDistribution,
    counterexample_code,
    dual,
    generalized_reed_solomon,
    reed_solomon,
    repetition_code,
    scale,
    sum_code,
    weight_distribution,
)
from maxtrace.tracedim import (
    SubfieldCode,
    alternant_code,
    has_max_trace_dimension,
    subfield_subcode,
    trace_code,
)
from maxtrace.bounds import (
    defect_bound,
    lambda_average_form,
    lambda_ng_form,
    lambda_weight_form,
)
from maxtrace.probability import RngSpec, exact_pc, monte_carlo_pc

__all__ = [
    "Element",
    "FieldTower",
    "LinearCode",
    "RngSpec",
    "SubfieldCode",
    "WeightDistribution",
    "alternant_code",
    "counterexample_code",
    "defect_bound",
    "dual",
    "exact_pc",
    "field_tower",
    "generalized_reed_solomon",
    "has_max_trace_dimension",
    "lambda_average_form",
    "lambda_ng_form",
    "lambda_weight_form",
    "monte_carlo_pc",
    "reed_solomon",
    "repetition_code",
    "scale",
    "subfield_subcode",
    "sum_code",
    "trace_code",
    "trace_to_subfield",
    "weight_distribution",
]

"""Exact-arithmetic engine for the classical umbral calculus.

Umbrae with lazily realized moment sequences, the linear evaluation map,
the dot operation, and constructive presentations of binomial-type,
Appell, Sheffer, and multiplicative polynomial sequences, all over exact
rational arithmetic, with brute-force combinatorial oracles alongside.
"""

from .core import (
    Alphabet,
    MomentSeq,
    UmbraError,
    UmbraId,
    UmbralPoly,
    exchangeable_up_to,
    independent,
    momentseq_from_spec,
    umbrally_equivalent,
)
from .dot import (
    dot,
    dot_chain,
    dot_coeff_poly,
    dot_int,
    dot_int_oracle,
    dot_scalar,
    egf_of,
)
from .multiplicative import (
    KSeq,
    general_multiplicative,
    is_homogeneous,
    is_multiplicative,
    k_polynomials,
    m_sequence,
    msequence_product_identity,
)
from .oracle import (
    ForestSpec,
    count_colored_forests,
    count_increasing_colored_forests,
    forward_difference_power,
    stirling1,
    stirling2,
)
from .poly import Poly, Rational, as_poly
from .sequences import (
    BlissardReport,
    PolySeq,
    Provenance,
    abel_sequence,
    abel_umbra_for,
    appell_from,
    apply_delta,
    binomial_from_umbra,
    blissard_example,
    delta_operator_of,
    expansion_coefficients,
    first_binomial_failure,
    normalize,
    rising_factorial_sequence,
    rising_umbra_for,
    rodrigues_step,
    sequence_from_delta,
    sheffer_from,
    shift_by_umbra,
    transfer_formula,
    umbra_for_sequence,
    umbra_with_derivative_targets,
    umbral_compose,
    validate_binomial,
)
from .series import (
    Series,
    apply_operator_series,
    egf_from_moments,
    exp_series,
    expm1_series,
    log1p_series,
    moments_from_egf,
    one_minus_exp_neg_series,
    series_from_spec,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BlissardReport",
    "ForestSpec",
    "KSeq",
    "MomentSeq",
    "Poly",
    "PolySeq",
    "Provenance",
    "Rational",
    "Series",
    "UmbraError",
    "UmbraId",
    "UmbralPoly",
    "abel_sequence",
    "abel_umbra_for",
    "appell_from",
    "apply_delta",
    "apply_operator_series",
    "as_poly",
    "binomial_from_umbra",
    "blissard_example",
    "count_colored_forests",
    "count_increasing_colored_forests",
    "delta_operator_of",
    "dot",
    "dot_chain",
    "dot_coeff_poly",
    "dot_int",
    "dot_int_oracle",
    "dot_scalar",
    "egf_from_moments",
    "egf_of",
    "exchangeable_up_to",
    "expansion_coefficients",
    "exp_series",
    "expm1_series",
    "first_binomial_failure",
    "forward_difference_power",
    "general_multiplicative",
    "independent",
    "is_homogeneous",
    "is_multiplicative",
    "k_polynomials",
    "log1p_series",
    "m_sequence",
    "momentseq_from_spec",
    "moments_from_egf",
    "msequence_product_identity",
    "normalize",
    "one_minus_exp_neg_series",
    "rising_factorial_sequence",
    "rising_umbra_for",
    "rodrigues_step",
    "sequence_from_delta",
    "series_from_spec",
    "sheffer_from",
    "shift_by_umbra",
    "stirling1",
    "stirling2",
    "transfer_formula",
    "umbra_for_sequence",
    "umbra_with_derivative_targets",
    "umbral_compose",
    "umbrally_equivalent",
    "validate_binomial",
]

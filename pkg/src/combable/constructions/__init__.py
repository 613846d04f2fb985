"""Fibre products, Rips presentations, conjugacy instances and the Gamma_n family."""
from .conjugacy import (
    ConjugacyInstance,
    FibreDesk,
    MissingOracle,
    basic_conjugacy_instance,
    exponent_sums_match,
    fibre_desk,
    image_preimage,
    planted_conjugator,
)
from .fibre import (
    PairWord,
    evaluate_expression,
    fibre_member,
    fibre_membership_instance,
    fibre_product_generators,
    fresh_name,
    kill_oracle_for,
    normalize_for_centralizer,
    product_expression_search,
)
from .gamma import (
    GammaSpec,
    RapaportResult,
    SurjectivityNotWitnessed,
    gamma_oracle,
    gamma_presentation,
    gamma_spec,
    include_F,
    iso_witness,
    mutate_image,
    phi_n,
    rapaport_automorphism,
    retraction_to_F,
    sigma_membership,
)
from .rips import (
    DEFAULT_K,
    K_MIN,
    RipsOutput,
    UnsupportedRelator,
    max_piece_brute,
    max_piece_length,
    rips_construction,
    small_cancellation_ratio,
)

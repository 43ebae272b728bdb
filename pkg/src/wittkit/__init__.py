"""Exact hermitian forms and Witt groups for rings with involution.

Everything is exact arithmetic over GF(p), GF(p^2), Q, and finite
quotients built from them; no floats anywhere.  The public surface is
re-exported here; the submodules group the machinery:

    rings         ring tower, involutions, scalar-field coordinates
    modules       finite-length modules and cyclic decomposition
    coefficients  duality coefficients, dual modules, double duals
    forms         epsilon-hermitian forms, isometry, metabolicity
    chaindual     free complexes, duality functors, double-dual axioms
    transfer      pushforward of coefficients and forms along finite maps
    koszul        Koszul complexes of regular sequences, conormal sign
    fieldwitt     diagonalization and classical invariants over fields
    wittgroup     Witt class enumeration and group presentation
    devissage     residue-field comparison and its two-step factorization
    parser        text descriptors for rings, involutions, forms, towers
    cli           deterministic command line front end
"""

from .chaindual import (
    DualityData,
    FreeComplex,
    can_map,
    dual_chain_map,
    duality_functor,
    hom_complex,
    trivial_duality,
    verify_duality_axioms,
)
from .coefficients import (
    DoubleDualComparison,
    DualityCoefficient,
    DualModule,
    check_coefficient_iso,
    dual_map_matrix,
    dual_module,
    standard_coefficient,
)
from .devissage import (
    ComparisonReport,
    DevissageData,
    LocalcaseReport,
    devissage_map,
    socle_dimension,
    verify_devissage,
    verify_localcase_factorization,
)
from .errors import (
    CoefficientMismatch,
    Degenerate,
    EngineError,
    EnumerationBoundExceeded,
    FormMismatch,
    IdealNotInvariant,
    ImproperIdeal,
    NotGorenstein,
    ParseError,
    UnstableBound,
    WittKitError,
)
from .fieldwitt import diagonalize, signature, witt_invariants
from .forms import (
    HermitianForm,
    coefficient_change,
    diagonal_form,
    hyperbolic_form,
    is_metabolic,
    isometric,
    orthogonal_sum,
)
from .koszul import (
    RegularSequenceData,
    beta_tilde,
    conormal_sign,
    involution_transport,
    koszul_complex,
)
from .modules import FLModule, decompose_submodule, free_module, module_from_shape
from .parser import (
    parse_element,
    parse_gram,
    parse_involution,
    parse_ring,
    parse_ring_with_involution,
    parse_sequence,
    parse_tower,
)
from .rings import (
    GF,
    Element,
    PolynomialRing,
    PrimeField,
    ProductRing,
    QuadraticField,
    QuotientRing,
    Rationals,
    RingMap,
    RingWithInvolution,
    compose_maps,
    identity_map,
    involution,
)
from .transfer import (
    GammaComparison,
    TransferCoefficient,
    compose_flats_gamma,
    flat_coefficient,
    restrict_scalars,
    transfer_form,
)
from .wittgroup import WittEngine, WittGroupResult, witt_group

__all__ = [
    "GF",
    "CoefficientMismatch",
    "ComparisonReport",
    "Degenerate",
    "DevissageData",
    "DoubleDualComparison",
    "DualModule",
    "DualityCoefficient",
    "DualityData",
    "Element",
    "EngineError",
    "EnumerationBoundExceeded",
    "FLModule",
    "FormMismatch",
    "FreeComplex",
    "GammaComparison",
    "HermitianForm",
    "IdealNotInvariant",
    "ImproperIdeal",
    "LocalcaseReport",
    "NotGorenstein",
    "ParseError",
    "PolynomialRing",
    "PrimeField",
    "ProductRing",
    "QuadraticField",
    "QuotientRing",
    "Rationals",
    "RegularSequenceData",
    "RingMap",
    "RingWithInvolution",
    "TransferCoefficient",
    "UnstableBound",
    "WittEngine",
    "WittGroupResult",
    "WittKitError",
    "beta_tilde",
    "can_map",
    "check_coefficient_iso",
    "coefficient_change",
    "compose_flats_gamma",
    "compose_maps",
    "conormal_sign",
    "decompose_submodule",
    "devissage_map",
    "diagonal_form",
    "diagonalize",
    "dual_chain_map",
    "dual_map_matrix",
    "dual_module",
    "duality_functor",
    "flat_coefficient",
    "free_module",
    "hom_complex",
    "hyperbolic_form",
    "identity_map",
    "involution",
    "involution_transport",
    "is_metabolic",
    "isometric",
    "koszul_complex",
    "module_from_shape",
    "orthogonal_sum",
    "parse_element",
    "parse_gram",
    "parse_involution",
    "parse_ring",
    "parse_ring_with_involution",
    "parse_sequence",
    "parse_tower",
    "restrict_scalars",
    "signature",
    "socle_dimension",
    "standard_coefficient",
    "transfer_form",
    "trivial_duality",
    "verify_devissage",
    "verify_duality_axioms",
    "verify_localcase_factorization",
    "witt_group",
    "witt_invariants",
]

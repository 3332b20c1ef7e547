"""Exact computations with finite-dimensional Hom-alternative algebras."""

from .algebra import (
    CheckResult,
    HomAlgebra,
    IdentityReport,
    Witness,
    check_identities,
    hom_associator,
    is_hom_ideal,
    is_hom_subalgebra,
    is_morphism,
    mul,
    two_sided_unit,
)
from .bimodule import (
    HomBimodule,
    ModuleAssociatorReport,
    bimodule_irreducibility,
    direct_sum_bimodule,
    is_alternative_bimodule,
    is_hom_bimodule,
    ker_im_subbimodules,
    module_hom_associator,
    regular_bimodule,
    subbimodule_spin,
    twist_bimodule,
    untwist_bimodule,
)
from .constructions import (
    TwistPair,
    direct_sum,
    idempotent_split,
    quotient,
    transport_product,
    untwist,
    yau_twist,
)
from .exactlin import Matrix, Subspace, canonicalize, char_poly, subspace_ops
from .kernels import BACKEND
from .spinning import Status, StructureVerdict
from .structure import (
    DerivedSeries,
    IsoStatus,
    derived_series,
    derived_terms_ideal_check,
    envelope,
    hom_ideal_closure,
    iso_obstruction,
    kernel_ideal,
    semisimplicity,
    simplicity,
    solvability_equivalence_check,
)

__version__ = "0.1.0"

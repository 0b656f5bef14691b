"""Arithmetic form of Selberg zeta functions for congruence subgroups of SL2(Z).

Class numbers and fundamental units of indefinite binary quadratic forms,
the bijection between hyperbolic conjugacy classes and (form class, Pell
solution) pairs, permutation characters of coset actions mod N, and
truncated evaluation of the resulting zeta products.
"""

from .pell import (
    DEFAULT_PRECISION,
    PellSolution,
    UnitValue,
    discriminants_by_unit,
    epsilon,
    fundamental_solution,
    is_discriminant,
    pell_identity,
    pell_mul,
    pell_power,
)
from .quadforms import (
    ClassGroup,
    QuadForm,
    class_group,
    class_number,
    class_representatives,
    compose,
    equivalent,
    identity_form,
    inverse_class,
    reduce_form,
)
from .matrix_corr import (
    ClassInvariant,
    HyperbolicMatrix,
    class_list,
    gamma_of,
    invariants_of,
)
from .congruence import (
    CongruenceSubgroup,
    CosetAction,
    CycleType,
    ModMatrix,
    NuClassSet,
    char_trace,
    conj2_relations,
    coset_action,
    cycle_type,
    decompose_level,
    gamma_nu,
    index_hat,
    make_subgroup,
    nonresidue_shift,
    nu_classes,
    psl_conjugate,
    scalar_sqrt_one,
    square_class_reps,
)
from .zeta import (
    DivergenceError,
    SeriesValue,
    SpectralTable,
    ZetaConfig,
    build_spectral_table,
    classnum_sum,
    gamma0p_closed_form,
    h_poly,
    li,
    log_deriv,
    prim_geodesic_count,
    zeta_congruence,
    zeta_sl2z,
)

__all__ = [
    "DEFAULT_PRECISION",
    "PellSolution",
    "UnitValue",
    "discriminants_by_unit",
    "epsilon",
    "fundamental_solution",
    "is_discriminant",
    "pell_identity",
    "pell_mul",
    "pell_power",
    "ClassGroup",
    "QuadForm",
    "class_group",
    "class_number",
    "class_representatives",
    "compose",
    "equivalent",
    "identity_form",
    "inverse_class",
    "reduce_form",
    "ClassInvariant",
    "HyperbolicMatrix",
    "class_list",
    "gamma_of",
    "invariants_of",
    "CongruenceSubgroup",
    "CosetAction",
    "CycleType",
    "ModMatrix",
    "NuClassSet",
    "char_trace",
    "conj2_relations",
    "coset_action",
    "cycle_type",
    "decompose_level",
    "gamma_nu",
    "index_hat",
    "make_subgroup",
    "nonresidue_shift",
    "nu_classes",
    "psl_conjugate",
    "scalar_sqrt_one",
    "square_class_reps",
    "DivergenceError",
    "SeriesValue",
    "SpectralTable",
    "ZetaConfig",
    "build_spectral_table",
    "classnum_sum",
    "gamma0p_closed_form",
    "h_poly",
    "li",
    "log_deriv",
    "prim_geodesic_count",
    "zeta_congruence",
    "zeta_sl2z",
]

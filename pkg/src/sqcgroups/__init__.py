"""Finite-group toolkit centered on the square-commutativity law (xy)^2 = (yx)^2."""

from sqcgroups.catalog import (
    BadParameter,
    CatalogEntry,
    bs_relation_quotient,
    cyclic,
    dihedral,
    elementary_abelian,
    heisenberg_mod,
    metacyclic,
    product_entry,
    quaternion8,
    small_groups_under_12,
)
from sqcgroups.core import (
    BadLabels,
    CayleyGroup,
    GeneratorsDoNotGenerate,
    Isomorphism,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    OrderLimitExceeded,
    QuotientMap,
    SubgroupSet,
    are_isomorphic,
    build_group,
    center,
    direct_product,
    is_abelian,
    is_normal,
    noncommuting_pair,
    product_set,
    quotient_group,
    squares_set,
    subgroup_generated,
)
from sqcgroups.presentation import (
    CosetLimitExceeded,
    EmptyGeneratorList,
    Presentation,
    PresentationSyntaxError,
    Realization,
    UnknownGenerator,
    Word,
    evaluate_word,
    format_presentation,
    parse_presentation,
    reduce_word,
    todd_coxeter,
    word,
    word_concat,
    word_inverse,
)
from sqcgroups.sqcomm import (
    AnalysisReport,
    CriterionReport,
    NoDecomposition,
    NormalForm2,
    NotGenerating,
    NotSquareCommutative,
    analyze,
    c_set,
    conditional_equivalence_checks,
    coverage_check,
    fourth_power_check,
    g_mod_center_abelian,
    hat_group,
    is_square_commutative,
    n_generator_criterion,
    normal_form_two_gen,
    reorder_defect_check,
    sandwich_check,
    sim_witness,
    square_commutativity_witness,
    squares_central,
    two_generator_criterion,
    z2_subgroup,
)

__version__ = "0.1.0"

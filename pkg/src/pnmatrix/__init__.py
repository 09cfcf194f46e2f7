"""Partial non-deterministic matrices: definition, combination, analysis, decision."""

from .syntax import (
    App,
    Formula,
    MonolithMap,
    ParseError,
    Signature,
    Substitution,
    Var,
    apply_substitution,
    compose,
    formula_key,
    formula_size,
    match_instance,
    parse_formula,
    parse_formula_list,
    print_formula,
    skeleton,
    subformula_closure,
    subformulas,
    unskeleton,
    variables,
    well_formed,
)
from .matrix_core import (
    MatrixError,
    PNMatrix,
    ValueMap,
    ViabilityReport,
    check_strict_hom,
    classify,
    extend,
    inclusion,
    make_matrix,
    pair_name,
    power,
    projection,
    prune,
    reduct,
    rename_connectives,
    restrict,
    strict_product,
    sum_matrices,
    validate,
    viable_components,
)
from .engine import (
    Countermodel,
    Query,
    Verdict,
    check_countermodel,
    decide,
    decide_multiple,
    decide_single,
    possible_values,
)
from .calculus import (
    Calculus,
    Rule,
    SoundnessReport,
    calculus_sound,
    format_calculus,
    parse_calculus,
    parse_rule,
    rule_sound,
)
from .analysis import (
    Divergence,
    RefutationBounds,
    RefutationResult,
    SaturationWitness,
    SeparatorBounds,
    SeparatorTable,
    SplitVerdict,
    check_saturation_witness,
    find_separator,
    formula_pool,
    monadicity_report,
    one_variable_formulas,
    refute_saturation,
    split_advice,
)
from .combine import (
    AxiomDecision,
    AxiomSet,
    CombinedDecision,
    CombinedLogic,
    SaturationRefused,
    axiom_instances,
    combine_multiple,
    combine_single_power,
    combine_single_saturated,
    decide_combined_ctx,
    decide_with_axioms,
)
from .cli_io import (
    EXIT_ERROR,
    EXIT_NO,
    EXIT_UNKNOWN,
    EXIT_YES,
    FormatError,
    builtin,
    builtin_calculus,
    calculus_names,
    fixture_names,
    format_matrix,
    read_matrix,
    run_cli,
)

__all__ = [name for name in dir() if not name.startswith("_")]

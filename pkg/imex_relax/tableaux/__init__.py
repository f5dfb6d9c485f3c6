from .builtin import BUILTINS, builtin, builtin_names
from .conditions import (
    ConditionReport,
    check_additional_order,
    check_order,
    check_three_stage_structure,
    inverse_weights,
    tableau_summary,
)
from .parser import load_tableau, parse_tableau_text, resolve_pair
from .tableau import ImexPair, RKTableau, SchemeClass, classify, is_gsa, is_isa
from .tool import tableau_check, tableau_list

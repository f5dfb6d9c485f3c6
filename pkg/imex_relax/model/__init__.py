from imex_relax.errors import ValidationError

from .expression import compile_expression, make_custom, parse_expression
from .kinetic import RWKineticParams, kinetic_to_macro, macro_to_kinetic, rw_kinetic_params
from .model import (
    HKind,
    RelaxationModel,
    ScalingParams,
    chapman_enskog_flux,
    equilibrium,
    implicit_source_solve,
    make_linear_gt,
    make_ruijgrok_wu,
    solve_relaxation,
)


def make_model(name: str, A_drift: float = 1.0, f_expr: str = None, p_expr: str = "u"):
    """
    Build a model by name: linear_gt, ruijgrok_wu, or custom (needs f_expr).
    """
    key = name.lower().replace("-", "_")
    if key == "linear_gt":
        return make_linear_gt(A_drift)
    if key == "ruijgrok_wu":
        return make_ruijgrok_wu()
    if key == "custom":
        if not f_expr:
            raise ValidationError("a custom model needs an expression for f")
        return make_custom(f_expr, p_expr)
    raise ValidationError(f"unknown model {name!r}, expected linear_gt, ruijgrok_wu or custom")

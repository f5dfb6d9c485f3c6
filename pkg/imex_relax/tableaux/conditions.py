"""
Classical and additional order conditions for IMEX pairs.

Inverse applications of the implicit matrix always go through triangular
solves. For type CK and ARS pairs the implicit matrix is singular; there the
inverse acts on the trailing sub-block only, with the first stage carrying no
implicit unknown (its component is zero), so b^T A^-1 reduces to
b_hat^T A_hat^-1 on stages 2..s.
"""

from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.linalg import solve_triangular

from imex_relax.errors import (
    ConditionPreconditionError,
    StructuralError,
    UnsupportedParameterError,
)

from .tableau import ImexPair, SchemeClass, classify, is_gsa, is_isa

DEFAULT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ConditionReport:
    condition_id: str
    value: float
    target: float
    residual: float
    satisfied: bool
    tolerance: float = DEFAULT_TOLERANCE

    def to_dict(self):
        return {
            "condition": self.condition_id,
            "value": self.value,
            "target": self.target,
            "residual": self.residual,
            "satisfied": self.satisfied,
            "tolerance": self.tolerance,
        }


def _report(condition_id, value, target, tolerance):
    value = float(value)
    residual = abs(value - target)
    return ConditionReport(
        condition_id=condition_id,
        value=value,
        target=float(target),
        residual=residual,
        satisfied=residual <= tolerance,
        tolerance=tolerance,
    )


def check_order(
    pair: ImexPair, p: int, tolerance: float = DEFAULT_TOLERANCE
) -> List[ConditionReport]:
    """
    Evaluate the classical coupled order conditions up to order p (p <= 3).

    The condition set assumes c-tilde = c, which is checked first.
    """
    if p < 0 or p > 3:
        raise UnsupportedParameterError(f"order conditions are available for p <= 3, not {p}")
    if not pair.same_abscissae:
        raise ConditionPreconditionError(
            f"{pair.name}: explicit and implicit abscissae differ, "
            "the coupled conditions are only stated for c-tilde = c"
        )

    At, bt = pair.explicit_part.a, pair.explicit_part.b
    A, b, c = pair.implicit_part.a, pair.implicit_part.b, pair.implicit_part.c
    e = np.ones(pair.s)

    conditions = []
    if p >= 1:
        conditions += [("bt.e=1", bt @ e, 1.0), ("b.e=1", b @ e, 1.0)]
    if p >= 2:
        conditions += [("bt.c=1/2", bt @ c, 0.5), ("b.c=1/2", b @ c, 0.5)]
    if p >= 3:
        sixth = 1.0 / 6.0
        conditions += [
            ("bt.c2=1/3", bt @ (c * c), 1.0 / 3.0),
            ("b.c2=1/3", b @ (c * c), 1.0 / 3.0),
            ("b.At.c=1/6", b @ (At @ c), sixth),
            ("bt.At.c=1/6", bt @ (At @ c), sixth),
            ("b.A.c=1/6", b @ (A @ c), sixth),
            ("bt.A.c=1/6", bt @ (A @ c), sixth),
        ]
    return [_report(cid, value, target, tolerance) for cid, value, target in conditions]


def _reduced_block(pair: ImexPair):
    """
    Return (offset, A_block, b_block): the whole implicit matrix for type A,
    the trailing sub-block for types CK and ARS.
    """
    A, b = pair.implicit_part.a, pair.implicit_part.b
    diagonal = np.diag(A)
    if np.all(diagonal != 0.0):
        return 0, A, b
    if np.any(diagonal[1:] == 0.0):
        raise StructuralError(
            f"{pair.name}: trailing implicit sub-block is singular "
            f"(diagonal {diagonal[1:].tolist()})"
        )
    return 1, A[1:, 1:], b[1:]


def inverse_weights(pair: ImexPair, power: int = 2) -> np.ndarray:
    """
    Row vector w with w . y = b^T A^-power y under the reduced-block convention.

    Stage 1 of a singular (type CK/ARS) implicit matrix gets weight zero.
    """
    offset, block, weights = _reduced_block(pair)
    w = np.array(weights, dtype=float)
    for _ in range(power):
        # w^T <- w^T block^-1  <=>  block^T w_new = w
        w = solve_triangular(block.T, w, lower=False)
    full = np.zeros(pair.s)
    full[offset:] = w
    return full


def check_additional_order(
    pair: ImexPair, p: int, tolerance: float = DEFAULT_TOLERANCE, general: bool = False
) -> List[ConditionReport]:
    """
    Evaluate the additional conditions on the algebraic component up to p <= 2.

    With general=True the c-tilde variants are evaluated too, and the c-tilde = c
    precondition is dropped.
    """
    if p < 0 or p > 2:
        raise UnsupportedParameterError(f"additional conditions are available for p <= 2, not {p}")
    if not general and not pair.same_abscissae:
        raise ConditionPreconditionError(
            f"{pair.name}: explicit and implicit abscissae differ, use general=True"
        )

    At, ct = pair.explicit_part.a, pair.explicit_part.c
    A, c = pair.implicit_part.a, pair.implicit_part.c
    e = np.ones(pair.s)
    w = inverse_weights(pair, power=2)

    def form(vector):
        return w @ (At @ vector)

    conditions = [("b.A^-2.At.e=1", form(e), 1.0)]
    if p >= 1:
        conditions.append(("b.A^-2.At.c=1", form(c), 1.0))
        if general:
            conditions.append(("b.A^-2.At.ct=1", form(ct), 1.0))
    if p >= 2:
        conditions += [
            ("b.A^-2.At.c2=1", form(c * c), 1.0),
            ("b.A^-2.At.A.c=1/2", form(A @ c), 0.5),
            ("b.A^-2.At.At.c=1/2", form(At @ c), 0.5),
        ]
        if general:
            conditions += [
                ("b.A^-2.At.ct2=1", form(ct * ct), 1.0),
                ("b.A^-2.At.ct.c=1", form(ct * c), 1.0),
                ("b.A^-2.At.A.ct=1/2", form(A @ ct), 0.5),
                ("b.A^-2.At.At.ct=1/2", form(At @ ct), 0.5),
            ]
    return [_report(cid, value, target, tolerance) for cid, value, target in conditions]


def check_three_stage_structure(pair: ImexPair) -> dict:
    """
    A second-order GSA pair with three stages can only be of type CK with
    c1 = 0 and c3 = 1 (and matching interior abscissae). Report each part.
    """
    if pair.s != 3:
        raise UnsupportedParameterError(f"{pair.name} has {pair.s} stages, expected 3")
    c, ct = pair.implicit_part.c, pair.explicit_part.c
    scheme_class = classify(pair)
    second_order = all(report.satisfied for report in check_order(pair, 2))
    return {
        "gsa": is_gsa(pair),
        "second_order": second_order,
        "type_ck": scheme_class in (SchemeClass.TypeCK, SchemeClass.TypeARS),
        "c1_zero": c[0] == 0.0,
        "c3_one": abs(c[-1] - 1.0) <= 1e-14,
        "interior_matches": abs(c[1] - ct[1]) <= 1e-14,
    }


def tableau_summary(pair: ImexPair, order: int = None, additional: bool = True) -> dict:
    """
    Everything the CLI and tool server report about a pair, as plain data.
    """
    order = pair.declared_order if order is None else order
    summary = {
        "name": pair.name,
        "label": pair.label,
        "stages": pair.s,
        "declared_order": pair.declared_order,
        "class": classify(pair).value,
        "isa": is_isa(pair),
        "gsa": is_gsa(pair),
        "same_abscissae": pair.same_abscissae,
    }
    general = not pair.same_abscissae
    if not general:
        summary["order_conditions"] = [r.to_dict() for r in check_order(pair, order)]
    if additional:
        reports = check_additional_order(pair, min(order, 2), general=general)
        summary["additional_conditions"] = [r.to_dict() for r in reports]
    return summary

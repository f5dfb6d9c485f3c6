from typing import Annotated, Any, Dict, Optional

from imex_relax.errors import ImexRelaxError
from imex_relax.result import Result

from .builtin import builtin, builtin_names
from .conditions import tableau_summary
from .parser import resolve_pair

TableauName = Annotated[
    str,
    "A builtin IMEX pair identifier (ARS111, ARS222, CK222, BPR442, BPR343) "
    "or a path to a tableau file.",
]
OrderFlag = Annotated[
    Optional[int], "Order up to which classical conditions are checked (default: declared)."
]
AdditionalFlag = Annotated[
    bool, "If True, also evaluate the additional order conditions on the algebraic component."
]
ToolOutput = Annotated[Dict[str, Any], "Result dictionary: returncode, data, stderr, metadata."]


def tableau_check(
    name: TableauName, order: OrderFlag = None, additional: AdditionalFlag = True
) -> ToolOutput:
    """
    Classify an IMEX pair and verify its order conditions and stiff accuracy.

    Args:
        name: builtin identifier or tableau file path.
        order: classical order to check, <= 3.
        additional: evaluate b^T A^-2 A~ conditions as well.

    Returns:
        Result dictionary; returncode 0 when every evaluated condition holds.
    """
    try:
        summary = tableau_summary(resolve_pair(name), order=order, additional=additional)
    except ImexRelaxError as e:
        return Result.from_error(e, metadata={"tableau": name}).to_dict()

    reports = summary.get("order_conditions", []) + summary.get("additional_conditions", [])
    failed = [r["condition"] for r in reports if not r["satisfied"]]
    metadata = {"failed": failed, "gsa": summary["gsa"]}
    return Result(summary, returncode=1 if failed else 0, metadata=metadata).to_dict()


def tableau_list() -> ToolOutput:
    """
    List the builtin IMEX pairs with their (explicit, implicit, order) labels.

    Returns:
        Result dictionary whose data maps identifier to label.
    """
    labels = {name: builtin(name).label for name in builtin_names()}
    return Result(labels).to_dict()

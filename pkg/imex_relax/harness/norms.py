import enum

import numpy as np

from imex_relax.errors import DegenerateNormError, ValidationError
from imex_relax.spatial import Field


class NormKind(str, enum.Enum):
    LinfRelative = "linf_relative"
    L1 = "l1"


def _values(data) -> np.ndarray:
    if isinstance(data, Field):
        return data.interior
    return np.asarray(data, dtype=float)


def error_norms(numeric, reference, kind: NormKind = NormKind.LinfRelative, dx: float = None):
    """
    LinfRelative = max|num - ref| / max|ref|, L1 = dx sum|num - ref|.
    """
    numeric = _values(numeric)
    reference = _values(reference)
    if numeric.shape != reference.shape:
        raise ValidationError(
            f"numeric and reference differ in shape: {numeric.shape} vs {reference.shape}"
        )
    difference = np.abs(numeric - reference)
    kind = NormKind(kind)
    if kind == NormKind.L1:
        if dx is None or not dx > 0:
            raise ValidationError("the L1 norm needs a positive dx")
        return float(dx * np.sum(difference))

    scale = float(np.max(np.abs(reference)))
    if scale == 0.0:
        raise DegenerateNormError("relative error against an all-zero reference")
    return float(np.max(difference)) / scale


def total_variation(values) -> float:
    return float(np.sum(np.abs(np.diff(_values(values)))))


def count_new_extrema(values, lo: float, hi: float, tol: float = 0.0) -> int:
    """
    Cells outside [lo - tol, hi + tol], the range of the initial data.
    """
    values = _values(values)
    return int(np.count_nonzero((values > hi + tol) | (values < lo - tol)))

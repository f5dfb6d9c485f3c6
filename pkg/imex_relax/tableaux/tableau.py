"""Representation and classification of IMEX double Butcher tableaux."""

import enum
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from imex_relax.errors import ClassificationError, StructuralError

# Structural comparisons (row sums, stiff accuracy) use this absolute tolerance.
STRUCTURE_TOL = 1e-14


def _frozen(values, ndim):
    array = np.array(values, dtype=float)
    if array.ndim != ndim:
        raise StructuralError(f"expected a {ndim}-d coefficient array, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class RKTableau:
    """
    One Butcher tableau (a, b, c). Arrays are copied and made read-only.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _frozen(self.a, 2))
        object.__setattr__(self, "b", _frozen(self.b, 1))
        object.__setattr__(self, "c", _frozen(self.c, 1))
        s = self.b.size
        if self.a.shape != (s, s) or self.c.shape != (s,):
            raise StructuralError("Sizes of matrix and vectors doesn't match")
        deviation = np.abs(self.a.sum(axis=1) - self.c)
        if deviation.max(initial=0.0) > STRUCTURE_TOL:
            row = int(np.argmax(deviation))
            raise StructuralError(
                f"abscissa c[{row}] = {self.c[row]!r} differs from the row sum of a "
                f"by {deviation[row]:.3e}"
            )

    @property
    def s(self) -> int:
        return self.b.size

    def is_explicit(self) -> bool:
        """Strictly lower triangular."""
        return not np.any(np.triu(self.a))

    def is_dirk(self) -> bool:
        """Lower triangular (diagonal entries allowed)."""
        return not np.any(np.triu(self.a, k=1))

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.a)


class SchemeClass(str, enum.Enum):
    TypeA = "A"
    TypeCK = "CK"
    TypeARS = "ARS"


@dataclass(frozen=True)
class ImexPair:
    """
    A double tableau: explicit part (tilde quantities) and DIRK implicit part.

    declared_counts is (explicit evaluations, implicit evaluations), so the
    conventional label NAME(nu, sigma, p) is available as `label`.
    """

    name: str
    explicit_part: RKTableau
    implicit_part: RKTableau
    declared_order: int
    declared_counts: Tuple[int, int] = field(default=(0, 0))

    def __post_init__(self):
        if self.explicit_part.s != self.implicit_part.s:
            raise StructuralError(
                f"{self.name}: explicit part has {self.explicit_part.s} stages, "
                f"implicit part has {self.implicit_part.s}"
            )
        if not self.explicit_part.is_explicit():
            raise StructuralError(f"{self.name}: explicit part is not strictly lower triangular")
        if not self.implicit_part.is_dirk():
            raise StructuralError(f"{self.name}: implicit part is not lower triangular (DIRK)")
        if self.declared_order not in (1, 2, 3):
            raise StructuralError(f"{self.name}: declared order must be 1, 2 or 3")

    @property
    def s(self) -> int:
        return self.implicit_part.s

    @property
    def label(self) -> str:
        nu, sigma = self.declared_counts
        return f"{self.name}({nu},{sigma},{self.declared_order})"

    @property
    def same_abscissae(self) -> bool:
        return bool(np.all(np.abs(self.explicit_part.c - self.implicit_part.c) <= STRUCTURE_TOL))

    @property
    def is_gsa(self) -> bool:
        return is_gsa(self)


def classify(pair: ImexPair) -> SchemeClass:
    """
    Classify the implicit part as type A, CK or ARS.

    Invertibility of the trailing sub-block is read off its diagonal, which
    is exact for a DIRK matrix.
    """
    a = pair.implicit_part.a
    b = pair.implicit_part.b
    diagonal = np.diag(a)

    if np.all(diagonal != 0.0):
        return SchemeClass.TypeA

    if a[0, 0] != 0.0 or np.any(diagonal[1:] == 0.0):
        raise ClassificationError(
            f"{pair.name}: implicit diagonal {diagonal.tolist()} fits no scheme class "
            "(only a11 may vanish, and the trailing sub-block must be invertible)"
        )

    first_column = a[1:, 0]
    if np.any(first_column != 0.0):
        return SchemeClass.TypeCK
    if b[0] == 0.0:
        return SchemeClass.TypeARS
    raise ClassificationError(
        f"{pair.name}: first implicit column is zero but b1 = {b[0]!r} != 0, "
        "which is neither type CK nor type ARS"
    )


def is_isa(pair: ImexPair) -> bool:
    """
    Implicitly stiffly accurate: the last implicit row equals b.
    """
    implicit = pair.implicit_part
    return bool(np.all(np.abs(implicit.a[-1, :] - implicit.b) <= STRUCTURE_TOL))


def is_gsa(pair: ImexPair) -> bool:
    """
    Globally stiffly accurate: ISA, and the whole explicit last row equals
    b-tilde, so b-tilde_s = a-tilde_ss = 0 and the update is the last stage.
    """
    if not is_isa(pair):
        return False
    explicit = pair.explicit_part
    deviation = np.abs(explicit.a[-1, :] - explicit.b)
    return bool(np.all(deviation <= STRUCTURE_TOL))

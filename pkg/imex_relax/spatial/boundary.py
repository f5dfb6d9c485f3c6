"""
Boundary conditions and ghost-cell fields.

A Field holds n interior values padded by g ghost cells on each side. Ghosts
are populated by fill_ghosts according to the boundary condition and to
whether the field is the conserved variable u (even under reflection) or the
flux variable v (odd under reflection).
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from imex_relax.errors import StructuralError, ValidationError

from .grid import Grid1D


@dataclass(frozen=True)
class Periodic:
    kind = "periodic"


@dataclass(frozen=True)
class Reflecting:
    kind = "reflecting"


@dataclass(frozen=True)
class InflowOutflow:
    """
    Fixed (u, v) states at the inflow side, order-0 extrapolation at the outflow side.
    """

    left_state: Tuple[float, float]
    right_state: Tuple[float, float]
    inflow_side: str = "left"

    kind = "inflow_outflow"

    def __post_init__(self):
        if self.inflow_side not in ("left", "right", "both"):
            raise ValidationError(
                f"inflow_side must be left, right or both, got {self.inflow_side!r}"
            )
        object.__setattr__(self, "left_state", tuple(float(x) for x in self.left_state))
        object.__setattr__(self, "right_state", tuple(float(x) for x in self.right_state))

    @property
    def left_is_inflow(self) -> bool:
        return self.inflow_side in ("left", "both")

    @property
    def right_is_inflow(self) -> bool:
        return self.inflow_side in ("right", "both")


BoundaryCondition = Union[Periodic, Reflecting, InflowOutflow]


def make_boundary(kind: str, left_state=(0.0, 0.0), right_state=(0.0, 0.0), inflow_side="left"):
    kind = kind.lower().replace("-", "_")
    if kind == "periodic":
        return Periodic()
    if kind == "reflecting":
        return Reflecting()
    if kind == "inflow_outflow":
        return InflowOutflow(tuple(left_state), tuple(right_state), inflow_side)
    raise ValidationError(f"unknown boundary kind {kind!r}")


def halo_width(weno_order: int) -> int:
    return 3 if weno_order == 5 else 2


@dataclass
class Field:
    """
    Interior values with a ghost halo of width g on both sides.
    """

    data: np.ndarray
    g: int

    @classmethod
    def from_interior(cls, values, g: int) -> "Field":
        values = np.asarray(values, dtype=float)
        data = np.zeros(values.size + 2 * g)
        data[g : g + values.size] = values
        return cls(data=data, g=g)

    @property
    def n(self) -> int:
        return self.data.size - 2 * self.g

    @property
    def interior(self) -> np.ndarray:
        return self.data[self.g : self.g + self.n]

    @property
    def left_ghosts(self) -> np.ndarray:
        return self.data[: self.g]

    @property
    def right_ghosts(self) -> np.ndarray:
        return self.data[self.g + self.n :]

    def copy(self) -> "Field":
        return Field(data=self.data.copy(), g=self.g)


def fill_ghosts(field: Field, bc: BoundaryCondition, grid: Grid1D, variable: str = "u") -> Field:
    """
    Populate the halo of a field in place and return it.

    Periodic wraps; Reflecting mirrors u evenly and v oddly about each wall;
    InflowOutflow writes the fixed state on the inflow side and copies the
    last interior value on the outflow side.
    """
    if field.n != grid.n:
        raise StructuralError(f"field has {field.n} cells but the grid has {grid.n}")
    g, n = field.g, field.n
    if g > n:
        raise StructuralError(f"halo width {g} exceeds the {n} interior cells")
    if g == 0:
        return field
    if variable not in ("u", "v"):
        raise ValidationError(f"variable must be 'u' or 'v', got {variable!r}")

    data = field.data
    interior = data[g : g + n]

    if isinstance(bc, Periodic):
        data[:g] = interior[n - g :]
        data[g + n :] = interior[:g]

    elif isinstance(bc, Reflecting):
        sign = 1.0 if variable == "u" else -1.0
        # ghost k cells outside the wall mirrors interior cell k-1 inside
        data[:g] = sign * interior[:g][::-1]
        data[g + n :] = sign * interior[n - g :][::-1]

    elif isinstance(bc, InflowOutflow):
        component = 0 if variable == "u" else 1
        if bc.left_is_inflow:
            data[:g] = bc.left_state[component]
        else:
            data[:g] = interior[0]
        if bc.right_is_inflow:
            data[g + n :] = bc.right_state[component]
        else:
            data[g + n :] = interior[-1]
    else:
        raise ValidationError(f"unsupported boundary condition {bc!r}")
    return field


def ghosted(values, bc: BoundaryCondition, grid: Grid1D, g: int, variable: str = "u") -> Field:
    """
    Shorthand for a filled Field built from interior values.
    """
    return fill_ghosts(Field.from_interior(values, g), bc, grid, variable=variable)

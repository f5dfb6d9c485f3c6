from dataclasses import dataclass

import numpy as np

from imex_relax.errors import ValidationError

MIN_CELLS = 8


@dataclass(frozen=True)
class Grid1D:
    """
    Uniform cell-centered grid on [x_min, x_max] with n cells.
    """

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < MIN_CELLS:
            raise ValidationError(f"a grid needs at least {MIN_CELLS} cells, got {self.n}")
        if not self.x_max > self.x_min:
            raise ValidationError(f"empty domain [{self.x_min}, {self.x_max}]")
        object.__setattr__(self, "n", int(self.n))

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n) + 0.5) * self.dx

    @property
    def interfaces(self) -> np.ndarray:
        return self.x_min + np.arange(self.n + 1) * self.dx

    def refined(self, factor: int = 2) -> "Grid1D":
        return Grid1D(self.x_min, self.x_max, self.n * factor)

    @classmethod
    def from_dx(cls, x_min: float, x_max: float, dx: float) -> "Grid1D":
        n = int(round((x_max - x_min) / dx))
        return cls(x_min, x_max, n)

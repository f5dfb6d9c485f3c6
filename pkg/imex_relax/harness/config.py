"""
Experiment configuration.

A config is a nested mapping (YAML or JSON) validated by the pydantic models
below. Every model forbids unknown keys, so a typo fails before any run.
"""

from typing import List, Literal, Optional, Tuple, Union

import numpy as np
import pydantic
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

import imex_relax.utils as utils
from imex_relax.errors import ValidationError
from imex_relax.integrator import PhiKind, SchemeVariant
from imex_relax.integrator.run import CFL_MAX
from imex_relax.spatial import paired_orders
from imex_relax.spatial.grid import MIN_CELLS
from imex_relax.tableaux import resolve_pair


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class ModelConfig(StrictModel):
    name: Literal["linear_gt", "ruijgrok_wu", "custom"] = "linear_gt"
    A_drift: float = 1.0
    f_expr: Optional[str] = None
    p_expr: str = "u"

    @model_validator(mode="after")
    def check_custom(self):
        if self.name == "custom" and not self.f_expr:
            raise ValueError("a custom model needs f_expr")
        return self


class GridConfig(StrictModel):
    x_min: float
    x_max: float
    n: int = Field(ge=MIN_CELLS)

    @model_validator(mode="after")
    def check_domain(self):
        if not self.x_max > self.x_min:
            raise ValueError(f"empty domain [{self.x_min}, {self.x_max}]")
        return self

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n


class BoundaryConfig(StrictModel):
    """
    Inflow states default to the initial data at each wall with v on equilibrium.
    """

    kind: Literal["periodic", "reflecting", "inflow_outflow"] = "periodic"
    inflow_side: Literal["left", "right", "both"] = "left"
    left_state: Optional[Tuple[float, float]] = None
    right_state: Optional[Tuple[float, float]] = None


class AlphaConfig(StrictModel):
    """
    constant     alpha = value
    smooth_tanh  alpha = alpha0 + (1 + tanh(steepness (x - center))) / 2
    step         alpha = left for x < location, right otherwise
    """

    kind: Literal["constant", "smooth_tanh", "step"] = "constant"
    value: float = Field(default=1.0, ge=0.0, le=1.0)
    alpha0: float = Field(default=1e-6, ge=0.0)
    steepness: float = 20.0
    center: float = -0.1
    left: float = Field(default=0.0, ge=0.0, le=1.0)
    right: float = Field(default=1.0, ge=0.0, le=1.0)
    location: float = 0.0

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == "constant":
            return np.full(x.shape, self.value)
        if self.kind == "smooth_tanh":
            profile = self.alpha0 + 0.5 * (1.0 + np.tanh(self.steepness * (x - self.center)))
            # alpha0 lifts the top of the profile just past 1
            return np.clip(profile, 0.0, 1.0)
        return np.where(x < self.location, self.left, self.right)


class InitialConfig(StrictModel):
    """
    linear_exact        rho = sin(x), j = sin(x) - cos(x)
    riemann             rho = left | right about location, j = 0
    maxwellian_riemann  as riemann with j on the local equilibrium
    square_wave         rho = height for |x - location| < width, else 0; j = 0
    """

    kind: Literal["linear_exact", "riemann", "maxwellian_riemann", "square_wave"] = "linear_exact"
    left: float = 4.0
    right: float = 2.0
    location: float = 0.0
    width: float = Field(default=0.125, gt=0.0)
    height: float = 1.0


class SpaceConfig(StrictModel):
    weno_order: Union[Literal["auto"], Literal[1, 3, 5]] = "auto"
    diffusion_order: Union[Literal["auto"], Literal[2, 4]] = "auto"


class ReferenceConfig(StrictModel):
    kind: Literal["none", "exact", "fine"] = "none"
    fine_dx: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def check_fine(self):
        if self.kind == "fine" and self.fine_dx is None:
            raise ValueError("a fine reference needs fine_dx")
        return self


class OutputsConfig(StrictModel):
    csv: Optional[str] = None
    svg: Optional[str] = None
    times: List[float] = Field(default_factory=list)


class ExperimentConfig(StrictModel):
    name: str = "experiment"
    model: ModelConfig = Field(default_factory=ModelConfig)
    scheme: SchemeVariant = SchemeVariant.ImplicitDiffusion
    tableau: Optional[str] = "BPR343"
    grid: GridConfig
    bc: BoundaryConfig = Field(default_factory=BoundaryConfig)
    epsilon: float = Field(gt=0.0)
    alpha: AlphaConfig = Field(default_factory=AlphaConfig)
    lambda_cfl: float = Field(default=0.5, gt=0.0)
    cfl_max: Optional[float] = Field(default=CFL_MAX, gt=0.0)
    t_final: float = Field(ge=0.0)
    initial: InitialConfig = Field(default_factory=InitialConfig)
    space: SpaceConfig = Field(default_factory=SpaceConfig)
    reference: ReferenceConfig = Field(default_factory=ReferenceConfig)
    phi: PhiKind = PhiKind.MinEps2
    speed_formula: Literal["stiff_accurate", "general"] = "stiff_accurate"
    workers: int = Field(default=1, ge=1)
    outputs: OutputsConfig = Field(default_factory=OutputsConfig)

    @field_validator("tableau")
    @classmethod
    def check_tableau(cls, value):
        if value is not None:
            resolve_pair(value)
        return value

    @model_validator(mode="after")
    def check_scheme(self):
        if self.tableau is None and not self.scheme.is_baseline:
            raise ValueError(f"scheme {self.scheme.value} needs a tableau")
        return self

    @property
    def dx(self) -> float:
        return self.grid.dx

    @property
    def dt(self) -> float:
        return self.lambda_cfl * self.grid.dx

    @property
    def time_order(self) -> int:
        if self.tableau is None:
            return 1
        return resolve_pair(self.tableau).declared_order

    @property
    def orders(self) -> Tuple[int, int]:
        return paired_orders(self.time_order, self.space.weno_order, self.space.diffusion_order)

    def with_updates(self, **updates) -> "ExperimentConfig":
        """
        A validated copy with top-level fields replaced. Nested models may be
        given as dicts of the fields to change.
        """
        data = self.model_dump(mode="json")
        for key, value in updates.items():
            if isinstance(value, dict) and isinstance(data.get(key), dict):
                data[key] = {**data[key], **value}
            elif isinstance(value, BaseModel):
                data[key] = value.model_dump(mode="json")
            else:
                data[key] = value
        return parse_config(data)

    def resolved(self) -> dict:
        """
        The full config with derived values (spatial orders, dx, dt), as written
        into output headers.
        """
        data = self.model_dump(mode="json")
        weno, diffusion = self.orders
        data["space"] = {"weno_order": weno, "diffusion_order": diffusion}
        data["derived"] = {"dx": self.dx, "dt": self.dt, "time_order": self.time_order}
        return data


def parse_config(data: dict) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except pydantic.ValidationError as e:
        raise ValidationError(f"invalid experiment config: {e}") from e


def load_config(source) -> ExperimentConfig:
    """
    Read an experiment config from a dict, a YAML/JSON path or a YAML string.
    """
    if isinstance(source, ExperimentConfig):
        return source
    try:
        data = utils.load_config(source)
    except (OSError, ValueError, yaml.YAMLError) as e:
        raise ValidationError(f"cannot read experiment config: {e}") from e
    if not isinstance(data, dict):
        raise ValidationError("an experiment config must be a mapping")
    return parse_config(data)


def dump_config(config: ExperimentConfig, filename: str):
    utils.write_yaml(config.model_dump(mode="json"), filename)
    return filename

from pathlib import Path
from typing import Any, Literal, Self

from pydantic import BaseModel, ValidationError, model_validator
from viaa.configuration import ConfigParser

from beltrami_cert.utils import ConfigError, resolve_workers


class MapSection(BaseModel):
    theta: Literal["golden"] = "golden"
    n: int = 3


class GeometrySection(BaseModel):
    slope: float = -1.7
    inner_cutoff: float = 3.1e-3
    outer_cutoff: float = 9.8e3
    branch_samples: int = 4000


class GridSection(BaseModel):
    radial_cells: int = 512
    fourier_modes: int = 256
    phi_pieces: int = 64


class CoverSection(BaseModel):
    n_balls: int = 20000


class CompletionSection(BaseModel):
    s_lower_bound: float = 0.5
    koenigs_radius: float = 0.1
    rho_small: float | None = None
    rho_large: float | None = None


class IterationSection(BaseModel):
    iters: int = 30
    eps_growth: float = 1.25
    eps_max_steps: int = 200


class BoundSection(BaseModel):
    n_cover: int = 1024
    extend_factor: float = 2.0
    points: list[tuple[float, float]] = [(1.0, 0.0)]


class OutputSection(BaseModel):
    dir: Path = Path("output")
    formats: list[Literal["json", "csv"]] = ["json", "csv"]


class PipelineConfig(BaseModel):
    """
    Free parameters of the whole certification. Exponents p <= 2 are left to the
    pipeline, which reports them as a failed constant stage.
    """

    map: MapSection = MapSection()
    geometry: GeometrySection = GeometrySection()
    grid: GridSection = GridSection()
    p: float = 2.1
    cover: CoverSection = CoverSection()
    completion: CompletionSection = CompletionSection()
    iteration: IterationSection = IterationSection()
    bound: BoundSection = BoundSection()
    output: OutputSection = OutputSection()
    threads: int | None = None

    @model_validator(mode="after")
    def check_ranges(self) -> Self:
        if not self.p > 1.0:
            raise ConfigError(f"Exponent p must exceed 1, got {self.p}.")
        if not 0.0 < self.geometry.inner_cutoff < self.geometry.outer_cutoff:
            raise ConfigError(
                f"Cutoffs must satisfy 0 < varrho < R, got {self.geometry.inner_cutoff}, {self.geometry.outer_cutoff}."
            )
        modes = self.grid.fourier_modes
        if modes < 2 or modes % 2:
            raise ConfigError(f"Fourier modes M_t must be a positive even number, got {modes}.")
        sizes = {
            "map.n": self.map.n,
            "grid.radial_cells": self.grid.radial_cells,
            "grid.phi_pieces": self.grid.phi_pieces,
            "cover.n_balls": self.cover.n_balls,
            "iteration.iters": self.iteration.iters,
            "iteration.eps_max_steps": self.iteration.eps_max_steps,
            "bound.n_cover": self.bound.n_cover,
        }
        for name, value in sizes.items():
            if value < 1:
                raise ConfigError(f"{name} must be positive, got {value}.")
        if self.iteration.eps_growth <= 1.0:
            raise ConfigError(f"iteration.eps_growth must exceed 1, got {self.iteration.eps_growth}.")
        if self.bound.extend_factor <= 1.0:
            raise ConfigError(f"bound.extend_factor must exceed 1, got {self.bound.extend_factor}.")
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f"threads must be positive, got {self.threads}.")
        return self

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Self:
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration: {e}")

    @classmethod
    def from_json(cls, path: Path) -> Self:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigError(f"Cannot read configuration {path}: {e}")
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration in {path}: {e}")

    @classmethod
    def from_app_config(cls) -> Self:
        """The `certifier` section of the application configuration."""
        app_cfg = ConfigParser().app_cfg
        return cls.from_dict(app_cfg.get("certifier") or {})

    def workers(self, flag: int | None = None) -> int:
        """Environment over flag over the configured thread count."""
        return resolve_workers(flag if flag is not None else self.threads)

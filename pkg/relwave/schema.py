"""
Pydantic schemas for run configuration and verification reports, plus the
enums shared by the numerical modules.
"""
import math
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

TOOL_VERSION = "1.0.0"


class SolutionKind(Enum):
    """Which equation a mode list solves"""
    SF = "SF"
    DIRAC = "DIRAC"
    GENMAXWELL = "GENMAXWELL"


class SuiteName(Enum):
    ALGEBRA = "algebra"
    MODES = "modes"
    SOLUTIONS = "solutions"
    TRANSFORMS = "transforms"
    EVOLVE = "evolve"
    ALL = "all"


class EvolveKind(Enum):
    SF = "SF"
    DIRAC = "DIRAC"
    GENMAXWELL = "GENMAXWELL"


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class RunConfig(BaseModel):
    """
    Flat run configuration. Keys with dots (``tol.algebra``) are accepted as
    aliases so the model can be built straight from a key=value file.
    """
    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    mass: float = Field(1.0, ge=0)
    charge_e: float = 1.0
    seed: int = Field(0, ge=0)
    tol_algebra: float = Field(1e-13, gt=0, alias="tol.algebra")
    tol_solutions: float = Field(1e-11, gt=0, alias="tol.solutions")
    tol_transforms: float = Field(1e-10, gt=0, alias="tol.transforms")
    tol_evolve: float = Field(1e-10, gt=0, alias="tol.evolve")
    modes_count: int = Field(5, ge=1, alias="modes.count")
    samples_count: int = Field(20, ge=1, alias="samples.count")
    trials_count: int = Field(20, ge=1, alias="trials.count")
    grid_dims: int = Field(1, alias="grid.dims")
    grid_n: Optional[int] = Field(None, alias="grid.n")
    grid_box: float = Field(2 * math.pi, gt=0, alias="grid.box")
    time_t: float = Field(1.0, alias="time.t")
    time_steps: int = Field(1, ge=1, alias="time.steps")
    coulomb_Z: float = Field(1.0, ge=0, alias="coulomb.Z")
    omega_tilde: float = Field(1.0, gt=0)
    evolve_kind: EvolveKind = Field(EvolveKind.SF, alias="evolve.kind")
    evolve_diagrams: bool = Field(False, alias="evolve.diagrams")

    @field_validator("grid_dims")
    @classmethod
    def validate_dims(cls, dims):
        if dims not in (1, 3):
            raise ValueError(f"grid.dims must be 1 or 3, got {dims}")
        return dims

    @field_validator("grid_n")
    @classmethod
    def validate_grid_n(cls, n):
        if n is not None and (n < 2 or n & (n - 1)):
            raise ValueError(f"grid.n must be a power of two >= 2, got {n}")
        return n

    @property
    def points_per_axis(self) -> int:
        if self.grid_n is not None:
            return self.grid_n
        return 1024 if self.grid_dims == 1 else 32

    def tolerance_for(self, suite: SuiteName) -> float:
        return {
            SuiteName.ALGEBRA: self.tol_algebra,
            SuiteName.MODES: self.tol_algebra,
            SuiteName.SOLUTIONS: self.tol_solutions,
            SuiteName.TRANSFORMS: self.tol_transforms,
            SuiteName.EVOLVE: self.tol_evolve,
        }[suite]

    def with_overrides(self, **overrides) -> "RunConfig":
        """Copy with non-None overrides applied and validated"""
        data = self.model_dump()
        data.update({key: value for key, value in overrides.items() if value is not None})
        return RunConfig.model_validate(data)


def parse_config_text(text: str) -> Dict[str, str]:
    """Parse a flat key=value file; '#' starts a comment"""
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"Line {number}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValueError(f"Line {number}: empty key")
        values[key] = value
    return values


def load_config(path: Union[str, Path, None] = None, **overrides) -> RunConfig:
    """Read a key=value config file (if any) and apply flag overrides"""
    values = parse_config_text(Path(path).read_text()) if path is not None else {}
    config = RunConfig.model_validate(values)
    return config.with_overrides(**overrides)


class CheckResult(BaseModel):
    """One named identity check"""
    model_config = ConfigDict(use_enum_values=True)

    name: str
    max_residual: float
    tolerance: float
    passed: bool = Field(alias="pass")
    status: CheckStatus = CheckStatus.PASS
    reason: Optional[str] = None

    @model_validator(mode="after")
    def validate_status(self):
        if self.status == CheckStatus.SKIPPED.value and not self.reason:
            raise ValueError(f"Skipped check {self.name} needs a reason")
        return self

    @classmethod
    def measured(cls, name: str, residual: float, tolerance: float) -> "CheckResult":
        # NaN never passes
        passed = bool(residual <= tolerance)
        return cls(
            name=name,
            max_residual=float(residual),
            tolerance=float(tolerance),
            **{"pass": passed},
            status=CheckStatus.PASS if passed else CheckStatus.FAIL,
        )

    @classmethod
    def expected_failure(cls, name: str, residual: float, threshold: float) -> "CheckResult":
        """Negative control: passes when the residual is clearly NOT small"""
        passed = bool(residual > threshold)
        return cls(
            name=name,
            max_residual=float(residual),
            tolerance=float(threshold),
            **{"pass": passed},
            status=CheckStatus.PASS if passed else CheckStatus.FAIL,
            reason="negative control: residual must exceed tolerance",
        )

    @classmethod
    def skipped(cls, name: str, tolerance: float, reason: str) -> "CheckResult":
        return cls(
            name=name,
            max_residual=0.0,
            tolerance=float(tolerance),
            **{"pass": True},
            status=CheckStatus.SKIPPED,
            reason=reason,
        )


class SuiteReport(BaseModel):
    """Outcome of one verification run"""
    suite: str
    seed: int
    tolerance: float
    checks: List[CheckResult] = Field(default_factory=list)
    tool_version: str = TOOL_VERSION

    @computed_field
    @property
    def overall_pass(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> str:
        """Stable JSON document; no timestamps so reruns are byte-identical"""
        return self.model_dump_json(by_alias=True, indent=2)

    def failing(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

from __future__ import annotations

from datetime import datetime
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings

_EPS = float(np.finfo(np.float64).eps)


class ToleranceContext(BaseModel):
    """Cutoffs and comparison tolerances shared by every spectral decision."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rank_rel_tol: float = Field(64 * _EPS, gt=0, lt=1, description="eigenvalues <= tol * lambda_max count as zero")
    psd_clamp_tol: float = Field(1e-8, gt=0, lt=1, description="largest relative negative eigenvalue clamped to 0")
    cmp_tol: float = Field(1e-8, gt=0, lt=1, description="relative tolerance for matrix identities")
    angle_tol: float = Field(1e-6, gt=0, lt=1, description="principal angles below this are exact intersections")
    asym_tol: float = Field(1e-6, gt=0, lt=1, description="relative asymmetry rejected as non-Hermitian")

    def with_overrides(self, **overrides: float | None) -> ToleranceContext:
        changes = {key: value for key, value in overrides.items() if value is not None}
        if not changes:
            return self
        return ToleranceContext(**{**self.model_dump(), **changes})


class RangeSettings(BaseSettings):

    RANK_REL_TOL: float = Field(64 * _EPS, description="relative eigenvalue cutoff for numerical rank")
    PSD_CLAMP_TOL: float = Field(1e-8, description="relative negative eigenvalue magnitude clamped to zero")
    CMP_TOL: float = Field(1e-8, description="relative tolerance for matrix-equality checks")
    ANGLE_TOL: float = Field(1e-6, description="principal-angle threshold for exact intersections")
    ASYM_TOL: float = Field(1e-6, description="relative asymmetry above which input is rejected")

    SEED: int = Field(0, description="64-bit seed for the PCG64 generator")

    # Logging
    LOG_TO_CONSOLE: bool = Field(True, description="Enable console logging")
    LOG_TO_FILE: bool = Field(False, description="Enable file logging")
    LOG_LEVEL: str = Field("INFO", description="Minimum log level (DEBUG, INFO, WARNING, ERROR)")
    LOG_RETENTION: str = Field("10 days", description="How long to keep log files")
    LOG_ROTATION: str = Field("10 MB", description="Log file rotation size")

    BASE_DIR: Path = Path.cwd() / "opranges-out"

    class Config:
        env_file = ".env"
        env_prefix = "OPRANGES_"
        case_sensitive = True
        extra = "ignore"

    @property
    def out_dir(self) -> Path:
        self.BASE_DIR.mkdir(parents=True, exist_ok=True)
        return self.BASE_DIR

    @property
    def log_dir(self) -> Path:
        """Directory for log files."""
        path = self.BASE_DIR / "logs"
        path.mkdir(parents=True, exist_ok=True)
        return path

    @property
    def log_file_path(self) -> Path:
        timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        return self.log_dir / f"opranges_{timestamp}.log"

    def tolerance_context(self) -> ToleranceContext:
        return ToleranceContext(
            rank_rel_tol=self.RANK_REL_TOL,
            psd_clamp_tol=self.PSD_CLAMP_TOL,
            cmp_tol=self.CMP_TOL,
            angle_tol=self.ANGLE_TOL,
            asym_tol=self.ASYM_TOL,
        )


range_settings = RangeSettings()

DEFAULT_CONTEXT = ToleranceContext()

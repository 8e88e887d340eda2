from __future__ import annotations

import os
from dataclasses import asdict, dataclass

from .scalars import DEFAULT_TOL

SEED_ENV = "GRASSORTH_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    seed = int(raw)
    if not 0 <= seed < 2**64:
        raise ValueError(f"{SEED_ENV} must be a 64-bit unsigned integer")
    return seed


@dataclass(frozen=True)
class RunConfig:
    scalar_mode: str = "float"
    tolerance: float = DEFAULT_TOL
    samples: int = 1000
    trials: int = 100
    seed: int = 0
    output_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.scalar_mode not in ("float", "exact"):
            raise ValueError(f"unknown scalar mode {self.scalar_mode!r}")
        if self.format not in ("json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.samples < 1 or self.trials < 1:
            raise ValueError("samples and trials must be at least 1")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def exact(self) -> bool:
        return self.scalar_mode == "exact"

    @property
    def identity_tol(self) -> float:
        """Tolerance for identity decisions; exact mode decides by exact zero."""
        return 0.0 if self.exact else self.tolerance

    def to_json(self) -> dict:
        return asdict(self)

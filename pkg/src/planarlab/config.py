"""Run configuration shared by the CLI and the experiment scripts."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import Optional

from .bounds import BRUTE_FORCE_CAP, DEFAULT_BUDGET
from .padic import MATRIX_Q_CAP

THREADS_ENV = "PLANARLAB_THREADS"
FORMATS = ("json", "csv", "human")


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    return 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    brute_cap: int = BRUTE_FORCE_CAP
    padic_cap: int = MATRIX_Q_CAP
    scan_cap: int = 10**6
    witness_budget: int = DEFAULT_BUDGET
    threads: int = 1
    format: str = "json"
    checkpoint: Optional[str] = None
    seed: int = 0

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.threads < 1:
            raise ValueError("threads must be positive")

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError
from .groups import DEFAULT_MAX_ELEMENTS
from .linalg import is_prime
from .verify import SUITES
from .workspace import CACHE_ENV, DEFAULT_MAX_WORDS, Workspace


@dataclass(frozen=True)
class RunConfig:
    p: int = 3
    depth: int = 2
    suite: str = "all"
    cache_dir: Path | None = None
    out: Path | None = None
    jobs: int = 1
    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_words: int = DEFAULT_MAX_WORDS

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p must be prime, got {self.p}")
        if self.depth < 1:
            raise DomainError(f"depth must be >= 1, got {self.depth}")
        if self.suite != "all" and self.suite not in SUITES:
            raise DomainError(f"unknown suite {self.suite!r}")
        if self.jobs < 1 or self.max_elements < 1 or self.max_words < 1:
            raise DomainError("jobs and budgets must be positive")

    @staticmethod
    def resolve_cache_dir(flag: str | None) -> Path | None:
        env = os.environ.get(CACHE_ENV)
        if env:
            return Path(env)
        return Path(flag) if flag else None

    def workspace(self) -> Workspace:
        return Workspace(self.p, self.cache_dir, self.max_elements, self.max_words)

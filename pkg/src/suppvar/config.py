"""Run configuration shared by the support engine, pipeline, and CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import BIG_PRIMES


@dataclass
class RunConfig:
    primes: tuple[int, ...] = BIG_PRIMES
    seed: int = 0
    minor_budget: int = 20000
    groebner_pair_cap: int = 20000
    samples: int = 200
    threads: int = 1
    chat_cap: int = 14
    stabilize_window: int = 32

    def __post_init__(self):
        if not self.primes or any(p < 2 for p in self.primes):
            raise ValueError("need at least one prime")
        for name in ("minor_budget", "groebner_pair_cap", "samples", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def groebner_caps(self) -> dict:
        return {"max_pairs": self.groebner_pair_cap}

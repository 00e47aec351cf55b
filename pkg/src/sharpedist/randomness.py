"""Deterministic random-stream derivation.

Every Monte Carlo window draws from its own substream, derived as a pure
function of the root seed and the window index. Results are therefore
independent of worker count and of the order in which windows are executed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class RandomStream:
    """Address of a deterministic PCG64 stream.

    `seed` is the user-facing root seed; `key` is the spawn path from the
    root. Two streams with equal (seed, key) produce identical draws.
    """

    seed: int
    key: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise ValidationError(f"seed must be an integer, got {self.seed!r}")
        if self.seed < 0:
            raise ValidationError(f"seed must be non-negative, got {self.seed}")
        if not all(isinstance(k, (int, np.integer)) and k >= 0 for k in self.key):
            raise ValidationError(f"key must hold non-negative integers, got {self.key!r}")

    def substream(self, index: int) -> "RandomStream":
        """Child stream number `index`. Pure: no state is consumed."""
        if index < 0:
            raise ValidationError(f"substream index must be non-negative, got {index}")
        return RandomStream(self.seed, self.key + (int(index),))

    def generator(self) -> np.random.Generator:
        """Fresh Generator positioned at the start of this stream."""
        ss = np.random.SeedSequence(self.seed, spawn_key=self.key)
        return np.random.Generator(np.random.PCG64(ss))

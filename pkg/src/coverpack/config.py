"""Tunable thresholds shared by the reduction pipelines.

The published size guarantees hide existential constants; everything that
depends on one is exposed here and echoed into reports, so runs are
reproducible and the knobs are auditable.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class KernelConfig:
    #: exponent knob for every k^(1+eps)-shaped bound
    epsilon: float = 0.5
    #: floor for the close-set projection threshold t
    close_t_floor: int = 4
    #: rejection fires when the approximate cover exceeds
    #: rejection_constant * k^(1+eps) * (1 + ln(k+1))
    rejection_constant: float = 4.0
    #: max separator size the wide-set extractor may delete
    separator_cap: int = 4
    #: hard cap on the wide-set target size
    wide_target_cap: int = 256
    #: reduction stops once the working set is <= core_size_factor * k^(1+eps)
    core_size_factor: float = 1.0
    #: close-set growth budget: slack + factor * |X|^(1+eps), capped at n
    close_budget_factor: float = 4.0
    close_budget_slack: int = 16
    #: cap on materialized occurrences per enumeration
    occurrence_cap: int = 1_000_000
    #: use the connected-candidate generator (False = plain subset scan)
    connected_enumeration: bool = True
    #: re-check extractor postconditions at runtime
    validate: bool = True
    #: record every accepted removal (vertex + working set) in the stats
    record_removals: bool = False
    seed: int = 0

    def core_target(self, k: int) -> int:
        return max(1, math.ceil(self.core_size_factor * max(k, 1) ** (1.0 + self.epsilon)))

    def rejection_threshold(self, k: int) -> float:
        return self.rejection_constant * k ** (1.0 + self.epsilon) * (1.0 + math.log(k + 1))

    def close_threshold(self, cover_size: int) -> int:
        return max(self.close_t_floor, math.ceil(max(cover_size, 1) ** self.epsilon))

    def close_budget(self, cover_size: int, n: int) -> int:
        grown = self.close_budget_slack + math.ceil(
            self.close_budget_factor * max(cover_size, 1) ** (1.0 + self.epsilon)
        )
        return min(n, grown)

    def to_dict(self) -> dict:
        return asdict(self)

    def with_overrides(self, **kwargs) -> "KernelConfig":
        return replace(self, **kwargs)


def config_from_dict(data: dict | None) -> KernelConfig:
    if not data:
        return KernelConfig()
    known = {f for f in KernelConfig.__dataclass_fields__}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return KernelConfig(**data)

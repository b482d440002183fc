from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SpaceReport:
    """Bit counts per component of one LCP representation."""

    name: str
    n: int
    components: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.components.values())

    @property
    def bits_per_symbol(self) -> float:
        return self.total / self.n if self.n else 0.0

    def to_dict(self) -> dict:
        return {
            "repr": self.name,
            "n": self.n,
            "components": dict(self.components),
            "total_bits": self.total,
            "bits_per_symbol": self.bits_per_symbol,
        }

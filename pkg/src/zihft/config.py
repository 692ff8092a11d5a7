from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

MASK64 = (1 << 64) - 1


class ConfigError(ValueError):
    """Invalid simulation or experiment configuration."""


@dataclass(frozen=True)
class SimConfig:
    steps: int = 10_000
    runs: int = 100
    price_min: int = 1
    price_max: int = 200
    hft_enabled: bool = False
    master_seed: int = 0
    bin_width: float = 5.0
    output_format: str = "json"
    trade_log: Optional[str] = None
    workers: int = 1
    # draw prices from the continuous interval instead of integer ticks
    continuous_prices: bool = False
    # "time": equal-priced resting orders fill oldest first; "reverse": newest first
    tie_break: str = "time"

    def validate(self) -> "SimConfig":
        if self.steps < 0:
            raise ConfigError(f"steps must be >= 0, got {self.steps}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.price_min > self.price_max:
            raise ConfigError(
                f"price_min ({self.price_min}) must not exceed price_max ({self.price_max})"
            )
        if not 0 <= self.master_seed <= MASK64:
            raise ConfigError(f"master_seed must fit in 64 bits, got {self.master_seed}")
        if self.bin_width <= 0:
            raise ConfigError(f"bin_width must be positive, got {self.bin_width}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.tie_break not in ("time", "reverse"):
            raise ConfigError(f"unknown tie_break {self.tie_break!r}")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


def parse_seed(text: str) -> int:
    """Parse a seed given as decimal (``42``) or hex (``0x2a``)."""
    try:
        value = int(text, 0)
    except ValueError:
        raise ConfigError(f"seed must be a decimal or 0x-prefixed hex integer, got {text!r}") from None
    if not 0 <= value <= MASK64:
        raise ConfigError(f"seed must fit in 64 bits, got {text!r}")
    return value

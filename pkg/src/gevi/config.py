"""Pipeline configuration: file-based defaults plus CLI overrides."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from datetime import datetime
from pathlib import Path

from gevi.evolution import EvolutionParams
from gevi.ingest import parse_timestamp


@dataclass
class PipelineConfig:
    """Defaults (30-day window, 15-day step, k=3, th=0.5, sh=10,
    min_lifespan=3) reproduce the reference experiment."""

    messages_path: Path | None = None
    actors_path: Path | None = None
    output_path: Path = field(default_factory=lambda: Path("artifact.json"))
    window_days: int = 30
    step_days: int = 15
    range_start: datetime | None = None  # None: min timestamp in data
    range_end: datetime | None = None  # None: max timestamp in data
    k: int = 3
    th: float = 0.5
    sh: float = 10.0
    min_lifespan: int = 3
    layer_gap: float = 160.0
    node_gap: float = 60.0
    sweeps: int = 4
    host: str = "127.0.0.1"
    port: int = 8765

    def evolution_params(self) -> EvolutionParams:
        return EvolutionParams(th=self.th, sh=self.sh, min_lifespan=self.min_lifespan)

    def validate_for_run(self) -> None:
        if self.messages_path is None:
            raise ValueError("messages_path is required")
        if not Path(self.messages_path).exists():
            raise FileNotFoundError(f"messages file not found: {self.messages_path}")
        if self.actors_path is not None and not Path(self.actors_path).exists():
            raise FileNotFoundError(f"actors file not found: {self.actors_path}")
        if self.window_days <= 0 or self.step_days <= 0:
            raise ValueError("window_days and step_days must be positive")
        if self.step_days > self.window_days:
            raise ValueError("step_days must not exceed window_days")
        if self.k < 3:
            raise ValueError("k must be >= 3")
        self.evolution_params()

    def echo(self) -> dict:
        """JSON-safe view for the artifact's config echo."""
        return {
            "messages_path": str(self.messages_path) if self.messages_path else None,
            "actors_path": str(self.actors_path) if self.actors_path else None,
            "window_days": self.window_days,
            "step_days": self.step_days,
            "range_start": self.range_start.isoformat() if self.range_start else None,
            "range_end": self.range_end.isoformat() if self.range_end else None,
            "k": self.k,
            "th": self.th,
            "sh": self.sh,
            "min_lifespan": self.min_lifespan,
            "layer_gap": self.layer_gap,
            "node_gap": self.node_gap,
            "sweeps": self.sweeps,
        }


_PATH_KEYS = {"messages_path", "actors_path", "output_path"}
_TIME_KEYS = {"range_start", "range_end"}


def load_config(path: str | Path) -> PipelineConfig:
    """JSON config file; keys mirror PipelineConfig field names."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError(f"config {path} must hold a JSON object")
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    coerced = {}
    for key, value in raw.items():
        if value is None:
            continue
        if key in _PATH_KEYS:
            coerced[key] = Path(value)
        elif key in _TIME_KEYS:
            coerced[key] = parse_timestamp(value)
        else:
            coerced[key] = value
    return PipelineConfig(**coerced)


def apply_overrides(config: PipelineConfig, **overrides) -> PipelineConfig:
    """New config with every non-None override applied."""
    changes = {}
    for key, value in overrides.items():
        if value is None:
            continue
        if key in _PATH_KEYS:
            value = Path(value)
        elif key in _TIME_KEYS and isinstance(value, str):
            value = parse_timestamp(value)
        changes[key] = value
    return replace(config, **changes) if changes else config

"""CLI configuration: a flat key=value file format plus the merged settings object.

The file format is deliberately primitive so any tooling can emit it: one
``key = value`` pair per line, blank lines and ``#`` comment lines ignored.
Command-line flags override file values, which override the defaults here.
"""

from dataclasses import dataclass, fields
from typing import Optional

from .filters import FilterParams
from .fusion import FusionConfig
from .metrics import NaturalnessPriors
from .image import Rect
from .zoom import ZoomSpec


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


def parse_rect(raw: str) -> tuple[int, int, int, int]:
    """Parse "x,y,width,height" into a tuple of four integers."""
    parts = raw.split(",")
    if len(parts) != 4:
        raise ValueError(f"rect needs four comma-separated integers x,y,w,h, got {raw!r}")
    try:
        x, y, w, h = (int(p.strip()) for p in parts)
    except ValueError:
        raise ValueError(f"rect components must be integers, got {raw!r}") from None
    return x, y, w, h


_PARSERS = {
    "avg_filter_size": int,
    "saliency_radius": int,
    "saliency_sigma": float,
    "base_radius": int,
    "base_alpha": float,
    "base_beta": float,
    "detail_radius": int,
    "detail_alpha": float,
    "detail_beta": float,
    "weight_floor": float,
    "refine_filter": str,
    "rect": parse_rect,
    "scale": float,
    "output_dir": str,
    "dump_intermediates": _parse_bool,
    "nat_mean_prior": float,
    "nat_mean_tol": float,
    "nat_std_prior": float,
    "nat_std_tol": float,
}


@dataclass
class CliConfig:
    """Every tunable the CLI accepts, with library defaults filled in."""

    avg_filter_size: int = 31
    saliency_radius: int = 5
    saliency_sigma: float = 5.0
    base_radius: int = 15
    base_alpha: float = 0.3
    base_beta: float = 1.0
    detail_radius: int = 3
    detail_alpha: float = 1e-4
    detail_beta: float = 1.0
    weight_floor: float = 1e-12
    refine_filter: str = "lep"
    rect: Optional[tuple[int, int, int, int]] = None
    scale: float = 1.0
    output_dir: Optional[str] = None
    dump_intermediates: bool = False
    nat_mean_prior: float = 115.0
    nat_mean_tol: float = 40.0
    nat_std_prior: float = 28.0
    nat_std_tol: float = 15.0

    def fusion_config(self) -> FusionConfig:
        """Materialize (and thereby validate) the fusion pipeline settings."""
        return FusionConfig(
            avg_filter_size=self.avg_filter_size,
            saliency_radius=self.saliency_radius,
            saliency_sigma=self.saliency_sigma,
            base_params=FilterParams(self.base_radius, self.base_alpha, self.base_beta),
            detail_params=FilterParams(self.detail_radius, self.detail_alpha, self.detail_beta),
            weight_floor=self.weight_floor,
            refine_filter=self.refine_filter,
        )

    def naturalness_priors(self) -> NaturalnessPriors:
        return NaturalnessPriors(
            mean_prior=self.nat_mean_prior,
            mean_tol=self.nat_mean_tol,
            std_prior=self.nat_std_prior,
            std_tol=self.nat_std_tol,
        )

    def zoom_spec(self) -> ZoomSpec:
        if self.rect is None:
            raise ValueError("no crop rectangle configured; pass --rect x,y,w,h")
        x, y, w, h = self.rect
        return ZoomSpec(region=Rect(x0=x, y0=y, width=w, height=h), scale=self.scale)

    def items(self) -> list[tuple[str, object]]:
        """(key, value) pairs in declaration order, for --verbose output."""
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


def parse_config_text(text: str) -> dict:
    """Parse key=value lines into typed values; unknown keys are errors."""
    values = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno} is not a key=value pair: {raw_line!r}")
        key, _, raw_value = line.partition("=")
        key = key.strip()
        parser = _PARSERS.get(key)
        if parser is None:
            raise ValueError(f"unknown config key {key!r} on line {lineno}")
        try:
            values[key] = parser(raw_value.strip())
        except ValueError as err:
            raise ValueError(f"config line {lineno}: {err}") from None
    return values


def apply_values(config: CliConfig, values: dict) -> CliConfig:
    """Overwrite config fields from a parsed key→value mapping."""
    for key, value in values.items():
        if key not in _PARSERS:
            raise ValueError(f"unknown config key {key!r}")
        setattr(config, key, value)
    return config

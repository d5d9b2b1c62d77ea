"""Image quality metrics: PSNR, SSIM, sharpness, naturalness.

PSNR and SSIM are full-reference; sharpness and naturalness need no
reference.  Naturalness here is an explicitly labeled proxy scoring the
global mean and contrast against mid-tone priors; the priors are exposed
so calibrated statistics can be substituted.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .image import Image, rgb_to_luma

SSIM_WINDOW_RADIUS = 5
SSIM_SIGMA = 1.5


@dataclass(frozen=True)
class NaturalnessPriors:
    """Target global mean/std and their tolerances for the naturalness score.

    Defaults favor mid-tone, moderate-contrast 8-bit imagery: both factors
    peak at 1 when the image statistics hit the priors and decay smoothly
    as they drift.
    """

    mean_prior: float = 115.0
    mean_tol: float = 40.0
    std_prior: float = 28.0
    std_tol: float = 15.0

    def __post_init__(self):
        if not (np.isfinite(self.mean_tol) and self.mean_tol > 0.0):
            raise ValueError(f"mean_tol must be positive, got {self.mean_tol}")
        if not (np.isfinite(self.std_tol) and self.std_tol > 0.0):
            raise ValueError(f"std_tol must be positive, got {self.std_tol}")


@dataclass(frozen=True)
class MetricsReport:
    """Metric bundle for one image, optionally scored against a reference.

    ``psnr`` and ``ssim`` are None when no reference was supplied; a psnr
    of math.inf marks identical images and serializes as "inf".
    """

    sharpness: float
    naturalness: float
    psnr: Optional[float] = None
    ssim: Optional[float] = None

    @staticmethod
    def _fmt(value: float) -> str:
        return "inf" if math.isinf(value) else f"{value:.6f}"

    def to_lines(self) -> list[str]:
        """key=value lines in fixed order, reference metrics first."""
        lines = []
        if self.psnr is not None:
            lines.append(f"psnr={self._fmt(self.psnr)}")
        if self.ssim is not None:
            lines.append(f"ssim={self._fmt(self.ssim)}")
        lines.append(f"sharpness={self._fmt(self.sharpness)}")
        lines.append(f"naturalness={self._fmt(self.naturalness)}")
        return lines

    @staticmethod
    def csv_header() -> str:
        return "sharpness,naturalness,psnr,ssim"

    def csv_row(self) -> str:
        cells = [self._fmt(self.sharpness), self._fmt(self.naturalness)]
        cells.append("" if self.psnr is None else self._fmt(self.psnr))
        cells.append("" if self.ssim is None else self._fmt(self.ssim))
        return ",".join(cells)


def _check_same_shape(a: Image, b: Image, op: str) -> None:
    if a.data.shape != b.data.shape:
        raise ValueError(
            f"{op} requires identical dimensions, got {a.data.shape} vs {b.data.shape}"
        )


def psnr(a: Image, b: Image, max_val: float = None) -> float:
    """Peak signal-to-noise ratio in dB; math.inf for identical images."""
    _check_same_shape(a, b, "psnr")
    if max_val is None:
        max_val = a.max_val
    if not (np.isfinite(max_val) and max_val > 0.0):
        raise ValueError(f"max_val must be positive, got {max_val}")
    diff = a.data - b.data
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(max_val * max_val / mse)


def _gaussian_kernel_1d(radius: int, sigma: float) -> np.ndarray:
    t = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(t * t) / (2.0 * sigma * sigma))
    return k / k.sum()


def _valid_correlate_sep(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # Separable valid-mode correlation; output shrinks by 2*radius per axis.
    radius = len(kernel) // 2
    h, w = plane.shape
    rows = np.zeros((h - 2 * radius, w))
    for t, weight in enumerate(kernel):
        rows += weight * plane[t:t + h - 2 * radius, :]
    out = np.zeros((h - 2 * radius, w - 2 * radius))
    for t, weight in enumerate(kernel):
        out += weight * rows[:, t:t + w - 2 * radius]
    return out


def ssim(a: Image, b: Image, max_val: float = None) -> float:
    """Mean structural similarity over 11x11 Gaussian-weighted windows.

    Windows are fully interior (valid mode, no padding), weighted by a
    sigma-1.5 Gaussian; stabilizing constants are (0.01*max_val)^2 and
    (0.03*max_val)^2.  Identical inputs score exactly 1.
    """
    _check_same_shape(a, b, "ssim")
    if a.channels != 1:
        raise ValueError(f"ssim requires single-channel images, got {a.channels} channels")
    size = 2 * SSIM_WINDOW_RADIUS + 1
    if a.height < size or a.width < size:
        raise ValueError(
            f"ssim requires images at least {size}x{size}, got {a.height}x{a.width}"
        )
    if max_val is None:
        max_val = a.max_val
    if not (np.isfinite(max_val) and max_val > 0.0):
        raise ValueError(f"max_val must be positive, got {max_val}")
    c1 = (0.01 * max_val) ** 2
    c2 = (0.03 * max_val) ** 2
    kernel = _gaussian_kernel_1d(SSIM_WINDOW_RADIUS, SSIM_SIGMA)
    pa = a.plane()
    pb = b.plane()
    mu_a = _valid_correlate_sep(pa, kernel)
    mu_b = _valid_correlate_sep(pb, kernel)
    var_a = _valid_correlate_sep(pa * pa, kernel) - mu_a * mu_a
    var_b = _valid_correlate_sep(pb * pb, kernel) - mu_b * mu_b
    cov_ab = _valid_correlate_sep(pa * pb, kernel) - mu_a * mu_b
    score = ((2.0 * mu_a * mu_b + c1) * (2.0 * cov_ab + c2)) / (
        (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    )
    return float(np.mean(score))


def sharpness(img: Image) -> float:
    """Mean central-difference gradient magnitude over interior pixels.

    Images without interior pixels (either dimension < 3) score 0.
    """
    if img.channels != 1:
        raise ValueError(f"sharpness requires a single-channel image, got {img.channels} channels")
    plane = img.plane()
    if plane.shape[0] < 3 or plane.shape[1] < 3:
        return 0.0
    dx = (plane[1:-1, 2:] - plane[1:-1, :-2]) * 0.5
    dy = (plane[2:, 1:-1] - plane[:-2, 1:-1]) * 0.5
    return float(np.mean(np.sqrt(dx * dx + dy * dy)))


def naturalness(img: Image, priors: NaturalnessPriors = NaturalnessPriors()) -> float:
    """Product of Gaussian scores of the global mean and std against priors.

    Always in [0, 1]; depends on the image only through (mean, std).
    """
    if img.channels != 1:
        raise ValueError(f"naturalness requires a single-channel image, got {img.channels} channels")
    mu = float(np.mean(img.data))
    sd = float(np.std(img.data))
    p_mean = math.exp(-((mu - priors.mean_prior) ** 2) / (2.0 * priors.mean_tol ** 2))
    p_std = math.exp(-((sd - priors.std_prior) ** 2) / (2.0 * priors.std_tol ** 2))
    return p_mean * p_std


def _luma(img: Image) -> Image:
    return rgb_to_luma(img) if img.channels == 3 else img


def report(
    fused: Image,
    reference: Optional[Image] = None,
    priors: NaturalnessPriors = NaturalnessPriors(),
) -> MetricsReport:
    """All applicable metrics for an image.

    PSNR runs on all samples; SSIM, sharpness, and naturalness run on
    luminance for color inputs.  Without a reference only the no-reference
    metrics are populated.
    """
    fused_luma = _luma(fused)
    result_sharpness = sharpness(fused_luma)
    result_naturalness = naturalness(fused_luma, priors)
    if reference is None:
        return MetricsReport(sharpness=result_sharpness, naturalness=result_naturalness)
    _check_same_shape(fused, reference, "report")
    return MetricsReport(
        sharpness=result_sharpness,
        naturalness=result_naturalness,
        psnr=psnr(fused, reference, fused.max_val),
        ssim=ssim(fused_luma, _luma(reference), fused.max_val),
    )

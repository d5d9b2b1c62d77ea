"""Windowed filter kernels.

All window sums run through an integral-image box filter, so every filter
here costs O(n) in the pixel count regardless of the window radius.  Border
handling is replicate padding throughout.
"""

from dataclasses import dataclass

import numpy as np

from .image import Image


@dataclass(frozen=True)
class FilterParams:
    """Window radius and regularizer knobs for the edge-preserving filters.

    ``alpha`` scales the gradient-adaptive regularizer; ``beta`` in [0, 2]
    shapes it (the local gradient magnitude is raised to the power
    ``2 - beta``).  Small values of either keep more gradients as salient
    edges; large values smooth more aggressively.
    """

    radius: int
    alpha: float = 0.1
    beta: float = 1.0

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError(f"radius must be >= 1, got {self.radius}")
        if not (np.isfinite(self.alpha) and self.alpha >= 0.0):
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if not (0.0 <= self.beta <= 2.0):
            raise ValueError(f"beta must lie in [0, 2], got {self.beta}")


@dataclass(frozen=True)
class CoeffMaps:
    """Per-pixel coefficients of the local linear filter model.

    ``slope`` and ``intercept`` hold the per-window fit centered at each
    pixel; ``slope_mean`` and ``intercept_mean`` are their window averages,
    which blend the overlapping window estimates into the final output
    ``slope_mean * input + intercept_mean``.
    """

    slope: Image
    intercept: Image
    slope_mean: Image
    intercept_mean: Image


def _box_sum(arr: np.ndarray, radius: int) -> np.ndarray:
    """Sum over (2r+1)^2 replicate-padded windows via an integral image."""
    k = 2 * radius + 1
    spatial = [(radius, radius), (radius, radius)] + [(0, 0)] * (arr.ndim - 2)
    padded = np.pad(arr, spatial, mode="edge")
    s = padded.cumsum(axis=0).cumsum(axis=1)
    lead = [(1, 0), (1, 0)] + [(0, 0)] * (arr.ndim - 2)
    s = np.pad(s, lead)
    h, w = arr.shape[:2]
    return s[k:k + h, k:k + w] - s[:h, k:k + w] - s[k:k + h, :w] + s[:h, :w]


def _box_mean(arr: np.ndarray, radius: int) -> np.ndarray:
    # Anchoring on the corner sample keeps constant regions exact: a flat
    # input yields all-zero window sums instead of cancellation residue.
    anchor = arr[0:1, 0:1]
    k = 2 * radius + 1
    return _box_sum(arr - anchor, radius) / (k * k) + anchor


def _single_plane(img: Image, op: str) -> np.ndarray:
    if img.channels != 1:
        raise ValueError(f"{op} requires a single-channel image, got {img.channels} channels")
    return img.plane()


def box_mean(img: Image, radius: int) -> Image:
    """Arithmetic mean over (2r+1)^2 replicate-padded windows, per channel.

    Runtime is independent of the radius (running sums, not a window loop).
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    return Image(_box_mean(img.data, radius), img.max_val)


def _gaussian_kernel_1d(radius: int, sigma: float) -> np.ndarray:
    t = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(t * t) / (2.0 * sigma * sigma))
    return k / k.sum()


def _correlate_axis(arr: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    radius = len(kernel) // 2
    pad = [(0, 0)] * arr.ndim
    pad[axis] = (radius, radius)
    padded = np.pad(arr, pad, mode="edge")
    out = np.zeros_like(arr)
    index = [slice(None)] * arr.ndim
    for t, weight in enumerate(kernel):
        index[axis] = slice(t, t + arr.shape[axis])
        out += weight * padded[tuple(index)]
    return out


def gaussian_filter(img: Image, radius: int = 5, sigma: float = 5.0) -> Image:
    """Convolution with a normalized sampled Gaussian of size (2r+1)^2.

    The sampled 2-D kernel factors exactly into two 1-D passes, so the
    separable implementation below equals the full 2-D convolution.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    if not (np.isfinite(sigma) and sigma > 0.0):
        raise ValueError(f"sigma must be positive, got {sigma}")
    kernel = _gaussian_kernel_1d(radius, sigma)
    out = _correlate_axis(_correlate_axis(img.data, kernel, 0), kernel, 1)
    return Image(out, img.max_val)


def laplacian_filter(img: Image) -> Image:
    """4-neighbor Laplacian (3x3 kernel [[0,1,0],[1,-4,1],[0,1,0]])."""
    plane = _single_plane(img, "laplacian_filter")
    p = np.pad(plane, 1, mode="edge")
    out = p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:] - 4.0 * plane
    return Image(out, img.max_val)


def _gradient_magnitude(plane: np.ndarray) -> np.ndarray:
    p = np.pad(plane, 1, mode="edge")
    dx = (p[1:-1, 2:] - p[1:-1, :-2]) * 0.5
    dy = (p[2:, 1:-1] - p[:-2, 1:-1]) * 0.5
    return np.sqrt(dx * dx + dy * dy)


def gradient_magnitude(img: Image) -> Image:
    """Per-pixel sqrt(dx^2 + dy^2) with central differences, replicated borders."""
    return Image(_gradient_magnitude(_single_plane(img, "gradient_magnitude")), img.max_val)


def _edge_regularizer(guide_plane: np.ndarray, params: FilterParams) -> np.ndarray:
    # alpha * window mean of |grad|^(2 - beta).  Clamped so rounding residue
    # in the box filter can never push the slope denominator below the
    # variance term.
    grad = _gradient_magnitude(guide_plane)
    powgrad = grad ** (2.0 - params.beta)
    return np.maximum(params.alpha * _box_mean(powgrad, params.radius), 0.0)


def lep_filter(img: Image, params: FilterParams) -> tuple[Image, CoeffMaps]:
    """Local edge-preserving smoothing of a single-channel image.

    Every (2r+1)^2 window gets a linear model ``out = a * in + b`` with

        a = var / (var + alpha * mean(|grad|^(2 - beta)))
        b = (1 - a) * window mean

    so flat windows are replaced by their mean (a near 0) while windows
    whose variance dominates the local gradient regularizer pass through
    (a near 1).  The overlapping window estimates at each pixel are blended
    by box-averaging the coefficient maps.  A window with zero variance and
    zero regularizer is defined to have a = 0 (output is the window mean),
    closing the 0/0 case continuously.

    Returns the filtered image and the coefficient maps; every slope value
    lies in [0, 1].
    """
    plane = _single_plane(img, "lep_filter")
    r = params.radius
    mean_i = _box_mean(plane, r)
    var_i = np.maximum(_box_mean(plane * plane, r) - mean_i * mean_i, 0.0)
    denom = var_i + _edge_regularizer(plane, params)
    slope = np.divide(var_i, denom, out=np.zeros_like(var_i), where=denom > 0.0)
    intercept = mean_i - slope * mean_i
    slope_mean = _box_mean(slope, r)
    intercept_mean = _box_mean(intercept, r)
    out = slope_mean * plane + intercept_mean
    coeffs = CoeffMaps(
        slope=Image(slope, 1.0),
        intercept=Image(intercept, img.max_val),
        slope_mean=Image(slope_mean, 1.0),
        intercept_mean=Image(intercept_mean, img.max_val),
    )
    return Image(out, img.max_val), coeffs


def lep_filter_guided(p: Image, guide: Image, params: FilterParams) -> Image:
    """Edge-preserving filtering of ``p`` steered by a guidance image.

    The per-window linear model is fit from the guide to ``p``
    (a = cov(guide, p) / (var(guide) + regularizer)), with the gradient
    regularizer taken from the guide so edge preservation follows the
    guide's structure.  With ``guide is p`` this reduces to lep_filter.
    """
    pp = _single_plane(p, "lep_filter_guided")
    gg = _single_plane(guide, "lep_filter_guided")
    if pp.shape != gg.shape:
        raise ValueError(
            f"input and guide dimensions differ: {pp.shape} vs {gg.shape}"
        )
    r = params.radius
    mean_g = _box_mean(gg, r)
    mean_p = _box_mean(pp, r)
    var_g = np.maximum(_box_mean(gg * gg, r) - mean_g * mean_g, 0.0)
    cov_gp = _box_mean(gg * pp, r) - mean_g * mean_p
    denom = var_g + _edge_regularizer(gg, params)
    slope = np.divide(cov_gp, denom, out=np.zeros_like(cov_gp), where=denom > 0.0)
    intercept = mean_p - slope * mean_g
    out = _box_mean(slope, r) * gg + _box_mean(intercept, r)
    return Image(out, p.max_val)


def guided_filter(p: Image, guide: Image, radius: int, epsilon: float) -> Image:
    """Classic guided filter: a = cov(guide, p) / (var(guide) + epsilon).

    Kept alongside lep_filter_guided as the constant-regularizer baseline;
    it smooths edges that the gradient-adaptive variant preserves.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    if not (np.isfinite(epsilon) and epsilon > 0.0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    pp = _single_plane(p, "guided_filter")
    gg = _single_plane(guide, "guided_filter")
    if pp.shape != gg.shape:
        raise ValueError(
            f"input and guide dimensions differ: {pp.shape} vs {gg.shape}"
        )
    mean_g = _box_mean(gg, radius)
    mean_p = _box_mean(pp, radius)
    var_g = np.maximum(_box_mean(gg * gg, radius) - mean_g * mean_g, 0.0)
    cov_gp = _box_mean(gg * pp, radius) - mean_g * mean_p
    slope = cov_gp / (var_g + epsilon)
    intercept = mean_p - slope * mean_g
    out = _box_mean(slope, radius) * gg + _box_mean(intercept, radius)
    return Image(out, p.max_val)

"""Deterministic synthetic images for experiments and ground-truth tests.

Everything here is closed-form in the pixel coordinates, so regenerated
images are bit-identical across runs and platforms with IEEE doubles.
"""

import numpy as np

from .filters import gaussian_filter
from .image import Image


def detail_chart(height: int = 512, width: int = 512, max_val: float = 255.0) -> Image:
    """Texture-rich test chart: gratings, a radial chirp, and a checkerboard.

    Designed to have strong gradients everywhere, so defocus blur produces
    a large, easily measurable saliency drop.
    """
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    grating_a = 45.0 * np.sin(2.0 * np.pi * x / 9.0 + 0.8 * np.sin(2.0 * np.pi * y / 37.0))
    grating_b = 35.0 * np.cos(2.0 * np.pi * y / 13.0)
    cy, cx = (height - 1) / 2.0, (width - 1) / 2.0
    r2 = (x - cx) ** 2 + (y - cy) ** 2
    chirp = 30.0 * np.sin(0.004 * r2)
    checker = 20.0 * np.sign(np.sin(2.0 * np.pi * x / 16.0) * np.sin(2.0 * np.pi * y / 16.0))
    chart = max_val / 2.0 + grating_a + grating_b + chirp + checker
    return Image(np.clip(chart, 0.0, max_val), max_val)


def defocus(img: Image, sigma: float = 3.0) -> Image:
    """Simulated out-of-focus version: wide Gaussian blur."""
    radius = max(1, int(np.ceil(4.0 * sigma)))
    return gaussian_filter(img, radius, sigma)


def multifocus_pair(
    height: int = 512, width: int = 512, blur_sigma: float = 3.0
) -> tuple[Image, Image, Image]:
    """(sharp chart, left-sharp source, right-sharp source).

    The first source is in focus on the left half and defocused on the
    right; the second is the complement.  Together they cover the chart,
    which serves as the all-in-focus ground truth.
    """
    sharp = detail_chart(height, width)
    blurred = defocus(sharp, blur_sigma)
    split = width // 2
    left_sharp = np.concatenate(
        [sharp.data[:, :split], blurred.data[:, split:]], axis=1
    )
    right_sharp = np.concatenate(
        [blurred.data[:, :split], sharp.data[:, split:]], axis=1
    )
    return (
        sharp,
        Image(left_sharp, sharp.max_val),
        Image(right_sharp, sharp.max_val),
    )


def smooth_field(height: int = 64, width: int = 64, max_val: float = 255.0) -> Image:
    """Slowly varying field (about one cycle per axis); gradients stay small.

    Suitable for resampling experiments where interpolation error should be
    dominated by the signal's curvature, not by aliasing.
    """
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    field = (
        120.0
        + 50.0 * np.sin(2.0 * np.pi * x / width) * np.sin(2.0 * np.pi * y / height)
        + 30.0 * np.cos(2.0 * np.pi * y / height)
    )
    return Image(np.clip(field, 0.0, max_val), max_val)

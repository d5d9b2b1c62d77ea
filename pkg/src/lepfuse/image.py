"""Image value type and basic geometry: padding, cropping, luminance.

Every public operation is pure: inputs are never mutated and pixel data of
returned images is read-only.  Samples are stored as float64 regardless of
the file bit depth; quantization to integers happens only when a file is
written.
"""

from dataclasses import dataclass

import numpy as np

BT601_WEIGHTS = (0.299, 0.587, 0.114)


@dataclass(frozen=True, eq=False)
class Image:
    """An H x W x C raster of real-valued samples with a declared range.

    ``data`` is an (H, W, C) float64 array with C in {1, 3}; 2-D input is
    accepted and lifted to a single channel.  ``max_val`` declares the nominal
    [0, max_val] range used for quantization and PSNR; intermediate results
    (detail layers, filter overshoot) may fall outside it.
    """

    data: np.ndarray
    max_val: float = 255.0

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64, copy=True, order="C")
        if arr.ndim == 2:
            arr = arr[:, :, np.newaxis]
        if arr.ndim != 3:
            raise ValueError(f"image data must be 2-D or 3-D, got ndim={arr.ndim}")
        h, w, c = arr.shape
        if h < 1 or w < 1:
            raise ValueError(f"image dimensions must be positive, got {h}x{w}")
        if c not in (1, 3):
            raise ValueError(f"channel count must be 1 or 3, got {c}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image samples must be finite")
        if not (np.isfinite(self.max_val) and self.max_val > 0):
            raise ValueError(f"max_val must be positive and finite, got {self.max_val}")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "max_val", float(self.max_val))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    def plane(self, channel: int = 0) -> np.ndarray:
        """Read-only 2-D view of one channel."""
        return self.data[:, :, channel]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned crop region: origin (x0, y0), positive width and height."""

    x0: int
    y0: int
    width: int
    height: int

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0:
            raise ValueError(f"rect origin must be non-negative, got ({self.x0}, {self.y0})")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"rect dimensions must be positive, got {self.width}x{self.height}")


def constant_image(height: int, width: int, channels: int, value: float,
                   max_val: float = 255.0) -> Image:
    """Image of the given shape with every sample equal to ``value``."""
    if height < 1 or width < 1:
        raise ValueError(f"dimensions must be positive, got {height}x{width}")
    if channels not in (1, 3):
        raise ValueError(f"channel count must be 1 or 3, got {channels}")
    if not np.isfinite(value):
        raise ValueError("value must be finite")
    return Image(np.full((height, width, channels), float(value)), max_val)


def crop(img: Image, region: Rect) -> Image:
    """Extract ``region`` from ``img``, bit-exact.

    Raises IndexError if the region does not lie inside the image.
    """
    if region.x0 + region.width > img.width or region.y0 + region.height > img.height:
        raise IndexError(
            f"rect {region} out of bounds for {img.width}x{img.height} image"
        )
    return Image(
        img.data[region.y0:region.y0 + region.height, region.x0:region.x0 + region.width],
        img.max_val,
    )


def rgb_to_luma(img: Image) -> Image:
    """BT.601 luminance of a 3-channel image.

    Output is clamped to the observed sample range of the input so the
    weighted sum cannot escape it by rounding (the weights sum to one).
    """
    if img.channels != 3:
        raise ValueError(f"rgb_to_luma requires 3 channels, got {img.channels}")
    wr, wg, wb = BT601_WEIGHTS
    luma = wr * img.data[:, :, 0] + wg * img.data[:, :, 1] + wb * img.data[:, :, 2]
    luma = np.clip(luma, img.data.min(), img.data.max())
    return Image(luma, img.max_val)


def pad_replicate(img: Image, margin: int) -> Image:
    """Extend the image by ``margin`` pixels on every side, repeating edge pixels."""
    if margin < 0:
        raise ValueError(f"margin must be non-negative, got {margin}")
    if margin == 0:
        return Image(img.data, img.max_val)
    padded = np.pad(img.data, ((margin, margin), (margin, margin), (0, 0)), mode="edge")
    return Image(padded, img.max_val)

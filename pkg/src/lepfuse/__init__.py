"""Edge-preserving filtering, two-scale image fusion, zooming, and metrics."""

from .filters import (
    CoeffMaps,
    FilterParams,
    box_mean,
    gaussian_filter,
    gradient_magnitude,
    guided_filter,
    laplacian_filter,
    lep_filter,
    lep_filter_guided,
)
from .fusion import (
    FusionConfig,
    FusionResult,
    LayerPair,
    WeightStack,
    binary_weight_maps,
    decompose,
    fuse,
    normalize_weights,
    refine_weights,
    saliency,
)
from .image import Image, Rect, constant_image, crop, pad_replicate, rgb_to_luma
from .metrics import (
    MetricsReport,
    NaturalnessPriors,
    naturalness,
    psnr,
    report,
    sharpness,
    ssim,
)
from .netpbm import (
    NetpbmError,
    NetpbmParseError,
    NetpbmUnsupportedError,
    quantize,
    read_image,
    write_image,
)
from .zoom import ZoomSpec, bilinear_kernel, resize_bilinear, sample_bilinear, zoom_region

__all__ = [
    "CoeffMaps",
    "FilterParams",
    "FusionConfig",
    "FusionResult",
    "Image",
    "LayerPair",
    "MetricsReport",
    "NaturalnessPriors",
    "NetpbmError",
    "NetpbmParseError",
    "NetpbmUnsupportedError",
    "Rect",
    "WeightStack",
    "ZoomSpec",
    "bilinear_kernel",
    "binary_weight_maps",
    "box_mean",
    "constant_image",
    "crop",
    "decompose",
    "fuse",
    "gaussian_filter",
    "gradient_magnitude",
    "guided_filter",
    "laplacian_filter",
    "lep_filter",
    "lep_filter_guided",
    "naturalness",
    "normalize_weights",
    "pad_replicate",
    "psnr",
    "quantize",
    "read_image",
    "refine_weights",
    "report",
    "resize_bilinear",
    "rgb_to_luma",
    "saliency",
    "sample_bilinear",
    "sharpness",
    "ssim",
    "write_image",
    "zoom_region",
]

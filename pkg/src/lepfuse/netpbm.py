"""Netpbm image I/O: PGM (P2/P5) and PPM (P3/P6), 8-bit.

These formats round-trip bit-exactly without third-party decoders, which
is what the tests and the CLI rely on.  Parse failures report the byte
offset where decoding stopped.
"""

from pathlib import Path

import numpy as np

from .image import Image

_GRAY_MAGICS = (b"P2", b"P5")
_COLOR_MAGICS = (b"P3", b"P6")
_PLAIN_MAGICS = (b"P2", b"P3")

FORMATS = ("pgm-binary", "ppm-binary")


class NetpbmError(Exception):
    """Base class for netpbm decoding problems."""


class NetpbmParseError(NetpbmError):
    """Malformed or truncated file; ``offset`` is the failing byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class NetpbmUnsupportedError(NetpbmError):
    """Recognizable netpbm data outside the supported P2/P3/P5/P6 8-bit subset."""


class _Tokenizer:
    """Whitespace/comment-aware header scanner over raw file bytes."""

    def __init__(self, blob: bytes):
        self.blob = blob
        self.pos = 0

    def _skip_filler(self) -> None:
        while self.pos < len(self.blob):
            c = self.blob[self.pos:self.pos + 1]
            if c.isspace():
                self.pos += 1
            elif c == b"#":
                while self.pos < len(self.blob) and self.blob[self.pos:self.pos + 1] not in (b"\n", b"\r"):
                    self.pos += 1
            else:
                return

    def next_token(self, what: str) -> tuple[bytes, int]:
        self._skip_filler()
        if self.pos >= len(self.blob):
            raise NetpbmParseError(f"unexpected end of file, expected {what}", self.pos)
        start = self.pos
        while self.pos < len(self.blob):
            c = self.blob[self.pos:self.pos + 1]
            if c.isspace() or c == b"#":
                break
            self.pos += 1
        return self.blob[start:self.pos], start

    def next_int(self, what: str, low: int, high: int) -> int:
        token, start = self.next_token(what)
        try:
            value = int(token)
        except ValueError:
            raise NetpbmParseError(f"expected integer {what}, got {token!r}", start) from None
        if not (low <= value <= high):
            raise NetpbmParseError(f"{what} {value} outside [{low}, {high}]", start)
        return value


def read_image(path) -> Image:
    """Decode a PGM or PPM file into a float image.

    Raises OSError for unreadable paths, NetpbmUnsupportedError for magic
    numbers or maxval outside the 8-bit P2/P3/P5/P6 subset, and
    NetpbmParseError (with byte offset) for malformed content.
    """
    blob = Path(path).read_bytes()
    tok = _Tokenizer(blob)
    magic, magic_at = tok.next_token("magic number")
    if magic not in _GRAY_MAGICS + _COLOR_MAGICS:
        raise NetpbmUnsupportedError(
            f"unsupported magic {magic!r} at byte offset {magic_at}; "
            "supported: P2, P3, P5, P6"
        )
    width = tok.next_int("width", 1, 10 ** 9)
    height = tok.next_int("height", 1, 10 ** 9)
    tok._skip_filler()
    maxval_at = tok.pos
    maxval = tok.next_int("maxval", 1, 65535)
    if maxval > 255:
        raise NetpbmUnsupportedError(
            f"maxval {maxval} at byte offset {maxval_at} exceeds the supported 8-bit range"
        )
    channels = 3 if magic in _COLOR_MAGICS else 1
    count = width * height * channels

    if magic in _PLAIN_MAGICS:
        samples = np.empty(count, dtype=np.float64)
        for i in range(count):
            tok._skip_filler()
            if tok.pos >= len(blob):
                raise NetpbmParseError(
                    f"pixel data ended early: expected {count} samples, got {i}", tok.pos
                )
            samples[i] = tok.next_int("sample", 0, maxval)
    else:
        # Binary formats: exactly one whitespace byte separates the header
        # from the raster.
        if tok.pos >= len(blob) or not blob[tok.pos:tok.pos + 1].isspace():
            raise NetpbmParseError("expected single whitespace before binary pixel data", tok.pos)
        start = tok.pos + 1
        raster = blob[start:start + count]
        if len(raster) < count:
            raise NetpbmParseError(
                f"pixel data truncated: expected {count} bytes, got {len(raster)}", len(blob)
            )
        samples = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
        over = np.nonzero(samples > maxval)[0]
        if over.size:
            raise NetpbmParseError(
                f"sample value {int(samples[over[0]])} exceeds maxval {maxval}",
                start + int(over[0]),
            )

    shape = (height, width) if channels == 1 else (height, width, 3)
    return Image(samples.reshape(shape), float(maxval))


def quantize(img: Image) -> np.ndarray:
    """Clamp to [0, max_val] and round half-up to uint8."""
    maxval = int(round(img.max_val))
    clipped = np.clip(img.data, 0.0, float(maxval))
    return np.floor(clipped + 0.5).astype(np.uint8)


def write_image(img: Image, path, format: str = None) -> None:
    """Encode as binary PGM or PPM; quantizes via clamp + round half-up.

    ``format`` is "pgm-binary" or "ppm-binary"; omitted, it follows the
    path suffix (.pgm or .ppm).  The channel count must match the format.
    """
    path = Path(path)
    if format is None:
        by_suffix = {".pgm": "pgm-binary", ".ppm": "ppm-binary"}
        format = by_suffix.get(path.suffix.lower())
        if format is None:
            raise ValueError(
                f"cannot infer format from suffix {path.suffix!r}; pass format explicitly"
            )
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    expected_channels = 1 if format == "pgm-binary" else 3
    if img.channels != expected_channels:
        raise ValueError(
            f"{format} requires {expected_channels} channel(s), image has {img.channels}"
        )
    maxval = int(round(img.max_val))
    if not (1 <= maxval <= 255) or img.max_val != maxval:
        raise ValueError(
            f"netpbm encoding requires an integer max_val in [1, 255], got {img.max_val}"
        )
    magic = b"P5" if format == "pgm-binary" else b"P6"
    header = b"%s\n%d %d\n%d\n" % (magic, img.width, img.height, maxval)
    path.write_bytes(header + quantize(img).tobytes())

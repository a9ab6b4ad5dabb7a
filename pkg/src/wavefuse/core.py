"""Image container, raster I/O and periodic boundary handling."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

import numpy as np


class ImageFormatError(ValueError):
    """Raised for unsupported or corrupt raster files."""


class ColorImageError(ImageFormatError):
    """Raised when a colour raster is given where grayscale is required."""


class ExtensionMode(enum.Enum):
    PERIODIC = "periodic"


@dataclass(frozen=True)
class Image:
    """Grayscale raster with double-precision samples.

    ``samples`` has shape ``(height, width)``. ``origin_size`` is the
    ``(width, height)`` of the raster before any padding and defaults to
    the current size.
    """

    samples: np.ndarray
    origin_size: tuple[int, int] | None = field(default=None)

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image samples must be a non-empty 2-D array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        if self.origin_size is None:
            object.__setattr__(self, "origin_size", (arr.shape[1], arr.shape[0]))
        else:
            object.__setattr__(self, "origin_size", tuple(int(v) for v in self.origin_size))

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.samples.shape

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self.origin_size == other.origin_size and np.array_equal(self.samples, other.samples)

    __hash__ = None


def round_half_away(x):
    """Round to nearest integer, ties away from zero."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def quantize_for_output(samples) -> np.ndarray:
    """Clamp to [0, 255] and round half away from zero; returns uint8."""
    return np.clip(round_half_away(samples), 0, 255).astype(np.uint8)


def extend(signal, left: int, right: int, mode: ExtensionMode = ExtensionMode.PERIODIC) -> np.ndarray:
    """Extend a 1-D signal by ``left``/``right`` samples.

    Periodic mode gives ``out[i] = signal[(i - left) % len(signal)]``.

    >>> extend([1, 2, 3], 2, 1).tolist()
    [2.0, 3.0, 1.0, 2.0, 3.0, 1.0]
    """
    if mode is not ExtensionMode.PERIODIC:
        raise ValueError(f"unsupported extension mode {mode!r}")
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("signal must be a non-empty 1-D sequence")
    if left < 0 or right < 0:
        raise ValueError("extension counts must be non-negative")
    idx = np.arange(-left, x.size + right)
    return x[idx % x.size]


def pad_to_multiple(samples: np.ndarray, multiple: int) -> np.ndarray:
    """Periodically pad a 2-D array so both dimensions divide ``multiple``."""
    h, w = samples.shape
    ph = -h % multiple
    pw = -w % multiple
    if ph == 0 and pw == 0:
        return samples
    return np.pad(samples, ((0, ph), (0, pw)), mode="wrap")


def crop(samples: np.ndarray, origin_size) -> np.ndarray:
    width, height = origin_size
    return samples[:height, :width]


# -- raster I/O -------------------------------------------------------------

_PNM_WS = b" \t\r\n\x0b\x0c"


def _pgm_tokens(data: bytes, count: int):
    """Read ``count`` header tokens, skipping comments. Returns (tokens, offset)."""
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _PNM_WS:
            pos += 1
        if pos >= n:
            raise ImageFormatError("unsupported/corrupt format: truncated PGM header")
        if data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _PNM_WS and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _decode_pgm(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic in (b"P3", b"P6"):
        raise ColorImageError("colour PPM image; convert to grayscale first")
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError("unsupported/corrupt format: not a PGM file")
    (_, w_tok, h_tok, max_tok), pos = _pgm_tokens(data, 4)
    try:
        width, height, maxval = int(w_tok), int(h_tok), int(max_tok)
    except ValueError:
        raise ImageFormatError("unsupported/corrupt format: bad PGM header") from None
    if width < 1 or height < 1:
        raise ImageFormatError("unsupported/corrupt format: empty raster")
    if maxval != 255:
        raise ImageFormatError(f"unsupported/corrupt format: maxval {maxval} (only 8-bit supported)")
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1 : pos + 1 + count]
        if pos >= len(data) or len(raster) != count:
            raise ImageFormatError("unsupported/corrupt format: truncated raster")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        try:
            values = [int(t) for t in data[pos:].split()]
        except ValueError:
            raise ImageFormatError("unsupported/corrupt format: bad ASCII raster") from None
        if len(values) < count:
            raise ImageFormatError("unsupported/corrupt format: truncated raster")
        pixels = np.asarray(values[:count])
        if pixels.min() < 0 or pixels.max() > maxval:
            raise ImageFormatError("unsupported/corrupt format: sample out of range")
    return pixels.reshape(height, width).astype(np.float64)


def _decode_png(path) -> np.ndarray:
    from PIL import Image as PILImage

    with PILImage.open(path) as im:
        if im.mode in ("L", "1"):
            return np.asarray(im.convert("L"), dtype=np.float64)
        if im.mode in ("RGB", "RGBA", "P", "LA", "CMYK", "YCbCr", "PA"):
            raise ColorImageError(f"colour PNG (mode {im.mode}); convert to grayscale first")
        raise ImageFormatError(f"unsupported/corrupt format: PNG mode {im.mode}")


def load_image(path) -> Image:
    """Read an 8-bit grayscale PGM (P2/P5) or PNG file."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        try:
            samples = _decode_png(path)
        except (OSError, SyntaxError) as exc:
            raise ImageFormatError(f"unsupported/corrupt format: {exc}") from exc
    else:
        samples = _decode_pgm(data)
    return Image(samples)


def encode_pgm(img: Image, binary: bool = True) -> bytes:
    """Serialize to PGM bytes (P5 by default, P2 when ``binary`` is false)."""
    q = quantize_for_output(img.samples)
    h, w = q.shape
    if binary:
        return b"P5\n%d %d\n255\n" % (w, h) + q.tobytes()
    lines = [" ".join(str(v) for v in row) for row in q.tolist()]
    return (f"P2\n{w} {h}\n255\n" + "\n".join(lines) + "\n").encode("ascii")


def save_image(img: Image, path) -> None:
    """Write ``img`` as binary PGM, or PNG when ``path`` ends in ``.png``.

    Samples are rounded half away from zero and clamped to [0, 255].
    """
    ext = os.path.splitext(str(path))[1].lower()
    if ext == ".png":
        from PIL import Image as PILImage

        PILImage.fromarray(quantize_for_output(img.samples)).save(path, format="PNG")
        return
    with open(path, "wb") as fh:
        fh.write(encode_pgm(img))

"""File formats for quaternion signals.

QSF1 (little-endian binary)::

    b"QSF1" | u32 m | u32 n | f64 dx1 | f64 dx2 | f64 x1_0 | f64 x2_0
    | w plane | x plane | y plane | z plane      (each m*n f64, row-major)

QSFCSV is the same content as text: a header line
``QSFCSV,m,n,dx1,dx2,x1_0,x2_0`` followed by one ``w,x,y,z`` line per
cell in row-major order.

Colour images map R, G, B in [0, 255] to the x, y, z parts in [0, 1]
with a zero scalar part.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import FormatError
from .signal import Grid2D, QSignal2D

MAGIC = b"QSF1"
_HEADER = struct.Struct("<4sII4d")
HEADER_SIZE = _HEADER.size  # 44


def encode_qsf(f: QSignal2D) -> bytes:
    g = f.grid
    head = _HEADER.pack(MAGIC, g.m, g.n, g.dx1, g.dx2, g.x1_0, g.x2_0)
    planes = np.ascontiguousarray(np.moveaxis(f.data, -1, 0), dtype="<f8")
    return head + planes.tobytes()


def decode_qsf(buf: bytes) -> QSignal2D:
    if bytes(buf[:4]) != MAGIC:
        raise FormatError("QSF magic mismatch")
    if len(buf) < HEADER_SIZE:
        raise FormatError("QSF file truncated: header incomplete")
    _, m, n, dx1, dx2, x10, x20 = _HEADER.unpack_from(buf)
    if m < 1 or n < 1:
        raise FormatError(f"QSF dimensions must be positive, got {m}x{n}")
    want = HEADER_SIZE + 4 * 8 * m * n
    if len(buf) != want:
        raise FormatError(f"QSF size mismatch: expected {want} bytes, got {len(buf)}")
    planes = np.frombuffer(buf, dtype="<f8", offset=HEADER_SIZE).reshape(4, m, n)
    try:
        grid = Grid2D(m, n, dx1, dx2, x10, x20)
        return QSignal2D(grid, np.moveaxis(planes, 0, -1).astype(float))
    except ValueError as exc:
        raise FormatError(f"invalid QSF content: {exc}") from exc


def write_qsf(f: QSignal2D, path) -> None:
    Path(path).write_bytes(encode_qsf(f))


def read_qsf(path) -> QSignal2D:
    return decode_qsf(Path(path).read_bytes())


def write_csv(f: QSignal2D, path) -> None:
    g = f.grid
    lines = [f"QSFCSV,{g.m},{g.n},{g.dx1!r},{g.dx2!r},{g.x1_0!r},{g.x2_0!r}"]
    for q in f.data.reshape(-1, 4):
        lines.append(",".join(repr(float(v)) for v in q))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> QSignal2D:
    rows = Path(path).read_text().strip().splitlines()
    if not rows:
        raise FormatError("empty CSV file")
    head = rows[0].split(",")
    if len(head) != 7 or head[0] != "QSFCSV":
        raise FormatError("QSFCSV header missing")
    try:
        m, n = int(head[1]), int(head[2])
        dx1, dx2, x10, x20 = (float(v) for v in head[3:])
        data = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
    except ValueError as exc:
        raise FormatError(f"malformed QSFCSV: {exc}") from exc
    if data.shape != (m * n, 4):
        raise FormatError(f"QSFCSV body has shape {data.shape}, expected {(m * n, 4)}")
    try:
        return QSignal2D(Grid2D(m, n, dx1, dx2, x10, x20), data.reshape(m, n, 4))
    except ValueError as exc:
        raise FormatError(f"invalid QSFCSV content: {exc}") from exc


def read_signal(path) -> QSignal2D:
    """Read by extension: ``.csv`` as QSFCSV, anything else as QSF1."""
    if str(path).lower().endswith(".csv"):
        return read_csv(path)
    return read_qsf(path)


def write_signal(f: QSignal2D, path) -> None:
    if str(path).lower().endswith(".csv"):
        write_csv(f, path)
    else:
        write_qsf(f, path)


# --------------------------------------------------------------------------
# colour images


def rgb_to_signal(rgb: np.ndarray, dx: float = 1.0) -> QSignal2D:
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise FormatError(f"expected an RGB array of shape (h, w, 3), got {rgb.shape}")
    data = np.zeros(rgb.shape[:2] + (4,))
    data[..., 1:] = rgb.astype(float) / 255.0
    return QSignal2D(Grid2D(rgb.shape[0], rgb.shape[1], dx, dx), data)


def signal_to_rgb(f: QSignal2D) -> np.ndarray:
    """Vector part to 8-bit RGB, clamped to [0, 1]; the scalar part is dropped."""
    v = np.clip(f.data[..., 1:], 0.0, 1.0)
    return np.rint(v * 255.0).astype(np.uint8)


def import_png(path, dx: float = 1.0) -> QSignal2D:
    from PIL import Image

    try:
        img = Image.open(path)
        img.load()
    except OSError as exc:
        raise FormatError(f"cannot read image {path}: {exc}") from exc
    if img.mode != "RGB":
        raise FormatError(f"expected an 8-bit RGB PNG, got mode {img.mode!r}")
    return rgb_to_signal(np.asarray(img), dx)


def export_png(f: QSignal2D, path) -> None:
    from PIL import Image

    Image.fromarray(signal_to_rgb(f)).save(path, format="PNG")


def spectrum_magnitude_rgb(F: QSignal2D) -> np.ndarray:
    """Log-scaled ``|F|`` as a grey RGB image, brightest bin white."""
    mag = np.log1p(np.sqrt(np.sum(F.data ** 2, axis=-1)))
    top = mag.max()
    if top > 0:
        mag = mag / top
    grey = np.rint(mag * 255.0).astype(np.uint8)
    return np.repeat(grey[..., None], 3, axis=-1)

"""JSON 文書の入出力とコマンドライン"""

from blocks.cli_io.documents import (
    RingDocument,
    SurfaceDocument,
    parse_ring,
    parse_surface,
    render_json,
    serialize_ring,
    serialize_surface,
)

__all__ = [
    "RingDocument",
    "SurfaceDocument",
    "parse_ring",
    "parse_surface",
    "render_json",
    "serialize_ring",
    "serialize_surface",
]

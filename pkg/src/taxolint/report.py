"""Deterministic serialization of analysis products.

Every emitter is byte-stable: JSON uses sorted keys and floats rounded to 9
significant digits, CSV and SVG format floats the same way, and nothing
embeds timestamps or machine-specific paths.  That keeps golden-file tests
and repeated pipeline runs byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass

from . import __version__
from .errors import InsufficientInputError
from .similarity import SimilarityMatrix


def _canonical(value):
    """Round floats to 9 significant digits, recursively, for byte stability."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return float(f"{value:.9g}")
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    return value


def config_fingerprint(*configs) -> str:
    """Stable hash over the canonical JSON of every config that shaped a run."""
    payload = [
        cfg.to_dict() if hasattr(cfg, "to_dict") else cfg for cfg in configs
    ]
    blob = json.dumps(_canonical(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Self-describing report payload; floats canonicalized at construction."""

    payload: dict

    def __post_init__(self) -> None:
        object.__setattr__(self, "payload", _canonical(self.payload))

    def __eq__(self, other) -> bool:
        return isinstance(other, AnalysisReport) and self.payload == other.payload


def build_report(
    *,
    config_fingerprint: str,
    configs: dict | None = None,
    dataset_summaries: dict | None = None,
    label_similarity: dict | None = None,
    category_similarity: dict | None = None,
    antipatterns: dict | None = None,
    comparison: dict | None = None,
    warnings: list[str] | tuple[str, ...] = (),
) -> AnalysisReport:
    return AnalysisReport(
        payload={
            "tool": {"name": "taxolint", "version": __version__},
            "config_fingerprint": config_fingerprint,
            "configs": configs or {},
            "dataset_summaries": dataset_summaries or {},
            "label_similarity": label_similarity,
            "category_similarity": category_similarity,
            "antipatterns": antipatterns,
            "comparison": comparison,
            "warnings": list(warnings),
        }
    )


def emit_json(report: AnalysisReport) -> bytes:
    """Canonical JSON: sorted keys, compact separators, rounded floats."""
    return (
        json.dumps(report.payload, sort_keys=True, separators=(",", ":"))
        + "\n"
    ).encode("utf-8")


def parse_report(data: bytes) -> AnalysisReport:
    return AnalysisReport(payload=json.loads(data.decode("utf-8")))


def _fmt(value: float) -> str:
    return f"{float(value):.9g}"


def emit_matrix_csv(m: SimilarityMatrix) -> bytes:
    """Names header, value rows, then mean/max rows when summaries exist."""
    if not m.names:
        raise InsufficientInputError("cannot serialize a matrix with no names")
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow([""] + list(m.names))
    for i, name in enumerate(m.names):
        writer.writerow([name] + [_fmt(v) for v in m.values[i]])
    if m.mean_row is not None:
        writer.writerow(["mean"] + [_fmt(v) for v in m.mean_row])
    if m.max_row is not None:
        writer.writerow(["max"] + [_fmt(v) for v in m.max_row])
    return out.getvalue().encode("utf-8")


# Linear white -> dark blue ramp; diagonal cells use a flat neutral fill.
_SCALE_LOW = (247, 251, 255)
_SCALE_HIGH = (8, 48, 107)
_DIAGONAL_FILL = "#d9d9d9"
_CELL = 26
_GAP = 6


def _scale_color(value: float, vmax: float) -> str:
    t = 0.0 if vmax <= 0.0 else min(1.0, max(0.0, value / vmax))
    rgb = tuple(
        round(lo + (hi - lo) * t) for lo, hi in zip(_SCALE_LOW, _SCALE_HIGH)
    )
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def emit_heatmap_svg(m: SimilarityMatrix) -> bytes:
    """SVG heatmap: one rect per cell, color scaled over [0, max off-diagonal]."""
    if not m.names:
        raise InsufficientInputError("cannot render a matrix with no names")
    size = m.size
    off = m.off_diagonal()
    vmax = float(off.max()) if off.size else 0.0

    extra_rows = []
    if m.mean_row is not None:
        extra_rows.append(("mean", m.mean_row))
    if m.max_row is not None:
        extra_rows.append(("max", m.max_row))

    left = 12 + 7 * max(len(n) for n in m.names + tuple(r[0] for r in extra_rows))
    top = 12 + 7 * max(len(n) for n in m.names)
    width = left + size * _CELL + 4
    height = top + size * _CELL + (len(extra_rows) * _CELL + _GAP if extra_rows else 0) + 4

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    )
    parts.append(
        '<style>text{font-family:monospace;font-size:10px;fill:#222}</style>'
    )
    for j, name in enumerate(m.names):
        x = left + j * _CELL + _CELL // 2
        parts.append(
            f'<text x="{x}" y="{top - 4}" text-anchor="start" '
            f'transform="rotate(-60 {x} {top - 4})">{_escape(name)}</text>'
        )
    for i, name in enumerate(m.names):
        y = top + i * _CELL
        parts.append(
            f'<text x="{left - 6}" y="{y + _CELL - 9}" text-anchor="end">{_escape(name)}</text>'
        )
        for j in range(size):
            value = float(m.values[i, j])
            fill = _DIAGONAL_FILL if i == j else _scale_color(value, vmax)
            parts.append(
                f'<rect x="{left + j * _CELL}" y="{y}" width="{_CELL - 1}" '
                f'height="{_CELL - 1}" fill="{fill}">'
                f"<title>{_escape(m.names[i])} / {_escape(m.names[j])}: {_fmt(value)}</title></rect>"
            )
    base = top + size * _CELL + _GAP
    for r, (row_name, row_values) in enumerate(extra_rows):
        y = base + r * _CELL
        parts.append(
            f'<text x="{left - 6}" y="{y + _CELL - 9}" text-anchor="end">{row_name}</text>'
        )
        for j in range(size):
            value = float(row_values[j])
            parts.append(
                f'<rect x="{left + j * _CELL}" y="{y}" width="{_CELL - 1}" '
                f'height="{_CELL - 1}" fill="{_scale_color(value, vmax)}">'
                f"<title>{row_name} / {_escape(m.names[j])}: {_fmt(value)}</title></rect>"
            )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )

"""Minimal deterministic SVG line plots (no plotting dependency)."""

from __future__ import annotations

_WIDTH = 640
_HEIGHT = 440
_MARGIN_L = 64
_MARGIN_R = 160
_MARGIN_T = 40
_MARGIN_B = 48

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def line_plot(
    series: list[tuple[str, list[float], list[float]]],
    x_label: str,
    y_label: str,
    title: str,
    hline: float | None = None,
) -> str:
    """Render named (x, y) series as an SVG document string.

    Axis ranges cover the data (y padded to include the optional dotted
    horizontal reference line).  Output depends only on the inputs.
    """
    xs = [x for _, sx, _ in series for x in sx]
    ys = [y for _, _, sy in series for y in sy]
    if not xs:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(xs), max(xs)
    y_lo = min(ys + ([hline] if hline is not None else []))
    y_hi = max(ys + ([hline] if hline is not None else []))
    y_lo = min(0.0, y_lo)
    pad = 0.06 * (y_hi - y_lo or 1.0)
    y_hi += pad
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo or 1.0) * plot_w

    def py(y: float) -> float:
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo or 1.0) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_MARGIN_L}" y="24" font-family="sans-serif" '
        f'font-size="15">{title}</text>',
    ]
    axis = (
        f'<path d="M {_fmt(_MARGIN_L)} {_fmt(_MARGIN_T)} '
        f'L {_fmt(_MARGIN_L)} {_fmt(_MARGIN_T + plot_h)} '
        f'L {_fmt(_MARGIN_L + plot_w)} {_fmt(_MARGIN_T + plot_h)}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    parts.append(axis)
    for tx in _ticks(x_lo, x_hi):
        parts.append(
            f'<line x1="{_fmt(px(tx))}" y1="{_fmt(_MARGIN_T + plot_h)}" '
            f'x2="{_fmt(px(tx))}" y2="{_fmt(_MARGIN_T + plot_h + 5)}" '
            f'stroke="black"/>'
            f'<text x="{_fmt(px(tx))}" y="{_fmt(_MARGIN_T + plot_h + 20)}" '
            f'font-family="sans-serif" font-size="11" '
            f'text-anchor="middle">{tx:.2f}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{_fmt(_MARGIN_L - 5)}" y1="{_fmt(py(ty))}" '
            f'x2="{_fmt(_MARGIN_L)}" y2="{_fmt(py(ty))}" stroke="black"/>'
            f'<text x="{_fmt(_MARGIN_L - 8)}" y="{_fmt(py(ty) + 4)}" '
            f'font-family="sans-serif" font-size="11" '
            f'text-anchor="end">{ty:.2f}</text>'
        )
    parts.append(
        f'<text x="{_fmt(_MARGIN_L + plot_w / 2)}" y="{_HEIGHT - 10}" '
        f'font-family="sans-serif" font-size="12" '
        f'text-anchor="middle">{x_label}</text>'
        f'<text x="18" y="{_fmt(_MARGIN_T + plot_h / 2)}" '
        f'font-family="sans-serif" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 18 {_fmt(_MARGIN_T + plot_h / 2)})">'
        f"{y_label}</text>"
    )
    if hline is not None:
        parts.append(
            f'<line x1="{_fmt(_MARGIN_L)}" y1="{_fmt(py(hline))}" '
            f'x2="{_fmt(_MARGIN_L + plot_w)}" y2="{_fmt(py(hline))}" '
            f'stroke="black" stroke-dasharray="3 4" stroke-width="1"/>'
        )
    for i, (name, sx, sy) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(sx, sy))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.6"/>'
        )
        ly = _MARGIN_T + 14 + 16 * i
        lx = _WIDTH - _MARGIN_R + 12
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.6"/>'
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

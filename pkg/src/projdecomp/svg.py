"""Bare-bones SVG scatter plots: points only, no axes."""

import numpy as np


def write_svg_scatter(points, path, size=480, margin=20, radius=1.2):
    pts = np.asarray(points, dtype=np.float64)[:, :2]
    lo = pts.min(axis=0)
    span = np.ptp(pts, axis=0)
    span[span == 0] = 1.0
    inner = size - 2 * margin
    x = margin + (pts[:, 0] - lo[0]) / span[0] * inner
    y = size - margin - (pts[:, 1] - lo[1]) / span[1] * inner  # SVG y grows downward
    with open(path, "w") as fh:
        fh.write(f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">\n')
        for xi, yi in zip(x, y):
            fh.write(f'<circle cx="{xi:.2f}" cy="{yi:.2f}" r="{radius}"/>\n')
        fh.write("</svg>\n")

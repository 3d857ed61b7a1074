"""Log-scale heatmap rendering of CLI panels.

A pure view of emitted data: the renderer never recomputes mathematics.
Panels are drawn with a logarithmic color normalization over the fixed
levels [1e-8, 1e-4, 1e-2, 1e-1, 1] and white contour lines at those same
levels; axis labels come from the panel's axes block.
"""

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from .schema import load_panel

__all__ = ["RenderStyle", "CONTOUR_LEVELS", "render"]

CONTOUR_LEVELS = (1e-8, 1e-4, 1e-2, 1e-1, 1.0)


@dataclass(frozen=True)
class RenderStyle:
    width: float = 5.0
    height: float = 4.0
    dpi: int = 120
    cmap: str = "viridis"


def _panel_magnitude(panel):
    vals = np.asarray(panel["values"], dtype=float)
    if panel["values_kind"] == "complex":
        vals = np.hypot(vals[..., 0], vals[..., 1])
    else:
        vals = np.abs(vals)
    return vals


def render(panel_file, out_image, style=None):
    """Render one panel file to a raster image.

    Returns a summary dict: contour levels used, how many produced paths,
    and the pixel dimensions written.
    """
    style = style or RenderStyle()
    panel = load_panel(panel_file)
    vals = _panel_magnitude(panel)
    axes = list(panel["axes"].items())
    if vals.ndim != 2:
        raise ValueError(f"can only render two-axis panels, got {vals.ndim} axes")
    (xname, xvals), (yname, yvals) = axes
    x = np.asarray(xvals)
    y = np.asarray(yvals)

    floor = CONTOUR_LEVELS[0] * 1e-2
    clipped = np.maximum(vals, floor)

    fig, ax = plt.subplots(figsize=(style.width, style.height), dpi=style.dpi)
    mesh = ax.pcolormesh(
        x,
        y,
        clipped.T,
        norm=LogNorm(vmin=CONTOUR_LEVELS[0], vmax=max(CONTOUR_LEVELS[-1], float(np.max(clipped)))),
        cmap=style.cmap,
        shading="auto",
    )
    contours_drawn = 0
    cs = ax.contour(x, y, clipped.T, levels=list(CONTOUR_LEVELS), colors="white", linewidths=0.8)
    for level_paths in cs.allsegs:
        if len(level_paths):
            contours_drawn += 1
    ax.set_xlabel(xname)
    ax.set_ylabel(yname)
    title = panel["kind"]
    if "t" in panel["params"]:
        title += f"  (t = {panel['params']['t']:g})"
    ax.set_title(title)
    fig.colorbar(mesh, ax=ax)
    fig.tight_layout()
    fig.savefig(out_image)
    plt.close(fig)
    return {
        "out": str(out_image),
        "contour_levels": list(CONTOUR_LEVELS),
        "contours_drawn": contours_drawn,
        "pixels": (int(style.width * style.dpi), int(style.height * style.dpi)),
    }

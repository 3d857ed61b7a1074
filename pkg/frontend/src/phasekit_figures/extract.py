"""Data-level diagnostics read from panel JSON (never from pixels)."""

import numpy as np

from .schema import load_panel

__all__ = ["peak_centroid", "peak_angle", "argmax_angle_sequence"]


def peak_centroid(panel):
    """Intensity centroid of a two-axis panel, refined from the raw argmax.

    The panels are single-lobe Gaussians, so the centroid locates the peak
    to a fraction of a cell even when the lobe sits within a few cells of
    the origin.
    """
    vals = np.asarray(panel["values"], dtype=float)
    if panel["values_kind"] == "complex":
        vals = np.hypot(vals[..., 0], vals[..., 1])
    axes = list(panel["axes"].values())
    x = np.asarray(axes[0])
    y = np.asarray(axes[1])
    mass = vals.sum()
    if mass <= 0:
        raise ValueError("panel carries no positive mass")
    cx = float((vals.sum(axis=1) * x).sum() / mass)
    cy = float((vals.sum(axis=0) * y).sum() / mass)
    return cx, cy


def peak_angle(panel):
    """Angle of the peak location in the (first-axis, second-axis) plane."""
    cx, cy = peak_centroid(panel)
    return float(np.arctan2(cy, cx))


def argmax_angle_sequence(panel_paths, times):
    """Unwrapped peak angles across a time sequence of panels.

    Consecutive early panels (steps below pi) fix the rotation rate; the
    rate then selects the 2-pi branch for sparsely spaced later times.
    """
    if len(panel_paths) != len(times):
        raise ValueError("one panel per time is required")
    raw = [peak_angle(load_panel(p)) for p in panel_paths]
    times = [float(t) for t in times]
    out = [raw[0]]
    rate = None
    for k in range(1, len(raw)):
        dt = times[k] - times[k - 1]
        if rate is None or abs(rate * dt) < np.pi * 0.9:
            candidate = out[-1] + np.angle(np.exp(1j * (raw[k] - out[-1])))
        else:
            predicted = out[-1] + rate * dt
            m = np.round((predicted - raw[k]) / (2.0 * np.pi))
            candidate = raw[k] + 2.0 * np.pi * m
        out.append(float(candidate))
        if k >= 1 and times[k] > times[0]:
            rate = (out[k] - out[0]) / (times[k] - times[0])
    return out

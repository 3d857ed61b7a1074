"""Render phasekit CLI panels as log-scale figures and extract data-level
diagnostics from them."""

from .extract import argmax_angle_sequence, peak_angle, peak_centroid
from .render import CONTOUR_LEVELS, RenderStyle, render
from .schema import PANEL_SCHEMA, PanelError, load_panel

__version__ = "0.1.0"

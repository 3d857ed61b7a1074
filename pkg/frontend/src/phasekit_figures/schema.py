"""The panel schema emitted by the phasekit CLI, and its validator."""

import json

import jsonschema

__all__ = ["PANEL_SCHEMA", "load_panel", "PanelError"]

PANEL_SCHEMA = {
    "type": "object",
    "required": ["kind", "params", "axes", "values", "values_kind", "provenance"],
    "properties": {
        "kind": {"type": "string"},
        "params": {"type": "object"},
        "axes": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {"type": "array", "items": {"type": "number"}},
        },
        "values": {"type": "array"},
        "values_kind": {"enum": ["abs", "complex"]},
        "provenance": {
            "type": "object",
            "required": ["equation", "paper_anchor"],
            "properties": {
                "equation": {"type": "string"},
                "paper_anchor": {"type": "string"},
            },
        },
    },
}


class PanelError(ValueError):
    """Raised when a panel file does not match the emission schema."""


def load_panel(path):
    """Load and validate a panel file; raises PanelError on violations."""
    try:
        with open(path) as fh:
            panel = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise PanelError(f"{path}: cannot read panel: {exc}") from None
    try:
        jsonschema.validate(panel, PANEL_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise PanelError(f"{path}: schema violation: {exc.message}") from None
    shape = tuple(len(v) for v in panel["axes"].values())
    import numpy as np

    vals = np.asarray(panel["values"], dtype=float)
    expected = shape if panel["values_kind"] == "abs" else shape + (2,)
    if vals.shape != expected:
        raise PanelError(f"{path}: values shaped {vals.shape}, axes imply {expected}")
    if not np.all(np.isfinite(vals)):
        raise PanelError(f"{path}: panel contains non-finite values")
    return panel

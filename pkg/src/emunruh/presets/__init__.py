"""Named scenario batches, one per published figure panel."""

from .figures import PRESETS, FigurePreset, get_preset, list_presets

__all__ = ["PRESETS", "FigurePreset", "get_preset", "list_presets"]

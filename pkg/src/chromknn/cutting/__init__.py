"""Cutting-based range mode for disks and squares."""
from .coloring import ReporterError, color_cells_naive, color_cells_traversal
from .mode2d import CuttingModeIndex, query_mode_ball
from .octree import Cutting, build_cutting
from .surfaces import CROSS, FULL, NONE, ColorCounter, PlaneSet, PyramidSet, surfaces_for
from .tracker import FrequencyTracker, freq_decrement, freq_increment, freq_mode

__all__ = [
    "CROSS", "FULL", "NONE", "ColorCounter", "Cutting", "CuttingModeIndex", "FrequencyTracker",
    "PlaneSet", "PyramidSet", "ReporterError", "build_cutting", "color_cells_naive",
    "color_cells_traversal", "freq_decrement", "freq_increment", "freq_mode", "query_mode_ball",
    "surfaces_for",
]

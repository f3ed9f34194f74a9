"""Exact r-visibility guard placement for orthogonal polygons."""

from rguard.polygon_core import OrthoPolygon, Rect, spanned_rect, rect_inside, validate

__all__ = ["OrthoPolygon", "Rect", "spanned_rect", "rect_inside", "validate"]

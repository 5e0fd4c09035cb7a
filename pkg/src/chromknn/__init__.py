"""Chromatic k-nearest-neighbor queries in one and two dimensions."""

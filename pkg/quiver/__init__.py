"""Quivers, paths and the bound quiver file format."""

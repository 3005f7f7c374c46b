"""Representations, homomorphisms, translates and AR quiver knitting."""

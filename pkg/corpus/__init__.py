"""Corpus manifest access."""

"""Relation extensions, the relation bimodule and partial relation extensions."""

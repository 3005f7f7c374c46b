"""Exact scalar fields and dense linear algebra over them."""

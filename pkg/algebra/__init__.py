"""Bound quiver algebras and their homological invariants."""

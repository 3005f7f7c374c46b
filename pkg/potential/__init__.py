"""Potentials, cyclic derivatives and dependency components."""

"""Local and complete slices in AR quivers."""

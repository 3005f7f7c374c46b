"""Command implementations and report rendering."""

"""Vertex connectivity and minimum cut-sets of power graphs of cyclic groups."""

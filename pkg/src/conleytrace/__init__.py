"""Exact discrete Conley index invariants."""

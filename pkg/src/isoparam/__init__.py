"""Exact eiconal / Cartan-Munzner polynomial toolkit."""

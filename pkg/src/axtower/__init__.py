"""Exact arithmetic and verification tools for Kummer towers over p-adic fields."""

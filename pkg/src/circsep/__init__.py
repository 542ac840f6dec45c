"""Minimum enclosing circles that keep clear of a query object."""

"""Serialization, fixtures, command line, and HTTP service."""

"""Scans, example generators, certificate files and the command line."""

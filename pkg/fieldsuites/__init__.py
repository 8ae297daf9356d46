"""Batch driver of the affine-fields verification suites."""

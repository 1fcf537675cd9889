"""Experiment harness: file I/O, tensorization, metrics, reports and the CLI."""

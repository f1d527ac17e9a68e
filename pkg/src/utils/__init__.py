"""Configuration, logging, file and report helpers."""

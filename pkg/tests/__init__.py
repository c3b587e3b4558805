"""
Tests package for sepkit.

Unit tests live in tests/unit, CLI and golden-corpus tests in tests/integration.
"""

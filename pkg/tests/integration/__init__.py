"""
Integration tests package.

Tests in this package drive the `sepkit` command line end to end:
- Exit codes and report rendering
- The golden corpus under tests/golden (one document per acceptance criterion)
"""

"""
Services package.

This package contains the checkers and solvers, plus document loading and reporting.
"""

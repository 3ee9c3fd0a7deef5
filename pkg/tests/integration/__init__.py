"""
Integration tests for the workbench.

These tests run the acceptance commands end to end and check their reports.
"""

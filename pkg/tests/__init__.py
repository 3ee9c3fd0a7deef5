"""
Tests Module

Test suite for the pre-Calabi-Yau workbench.

Structure:
    - unit/: Unit tests, one directory per package under src/
    - integration/: End-to-end acceptance runs through the command line

Testing Framework: pytest with pytest-cov, pytest-timeout and hypothesis

Run tests:
    pytest tests/ -m "not slow"
    pytest tests/ -m slow
"""

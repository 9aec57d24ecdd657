"""Utility functions and constants.

This module provides logging infrastructure, numerical constants and
tolerances, and the exception hierarchy shared by every subpackage.
"""

"""Test suite for the L00L simulator."""

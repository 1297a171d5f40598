"""Integration tests package marker."""


"""Unit tests package marker."""


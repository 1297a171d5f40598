"""Test package marker."""


"""FOON toolkit: functional-unit graphs, task-tree retrieval, recipe generation and survey statistics."""

__version__ = "0.1.0"

"""Exact computations for cyclic covers of the line, their period systems,
and the flat summands of the Hodge bundle of the resulting fibrations."""

__version__ = "0.1.0"

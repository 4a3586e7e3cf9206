"""vsarena: multi-agent strategic game suite and evaluation harness."""

__version__ = "0.1.0"

"""Contextual-bandit slate recommender and replay simulator."""

from .core.config import settings

__version__ = settings.VERSION

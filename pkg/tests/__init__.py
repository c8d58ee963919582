"""Tests for duelrec."""

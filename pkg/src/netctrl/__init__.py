"""Controllability, non-fragility and partial controllability of leader-follower networks."""

__version__ = "0.1.0"

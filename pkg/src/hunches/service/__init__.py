"""HTTP API exposing datasets, recording, views, summaries, and curation."""

from .app import create_app

__all__ = ["create_app"]

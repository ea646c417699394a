"""FastAPI service and schemas wrapping the analysis library."""

from .app import app, create_app

__all__ = ["app", "create_app"]

from .discovery import chunk_source, discover_sources, estimate_tokens

__all__ = ["chunk_source", "discover_sources", "estimate_tokens"]

from .loader import PromptLibrary, PromptTemplate, default_library

__all__ = ["PromptLibrary", "PromptTemplate", "default_library"]

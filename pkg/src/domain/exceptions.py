"""
Domain exceptions

Use cases raise these; the CLI maps them to exit codes.
"""
from typing import Optional


class DoctraceError(Exception):
    """Base error for the documentation pipeline"""


class ArgumentError(DoctraceError, ValueError):
    """Invalid argument passed to a domain operation"""


class TreeParseError(DoctraceError, ValueError):
    """Artifact tree document could not be parsed"""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class ConfigError(DoctraceError):
    """Pipeline configuration is missing or invalid"""


class SourceError(DoctraceError):
    """Source tree or source file cannot be used"""


class ProviderError(DoctraceError):
    """Completion or embedding provider failure"""

    def __init__(self, message: str, digest: Optional[str] = None):
        suffix = f" [request {digest[:16]}]" if digest else ""
        super().__init__(f"{message}{suffix}")
        self.digest = digest
        self.message = message


class RetriableProviderError(ProviderError):
    """Transport failure that survived every retry"""


class ProviderContentError(ProviderError):
    """Provider refused or returned an empty body"""


class ProviderAuthError(ProviderError):
    """Credentials missing or rejected"""


class GenerationError(DoctraceError):
    """Provider output did not follow the generation protocol"""


class EvaluationError(DoctraceError):
    """Ground truth or annotations do not match the tree"""


class PipelineError(DoctraceError):
    """A pipeline stage failed"""

    def __init__(self, stage: str, message: str, cluster: Optional[str] = None):
        where = f"{stage}" if cluster is None else f"{stage} (cluster {cluster})"
        super().__init__(f"{where}: {message}")
        self.stage = stage
        self.cluster = cluster

"""Exception hierarchy shared across the package."""


class ClaimLensError(Exception):
    """Base class for all claimlens errors."""


class CorpusParseError(ClaimLensError):
    """Raised when an input dump cannot be parsed (strict mode or malformed XML)."""


class DuplicateDocIdError(CorpusParseError):
    """Raised when two documents in one corpus share a doc_id."""


class UnknownDocumentError(ClaimLensError):
    """Raised when an operation references a doc_id that is not indexed."""


class EmbeddingError(ClaimLensError):
    """Raised for degenerate embeddings (zero vectors, dimension mismatches)."""


class EmbedderMismatchError(ClaimLensError):
    """Raised when querying a dense index with a different embedder than built it."""


class GatewayError(ClaimLensError):
    """Base class for model-gateway failures."""


class GatewayUnavailableError(GatewayError):
    """Remote endpoint unreachable after the retry budget is exhausted."""


class GatewayProtocolError(GatewayError):
    """Remote endpoint answered, but the response violates the wire protocol."""


class EmptyEvidenceError(ClaimLensError):
    """Raised when a verdict is requested with no evidence sentences.

    Distinct from a REFUTED label on purpose: the evaluation layer decides
    how to count claims for which the pipeline produced no evidence.
    """


class DatasetError(ClaimLensError):
    """Raised for malformed dataset files or unknown label strings."""


class ConfigError(ClaimLensError):
    """Raised for invalid pipeline configuration."""

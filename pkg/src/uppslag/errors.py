"""Exception hierarchy shared across the pipeline."""


class UppslagError(Exception):
    """Base class for all pipeline errors."""


class MalformedPage(UppslagError):
    """Raised when a page document lacks the expected text region."""


class EmptyReference(UppslagError):
    """Raised when the reference word of a relative edit distance is empty."""


class EmptyText(UppslagError):
    """Raised when a text operation receives an empty string."""


class SingleClassTraining(UppslagError):
    """Raised when a binary training set does not contain both classes."""


class MissingEmbedding(UppslagError):
    """Raised by the file-backed embedder when a text has no stored vector."""


class ProviderUnavailable(UppslagError):
    """Raised when the external embedding provider cannot be reached."""


class ZeroVector(UppslagError):
    """Raised when cosine similarity is asked about a zero vector."""


class DimMismatch(UppslagError):
    """Raised when vector dimensions disagree."""


class ApiUnavailable(UppslagError):
    """Raised when a live API call fails after retries."""


class FixtureMiss(UppslagError):
    """Raised in replay mode when no recorded response exists for a request."""


class MalformedClaim(UppslagError):
    """Raised when a coordinate claim payload cannot be interpreted."""


class RangeError(UppslagError):
    """Raised for out-of-range geographic coordinates."""


class GoldIdUnknown(UppslagError):
    """Raised when a gold annotation references an id outside the evaluated set."""


class MissingUpstream(UppslagError):
    """Raised when a pipeline stage runs before its inputs exist."""


class ConfigError(UppslagError):
    """Raised for invalid or inconsistent configuration."""


class SchemaMismatch(UppslagError):
    """Raised when a gold file does not match the schema a stage expects."""


class IoError(UppslagError):
    """Raised when an artifact cannot be written."""

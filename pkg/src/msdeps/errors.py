"""Exception hierarchy shared by every stage of the pipeline."""


class MsdepsError(Exception):
    """Base class for all errors raised by msdeps."""


class InvalidPairError(MsdepsError, ValueError):
    pass


class NoDependencyError(MsdepsError, ValueError):
    pass


class InvalidPathError(MsdepsError, ValueError):
    pass


class InvalidNameError(MsdepsError, ValueError):
    pass


class EmptySystemError(MsdepsError):
    """No microservice could be found; analysis cannot proceed."""


class IngestError(MsdepsError):
    pass


class RevisionError(IngestError):
    pass


class IRLoadError(MsdepsError):
    """The IR document does not follow the schema.

    ``path`` points at the offending node, e.g. ``endpoints[2].method``.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class IRValidationError(IRLoadError):
    """The IR document parsed but violates a model invariant."""


class InvalidMergeError(MsdepsError, ValueError):
    pass


class InvalidDiffError(MsdepsError, ValueError):
    pass


class ConfigError(MsdepsError, ValueError):
    pass

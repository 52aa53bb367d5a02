"""Exception types shared across the package."""


class CdbgError(Exception):
    """Base class for all library errors."""


class InvalidAlphabet(CdbgError):
    """A sequence contains symbols outside the expected alphabet."""


class BoundsError(CdbgError):
    """An index, rank or occurrence count is out of range."""


class BadOrder(CdbgError):
    """The requested de Bruijn order k is unsupported (k < 3 or k > 63)."""


class EmptyIndex(CdbgError):
    """No read survived ingestion, so there is nothing to index."""


class BadLabel(CdbgError):
    """A node label query has the wrong length or alphabet."""


class CorruptIndex(CdbgError):
    """The graph does not match the read set it was supposedly built from."""


class NotColored(CdbgError):
    """Color lookup on a node that is not in the colorable set."""


class IncompleteColoring(CdbgError):
    """A colorable node ended up with no color (index/read-set mismatch)."""


class BadStart(CdbgError):
    """A traversal was started from a node that is not a starting node."""


class BadThreshold(CdbgError):
    """Contig extension threshold outside (0, 1]."""


class ParseError(CdbgError):
    """Malformed FASTA/FASTQ record."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IntegrityError(CdbgError):
    """Index container failed magic/version/checksum validation."""

"""Exception hierarchy for semgraph.

Exit-code mapping used by the CLI lives in cli.py; keep these exceptions
semantic (what went wrong), not presentational.
"""

from __future__ import annotations


class SemgraphError(Exception):
    """Base class for all semgraph errors."""


class DatabaseFormatError(SemgraphError):
    """A database file is missing, truncated, or malformed."""

    def __init__(self, message: str, *, filename: str | None = None,
                 line_no: int | None = None):
        self.filename = filename
        self.line_no = line_no
        where = ""
        if filename:
            where = f" [{filename}" + (f":{line_no}" if line_no else "") + "]"
        super().__init__(message + where)


class TaxonomyStructureError(SemgraphError):
    """The is-a graph violates a structural invariant (cycle, bad root)."""


class ConstantsMismatchError(SemgraphError):
    """Strict verification found constants deviating from the expected table."""

    def __init__(self, mismatches: dict[str, tuple[object, object]]):
        self.mismatches = mismatches
        lines = ", ".join(f"{k}: computed={c!r} expected={e!r}"
                          for k, (c, e) in mismatches.items())
        super().__init__(f"database constants deviate from reference: {lines}")


class CacheError(SemgraphError):
    """Binary cache is unreadable: bad magic, version, checksum, or truncation."""


class UnknownWordError(SemgraphError):
    """A queried word is not in the lexicon."""

    def __init__(self, word: str, suggestions: list[str] | None = None):
        self.word = word
        self.suggestions = suggestions or []
        msg = f"unknown word: {word!r}"
        if self.suggestions:
            msg += " (nearest entries: " + ", ".join(self.suggestions) + ")"
        super().__init__(msg)


class IdenticalWordsError(SemgraphError):
    """Similarity queries require two distinct words."""


class SegmentationError(SemgraphError):
    """A conversation cannot be split into valid time points."""


class PipelineError(SemgraphError):
    """Malformed pipeline input (e.g. bad pretagged file)."""


class SessionError(SemgraphError):
    """Invalid ideation-session operation."""

    def __init__(self, message: str, code: str = "session_error"):
        self.code = code
        super().__init__(message)

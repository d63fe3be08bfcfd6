"""Parsers for the WordNet 3.1 flat-file noun database.

Handles ``data.noun`` (synset records), ``index.noun`` (lowercase lemma
index) and ``noun.exc`` (irregular plural -> base pairs). Each file may be
present either plain or gzipped (``<name>.gz``); license header lines
(starting with two spaces) are skipped.
"""

from __future__ import annotations

import gzip
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterator

from .errors import DatabaseFormatError

# pointer symbols that contribute is-a edges (generic + instance hypernyms)
HYPERNYM_SYMBOLS = ("@", "@i")


@dataclass(frozen=True)
class SynsetRecord:
    """One parsed data.noun record."""

    offset: int
    lemmas: tuple[str, ...]
    hypernyms: tuple[int, ...]
    line_no: int


def open_db_file(directory: str | Path, name: str) -> IO[str]:
    """Open a database file, transparently falling back to a .gz sibling."""
    directory = Path(directory)
    plain = directory / name
    if plain.exists():
        return open(plain, "rt", encoding="utf-8", newline="")
    gzipped = directory / (name + ".gz")
    if gzipped.exists():
        return gzip.open(gzipped, "rt", encoding="utf-8", newline="")
    raise DatabaseFormatError(f"missing database file {name} (or {name}.gz)",
                              filename=str(plain))


def _data_lines(fh: IO[str]) -> Iterator[tuple[int, str]]:
    for line_no, line in enumerate(fh, start=1):
        if line.startswith("  ") or not line.strip():
            continue
        yield line_no, line.rstrip("\n")


def parse_data_noun(directory: str | Path) -> list[SynsetRecord]:
    """Parse data.noun into synset records (lemmas kept case-sensitive)."""
    records: list[SynsetRecord] = []
    with open_db_file(directory, "data.noun") as fh:
        for line_no, line in _data_lines(fh):
            body = line.split(" | ", 1)[0].rstrip()
            fields = body.split(" ")
            try:
                offset = int(fields[0])
                ss_type = fields[2]
                w_cnt = int(fields[3], 16)
                if w_cnt < 1:
                    raise ValueError("synset has no words")
                lemmas = tuple(fields[4 + 2 * k] for k in range(w_cnt))
                i = 4 + 2 * w_cnt
                p_cnt = int(fields[i])
                i += 1
                hypernyms = []
                for _ in range(p_cnt):
                    sym, target, pos = fields[i], fields[i + 1], fields[i + 2]
                    i += 4
                    if sym in HYPERNYM_SYMBOLS and pos == "n":
                        hypernyms.append(int(target))
            except (IndexError, ValueError) as exc:
                raise DatabaseFormatError(f"malformed synset record: {exc}",
                                          filename="data.noun",
                                          line_no=line_no) from exc
            if ss_type != "n":
                raise DatabaseFormatError(
                    f"unexpected synset type {ss_type!r} in noun file",
                    filename="data.noun", line_no=line_no)
            records.append(SynsetRecord(offset, lemmas, tuple(hypernyms), line_no))
    if not records:
        raise DatabaseFormatError("no synset records found", filename="data.noun")
    return records


def parse_index_noun(directory: str | Path) -> dict[str, tuple[int, ...]]:
    """Parse index.noun into lowercase lemma -> synset offsets."""
    index: dict[str, tuple[int, ...]] = {}
    with open_db_file(directory, "index.noun") as fh:
        for line_no, line in _data_lines(fh):
            fields = line.rstrip().split(" ")
            try:
                lemma = fields[0]
                synset_cnt = int(fields[2])
                p_cnt = int(fields[3])
                offsets = tuple(int(o) for o in fields[6 + p_cnt:])
                if len(offsets) != synset_cnt:
                    raise ValueError(
                        f"offset count {len(offsets)} != synset_cnt {synset_cnt}")
            except (IndexError, ValueError) as exc:
                raise DatabaseFormatError(f"malformed index record: {exc}",
                                          filename="index.noun",
                                          line_no=line_no) from exc
            index[lemma] = offsets
    return index


def parse_noun_exc(directory: str | Path) -> dict[str, tuple[str, ...]]:
    """Parse noun.exc into inflected form -> candidate base forms."""
    exceptions: dict[str, tuple[str, ...]] = {}
    with open_db_file(directory, "noun.exc") as fh:
        for line_no, line in _data_lines(fh):
            fields = line.split()
            if len(fields) < 2:
                raise DatabaseFormatError("exception line needs >= 2 fields",
                                          filename="noun.exc", line_no=line_no)
            exceptions[fields[0]] = tuple(fields[1:])
    return exceptions

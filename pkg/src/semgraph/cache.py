"""Versioned binary cache for a fully precomputed semantic net.

Layout: magic ``WGPH`` | version byte | u8 metadata length | metadata JSON |
fixed sequence of little-endian arrays/blobs | u4 CRC32 trailer. The CRC
covers everything before it. Round-tripping a net through save/load and
saving again produces byte-identical files.
"""

from __future__ import annotations

import json
import struct
import zlib
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import CacheError
from .taxonomy import (DbConstants, Lexicon, SemanticNet, Taxonomy,
                       TaxonomyStats)
from .wndb import SynsetRecord

MAGIC = b"WGPH"
VERSION = 1


def _pack_array(arr: np.ndarray, dtype: str) -> bytes:
    data = np.ascontiguousarray(arr.astype(dtype)).tobytes()
    return struct.pack("<Q", len(data)) + data


class _Reader:
    def __init__(self, buf: bytes):
        self.buf = buf
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.buf):
            raise CacheError("cache file is truncated")
        out = self.buf[self.pos:self.pos + n]
        self.pos += n
        return out

    def array(self, dtype: str) -> np.ndarray:
        (n,) = struct.unpack("<Q", self.take(8))
        return np.frombuffer(self.take(n), dtype=dtype).copy()

    def blob(self) -> bytes:
        (n,) = struct.unpack("<Q", self.take(8))
        return self.take(n)


def save_cache(net: SemanticNet, path: str | Path) -> None:
    tax, lex, stats, const = net.taxonomy, net.lexicon, net.stats, net.constants

    meta = {
        "n_synsets": len(tax),
        "n_words": len(lex),
        "word_source": lex.word_source,
        "constants": const.as_dict(),
    }
    meta_blob = json.dumps(meta, sort_keys=True, separators=(",", ":")).encode()

    parts = [MAGIC, bytes([VERSION]),
             struct.pack("<Q", len(meta_blob)), meta_blob]

    parts.append(_pack_array(tax.offsets, "<i8"))
    parts.append(_pack_array(tax.par_indptr, "<i8"))
    parts.append(_pack_array(tax.par_idx, "<i4"))

    lemma_counts = np.array([len(l) for l in tax.lemma_lists], dtype=np.int32)
    lemma_ids = np.array([lex.word_to_id[w]
                          for lemmas in tax.lemma_lists for w in lemmas],
                         dtype=np.int32)
    parts.append(_pack_array(lemma_counts, "<i4"))
    parts.append(_pack_array(lemma_ids, "<i4"))

    words_blob = "\n".join(lex.words).encode("utf-8")
    parts.append(struct.pack("<Q", len(words_blob)) + words_blob)
    parts.append(_pack_array(lex.sense_indptr, "<i8"))
    parts.append(_pack_array(lex.sense_idx, "<i4"))

    exc_blob = "\n".join(
        f"{k} {' '.join(v)}" for k, v in sorted(lex.exceptions.items())
    ).encode("utf-8")
    parts.append(struct.pack("<Q", len(exc_blob)) + exc_blob)

    for arr, dtype in ((stats.depth, "<i4"), (stats.subsumer_count, "<i4"),
                       (stats.subvertex_count, "<i4"),
                       (stats.leaf_count, "<i4"), (stats.commonness, "<f8"),
                       (stats.inv_depth_sum, "<f8"), (stats.is_leaf, "u1"),
                       (stats.word_commonness, "<f8")):
        parts.append(_pack_array(arr, dtype))

    body = b"".join(parts)
    checksum = struct.pack("<I", zlib.crc32(body) & 0xFFFFFFFF)
    Path(path).write_bytes(body + checksum)


def load_cache(path: str | Path) -> SemanticNet:
    raw = Path(path).read_bytes()
    if len(raw) < len(MAGIC) + 1 + 8 + 4:
        raise CacheError("cache file is truncated")
    if raw[:4] != MAGIC:
        raise CacheError("not a semgraph cache file (bad magic)")
    body, trailer = raw[:-4], raw[-4:]
    if struct.pack("<I", zlib.crc32(body) & 0xFFFFFFFF) != trailer:
        raise CacheError("cache checksum mismatch (file corrupted)")
    version = raw[4]
    if version != VERSION:
        raise CacheError(
            f"unsupported cache version {version} (expected {VERSION}); "
            "rebuild the cache")

    r = _Reader(body)
    r.take(5)  # magic + version
    meta = json.loads(r.blob().decode("utf-8"))

    offsets = r.array("<i8")
    par_indptr = r.array("<i8")
    par_idx = r.array("<i4")
    lemma_counts = r.array("<i4")
    lemma_ids = r.array("<i4")
    words = r.blob().decode("utf-8").split("\n")
    sense_indptr = r.array("<i8")
    sense_idx = r.array("<i4")
    exc_blob = r.blob().decode("utf-8")
    stats = TaxonomyStats(
        depth=r.array("<i4"), subsumer_count=r.array("<i4"),
        subvertex_count=r.array("<i4"), leaf_count=r.array("<i4"),
        commonness=r.array("<f8"), inv_depth_sum=r.array("<f8"),
        is_leaf=r.array("u1").astype(bool),
        word_commonness=r.array("<f8"))

    if len(offsets) != meta["n_synsets"] or len(words) != meta["n_words"]:
        raise CacheError("cache metadata disagrees with payload sizes")

    # rebuild synset records and revalidate the structural invariants
    boundaries = np.zeros(len(offsets) + 1, dtype=np.int64)
    np.cumsum(lemma_counts, out=boundaries[1:])
    records = []
    for i, off in enumerate(offsets):
        lemmas = tuple(words[w] for w in lemma_ids[boundaries[i]:boundaries[i + 1]])
        hypers = tuple(int(offsets[p])
                       for p in par_idx[par_indptr[i]:par_indptr[i + 1]])
        records.append(SynsetRecord(int(off), lemmas, hypers, line_no=i + 1))
    taxonomy = Taxonomy.build(records)

    exceptions = {}
    if exc_blob:
        for line in exc_blob.split("\n"):
            fields = line.split(" ")
            exceptions[fields[0]] = tuple(fields[1:])
    lexicon = Lexicon(words, sense_indptr, sense_idx, exceptions,
                      meta["word_source"])

    c = meta["constants"]
    constants = DbConstants(
        max_vertices=c["max_vertices"], max_leaves=c["max_leaves"],
        max_depth=c["max_depth"],
        min_commonness=Fraction(*c["min_commonness"]),
        max_commonness=c["max_commonness"], word_count=c["word_count"],
        m_edges=c["m_edges"], w_edges=c["w_edges"],
        min_commonness_words=tuple(c["min_commonness_words"]),
        max_commonness_word=c["max_commonness_word"])

    return SemanticNet(taxonomy, lexicon, stats, constants)

"""Noun taxonomy graph engine.

The is-a hierarchy is held as CSR adjacency over dense synset indices
(position in the offset-sorted synset list). All per-synset statistics are
precomputed once with exact set semantics (the DAG has multiple inheritance,
so descendant/ancestor quantities are set sizes, never sums over children).

Terminology used throughout:

- subsumers(v): ancestors of v in the is-a graph, including v itself
- subvertices(v): descendants of v, including v itself
- leaves(v): subvertices of v with no hyponyms
- depth(v): 1 + shortest hypernym path length from the root synset
- commonness(v): sum over leaves(v) of 1/|subsumers(leaf)|

Word-level variants take the union over a word's senses.
"""

from __future__ import annotations

import difflib
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import (ConstantsMismatchError, TaxonomyStructureError,
                     UnknownWordError)
from .wndb import SynsetRecord, parse_data_noun, parse_index_noun, parse_noun_exc

logger = logging.getLogger(__name__)

ROOT_LEMMA = "entity"


def _build_csr(n: int, src: np.ndarray, dst: np.ndarray,
               sort_dst: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Build CSR (indptr, indices) from edge arrays; rows 0..n-1."""
    if len(src) == 0:
        return np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int32)
    if sort_dst:
        order = np.lexsort((dst, src))
    else:
        order = np.argsort(src, kind="stable")
    src_sorted = src[order]
    indices = dst[order].astype(np.int32, copy=False)
    counts = np.bincount(src_sorted, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


def _csr_rows(indptr: np.ndarray, indices: np.ndarray,
              rows: np.ndarray) -> np.ndarray:
    """Concatenate the CSR index lists of several rows (vectorized)."""
    starts = indptr[rows]
    counts = indptr[rows + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=indices.dtype)
    cum = np.zeros(len(rows), dtype=np.int64)
    np.cumsum(counts[:-1], out=cum[1:])
    positions = np.repeat(starts - cum, counts) + np.arange(total, dtype=np.int64)
    return indices[positions]


class Taxonomy:
    """Immutable rooted DAG of noun synsets (is-a edges, hypernym->hyponym)."""

    def __init__(self, offsets: np.ndarray, lemma_lists: tuple[tuple[str, ...], ...],
                 par_indptr: np.ndarray, par_idx: np.ndarray,
                 chl_indptr: np.ndarray, chl_idx: np.ndarray,
                 root: int, topo_order: np.ndarray):
        self.offsets = offsets                  # int64, ascending
        self.lemma_lists = lemma_lists          # record order, case-sensitive
        self.par_indptr, self.par_idx = par_indptr, par_idx
        self.chl_indptr, self.chl_idx = chl_indptr, chl_idx
        self.root = root
        self.topo_order = topo_order            # parents before children
        self.off_to_idx = {int(o): i for i, o in enumerate(offsets)}
        # undirected adjacency for word-to-word distance queries
        self.und_indptr, self.und_idx = _build_csr(
            len(offsets),
            np.concatenate([self._par_src(), self._chl_src()]),
            np.concatenate([self.par_idx.astype(np.int64),
                            self.chl_idx.astype(np.int64)]))

    def _par_src(self) -> np.ndarray:
        n = len(self.offsets)
        return np.repeat(np.arange(n, dtype=np.int64),
                         np.diff(self.par_indptr))

    def _chl_src(self) -> np.ndarray:
        n = len(self.offsets)
        return np.repeat(np.arange(n, dtype=np.int64),
                         np.diff(self.chl_indptr))

    def __len__(self) -> int:
        return len(self.offsets)

    @property
    def edge_count(self) -> int:
        return len(self.par_idx)

    def parents(self, idx: int) -> np.ndarray:
        return self.par_idx[self.par_indptr[idx]:self.par_indptr[idx + 1]]

    def children(self, idx: int) -> np.ndarray:
        return self.chl_idx[self.chl_indptr[idx]:self.chl_indptr[idx + 1]]

    def lemmas(self, idx: int) -> tuple[str, ...]:
        return self.lemma_lists[idx]

    @classmethod
    def build(cls, records: list[SynsetRecord]) -> "Taxonomy":
        records = sorted(records, key=lambda r: r.offset)
        offsets = np.array([r.offset for r in records], dtype=np.int64)
        if len(np.unique(offsets)) != len(offsets):
            dup = int(offsets[np.argmax(np.diff(offsets) == 0)])
            raise TaxonomyStructureError(f"duplicate synset offset {dup}")
        off_to_idx = {int(o): i for i, o in enumerate(offsets)}
        n = len(records)

        child_src, child_dst = [], []
        for i, rec in enumerate(records):
            for h in rec.hypernyms:
                j = off_to_idx.get(h)
                if j is None:
                    raise TaxonomyStructureError(
                        f"synset {rec.offset} points to missing hypernym {h} "
                        f"(data.noun line {rec.line_no})")
                child_src.append(j)   # hypernym -> hyponym edge
                child_dst.append(i)
        child_src = np.array(child_src, dtype=np.int64)
        child_dst = np.array(child_dst, dtype=np.int64)
        chl_indptr, chl_idx = _build_csr(n, child_src, child_dst)
        par_indptr, par_idx = _build_csr(n, child_dst, child_src)

        indeg = np.diff(par_indptr)
        roots = np.flatnonzero(indeg == 0)
        if len(roots) != 1:
            names = [records[int(r)].lemmas[0] for r in roots[:8]]
            raise TaxonomyStructureError(
                f"expected a single root synset, found {len(roots)}: {names}")
        root = int(roots[0])
        if ROOT_LEMMA not in records[root].lemmas:
            raise TaxonomyStructureError(
                f"root synset {records[root].offset} does not carry the lemma "
                f"{ROOT_LEMMA!r} (found {records[root].lemmas})")

        # Kahn topological order; single root + completion implies the graph
        # is acyclic and fully reachable from the root.
        remaining = indeg.copy()
        topo = np.empty(n, dtype=np.int32)
        topo[0] = root
        head, size = 0, 1
        while head < size:
            u = int(topo[head])
            head += 1
            for v in chl_idx[chl_indptr[u]:chl_indptr[u + 1]]:
                remaining[v] -= 1
                if remaining[v] == 0:
                    topo[size] = v
                    size += 1
        if size != n:
            stuck = np.flatnonzero(remaining > 0)[:8]
            names = [records[int(s)].lemmas[0] for s in stuck]
            raise TaxonomyStructureError(
                f"cycle detected in is-a edges involving {names}")

        lemma_lists = tuple(r.lemmas for r in records)
        return cls(offsets, lemma_lists, par_indptr, par_idx,
                   chl_indptr, chl_idx, root, topo)


class Lexicon:
    """Case-sensitive word vertices and their word->meaning incidence."""

    def __init__(self, words: list[str], sense_indptr: np.ndarray,
                 sense_idx: np.ndarray, exceptions: dict[str, tuple[str, ...]],
                 word_source: str):
        self.words = words
        self.word_to_id = {w: i for i, w in enumerate(words)}
        self.sense_indptr = sense_indptr
        self.sense_idx = sense_idx
        self.exceptions = exceptions
        self.word_source = word_source

    def __len__(self) -> int:
        return len(self.words)

    @property
    def edge_count(self) -> int:
        return len(self.sense_idx)

    @staticmethod
    def normalize(word: str) -> str:
        return word.strip().replace(" ", "_")

    def __contains__(self, word: str) -> bool:
        return self.normalize(word) in self.word_to_id

    def word_id(self, word: str) -> int | None:
        return self.word_to_id.get(self.normalize(word))

    def senses(self, word: str) -> np.ndarray:
        wid = self.word_id(word)
        if wid is None:
            raise UnknownWordError(word)
        return self.sense_idx[self.sense_indptr[wid]:self.sense_indptr[wid + 1]]

    def senses_by_id(self, wid: int) -> np.ndarray:
        return self.sense_idx[self.sense_indptr[wid]:self.sense_indptr[wid + 1]]

    def nearest(self, word: str, n: int = 5) -> list[str]:
        return difflib.get_close_matches(self.normalize(word), self.words, n=n)

    @classmethod
    def from_taxonomy(cls, taxonomy: Taxonomy,
                      index: dict[str, tuple[int, ...]] | None = None,
                      exceptions: dict[str, tuple[str, ...]] | None = None,
                      word_source: str = "merged") -> "Lexicon":
        """Build the lexicon from the cased lemma fields of the taxonomy.

        word_source="cased" keeps exactly the case-sensitive lemma strings of
        data.noun. word_source="merged" (default) additionally creates one
        all-lowercase vertex per lemma (the index.noun view) whose senses are
        the union over all case variants, except that lowercase projections
        containing "/" are not added as separate vertices when they differ
        from every cased lemma; this is the construction that reproduces the
        WordNet 3.1 reference word-vertex count.
        """
        if word_source not in ("merged", "cased"):
            raise ValueError(f"unknown word_source {word_source!r}")
        senses: dict[str, set[int]] = {}
        for i, lemmas in enumerate(taxonomy.lemma_lists):
            for lemma in lemmas:
                senses.setdefault(lemma, set()).add(i)
        if word_source == "merged":
            lowered: dict[str, set[int]] = {}
            for i, lemmas in enumerate(taxonomy.lemma_lists):
                for lemma in lemmas:
                    low = lemma.lower()
                    if "/" in low and low != lemma and low not in senses:
                        continue
                    lowered.setdefault(low, set()).add(i)
            # all-lowercase vertices answer for every case variant
            senses.update(lowered)
            if index is not None:
                derived = {w: tuple(sorted(int(taxonomy.offsets[i]) for i in s))
                           for w, s in lowered.items()}
                parsed = {w: tuple(sorted(offs)) for w, offs in index.items()
                          if w in derived}
                unexplained = [w for w in index
                               if w not in derived and "/" not in w]
                if derived != parsed or unexplained:
                    logger.warning(
                        "index.noun disagrees with the lowercase projection of "
                        "data.noun lemmas (%d vs %d entries); using data.noun",
                        len(index), len(derived))

        words = sorted(senses)
        counts = np.array([len(senses[w]) for w in words], dtype=np.int64)
        sense_indptr = np.zeros(len(words) + 1, dtype=np.int64)
        np.cumsum(counts, out=sense_indptr[1:])
        sense_idx = np.empty(int(counts.sum()), dtype=np.int32)
        pos = 0
        for w in words:
            ss = sorted(senses[w])
            sense_idx[pos:pos + len(ss)] = ss
            pos += len(ss)
        return cls(words, sense_indptr, sense_idx, exceptions or {}, word_source)


@dataclass
class TaxonomyStats:
    """Per-synset precomputed quantities plus the per-word commonness sweep."""

    depth: np.ndarray             # int32, root = 1
    subsumer_count: np.ndarray    # int32, includes self
    subvertex_count: np.ndarray   # int32, includes self
    leaf_count: np.ndarray        # int32, includes self when leaf
    commonness: np.ndarray        # float64
    inv_depth_sum: np.ndarray     # float64, sum of 1/depth over subvertices
    is_leaf: np.ndarray           # bool
    word_commonness: np.ndarray   # float64 per lexicon word id


def precompute_stats(taxonomy: Taxonomy, lexicon: Lexicon) -> TaxonomyStats:
    """Fill all per-synset statistics with exact set semantics."""
    n = len(taxonomy)
    depth = np.full(n, -1, dtype=np.int32)
    depth[taxonomy.root] = 1
    frontier = np.array([taxonomy.root], dtype=np.int64)
    d = 1
    while len(frontier):
        nxt = _csr_rows(taxonomy.chl_indptr, taxonomy.chl_idx, frontier)
        nxt = np.unique(nxt[depth[nxt] == -1]) if len(nxt) else nxt
        d += 1
        depth[nxt] = d
        frontier = nxt.astype(np.int64)
    if np.any(depth < 0):
        raise TaxonomyStructureError("synsets unreachable from the root")

    is_leaf = np.diff(taxonomy.chl_indptr) == 0

    # ancestor sets in topological order (small in tree-like taxonomies)
    anc: list[set[int] | None] = [None] * n
    subsumer_count = np.empty(n, dtype=np.int32)
    for u in taxonomy.topo_order:
        u = int(u)
        s = {u}
        for p in taxonomy.par_idx[taxonomy.par_indptr[u]:taxonomy.par_indptr[u + 1]]:
            s |= anc[int(p)]  # type: ignore[arg-type]
        anc[u] = s
        subsumer_count[u] = len(s)

    total_pairs = int(subsumer_count.sum())
    pair_v = np.empty(total_pairs, dtype=np.int32)   # descendant
    pair_a = np.empty(total_pairs, dtype=np.int32)   # ancestor
    pos = 0
    for v in range(n):
        s = anc[v]
        k = len(s)  # type: ignore[arg-type]
        pair_v[pos:pos + k] = v
        pair_a[pos:pos + k] = sorted(s)  # type: ignore[arg-type]
        pos += k
    del anc

    subvertex_count = np.bincount(pair_a, minlength=n).astype(np.int32)
    leaf_mask = is_leaf[pair_v]
    leaf_v, leaf_a = pair_v[leaf_mask], pair_a[leaf_mask]
    leaf_count = np.bincount(leaf_a, minlength=n).astype(np.int32)
    commonness = np.bincount(
        leaf_a, weights=1.0 / subsumer_count[leaf_v], minlength=n)
    inv_depth_sum = np.bincount(
        pair_a, weights=1.0 / depth[pair_v], minlength=n)

    # per-word commonness: for every (leaf, ancestor) pair, attribute the
    # leaf's weight to every word having that ancestor as a sense, counting
    # each (word, leaf) combination once
    syn_word_indptr, syn_word_idx = _build_csr(
        n, lexicon.sense_idx.astype(np.int64),
        np.repeat(np.arange(len(lexicon), dtype=np.int64),
                  np.diff(lexicon.sense_indptr)))
    counts = syn_word_indptr[leaf_a + 1] - syn_word_indptr[leaf_a]
    rep_leaf = np.repeat(leaf_v, counts)
    rep_word = _csr_rows(syn_word_indptr, syn_word_idx, leaf_a)
    key = rep_word.astype(np.int64) * n + rep_leaf
    key = np.unique(key)
    uniq_word = (key // n).astype(np.int64)
    uniq_leaf = (key % n).astype(np.int64)
    word_commonness = np.bincount(
        uniq_word, weights=1.0 / subsumer_count[uniq_leaf],
        minlength=len(lexicon))
    # monosemous words inherit the synset-path float exactly, keeping the
    # word-level constants bit-consistent with per-synset statistics
    sense_counts = np.diff(lexicon.sense_indptr)
    mono = np.flatnonzero(sense_counts == 1)
    word_commonness[mono] = commonness[
        lexicon.sense_idx[lexicon.sense_indptr[mono]]]

    return TaxonomyStats(depth, subsumer_count, subvertex_count, leaf_count,
                         commonness, inv_depth_sum, is_leaf, word_commonness)


@dataclass(frozen=True)
class NodeStats:
    """The quantities the information-content formulas consume."""

    depth: int
    subsumer_count: int
    subvertex_count: int
    leaf_count: int
    commonness: float
    inv_depth_sum: float


@dataclass(frozen=True)
class WordStats(NodeStats):
    """Word-level statistics (union over the word's senses)."""

    word: str = ""
    senses: tuple[int, ...] = ()
    polysemy: int = 0


@dataclass(frozen=True)
class DbConstants:
    """Database-wide constants, always computed from the loaded graph."""

    max_vertices: int
    max_leaves: int
    max_depth: int
    min_commonness: Fraction
    max_commonness: float
    word_count: int
    m_edges: int
    w_edges: int
    min_commonness_words: tuple[str, ...] = ()
    max_commonness_word: str = ""

    def as_dict(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "max_leaves": self.max_leaves,
            "max_depth": self.max_depth,
            "min_commonness": [self.min_commonness.numerator,
                               self.min_commonness.denominator],
            "max_commonness": self.max_commonness,
            "word_count": self.word_count,
            "m_edges": self.m_edges,
            "w_edges": self.w_edges,
            "min_commonness_words": list(self.min_commonness_words),
            "max_commonness_word": self.max_commonness_word,
        }


#: Reference constants for the official WordNet 3.1 noun database.
WORDNET31_REFERENCE = {
    "max_vertices": 82192,
    "max_leaves": 65031,
    "max_depth": 19,
    "min_commonness": Fraction(1, 35),
    "max_commonness": 6863.6,
    "word_count": 158441,
    "m_edges": 84505,
    "w_edges": 189555,
    "min_commonness_word": "Saint_Ambrose",
}

MAX_COMMONNESS_TOLERANCE = 0.1


def compute_constants(taxonomy: Taxonomy, lexicon: Lexicon,
                      stats: TaxonomyStats) -> DbConstants:
    wc = stats.word_commonness
    max_id = int(np.argmax(wc))
    min_val = float(wc.min())
    candidates = np.flatnonzero(wc <= min_val * (1 + 1e-9))

    def exact_commonness(wid: int) -> Fraction:
        visited = np.zeros(len(taxonomy), dtype=bool)
        stack = list(lexicon.senses_by_id(wid))
        total = Fraction(0)
        while stack:
            u = int(stack.pop())
            if visited[u]:
                continue
            visited[u] = True
            if stats.is_leaf[u]:
                total += Fraction(1, int(stats.subsumer_count[u]))
            stack.extend(taxonomy.children(u))
        return total

    exact = {int(c): exact_commonness(int(c)) for c in candidates}
    min_exact = min(exact.values())
    attained = tuple(sorted(lexicon.words[c] for c, v in exact.items()
                            if v == min_exact))

    return DbConstants(
        max_vertices=len(taxonomy),
        max_leaves=int(stats.is_leaf.sum()),
        max_depth=int(stats.depth.max()),
        min_commonness=min_exact,
        max_commonness=float(wc[max_id]),
        word_count=len(lexicon),
        m_edges=taxonomy.edge_count,
        w_edges=lexicon.edge_count,
        min_commonness_words=attained,
        max_commonness_word=lexicon.words[max_id],
    )


def verify_constants(computed: DbConstants,
                     reference: dict = WORDNET31_REFERENCE) -> dict:
    """Compare computed constants to the reference table; return mismatches."""
    mismatches: dict[str, tuple[object, object]] = {}
    for key in ("max_vertices", "max_leaves", "max_depth", "word_count",
                "m_edges", "w_edges"):
        if getattr(computed, key) != reference[key]:
            mismatches[key] = (getattr(computed, key), reference[key])
    if computed.min_commonness != reference["min_commonness"]:
        mismatches["min_commonness"] = (computed.min_commonness,
                                        reference["min_commonness"])
    if abs(computed.max_commonness - reference["max_commonness"]) > \
            MAX_COMMONNESS_TOLERANCE:
        mismatches["max_commonness"] = (computed.max_commonness,
                                        reference["max_commonness"])
    if reference.get("min_commonness_word") and \
            reference["min_commonness_word"] not in computed.min_commonness_words:
        mismatches["min_commonness_word"] = (computed.min_commonness_words,
                                             reference["min_commonness_word"])
    return mismatches


@dataclass(frozen=True)
class PairContext:
    """Everything a similarity formula needs about a word pair."""

    distance: int
    lcs: int          # dense synset index
    lcs_depth: int
    lcs_offset: int
    path_sum: int     # minimal summed directed distance through the LCS


class SemanticNet:
    """Loaded taxonomy + lexicon + statistics with cached pair queries."""

    def __init__(self, taxonomy: Taxonomy, lexicon: Lexicon,
                 stats: TaxonomyStats, constants: DbConstants):
        self.taxonomy = taxonomy
        self.lexicon = lexicon
        self.stats = stats
        self.constants = constants
        self._word_stats: dict[int, WordStats] = {}
        self._pair_cache: dict[tuple[int, int], PairContext] = {}

    def __copy__(self):
        # read-only shared resource: estimator clones reuse the instance
        return self

    def __deepcopy__(self, memo):
        return self

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, taxonomy: Taxonomy, lexicon: Lexicon) -> "SemanticNet":
        stats = precompute_stats(taxonomy, lexicon)
        constants = compute_constants(taxonomy, lexicon, stats)
        return cls(taxonomy, lexicon, stats, constants)

    # -- lookups -----------------------------------------------------------

    def require_word(self, word: str) -> int:
        wid = self.lexicon.word_id(word)
        if wid is None:
            raise UnknownWordError(word, self.lexicon.nearest(word))
        return wid

    def synset_stats(self, idx: int) -> NodeStats:
        s = self.stats
        return NodeStats(int(s.depth[idx]), int(s.subsumer_count[idx]),
                         int(s.subvertex_count[idx]), int(s.leaf_count[idx]),
                         float(s.commonness[idx]), float(s.inv_depth_sum[idx]))

    def word_ancestors(self, wid: int) -> dict[int, int]:
        """Upward multi-source BFS: ancestor synset -> min directed distance
        from the ancestor down to any sense of the word."""
        tax = self.taxonomy
        dist: dict[int, int] = {int(s): 0 for s in self.lexicon.senses_by_id(wid)}
        frontier = list(dist)
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for p in tax.par_idx[tax.par_indptr[u]:tax.par_indptr[u + 1]]:
                    p = int(p)
                    if p not in dist:
                        dist[p] = d
                        nxt.append(p)
            frontier = nxt
        return dist

    def _descendant_union(self, senses: np.ndarray) -> tuple[int, int, float, float]:
        """(count, leaf_count, commonness, inv_depth_sum) over the union of
        the senses' descendant sets."""
        tax, s = self.taxonomy, self.stats
        visited = np.zeros(len(tax), dtype=bool)
        stack = [int(x) for x in senses]
        count = leaf_count = 0
        commonness = 0.0
        inv_depth = 0.0
        while stack:
            u = stack.pop()
            if visited[u]:
                continue
            visited[u] = True
            count += 1
            inv_depth += 1.0 / float(s.depth[u])
            if s.is_leaf[u]:
                leaf_count += 1
                commonness += 1.0 / float(s.subsumer_count[u])
            start, end = tax.chl_indptr[u], tax.chl_indptr[u + 1]
            stack.extend(int(c) for c in tax.chl_idx[start:end])
        return count, leaf_count, commonness, inv_depth

    def word_stats(self, word: str) -> WordStats:
        wid = self.require_word(word)
        cached = self._word_stats.get(wid)
        if cached is not None:
            return cached
        senses = self.lexicon.senses_by_id(wid)
        s = self.stats
        depth = int(s.depth[senses].min())
        if len(senses) == 1:
            u = int(senses[0])
            ws = WordStats(depth, int(s.subsumer_count[u]),
                           int(s.subvertex_count[u]), int(s.leaf_count[u]),
                           float(s.commonness[u]), float(s.inv_depth_sum[u]),
                           word=self.lexicon.words[wid],
                           senses=(u,), polysemy=1)
        else:
            n_sub = len(self.word_ancestors(wid))
            count, leaves, commonness, inv_depth = self._descendant_union(senses)
            ws = WordStats(depth, n_sub, count, leaves, commonness, inv_depth,
                           word=self.lexicon.words[wid],
                           senses=tuple(int(x) for x in senses),
                           polysemy=len(senses))
        self._word_stats[wid] = ws
        return ws

    # -- pair queries --------------------------------------------------------

    def lcs(self, x: str, y: str) -> tuple[int, int, int]:
        """Lowest common subsumer of two distinct words.

        Among common subsumers minimizing the summed directed distance to the
        two words, picks the deepest; remaining ties go to the smallest
        synset offset. Returns (dense index, depth, summed distance).
        """
        if x == y:
            raise ValueError("LCS requires two distinct words")
        wx, wy = self.require_word(x), self.require_word(y)
        return self._lcs_ids(wx, wy)

    def _lcs_ids(self, wx: int, wy: int) -> tuple[int, int, int]:
        dx = self.word_ancestors(wx)
        dy = self.word_ancestors(wy)
        if len(dy) < len(dx):
            dx, dy = dy, dx
        best = None
        depth, offsets = self.stats.depth, self.taxonomy.offsets
        for z, d1 in dx.items():
            d2 = dy.get(z)
            if d2 is None:
                continue
            key = (d1 + d2, -int(depth[z]), int(offsets[z]))
            if best is None or key < best[0]:
                best = (key, z)
        if best is None:
            raise TaxonomyStructureError("words share no common subsumer")
        (path_sum, neg_depth, _), z = best
        return z, -neg_depth, path_sum

    def distance(self, x: str, y: str) -> int:
        """Shortest undirected path between any sense of x and any sense of y
        in the meanings graph; 0 when the words share a sense."""
        if x == y:
            raise ValueError("distance requires two distinct words")
        wx, wy = self.require_word(x), self.require_word(y)
        return self._distance_ids(wx, wy)

    def _distance_ids(self, wx: int, wy: int) -> int:
        sx = self.lexicon.senses_by_id(wx)
        sy = self.lexicon.senses_by_id(wy)
        target = np.zeros(len(self.taxonomy), dtype=bool)
        target[sy] = True
        if target[sx].any():
            return 0
        tax = self.taxonomy
        visited = np.zeros(len(tax), dtype=bool)
        visited[sx] = True
        frontier = np.unique(sx).astype(np.int64)
        limit = 2 * (self.constants.max_depth - 1)
        d = 0
        while len(frontier):
            d += 1
            nxt = _csr_rows(tax.und_indptr, tax.und_idx, frontier)
            nxt = np.unique(nxt)
            nxt = nxt[~visited[nxt]]
            if len(nxt) and target[nxt].any():
                return d
            visited[nxt] = True
            frontier = nxt.astype(np.int64)
            if d > limit:
                break
        raise TaxonomyStructureError(
            f"no path between word senses within {limit} edges")

    def pair_context(self, x: str, y: str) -> PairContext:
        wx, wy = self.require_word(x), self.require_word(y)
        if wx == wy:
            raise ValueError("pair context requires two distinct words")
        key = (wx, wy) if wx < wy else (wy, wx)
        ctx = self._pair_cache.get(key)
        if ctx is None:
            z, z_depth, path_sum = self._lcs_ids(wx, wy)
            dist = self._distance_ids(wx, wy)
            ctx = PairContext(dist, z, z_depth,
                              int(self.taxonomy.offsets[z]), path_sum)
            self._pair_cache[key] = ctx
        return ctx

    def verify(self, reference: dict = WORDNET31_REFERENCE,
               strict: bool = True) -> dict:
        mismatches = verify_constants(self.constants, reference)
        if mismatches and strict:
            raise ConstantsMismatchError(mismatches)
        return mismatches


def load_database(directory: str | Path,
                  word_source: str = "merged") -> tuple[Taxonomy, Lexicon]:
    """Parse the noun database files into (taxonomy, lexicon)."""
    records = parse_data_noun(directory)
    index = parse_index_noun(directory)
    exceptions = parse_noun_exc(directory)
    taxonomy = Taxonomy.build(records)
    lexicon = Lexicon.from_taxonomy(taxonomy, index=index,
                                    exceptions=exceptions,
                                    word_source=word_source)
    return taxonomy, lexicon


def load(directory: str | Path, word_source: str = "merged") -> SemanticNet:
    """Parse, precompute and wrap the database in one call."""
    taxonomy, lexicon = load_database(directory, word_source=word_source)
    return SemanticNet.build(taxonomy, lexicon)

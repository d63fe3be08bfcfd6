"""Time-dynamics analysis: segmentation, per-segment averages, trend lines,
group comparisons, and measure correlation/clustering.

A conversation is segmented into T time points on sentence boundaries placed
as close as possible to the equal word-count cut marks, subject to every
segment containing at least MIN_NOUNS_PER_SEGMENT nouns. Convergence is a
positive OLS slope of the average similarity over time points, divergence a
negative one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.cluster import hierarchy

from .errors import SegmentationError
from .measures import (IC_FORMULAS, Diagnostics, IcContext, MeasureId,
                       average_pairwise_similarity, average_word_measure,
                       parse_measure, similarity, word_measure)
from .taxonomy import SemanticNet
from .textpipe import NounOccurrence, NounSequence

MIN_NOUNS_PER_SEGMENT = 5
MIN_NOUNS_PER_CONVERSATION = 15
SLOPE_EPSILON = 1e-9


@dataclass
class Segment:
    index: int                       # time point, 1-based
    sentence_span: tuple[int, int]   # [start, end) sentence indices
    occurrences: list[NounOccurrence]
    token_count: int

    @property
    def nouns(self) -> list[str]:
        return [o.noun for o in self.occurrences]

    @property
    def unique_nouns(self) -> list[str]:
        return sorted(set(self.nouns))


def segment(seq: NounSequence, t: int = 3) -> list[Segment]:
    """Split a conversation into t time points.

    Boundaries sit on sentence breaks, chosen to minimize total deviation
    from the ideal equal word-count cuts while keeping at least
    MIN_NOUNS_PER_SEGMENT nouns in every segment; raises SegmentationError
    when that is impossible.
    """
    if t < 2:
        raise ValueError("need at least 2 time points")
    total_nouns = len(seq.entries)
    if total_nouns < MIN_NOUNS_PER_CONVERSATION:
        raise SegmentationError(
            f"conversation {seq.source_id!r} has {total_nouns} nouns; "
            f"minimum {MIN_NOUNS_PER_CONVERSATION}")
    if total_nouns < MIN_NOUNS_PER_SEGMENT * t:
        raise SegmentationError(
            f"conversation {seq.source_id!r} has {total_nouns} nouns; "
            f"{t} time points require {MIN_NOUNS_PER_SEGMENT * t}")

    ws = seq.tokens_per_sentence
    noun_counts = seq.sentence_noun_counts()
    s_count = len(ws)
    cumw = np.zeros(s_count + 1)
    np.cumsum(ws, out=cumw[1:])
    cumn = np.zeros(s_count + 1, dtype=np.int64)
    np.cumsum(noun_counts, out=cumn[1:])
    total_w = cumw[-1]

    # dp[k][s]: best total deviation with boundary k placed before sentence s
    inf = float("inf")
    dp = np.full(s_count + 1, inf)
    dp[0] = 0.0
    back = np.zeros((t, s_count + 1), dtype=np.int64)
    for k in range(1, t):
        ideal = total_w * k / t
        ndp = np.full(s_count + 1, inf)
        best, best_at = inf, -1
        ptr = 0
        for s in range(s_count + 1):
            # admit candidates s' whose segment [s', s) holds >= 5 nouns
            while ptr <= s_count and cumn[ptr] <= cumn[s] - MIN_NOUNS_PER_SEGMENT:
                if dp[ptr] < best:
                    best, best_at = dp[ptr], ptr
                ptr += 1
            if best < inf:
                ndp[s] = best + abs(cumw[s] - ideal)
                back[k][s] = best_at
        dp = ndp
    best, best_at = inf, -1
    for s in range(s_count + 1):
        if cumn[-1] - cumn[s] >= MIN_NOUNS_PER_SEGMENT and dp[s] < best:
            best, best_at = dp[s], s
    if best_at < 0:
        raise SegmentationError(
            f"conversation {seq.source_id!r}: no sentence split satisfies "
            f"{MIN_NOUNS_PER_SEGMENT} nouns per segment")

    bounds = [0] * (t + 1)
    bounds[t] = s_count
    s = best_at
    for k in range(t - 1, 0, -1):
        bounds[k] = s
        s = int(back[k][s])

    segments = []
    for k in range(t):
        lo, hi = bounds[k], bounds[k + 1]
        occ = [o for o in seq.entries if lo <= o.sentence_index < hi]
        segments.append(Segment(k + 1, (lo, hi), occ,
                                int(cumw[hi] - cumw[lo])))
    return segments


@dataclass
class SegmentValues:
    index: int
    unique_nouns: list[str]
    noun_token_count: int
    token_count: int
    values: dict[str, float]


@dataclass
class SegmentSeries:
    group: str
    source_id: str
    segments: list[SegmentValues]
    dropped_count: int = 0
    extraction_mode: str = "dictionary"

    def series_for(self, measure: str) -> list[float]:
        return [s.values[measure] for s in self.segments]


def series(segments: list[Segment], measures: list[MeasureId | str],
           net: SemanticNet, group: str = "", source_id: str = "",
           token_weighted: bool = False,
           diagnostics: Diagnostics | None = None) -> SegmentSeries:
    """Per-segment averages: similarity measures over unordered pairs of
    unique nouns, single-word measures over unique nouns (or over token
    occurrences with token_weighted)."""
    parsed = [parse_measure(m) if isinstance(m, str) else m for m in measures]
    ctx = IcContext.from_constants(net.constants)
    out = []
    for seg in segments:
        unique = seg.unique_nouns
        values: dict[str, float] = {}
        for m in parsed:
            if m.is_similarity:
                if len(unique) < 2:
                    raise SegmentationError(
                        f"segment {seg.index} has {len(unique)} unique nouns; "
                        "similarity needs at least 2")
                values[str(m)] = average_pairwise_similarity(
                    net, unique, m, ctx, diagnostics)
            elif token_weighted:
                vals = [word_measure(net, o.noun, m, ctx)
                        for o in seg.occurrences]
                values[str(m)] = sum(vals) / len(vals)
            else:
                values[str(m)] = average_word_measure(net, unique, m, ctx)
            if m.kind == "polysemy":
                # raw and log2-transformed views are both reported
                if token_weighted:
                    counts = [float(net.word_stats(o.noun).polysemy)
                              for o in seg.occurrences]
                else:
                    counts = [float(net.word_stats(w).polysemy)
                              for w in unique]
                values["polysemy_log2"] = sum(
                    math.log2(c) for c in counts) / len(counts)
        out.append(SegmentValues(seg.index, unique, len(seg.occurrences),
                                 seg.token_count, values))
    return SegmentSeries(group, source_id, out)


@dataclass(frozen=True)
class TrendLine:
    slope: float
    intercept: float
    classification: str   # convergence | divergence | flat


@dataclass
class TrendReport:
    group: str
    source_id: str
    trends: dict[str, TrendLine]
    noun_counts: list[int]
    epsilon: float = SLOPE_EPSILON


def ols_line(values: list[float]) -> tuple[float, float]:
    """Closed-form least squares for points (t, value), t = 1..T."""
    t_count = len(values)
    ts = np.arange(1, t_count + 1, dtype=float)
    ys = np.asarray(values, dtype=float)
    t_mean = ts.mean()
    y_mean = ys.mean()
    sxx = float(((ts - t_mean) ** 2).sum())
    slope = float(((ts - t_mean) * (ys - y_mean)).sum()) / sxx
    return slope, y_mean - slope * t_mean


def classify_slope(slope: float, epsilon: float = SLOPE_EPSILON) -> str:
    if slope > epsilon:
        return "convergence"
    if slope < -epsilon:
        return "divergence"
    return "flat"


def fit_trend(seg_series: SegmentSeries,
              epsilon: float = SLOPE_EPSILON) -> TrendReport:
    if len(seg_series.segments) < 2:
        raise ValueError("trend fitting needs at least 2 time points")
    trends = {}
    for measure in seg_series.segments[0].values:
        slope, intercept = ols_line(seg_series.series_for(measure))
        trends[measure] = TrendLine(slope, intercept,
                                    classify_slope(slope, epsilon))
    return TrendReport(seg_series.group, seg_series.source_id, trends,
                       [s.noun_token_count for s in seg_series.segments],
                       epsilon)


# -- group comparison -----------------------------------------------------

@dataclass
class GroupedText:
    """One analysis unit: the conjoined conversation text of one group."""

    subject: str
    scheme: str
    group: str
    text: str
    success: bool | None = None


def split_by_grouping(transcript, grouping: dict) -> list[GroupedText]:
    """Apply one of the grouping schemes in a grouping spec to a cleaned
    transcript; returns the conjoined text per (scheme, group)."""
    subject = grouping.get("subject", transcript.source_id)
    out: list[GroupedText] = []

    roles = grouping.get("roles")
    if roles:
        by_role: dict[str, list[str]] = {}
        for utt in transcript.utterances:
            role = roles.get(utt.speaker or "")
            if role:
                by_role.setdefault(role, []).append(utt.text)
        for role in sorted(by_role):
            out.append(GroupedText(subject, "role", role,
                                   "\n".join(by_role[role])))

    for idea in grouping.get("ideas", []):
        parts = []
        for lo, hi in idea["utterances"]:
            parts.extend(u.text for u in transcript.utterances[lo:hi])
        out.append(GroupedText(subject, "idea_success",
                               idea["label"], "\n".join(parts),
                               success=bool(idea.get("success"))))

    for scheme, key in (("feedback", "feedback_marker"),
                        ("evaluation", "evaluation_marker")):
        marker = grouping.get(key)
        if marker is not None:
            before = "\n".join(u.text for u in transcript.utterances[:marker])
            after = "\n".join(u.text for u in transcript.utterances[marker:])
            out.append(GroupedText(subject, scheme, "before", before))
            out.append(GroupedText(subject, scheme, "after", after))
    return out


@dataclass
class GroupComparison:
    rows: list[dict]                 # long format
    trend_rows: list[dict]           # one per (subject, group, measure)
    group_mean_slopes: dict[str, dict[str, float]]   # group -> measure -> mean
    failures: list[dict] = field(default_factory=list)


def compare_groups(analyzed: list[tuple[GroupedText, SegmentSeries, TrendReport]],
                   ) -> GroupComparison:
    """Assemble long-format rows and per-group mean slopes from analyzed
    (group, series, trend) triples; output order is independent of input
    order."""
    rows, trend_rows = [], []
    slope_acc: dict[str, dict[str, list[float]]] = {}
    for grouped, seg_series, trend in analyzed:
        for seg in seg_series.segments:
            for measure in sorted(seg.values):
                rows.append({
                    "subject": grouped.subject, "scheme": grouped.scheme,
                    "group": grouped.group, "success": grouped.success,
                    "t": seg.index, "measure": measure,
                    "value": seg.values[measure],
                })
        for measure in sorted(trend.trends):
            line = trend.trends[measure]
            trend_rows.append({
                "subject": grouped.subject, "scheme": grouped.scheme,
                "group": grouped.group, "success": grouped.success,
                "measure": measure, "slope": line.slope,
                "intercept": line.intercept,
                "classification": line.classification,
            })
            slope_acc.setdefault(grouped.group, {}).setdefault(
                measure, []).append(line.slope)

    key = lambda r: (r["subject"], r["scheme"], r["group"],
                     r.get("t", 0), r["measure"])
    rows.sort(key=key)
    trend_rows.sort(key=key)
    means = {g: {m: float(np.mean(v)) for m, v in sorted(ms.items())}
             for g, ms in sorted(slope_acc.items())}
    return GroupComparison(rows, trend_rows, means)


# -- measure correlation ---------------------------------------------------

@dataclass
class CorrelationResult:
    labels: list[str]
    matrix: np.ndarray               # Pearson r, may hold nan for flagged
    zero_variance: list[str]
    linkage: np.ndarray | None       # scipy linkage over non-degenerate labels
    kept_labels: list[str]

    def top_split(self) -> tuple[set[str], set[str]]:
        """Labels of the two clusters obtained by cutting the dendrogram at
        its top merge."""
        if self.linkage is None:
            raise ValueError("no dendrogram for degenerate input")
        assign = hierarchy.fcluster(self.linkage, t=2, criterion="maxclust")
        a = {l for l, c in zip(self.kept_labels, assign) if c == 1}
        b = {l for l, c in zip(self.kept_labels, assign) if c == 2}
        return a, b


def _word_pool(net: SemanticNet, scope: str) -> list[str]:
    if scope == "all":
        return net.lexicon.words
    if scope == "common":
        # single-token lowercase alphabetic words, the register conversation
        # nouns live in (excludes proper names, acronyms, collocations)
        return [w for w in net.lexicon.words if w.isalpha() and w.islower()]
    raise ValueError(f"unknown word scope {scope!r}")


def sample_words(net: SemanticNet, size: int, rng: np.random.Generator,
                 scope: str = "common") -> list[str]:
    pool = _word_pool(net, scope)
    ids = rng.choice(len(pool), size=size, replace=False)
    return [pool[int(i)] for i in ids]


def sample_pairs(net: SemanticNet, size: int, rng: np.random.Generator,
                 scope: str = "neighborhood",
                 max_steps: int = 6) -> list[tuple[str, str]]:
    """Random distinct word pairs.

    scope="uniform" draws both words independently from the lexicon; almost
    every such pair is semantically remote. scope="neighborhood" (default)
    draws the second word by a short random walk (<= max_steps undirected
    is-a edges) from a sense of the first, yielding the topically-related
    distance mix that conversation noun pairs exhibit.
    """
    words = net.lexicon.words
    tax = net.taxonomy
    pairs: list[tuple[str, str]] = []
    seen = set()
    while len(pairs) < size:
        if scope == "uniform":
            a = words[int(rng.integers(len(words)))]
            b = words[int(rng.integers(len(words)))]
        elif scope == "neighborhood":
            a = words[int(rng.integers(len(words)))]
            senses = net.lexicon.senses(a)
            v = int(senses[int(rng.integers(len(senses)))])
            for _ in range(int(rng.integers(1, max_steps + 1))):
                nbrs = tax.und_idx[tax.und_indptr[v]:tax.und_indptr[v + 1]]
                if not len(nbrs):
                    break
                v = int(nbrs[int(rng.integers(len(nbrs)))])
            lemmas = tax.lemmas(v)
            b = lemmas[int(rng.integers(len(lemmas)))]
        else:
            raise ValueError(f"unknown pair scope {scope!r}")
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            continue
        seen.add(key)
        pairs.append((a, b))
    return pairs


def measure_matrix(net: SemanticNet, measures: list[MeasureId],
                   words: list[str] | None = None,
                   pairs: list[tuple[str, str]] | None = None) -> np.ndarray:
    """Columns = measures, rows = sampled words (single-word measures) or
    sampled pairs (similarities)."""
    ctx = IcContext.from_constants(net.constants)
    cols = []
    for m in measures:
        if m.is_similarity:
            if pairs is None:
                raise ValueError(f"{m} needs a pair sample")
            cols.append([similarity(net, x, y, m, ctx) for x, y in pairs])
        else:
            if words is None:
                raise ValueError(f"{m} needs a word sample")
            cols.append([word_measure(net, w, m, ctx) for w in words])
    return np.array(cols, dtype=float).T


def measure_correlation(matrix: np.ndarray,
                        labels: list[str]) -> CorrelationResult:
    """Pearson correlation between measure columns plus average-linkage
    clustering on distance 1 - r."""
    if matrix.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    std = matrix.std(axis=0)
    zero_variance = [l for l, s in zip(labels, std) if s == 0.0]
    keep = [i for i, s in enumerate(std) if s > 0.0]
    kept_labels = [labels[i] for i in keep]

    r = np.full((len(labels), len(labels)), np.nan)
    sub = None
    if keep:
        sub = np.atleast_2d(np.corrcoef(matrix[:, keep], rowvar=False))
        sub = (sub + sub.T) / 2.0   # r is symmetric; corrcoef drifts by ulps
        for a, ia in enumerate(keep):
            for b, ib in enumerate(keep):
                r[ia, ib] = sub[a, b]

    linkage = None
    if len(keep) >= 2:
        dist = 1.0 - np.clip(sub, -1.0, 1.0)
        np.fill_diagonal(dist, 0.0)
        condensed = dist[np.triu_indices(len(keep), k=1)]
        linkage = hierarchy.linkage(condensed, method="average")
    return CorrelationResult(labels, r, zero_variance, linkage, kept_labels)


def dendrogram_tree(result: CorrelationResult) -> dict:
    """The clustering as a nested JSON-friendly tree."""
    if result.linkage is None:
        raise ValueError("no dendrogram for degenerate input")
    root, _ = hierarchy.to_tree(result.linkage, rd=True)

    def convert(node) -> dict:
        if node.is_leaf():
            return {"label": result.kept_labels[node.id]}
        return {"distance": round(float(node.dist), 12),
                "children": [convert(node.left), convert(node.right)]}

    return convert(root)


def dendrogram_text(result: CorrelationResult) -> str:
    """Plain-text rendering of the dendrogram."""
    tree = dendrogram_tree(result)
    lines: list[str] = []

    def walk(node: dict, depth: int) -> None:
        pad = "  " * depth
        if "label" in node:
            lines.append(f"{pad}- {node['label']}")
        else:
            lines.append(f"{pad}+ d={node['distance']:.4f}")
            for child in node["children"]:
                walk(child, depth + 1)

    walk(tree, 0)
    return "\n".join(lines)


def correlation_report(result: CorrelationResult) -> dict:
    return {
        "labels": result.labels,
        "pearson_r": [[None if np.isnan(v) else round(float(v), 12)
                       for v in row] for row in result.matrix],
        "zero_variance": result.zero_variance,
        "dendrogram": dendrogram_tree(result) if result.linkage is not None
        else None,
    }

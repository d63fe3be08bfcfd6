"""The 49 semantic measures over the noun taxonomy.

One abstraction measure, one polysemy measure, 7 information-content (IC)
formulas, 5 path-based similarities, and 5 IC-based similarity families that
combine with every IC formula (35 measures). All formulas are ratios of
logarithms or exponentials, so the logarithm base cancels; the base is still
pluggable through IcContext to allow verifying that invariance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .errors import IdenticalWordsError
from .taxonomy import DbConstants, NodeStats, PairContext, SemanticNet

IC_FORMULAS = ("blanchard", "meng", "sanchez", "sanchez-batet", "seco",
               "yuan", "zhou")
PATH_FORMULAS = ("al-mubaid-nguyen", "leacock-chodorow", "li", "rada",
                 "wu-palmer")
IC_SIM_FORMULAS = ("jiang-conrath", "lin", "meng", "resnik", "zhou")

#: measures the formulas bound to [0, 1] by construction
_NORMALIZED_ICS = frozenset({"blanchard", "sanchez", "sanchez-batet", "seco"})


@dataclass(frozen=True)
class MeasureId:
    """Identifier of one of the 49 measures.

    kind is one of "abstraction", "polysemy", "ic", "sim_path", "sim_ic";
    formula names the IC or similarity formula; ic names the IC formula an
    IC-based similarity is instantiated with.
    """

    kind: str
    formula: str | None = None
    ic: str | None = None

    def __str__(self) -> str:
        if self.kind in ("abstraction", "polysemy"):
            return self.kind
        if self.kind == "ic":
            return f"ic:{self.formula}"
        if self.kind == "sim_path":
            return f"sim:{self.formula}"
        return f"sim:{self.formula}:{self.ic}"

    @property
    def is_similarity(self) -> bool:
        return self.kind in ("sim_path", "sim_ic")

    @property
    def normalized(self) -> bool:
        if self.kind == "sim_path":
            return True
        if self.kind == "ic":
            return self.formula in _NORMALIZED_ICS
        return False


def parse_measure(text: str) -> MeasureId:
    """Parse a measure id like "abstraction", "ic:seco", "sim:rada" or
    "sim:lin:sanchez-batet"."""
    parts = text.strip().lower().split(":")
    if parts == ["abstraction"]:
        return MeasureId("abstraction")
    if parts == ["polysemy"]:
        return MeasureId("polysemy")
    if len(parts) == 2 and parts[0] == "ic" and parts[1] in IC_FORMULAS:
        return MeasureId("ic", parts[1])
    if len(parts) == 2 and parts[0] == "sim" and parts[1] in PATH_FORMULAS:
        return MeasureId("sim_path", parts[1])
    if (len(parts) == 3 and parts[0] == "sim" and parts[1] in IC_SIM_FORMULAS
            and parts[2] in IC_FORMULAS):
        return MeasureId("sim_ic", parts[1], parts[2])
    raise ValueError(f"unknown measure id: {text!r}")


def all_measures() -> list[MeasureId]:
    """The full catalog of 49 measure ids, in stable order."""
    out = [MeasureId("abstraction"), MeasureId("polysemy")]
    out += [MeasureId("ic", f) for f in IC_FORMULAS]
    out += [MeasureId("sim_path", f) for f in PATH_FORMULAS]
    out += [MeasureId("sim_ic", f, ic)
            for f in IC_SIM_FORMULAS for ic in IC_FORMULAS]
    return out


def similarity_measures() -> list[MeasureId]:
    return [m for m in all_measures() if m.is_similarity]


def measure_catalog() -> list[dict]:
    """Machine-readable catalog (id, family, ic, normalized, note)."""
    notes = {
        "sim:zhou": ("as printed, equal-IC zero-distance pairs score 0.5, "
                     "not 1"),
        "ic:meng": "not annotated as bounded above",
        "ic:yuan": "not annotated as bounded above",
        "ic:zhou": "not annotated as bounded above",
    }
    catalog = []
    for m in all_measures():
        family = {"abstraction": "abstraction", "polysemy": "polysemy",
                  "ic": "information-content", "sim_path": "path-similarity",
                  "sim_ic": "ic-similarity"}[m.kind]
        note = notes.get(f"{m.kind.split('_')[0]}:{m.formula}", "")
        if m.kind == "sim_ic" and m.formula == "zhou":
            note = notes["sim:zhou"]
        catalog.append({
            "id": str(m),
            "family": family,
            "formula": m.formula,
            "ic": m.ic,
            "normalized": m.normalized,
            "note": note,
        })
    return catalog


@dataclass
class IcContext:
    """Database constants consumed by the formulas, plus a pluggable log."""

    max_vertices: int
    max_leaves: int
    max_depth: int
    min_commonness: float
    max_commonness: float
    log: Callable[[float], float] = math.log

    @classmethod
    def from_constants(cls, constants: DbConstants,
                       log: Callable[[float], float] = math.log) -> "IcContext":
        return cls(constants.max_vertices, constants.max_leaves,
                   constants.max_depth, float(constants.min_commonness),
                   constants.max_commonness, log)


@dataclass
class Diagnostics:
    """Counters for degenerate pairs encountered during sweeps."""

    zero_ic_pairs: int = 0
    examples: list[tuple[str, str]] = field(default_factory=list)

    def flag_zero_ic(self, x: str, y: str) -> None:
        self.zero_ic_pairs += 1
        if len(self.examples) < 16:
            self.examples.append((x, y))


# -- information content -------------------------------------------------

def ic_from_stats(s: NodeStats, formula: str, ctx: IcContext) -> float:
    log = ctx.log
    if formula == "blanchard":
        return 1.0 - log(s.leaf_count) / log(ctx.max_leaves)
    if formula == "meng":
        return (log(s.depth) / log(ctx.max_depth)) * (
            1.0 - log(1.0 + s.inv_depth_sum) / log(ctx.max_vertices))
    if formula == "sanchez":
        return (log(s.leaf_count / (ctx.max_leaves * s.subsumer_count))
                / log(ctx.min_commonness / ctx.max_leaves))
    if formula == "sanchez-batet":
        # commonness <= max_commonness holds mathematically; the min() only
        # absorbs last-ulp float noise that would flip the sign at the root
        return (log(min(s.commonness / ctx.max_commonness, 1.0))
                / log(ctx.min_commonness / ctx.max_commonness))
    if formula == "seco":
        return 1.0 - log(s.subvertex_count) / log(ctx.max_vertices)
    if formula == "yuan":
        return (log(s.depth) / log(ctx.max_depth)) * (
            1.0 - log(s.leaf_count) / log(ctx.max_leaves)) + \
            log(s.subsumer_count) / log(ctx.max_vertices)
    if formula == "zhou":
        return 0.5 * (1.0 - log(s.subvertex_count) / log(ctx.max_vertices)
                      + log(s.depth) / log(ctx.max_depth))
    raise ValueError(f"unknown IC formula {formula!r}")


def ic_word(net: SemanticNet, word: str, formula: str,
            ctx: IcContext | None = None) -> float:
    ctx = ctx or IcContext.from_constants(net.constants)
    return ic_from_stats(net.word_stats(word), formula, ctx)


def ic_synset(net: SemanticNet, idx: int, formula: str,
              ctx: IcContext | None = None) -> float:
    ctx = ctx or IcContext.from_constants(net.constants)
    return ic_from_stats(net.synset_stats(idx), formula, ctx)


# -- single-word measures --------------------------------------------------

def abstraction_level(net: SemanticNet, word: str,
                      ctx: IcContext | None = None) -> float:
    ctx = ctx or IcContext.from_constants(net.constants)
    depth = net.word_stats(word).depth
    return 1.0 - (depth - 1) / (ctx.max_depth - 1)


def polysemy(net: SemanticNet, word: str) -> int:
    return net.word_stats(word).polysemy


def word_measure(net: SemanticNet, word: str, measure: MeasureId,
                 ctx: IcContext | None = None) -> float:
    if measure.kind == "abstraction":
        return abstraction_level(net, word, ctx)
    if measure.kind == "polysemy":
        return float(polysemy(net, word))
    if measure.kind == "ic":
        return ic_word(net, word, measure.formula, ctx)
    raise ValueError(f"{measure} is not a single-word measure")


# -- similarities -----------------------------------------------------------

def _path_similarity(formula: str, pc: PairContext, ctx: IcContext) -> float:
    log, d, lcs_depth = ctx.log, pc.distance, pc.lcs_depth
    md = ctx.max_depth
    if formula == "al-mubaid-nguyen":
        return 1.0 - log(1.0 + d * (md - lcs_depth)) / log(1.0 + 2.0 * (md - 1) ** 2)
    if formula == "leacock-chodorow":
        return 1.0 - log(d + 1.0) / log(2.0 * md - 1.0)
    if formula == "li":
        e = math.exp(1.2 * lcs_depth)
        return math.exp(-0.2 * d) * (e - 1.0) / (e + 1.0)
    if formula == "rada":
        return 1.0 - d / (2.0 * (md - 1))
    if formula == "wu-palmer":
        denom = 2.0 * (lcs_depth - 1) + d
        if denom == 0:  # synthetic root-lemma synonyms; unreachable on WN 3.1
            return 1.0
        return 2.0 * (lcs_depth - 1) / denom
    raise ValueError(f"unknown path similarity {formula!r}")


def _ic_similarity(formula: str, icx: float, icy: float, icl: float,
                   pc: PairContext, ctx: IcContext,
                   diagnostics: Diagnostics | None,
                   pair: tuple[str, str]) -> float:
    if formula == "jiang-conrath":
        return 1.0 - (icx + icy - 2.0 * icl) / 2.0
    if formula == "lin":
        if icx + icy == 0.0:
            if diagnostics is not None:
                diagnostics.flag_zero_ic(*pair)
            return 0.0
        return 2.0 * icl / (icx + icy)
    if formula == "meng":
        if icx + icy == 0.0:
            if diagnostics is not None:
                diagnostics.flag_zero_ic(*pair)
            return 0.0
        exponent = math.exp(0.08 * pc.distance) - 1.0
        if exponent == 0.0:
            return 1.0
        base = 2.0 * icl / (icx + icy)
        return max(base, 0.0) ** exponent
    if formula == "resnik":
        return icl
    if formula == "zhou":
        log = ctx.log
        return (1.0
                - 0.5 * (1.0 - log(pc.distance + 1.0) / log(2.0 * ctx.max_depth - 1.0))
                - 0.25 * (icx + icy - 2.0 * icl))
    raise ValueError(f"unknown IC similarity {formula!r}")


def similarity(net: SemanticNet, x: str, y: str,
               measure: MeasureId | str, ctx: IcContext | None = None,
               diagnostics: Diagnostics | None = None) -> float:
    """Similarity of two distinct in-lexicon words under one of the
    40 similarity measures."""
    if isinstance(measure, str):
        measure = parse_measure(measure)
    if not measure.is_similarity:
        raise ValueError(f"{measure} is not a similarity measure")
    x_n = net.lexicon.normalize(x)
    y_n = net.lexicon.normalize(y)
    if x_n == y_n:
        raise IdenticalWordsError(
            f"similarity is defined for distinct words only (got {x!r}, {y!r})")
    ctx = ctx or IcContext.from_constants(net.constants)
    pc = net.pair_context(x_n, y_n)
    if measure.kind == "sim_path":
        return _path_similarity(measure.formula, pc, ctx)
    icx = ic_word(net, x_n, measure.ic, ctx)
    icy = ic_word(net, y_n, measure.ic, ctx)
    icl = ic_synset(net, pc.lcs, measure.ic, ctx)
    return _ic_similarity(measure.formula, icx, icy, icl, pc, ctx,
                          diagnostics, (x_n, y_n))


def similarity_detail(net: SemanticNet, x: str, y: str,
                      measure: MeasureId | str,
                      ctx: IcContext | None = None) -> tuple[float, dict]:
    """Similarity plus the intermediate quantities, for auditable output."""
    if isinstance(measure, str):
        measure = parse_measure(measure)
    ctx = ctx or IcContext.from_constants(net.constants)
    value = similarity(net, x, y, measure, ctx)
    pc = net.pair_context(net.lexicon.normalize(x), net.lexicon.normalize(y))
    detail = {
        "distance": pc.distance,
        "lcs_offset": pc.lcs_offset,
        "lcs_lemmas": list(net.taxonomy.lemmas(pc.lcs)),
        "lcs_depth": pc.lcs_depth,
    }
    if measure.kind == "sim_ic":
        detail["ic_x"] = ic_word(net, x, measure.ic, ctx)
        detail["ic_y"] = ic_word(net, y, measure.ic, ctx)
        detail["ic_lcs"] = ic_synset(net, pc.lcs, measure.ic, ctx)
    return value, detail


def average_pairwise_similarity(net: SemanticNet, nouns: Iterable[str],
                                measure: MeasureId | str,
                                ctx: IcContext | None = None,
                                diagnostics: Diagnostics | None = None,
                                workers: int | None = None) -> float:
    """Mean similarity over all unordered pairs of distinct nouns.

    Pairs are enumerated and summed in lexicographic order so the result is
    bit-for-bit reproducible regardless of input order. With workers > 1 the
    pair values are computed concurrently but reduced in the same canonical
    order, so the result is identical to the serial sweep (engine caches are
    idempotent, concurrent fills are benign).
    """
    if isinstance(measure, str):
        measure = parse_measure(measure)
    unique = sorted({net.lexicon.normalize(w) for w in nouns})
    if len(unique) < 2:
        raise ValueError("need at least 2 distinct resolvable nouns")
    ctx = ctx or IcContext.from_constants(net.constants)
    pair_list = list(combinations(unique, 2))
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(
                lambda ab: similarity(net, ab[0], ab[1], measure, ctx,
                                      diagnostics), pair_list))
    else:
        values = [similarity(net, a, b, measure, ctx, diagnostics)
                  for a, b in pair_list]
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def average_word_measure(net: SemanticNet, nouns: Iterable[str],
                         measure: MeasureId | str,
                         ctx: IcContext | None = None) -> float:
    """Mean of a single-word measure over unique nouns (sorted order)."""
    if isinstance(measure, str):
        measure = parse_measure(measure)
    unique = sorted({net.lexicon.normalize(w) for w in nouns})
    if not unique:
        raise ValueError("need at least 1 resolvable noun")
    ctx = ctx or IcContext.from_constants(net.constants)
    return sum(word_measure(net, w, measure, ctx) for w in unique) / len(unique)

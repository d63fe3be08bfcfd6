"""Deterministic analysis reports shared by the CLI and the HTTP service.

Reports embed the run configuration, the database constants, and the toolkit
version; they carry no timestamps, so equal inputs produce byte-identical
outputs.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from . import __version__ as _version
from .dynamics import (GroupedText, SegmentSeries, TrendReport, compare_groups,
                       fit_trend, segment, series)
from .errors import SemgraphError
from .measures import Diagnostics, all_measures, parse_measure
from .taxonomy import SemanticNet
from .textpipe import Transcript, clean, extract_nouns


@dataclass
class RunConfig:
    """Everything needed to reproduce a run; recorded verbatim in reports."""

    db_path: str = ""
    cache_path: str = ""
    word_source: str = "merged"
    measures: list[str] = field(default_factory=lambda: ["all"])
    t: int = 3
    mode: str = "dictionary"
    collocations: bool = False
    token_weighted: bool = False
    strict: bool = False
    output_format: str = "csv"
    seed: int = 0

    def resolved_measures(self) -> list:
        if self.measures == ["all"] or self.measures == "all":
            return all_measures()
        return [parse_measure(m) for m in self.measures]


def _marker_sides(t: int) -> int:
    # marker schemes produce 2 x T_side points; an even t is split in half
    # (t=6 -> 3 before + 3 after), an odd t is used per side directly
    return t // 2 if t % 2 == 0 and t >= 4 else t


@dataclass
class AnalysisResult:
    report: dict
    value_rows: list[dict]
    trend_rows: list[dict]
    all_failed: bool


def analyze_transcripts(net: SemanticNet,
                        transcripts: list[tuple[str, str]],
                        config: RunConfig,
                        groupings: dict[str, dict] | None = None,
                        pretagged: dict[str, str] | None = None) -> AnalysisResult:
    """Run clean -> extract -> segment -> series -> trend for every
    transcript (and every grouping unit when a grouping spec is supplied)."""
    measures = config.resolved_measures()
    groupings = groupings or {}
    pretagged = pretagged or {}
    diagnostics = Diagnostics()

    conversations = []
    analyzed: list[tuple[GroupedText, SegmentSeries, TrendReport]] = []
    failures: list[dict] = []

    for source_id, text in sorted(transcripts):
        transcript = clean(text, source_id=source_id)
        grouping = groupings.get(source_id)
        units: list[GroupedText] = []
        if grouping:
            from .dynamics import split_by_grouping
            units = split_by_grouping(transcript, grouping)
        if not units:
            units = [GroupedText(source_id, "conversation", "all",
                                 transcript.text)]

        convo_entry: dict = {"source_id": source_id, "units": []}
        for unit in sorted(units, key=lambda u: (u.scheme, u.group)):
            t_points = (_marker_sides(config.t)
                        if unit.scheme in ("feedback", "evaluation")
                        else config.t)
            if config.mode == "pretagged" and unit.scheme != "conversation":
                failures.append({"source_id": source_id, "scheme": unit.scheme,
                                 "group": unit.group,
                                 "error": "pretagged mode does not support "
                                          "grouping schemes"})
                continue
            try:
                seq = extract_nouns(
                    clean(unit.text, source_id=source_id), net,
                    mode=config.mode,
                    collocations=config.collocations,
                    pretagged=pretagged.get(source_id))
                segments = segment(seq, t_points)
                seg_series = series(segments, measures, net,
                                    group=unit.group, source_id=source_id,
                                    token_weighted=config.token_weighted,
                                    diagnostics=diagnostics)
                trend = fit_trend(seg_series)
            except SemgraphError as exc:
                failures.append({"source_id": source_id,
                                 "scheme": unit.scheme, "group": unit.group,
                                 "error": str(exc)})
                continue
            analyzed.append((unit, seg_series, trend))
            convo_entry["units"].append({
                "scheme": unit.scheme,
                "group": unit.group,
                "success": unit.success,
                "t": t_points,
                "noun_count": sum(s.noun_token_count
                                  for s in seg_series.segments),
                "word_count": seq.word_count,
                "dropped": len(seq.dropped),
                "extraction_mode": seq.extraction_mode,
                "trends": {m: {"slope": tl.slope, "intercept": tl.intercept,
                               "classification": tl.classification}
                           for m, tl in sorted(trend.trends.items())},
            })
        conversations.append(convo_entry)

    comparison = compare_groups(analyzed)
    report = {
        "version": _version,
        "run_config": asdict(config),
        "constants": net.constants.as_dict(),
        "conversations": conversations,
        "group_mean_slopes": comparison.group_mean_slopes,
        "failures": failures,
        "diagnostics": {"zero_ic_pairs": diagnostics.zero_ic_pairs},
    }
    all_failed = not analyzed
    return AnalysisResult(report, comparison.rows, comparison.trend_rows,
                          all_failed)


VALUE_COLUMNS = ["subject", "scheme", "group", "success", "t", "measure", "value"]
TREND_COLUMNS = ["subject", "scheme", "group", "success", "measure",
                 "slope", "intercept", "classification"]


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    import csv
    import io
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore",
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k))
                         for k in columns})
    return buf.getvalue()


def report_to_json(report: dict) -> str:
    import json
    return json.dumps(report, indent=2, sort_keys=True) + "\n"

"""Command-line interface.

Exit codes: 0 success, 2 input/usage errors (unknown words, bad measure ids,
malformed options), 3 database errors (parse failures, cache integrity,
strict constants mismatch), 4 constraint violations (too few nouns,
unsatisfiable segmentation, all conversations failed).
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import __version__
from .cache import load_cache, save_cache
from .dynamics import (dendrogram_text, correlation_report, measure_matrix,
                       measure_correlation, sample_pairs, sample_words)
from .errors import (CacheError, ConstantsMismatchError, DatabaseFormatError,
                     IdenticalWordsError, SegmentationError, SemgraphError,
                     SessionError, TaxonomyStructureError, UnknownWordError)
from .ideation import DEFAULT_MEASURE, rank_candidates, resolve_nouns
from .measures import (IC_FORMULAS, abstraction_level, ic_word,
                       measure_catalog, parse_measure, polysemy,
                       similarity_detail, similarity_measures)
from .reports import (RunConfig, TREND_COLUMNS, VALUE_COLUMNS,
                      analyze_transcripts, report_to_json, rows_to_csv)
from .taxonomy import (SemanticNet, WORDNET31_REFERENCE, load,
                       verify_constants)

EXIT_INPUT = 2
EXIT_DATABASE = 3
EXIT_CONSTRAINT = 4

_INPUT_ERRORS = (UnknownWordError, IdenticalWordsError, ValueError)
_DATABASE_ERRORS = (DatabaseFormatError, TaxonomyStructureError, CacheError,
                    ConstantsMismatchError)
_CONSTRAINT_ERRORS = (SegmentationError, SessionError)


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, _DATABASE_ERRORS):
        return EXIT_DATABASE
    if isinstance(exc, _CONSTRAINT_ERRORS):
        return EXIT_CONSTRAINT
    return EXIT_INPUT


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (SemgraphError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(_exit_code(exc))
    return wrapper


class AppContext:
    def __init__(self, db: str, cache: str | None, word_source: str):
        self.db = db
        self.cache = cache
        self.word_source = word_source
        self._net: SemanticNet | None = None

    @property
    def net(self) -> SemanticNet:
        if self._net is None:
            if self.cache and Path(self.cache).exists():
                self._net = load_cache(self.cache)
            else:
                self._net = load(self.db, word_source=self.word_source)
        return self._net

    def run_config(self, **overrides) -> RunConfig:
        cfg = RunConfig(db_path=str(self.db), cache_path=str(self.cache or ""),
                        word_source=self.word_source)
        for key, value in overrides.items():
            setattr(cfg, key, value)
        return cfg


@click.group()
@click.version_option(__version__)
@click.option("--db", default="data/wordnet-3.1", show_default=True,
              envvar="SEMGRAPH_DB", help="WordNet noun database directory.")
@click.option("--cache", default=None, envvar="SEMGRAPH_CACHE",
              help="Binary cache file; used instead of --db when it exists.")
@click.option("--word-source", default="merged",
              type=click.Choice(["merged", "cased"]), show_default=True,
              help="Word-vertex construction (merged adds lowercase index "
                   "entries to the cased data.noun lemmas).")
@click.pass_context
def main(ctx, db, cache, word_source):
    """Semantic measures over the WordNet 3.1 noun taxonomy."""
    ctx.obj = AppContext(db, cache, word_source)


# -- db -----------------------------------------------------------------

@main.group()
def db():
    """Database management."""


@db.command("verify")
@click.option("--strict/--lenient", default=True, show_default=True,
              help="Strict exits nonzero when constants deviate from the "
                   "WordNet 3.1 reference table.")
@click.pass_obj
@handle_errors
def db_verify(app: AppContext, strict: bool):
    """Load the database and compare its constants to the reference."""
    net = app.net
    computed = net.constants
    mismatches = verify_constants(computed, WORDNET31_REFERENCE)
    ref = WORDNET31_REFERENCE
    rows = [
        ("max_vertices", computed.max_vertices, ref["max_vertices"]),
        ("m_edges", computed.m_edges, ref["m_edges"]),
        ("word_count", computed.word_count, ref["word_count"]),
        ("w_edges", computed.w_edges, ref["w_edges"]),
        ("max_leaves", computed.max_leaves, ref["max_leaves"]),
        ("max_depth", computed.max_depth, ref["max_depth"]),
        ("min_commonness", str(computed.min_commonness),
         str(ref["min_commonness"])),
        ("max_commonness", f"{computed.max_commonness:.4f}",
         f"{ref['max_commonness']:.4f} ± 0.1"),
    ]
    click.echo(f"{'constant':<16} {'computed':>16} {'expected':>16}  status")
    for name, got, want in rows:
        status = "MISMATCH" if name in mismatches else "ok"
        click.echo(f"{name:<16} {str(got):>16} {str(want):>16}  {status}")
    click.echo(f"min commonness attained by: "
               f"{', '.join(computed.min_commonness_words)}")
    click.echo(f"max commonness attained by: {computed.max_commonness_word}")
    if mismatches:
        click.echo(f"{len(mismatches)} constant(s) deviate from the reference",
                   err=True)
        if strict:
            sys.exit(EXIT_DATABASE)
    else:
        click.echo("all constants match the WordNet 3.1 reference")


@db.command("cache")
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Where to write the binary cache.")
@click.pass_obj
@handle_errors
def db_cache(app: AppContext, out_path: str):
    """Build the binary cache from the flat-file database."""
    net = load(app.db, word_source=app.word_source)
    save_cache(net, out_path)
    size = Path(out_path).stat().st_size
    click.echo(f"wrote {out_path} ({size / 1e6:.1f} MB)")


# -- catalog / queries ---------------------------------------------------

@main.command("measures")
@click.option("--format", "fmt", default="table",
              type=click.Choice(["table", "json", "csv"]), show_default=True)
def measures_cmd(fmt: str):
    """List the 49-measure catalog."""
    catalog = measure_catalog()
    if fmt == "json":
        click.echo(json.dumps(catalog, indent=2, sort_keys=True))
        return
    if fmt == "csv":
        click.echo(rows_to_csv(catalog,
                               ["id", "family", "formula", "ic",
                                "normalized", "note"]).rstrip("\n"))
        return
    click.echo(f"{'id':<32} {'family':<20} norm  note")
    for entry in catalog:
        click.echo(f"{entry['id']:<32} {entry['family']:<20} "
                   f"{'yes' if entry['normalized'] else 'no':<5} "
                   f"{entry['note']}")


def _parse_measure_list(text: str, similarities_only: bool) -> list:
    if text in ("all", ""):
        return similarity_measures() if similarities_only else \
            [parse_measure(m["id"]) for m in measure_catalog()]
    return [parse_measure(tok) for tok in text.split(",") if tok.strip()]


@main.command("sim")
@click.argument("word_x")
@click.argument("word_y")
@click.option("--measures", "measure_list", default=DEFAULT_MEASURE,
              show_default=True,
              help='Comma-separated similarity ids, or "all".')
@click.option("--format", "fmt", default="table",
              type=click.Choice(["table", "json", "csv"]), show_default=True)
@click.pass_obj
@handle_errors
def sim_cmd(app: AppContext, word_x: str, word_y: str, measure_list: str,
            fmt: str):
    """Similarity of two words with auditable intermediate quantities."""
    measures = _parse_measure_list(measure_list, similarities_only=True)
    net = app.net
    rows = []
    for m in measures:
        if not m.is_similarity:
            raise ValueError(f"{m} is not a similarity measure")
        value, detail = similarity_detail(net, word_x, word_y, m)
        row = {"measure": str(m), "value": value}
        row.update(detail)
        rows.append(row)
    if fmt == "json":
        click.echo(json.dumps({"x": word_x, "y": word_y, "measures": rows},
                              indent=2, sort_keys=True))
        return
    if fmt == "csv":
        cols = ["measure", "value", "distance", "lcs_offset", "lcs_depth",
                "ic_x", "ic_y", "ic_lcs"]
        click.echo(rows_to_csv(rows, cols).rstrip("\n"))
        return
    first = rows[0]
    click.echo(f"{word_x} ~ {word_y}: distance={first['distance']}, "
               f"lcs={'/'.join(first['lcs_lemmas'])} "
               f"(depth {first['lcs_depth']})")
    for row in rows:
        extra = ""
        if "ic_x" in row:
            extra = (f"  [IC x={row['ic_x']:.4f} y={row['ic_y']:.4f} "
                     f"lcs={row['ic_lcs']:.4f}]")
        click.echo(f"{row['measure']:<32} {row['value']:.6f}{extra}")


@main.command("ic")
@click.argument("word")
@click.option("--formulas", default="all", show_default=True,
              help='Comma-separated IC formula names, or "all".')
@click.pass_obj
@handle_errors
def ic_cmd(app: AppContext, word: str, formulas: str):
    """Information content of a word under the 7 IC formulas."""
    names = IC_FORMULAS if formulas == "all" else \
        tuple(f.strip() for f in formulas.split(","))
    net = app.net
    for name in names:
        click.echo(f"ic:{name:<16} {ic_word(net, word, name):.6f}")


@main.command("word-stats")
@click.argument("word")
@click.pass_obj
@handle_errors
def word_stats_cmd(app: AppContext, word: str):
    """Graph statistics of a word (union over its senses)."""
    import math

    net = app.net
    ws = net.word_stats(net.lexicon.normalize(word))
    offsets = [int(net.taxonomy.offsets[s]) for s in ws.senses]
    click.echo(json.dumps({
        "word": ws.word, "polysemy": ws.polysemy,
        "polysemy_log2": math.log2(ws.polysemy), "depth": ws.depth,
        "senses": offsets, "subsumers": ws.subsumer_count,
        "subvertices": ws.subvertex_count, "leaves": ws.leaf_count,
        "commonness": ws.commonness,
        "abstraction_level": abstraction_level(net, word),
    }, indent=2, sort_keys=True))


# -- analysis ----------------------------------------------------------

@main.command("analyze")
@click.argument("transcripts", nargs=-1, required=True,
                type=click.Path(exists=True))
@click.option("--grouping", "grouping_file", type=click.Path(exists=True),
              help="JSON grouping spec (list of per-conversation entries).")
@click.option("--t", "t_points", default=3, show_default=True,
              help="Time points per conversation (marker schemes split an "
                   "even t into before/after halves).")
@click.option("--mode", default="dictionary", show_default=True,
              type=click.Choice(["dictionary", "pretagged"]))
@click.option("--collocations", is_flag=True,
              help="Join adjacent tokens into underscore collocations.")
@click.option("--token-weighted", is_flag=True,
              help="Weight single-word measures by token frequency.")
@click.option("--measures", "measure_list", default="all", show_default=True)
@click.option("--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json"]))
@click.option("--out-dir", type=click.Path(), default="semgraph-report",
              show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.pass_obj
@handle_errors
def analyze_cmd(app: AppContext, transcripts, grouping_file, t_points, mode,
                collocations, token_weighted, measure_list, fmt, out_dir,
                seed):
    """Full conversation analysis: clean, extract, segment, fit trends."""
    config = app.run_config(measures=(["all"] if measure_list == "all"
                                      else measure_list.split(",")),
                            t=t_points, mode=mode, collocations=collocations,
                            token_weighted=token_weighted,
                            output_format=fmt, seed=seed)
    inputs, pretagged = [], {}
    for path in transcripts:
        source_id = Path(path).stem
        text = Path(path).read_text(encoding="utf-8")
        if mode == "pretagged":
            pretagged[source_id] = text
            inputs.append((source_id, ""))
        else:
            inputs.append((source_id, text))

    groupings = {}
    if grouping_file:
        spec = json.loads(Path(grouping_file).read_text(encoding="utf-8"))
        entries = spec if isinstance(spec, list) else [spec]
        for entry in entries:
            groupings[entry.get("source", entry.get("subject"))] = entry

    result = analyze_transcripts(app.net, inputs, config,
                                 groupings=groupings, pretagged=pretagged)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report_to_json(result.report),
                                     encoding="utf-8")
    if fmt == "csv":
        (out / "values.csv").write_text(
            rows_to_csv(result.value_rows, VALUE_COLUMNS), encoding="utf-8")
        (out / "trends.csv").write_text(
            rows_to_csv(result.trend_rows, TREND_COLUMNS), encoding="utf-8")

    for row in result.trend_rows:
        if row["measure"] == DEFAULT_MEASURE or len(result.trend_rows) <= 8:
            click.echo(f"{row['subject']} [{row['scheme']}/{row['group']}] "
                       f"{row['measure']}: slope={row['slope']:+.5f} "
                       f"-> {row['classification']}")
    for failure in result.report["failures"]:
        click.echo(f"skipped {failure['source_id']} "
                   f"[{failure['scheme']}/{failure['group']}]: "
                   f"{failure['error']}", err=True)
    click.echo(f"report written to {out}")
    if result.all_failed:
        click.echo("error: no conversation could be analyzed", err=True)
        sys.exit(EXIT_CONSTRAINT)


@main.command("suggest")
@click.option("--base", required=True,
              help="Comma-separated base nouns (underscores for spaces).")
@click.option("--candidates", default="",
              help="Comma-separated candidate nouns.")
@click.option("--candidates-file", type=click.Path(exists=True),
              help="File with one candidate per line.")
@click.option("--measure", default=DEFAULT_MEASURE, show_default=True)
@click.option("-k", "top_k", default=None, type=int,
              help="Only the top k proposals.")
@click.option("--format", "fmt", default="table", show_default=True,
              type=click.Choice(["table", "json"]))
@click.pass_obj
@handle_errors
def suggest_cmd(app: AppContext, base, candidates, candidates_file, measure,
                top_k, fmt):
    """Rank candidate nouns by divergence when added to the base set."""
    net = app.net
    base_tokens = [b for b in base.split(",") if b.strip()]
    cand_tokens = [c for c in candidates.split(",") if c.strip()]
    if candidates_file:
        cand_tokens += [line.strip()
                        for line in Path(candidates_file).read_text(
                            encoding="utf-8").splitlines() if line.strip()]
    base_resolved, base_bad = resolve_nouns(net, base_tokens)
    if base_bad:
        raise UnknownWordError(", ".join(base_bad))
    cand_resolved, cand_bad = resolve_nouns(net, cand_tokens)
    base_avg, proposals = rank_candidates(net, base_resolved, cand_resolved,
                                          measure, top_k)
    if fmt == "json":
        click.echo(json.dumps({
            "base": sorted(set(base_resolved)), "measure": measure,
            "base_average": base_avg,
            "proposals": [{"candidate": p.candidate,
                           "projected_average": p.projected_average,
                           "delta": p.delta} for p in proposals],
            "unresolvable": cand_bad,
        }, indent=2, sort_keys=True))
        return
    click.echo(f"base average ({measure}): {base_avg:.4f}")
    for rank, p in enumerate(proposals, start=1):
        click.echo(f"{rank}. {p.candidate:<20} -> {p.projected_average:.4f} "
                   f"({p.delta:+.4f})")
    for bad in cand_bad:
        click.echo(f"unresolvable candidate skipped: {bad}", err=True)


@main.command("correlate")
@click.option("--words", "n_words", default=1000, show_default=True,
              help="Word sample size for single-word measures.")
@click.option("--pairs", "n_pairs", default=500, show_default=True,
              help="Pair sample size for similarity measures.")
@click.option("--word-scope", default="common", show_default=True,
              type=click.Choice(["common", "all"]),
              help="Word pool: common nouns or the full case-sensitive "
                   "lexicon.")
@click.option("--pair-scope", default="neighborhood", show_default=True,
              type=click.Choice(["neighborhood", "uniform"]),
              help="Pair sampling: topical short-walk neighborhoods or "
                   "uniform random pairs.")
@click.option("--seed", default=0, show_default=True)
@click.option("--out-dir", type=click.Path(), default="semgraph-correlation",
              show_default=True)
@click.pass_obj
@handle_errors
def correlate_cmd(app: AppContext, n_words, n_pairs, word_scope, pair_scope,
                  seed, out_dir):
    """Measure correlation matrices and hierarchical clustering."""
    import numpy as np

    from .measures import MeasureId

    net = app.net
    rng = np.random.default_rng(seed)
    words = sample_words(net, n_words, rng, scope=word_scope)
    pairs = sample_pairs(net, n_pairs, rng, scope=pair_scope)

    ic_measures = [MeasureId("ic", f) for f in IC_FORMULAS]
    sim_measures = similarity_measures()

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name, measures, kwargs in (
            ("ic", ic_measures, {"words": words}),
            ("similarity", sim_measures, {"pairs": pairs})):
        matrix = measure_matrix(net, measures, **kwargs)
        result = measure_correlation(matrix, [str(m) for m in measures])
        report = correlation_report(result)
        (out / f"{name}_correlation.json").write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n",
            encoding="utf-8")
        header = ",".join([""] + result.labels)
        lines = [header]
        for label, row in zip(result.labels, result.matrix):
            lines.append(",".join([label] + [
                "" if np.isnan(v) else f"{v:.6f}" for v in row]))
        (out / f"{name}_correlation.csv").write_text(
            "\n".join(lines) + "\n", encoding="utf-8")
        (out / f"{name}_dendrogram.txt").write_text(
            dendrogram_text(result) + "\n", encoding="utf-8")
        top_a, top_b = result.top_split()
        summary[name] = [sorted(top_a), sorted(top_b)]
        click.echo(f"{name}: top split sizes "
                   f"{len(top_a)}/{len(top_b)}; files in {out}")
    (out / "top_splits.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n",
        encoding="utf-8")


@main.command("serve")
@click.option("--port", default=8034, show_default=True)
@click.option("--bind", default="127.0.0.1", show_default=True)
@click.option("--session-log", type=click.Path(), default=None,
              help="Directory for append-only session event logs.")
@click.option("--cors-origin", multiple=True, default=("*",),
              show_default=True)
@click.pass_obj
@handle_errors
def serve_cmd(app: AppContext, port, bind, session_log, cors_origin):
    """Run the JSON-over-HTTP facade for the companion UI."""
    import uvicorn

    from .service import create_app

    api = create_app(app.net, session_log=session_log,
                     cors_origins=list(cors_origin))
    uvicorn.run(api, host=bind, port=port)


if __name__ == "__main__":
    main()

"""CLI entry point for tgbi."""

import functools
import logging
from pathlib import Path
from typing import Any, Callable

import click

from tgbi.cache import TranslationCache
from tgbi.config import ensure_directories, get_cache_path, load_run_config
from tgbi.corpus import export_plaintext, generate_corpus, load_corpus, save_corpus
from tgbi.errors import EmptySubset, TgbiError
from tgbi.lexicon import demo_lexicon_path, load_lexicon, write_rejections
from tgbi.metrics import EvaluationReport, SubsetScore, verify_bounds
from tgbi.pipeline import EXIT_FAILURE, EXIT_OK, EXIT_PARTIAL, run_eval, select_wordlists
from tgbi.published import check_published
from tgbi.reports import MarkdownReporter, emit_report, load_reports
from tgbi.scoring import score_records
from tgbi.simlab import builtin_policy_path, load_policy, run_subset_demo
from tgbi.translators import load_backend, load_records, save_failures, save_records, translate_batch

BUILTIN_POLICIES = ["neutral", "demonstration", "coinflip"]


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Print tgbi errors as 'Error: ...' and exit 1."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except TgbiError as e:
            click.echo(f"Error: {e}", err=True)
            raise SystemExit(EXIT_FAILURE) from e

    return wrapper


def _echo_scores(report: EvaluationReport) -> None:
    for s in report.subset_scores:
        _echo_score(s)
    click.echo(f"  {'TGBI':<12} {report.tgbi:.4f}")


def _echo_score(s: SubsetScore) -> None:
    p = s.portions
    n = f"n={p.n}" if p.n is not None else ""
    click.echo(
        f"  {s.subset_name:<12} {s.score:.4f}  "
        f"(p_w={float(p.p_w):.4f}, p_m={float(p.p_m):.4f}, p_n={float(p.p_n):.4f}) {n}"
    )


@click.group()
@click.version_option()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
def cli(verbose: bool) -> None:
    """tgbi - Measure gender bias in Korean-English machine translation."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.argument("lexicon", type=click.Path(path_type=Path), required=False)
@click.option("--format", "lexicon_format", type=click.Choice(["tsv", "jsonl"]), default="tsv", show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), default=Path("corpus"), show_default=True)
@click.option("--append-period", is_flag=True, help="End plaintext sentences with '.'.")
@handle_errors
def generate(lexicon: Path | None, lexicon_format: str, out_dir: Path, append_period: bool) -> None:
    """Expand a lexicon into the evaluation corpus (the demo lexicon if none given)."""
    lexicon = lexicon or demo_lexicon_path()
    click.echo(f"Loading lexicon {lexicon}...")
    loaded = load_lexicon(lexicon, lexicon_format)
    counts = ", ".join(f"{k.value} {v}" for k, v in loaded.lexicon.counts.items())
    click.echo(f"Accepted {len(loaded.lexicon)} of {loaded.parsed_rows} rows ({counts})")
    if loaded.rejections:
        click.echo(f"Rejected {len(loaded.rejections)} rows:")
        for r in loaded.rejections:
            click.echo(f"  line {r.line} ({r.id}): {', '.join(r.violations)}")
    for w in loaded.warnings:
        click.echo(f"Warning: line {w.line} ({w.id}): {', '.join(w.violations)}")

    corpus = generate_corpus(loaded.lexicon)
    save_corpus(corpus, out_dir)
    export_plaintext(corpus, out_dir / "corpus.txt", append_period=append_period)
    write_rejections(list(loaded.rejections) + list(loaded.warnings), out_dir / "lexicon_rejections.jsonl")

    click.echo(f"\nCorpus: {len(corpus)} sentences -> {out_dir}")
    for name, ids in corpus.subset_index.items():
        click.echo(f"  {name:<12} {len(ids)}")


@cli.command()
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.argument("backends", nargs=-1, required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(path_type=Path), default=Path("."), show_default=True)
@click.option("--cache", "cache_path", type=click.Path(path_type=Path), help="Translation cache journal.")
@click.option("--append-period", is_flag=True, help="Send sentences with a final '.'.")
@click.option("--retry-delay", type=float, default=1.0, show_default=True, help="Initial backoff in seconds.")
@handle_errors
def translate(
    corpus_dir: Path,
    backends: tuple[Path, ...],
    out_dir: Path,
    cache_path: Path | None,
    append_period: bool,
    retry_delay: float,
) -> None:
    """Translate a generated corpus with one or more backends."""
    ensure_directories()
    corpus = load_corpus(corpus_dir)
    cache = TranslationCache(cache_path or get_cache_path())
    click.echo(f"Translating {len(corpus)} sentences with {len(backends)} backends\n")

    exit_code = EXIT_OK
    for path in backends:
        backend = load_backend(path)
        result = translate_batch(corpus, backend, cache=cache, append_period=append_period, retry_delay=retry_delay)
        records_path = save_records(result.records, out_dir / "records" / f"{backend.backend_id}.jsonl")
        save_failures(result.failures, out_dir / "failures" / f"{backend.backend_id}.jsonl")
        cached = sum(r.from_cache for r in result.records)
        click.echo(
            f"  {backend.backend_id}: {len(result.records)} translated ({cached} from cache), "
            f"{len(result.failures)} failed -> {records_path}"
        )
        if result.failures:
            exit_code = EXIT_PARTIAL
    raise SystemExit(exit_code)


@cli.command()
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.argument("records", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(path_type=Path), default=Path("."), show_default=True)
@click.option("--allow-partial", is_flag=True, help="Report a TGBI even when some sentences have no record.")
@click.option("--paper-exact-wordlists", is_flag=True, help="Use only the pronouns of the original definition.")
@click.option("--wordlists", "wordlist_path", type=click.Path(exists=True, path_type=Path), help="Wordlist override JSON.")
@handle_errors
def score(
    corpus_dir: Path,
    records: tuple[Path, ...],
    out_dir: Path,
    allow_partial: bool,
    paper_exact_wordlists: bool,
    wordlist_path: Path | None,
) -> None:
    """Classify translation records and write the comparison reports."""
    corpus = load_corpus(corpus_dir)
    wordlists = select_wordlists(paper_exact_wordlists, wordlist_path)
    reports = []
    partial = False
    for path in records:
        batch = load_records(path)
        backend_id = batch[0].backend_id if batch else path.stem
        try:
            report = score_records(corpus, batch, backend_id, wordlists=wordlists)
        except EmptySubset as e:
            partial = True
            click.echo(f"\n{backend_id}: TGBI withheld - {e}")
            continue
        if report.coverage < 1.0:
            partial = True
            if not allow_partial:
                click.echo(
                    f"\n{backend_id}: TGBI withheld, coverage {report.coverage:.2%}; "
                    "rerun the missing sentences or pass --allow-partial"
                )
                continue
        click.echo(f"\n{backend_id} (coverage {report.coverage:.2%}):")
        _echo_scores(report)
        reports.append(report)

    if reports:
        for path in emit_report(reports, out_dir):
            click.echo(f"Wrote {path}")
    if partial:
        raise SystemExit(EXIT_PARTIAL)


@cli.command("eval")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--allow-partial", is_flag=True, help="Score backends even when some sentences failed.")
@click.option("--append-period", is_flag=True, help="Send sentences with a final '.'.")
@click.option("--paper-exact-wordlists", is_flag=True, help="Use only the pronouns of the original definition.")
@click.option("--wordlists", "wordlist_path", type=click.Path(exists=True, path_type=Path), help="Wordlist override JSON.")
@click.option("--cache", "cache_path", type=click.Path(path_type=Path), help="Translation cache journal.")
@click.option("--run-id", help="Name the run directory instead of using a timestamp.")
@handle_errors
def eval_command(
    config_path: Path,
    allow_partial: bool,
    append_period: bool,
    paper_exact_wordlists: bool,
    wordlist_path: Path | None,
    cache_path: Path | None,
    run_id: str | None,
) -> None:
    """Full pipeline: lexicon → corpus → translate → classify → report."""
    ensure_directories()
    config = load_run_config(config_path)
    # Flags can only switch features on
    config.allow_partial = config.allow_partial or allow_partial
    config.append_period = config.append_period or append_period
    config.paper_exact_wordlists = config.paper_exact_wordlists or paper_exact_wordlists
    config.wordlist_override_path = wordlist_path or config.wordlist_override_path
    config.cache_path = cache_path or config.cache_path
    config.run_id = run_id or config.run_id

    click.echo(f"Evaluating {len(config.backend_paths)} backends on {config.lexicon_path}\n")
    result = run_eval(config)

    for outcome in result.outcomes:
        line = f"  {outcome.backend_id}: {outcome.status.value}"
        if outcome.report is not None:
            line += f", TGBI {outcome.report.tgbi:.4f} (coverage {outcome.report.coverage:.2%})"
        if outcome.error:
            line += f" - {outcome.error}"
        click.echo(line)
    if result.reports:
        click.echo("")
        click.echo(MarkdownReporter().render(result.reports))
    click.echo(f"Artifacts: {result.run_dir}")
    raise SystemExit(result.exit_code)


@cli.command()
@click.option("--builtin", type=click.Choice(BUILTIN_POLICIES), default="demonstration", show_default=True)
@click.option("--policy", "policy_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Policy JSON; overrides --builtin.")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Defaults to the demo lexicon.")
@click.option("--format", "lexicon_format", type=click.Choice(["tsv", "jsonl"]), default="tsv", show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), help="Also write comparison reports here.")
@handle_errors
def demo(
    builtin: str,
    policy_path: Path | None,
    lexicon_path: Path | None,
    lexicon_format: str,
    out_dir: Path | None,
) -> None:
    """Score a synthetic translator subset by subset."""
    policy = load_policy(policy_path or builtin_policy_path(builtin))
    lexicon = load_lexicon(lexicon_path or demo_lexicon_path(), lexicon_format).lexicon
    corpus = generate_corpus(lexicon)
    result = run_subset_demo(corpus, policy)

    click.echo(f"Policy {policy.policy_kind.value} (seed {policy.seed}) on {len(corpus)} sentences\n")
    for partition, scores in result.partitions.items():
        click.echo(f"{partition}:")
        for s in scores:
            _echo_score(s)
    click.echo("\nWhole corpus:")
    _echo_score(result.corpus_score)
    click.echo(f"\nTGBI (mean of seven subsets): {result.report.tgbi:.4f}")

    if out_dir is not None:
        for path in emit_report([result.report], out_dir):
            click.echo(f"Wrote {path}")


@cli.command()
@click.option("--samples", type=click.IntRange(min=1), default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@handle_errors
def verify(samples: int, seed: int) -> None:
    """Check the measure's bounds and the published table's consistency."""
    click.echo(f"Sampling {samples} portion triples (seed {seed})...")
    bounds = verify_bounds(samples, seed=seed)
    click.echo(f"  sampled scores in [{bounds.min_score:.4f}, {bounds.max_score:.4f}]")
    click.echo(f"  p_n=0 edge peaks at {bounds.edge_max:.4f} for p_w={bounds.edge_argmax:.4f}")
    for problem in bounds.violations:
        click.echo(f"  FAIL {problem}")

    click.echo("\nPublished evaluation table...")
    consistency = check_published()
    click.echo(f"  {len(consistency.triples)} subset scores, {len(consistency.averages)} averages checked")
    for problem in consistency.violations:
        click.echo(f"  FAIL {problem}")

    if not bounds.ok or not consistency.ok:
        raise SystemExit(EXIT_FAILURE)
    click.echo("\nAll checks passed.")


@cli.command()
@click.argument("reports_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(path_type=Path), help="Write all three formats here.")
@handle_errors
def report(reports_path: Path, out_dir: Path | None) -> None:
    """Re-render a comparison.json as Markdown."""
    reports = load_reports(reports_path)
    if out_dir is not None:
        for path in emit_report(reports, out_dir):
            click.echo(f"Wrote {path}")
    else:
        click.echo(MarkdownReporter().render(reports), nl=False)


if __name__ == "__main__":
    cli()

"""Command-line entry points.

    docelem generate   build a synthetic corpus from a demo domain
    docelem split      assign train/dev/test splits in place
    docelem rules      emit a pattern-rule config from demo templates
    docelem evaluate   score a tagger over a corpus split
    docelem ablate     F1-vs-training-size curves
    docelem serve      run the HTTP service
"""

import sys
from pathlib import Path

import click

from docelem import __version__


def _parse_ratios(text: str) -> tuple[int, int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise click.BadParameter(f"expected three integers like 6,2,2, got {text!r}")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Document content-element extraction toolkit."""


@main.command()
@click.option("--domain", type=click.Choice(["lease", "filing"]), default="lease")
@click.option("--templates", "template_count", type=int, default=15, show_default=True)
@click.option("--instances", default="2,3", show_default=True,
              help="per-template instance range, lo,hi (1..3)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--split-seed", type=int, default=None,
              help="also assign 6:2:2 splits with this seed")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
def generate(domain: str, template_count: int, instances: str, seed: int,
             split_seed: int | None, out_path: str) -> None:
    """Generate a synthetic corpus and write it to OUT."""
    from docelem.corpus import generate_synthetic_corpus, save_corpus
    from docelem.corpus.split import split_corpus
    from docelem.demo import domain_parts

    lo, _, hi = instances.partition(",")
    bounds = (int(lo), int(hi or lo))
    schema, templates, kinds, _rules = domain_parts(domain, template_count, seed)
    corpus = generate_synthetic_corpus(
        schema, templates, instances_per_template=bounds, seed=seed,
        element_kinds=kinds,
    )
    if split_seed is not None:
        corpus = split_corpus(corpus, seed=split_seed)
    save_corpus(corpus, out_path)
    click.echo(
        f"{len(corpus.documents)} documents, {len(corpus.annotations)} "
        f"annotations -> {out_path}"
    )


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--ratios", default="6,2,2", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--unseen-fraction", type=float, default=None,
              help="held-out-template share of the test split")
def split(corpus_path: str, ratios: str, seed: int, unseen_fraction: float | None) -> None:
    """Assign splits to an existing corpus file, in place."""
    from docelem.corpus import load_corpus, save_corpus
    from docelem.corpus.split import split_corpus

    corpus = load_corpus(corpus_path)
    corpus = split_corpus(
        corpus, ratios=_parse_ratios(ratios), seed=seed,
        unseen_test_fraction=unseen_fraction,
    )
    save_corpus(corpus, corpus_path)
    counts = {s: len(corpus.split_doc_ids(s)) for s in ("train", "dev", "test")}
    click.echo(" ".join(f"{k}={v}" for k, v in counts.items()))


@main.command()
@click.option("--domain", type=click.Choice(["lease", "filing"]), default="lease")
@click.option("--templates", "template_count", type=int, default=15, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
def rules(domain: str, template_count: int, seed: int, out_path: str) -> None:
    """Write the pattern-rule config derived from demo templates."""
    from docelem.demo import domain_parts
    from docelem.taggers import render_gazetteer_config, rules_from_templates

    schema, templates, _kinds, _rules = domain_parts(domain, template_count, seed)
    derived = rules_from_templates(templates, schema)
    Path(out_path).write_text(render_gazetteer_config(derived), encoding="utf-8")
    click.echo(f"{len(derived)} rules -> {out_path}")


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--rules", "rules_path", type=click.Path(exists=True), default=None,
              help="pattern-rule config; default derives rules from the train split")
@click.option("--subset", type=click.Choice(["test", "dev", "train"]), default="test",
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]),
              default="table", show_default=True)
def evaluate(corpus_path: str, rules_path: str | None, subset: str, fmt: str) -> None:
    """Tag a split with the pattern tagger and print the score report."""
    from docelem.corpus import load_corpus
    from docelem.corpus.types import gold_entity_sets
    from docelem.evaluation import EntitySet, evaluate as evaluate_sets, render_report
    from docelem.taggers import (
        GazetteerTagger,
        extract_entity_sets,
        parse_gazetteer_config,
        rules_from_annotations,
    )

    corpus = load_corpus(corpus_path)
    if rules_path is not None:
        rule_list = parse_gazetteer_config(
            Path(rules_path).read_text(encoding="utf-8")
        )
    else:
        rule_list = rules_from_annotations(corpus, corpus.split_doc_ids("train"))
    tagger = GazetteerTagger(rule_list)
    doc_ids = sorted(corpus.split_doc_ids(subset))
    if not doc_ids:
        raise click.ClickException(f"corpus has no {subset!r} documents")
    gold_map = gold_entity_sets(corpus)
    report = evaluate_sets(
        extract_entity_sets(corpus, doc_ids, tagger),
        [EntitySet(d, frozenset(gold_map[d])) for d in doc_ids],
        subset_label=subset,
    )
    click.echo(render_report(report, format=fmt))


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--sizes", default="30,60,90", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--backend", "backend_url", default=None,
              help="training backend base URL; default is the pattern stand-in")
@click.option("--mode", type=click.Choice(["nested", "independent"]),
              default="nested", show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
def ablate(corpus_path: str, sizes: str, seed: int, backend_url: str | None,
           mode: str, out_dir: str) -> None:
    """Train at increasing sizes and write curves.csv / curves.svg."""
    from docelem.ablation import (
        AblationPlan,
        GazetteerStandInTrainer,
        SidecarTrainer,
        emit_curves,
        run_ablation,
    )
    from docelem.corpus import load_corpus

    size_list = tuple(int(s.strip()) for s in sizes.split(","))
    corpus = load_corpus(corpus_path)
    trainer = SidecarTrainer(backend_url) if backend_url else GazetteerStandInTrainer()
    plan = AblationPlan(corpus, size_list, seed, trainer, mode=mode)
    result = run_ablation(plan)
    csv_path, svg_path = emit_curves(result, out_dir)
    click.echo(f"wrote {csv_path} and {svg_path}")
    for size in size_list:
        f1 = result.micro_f1(size)
        click.echo(f"size {size}: micro F1 {'failed' if f1 is None else f'{f1:.4f}'}")


@main.command()
@click.option("--host", default=None, help="override DOCELEM_LISTEN host")
@click.option("--port", type=int, default=None, help="override DOCELEM_LISTEN port")
@click.option("--data-dir", default=None, help="override DOCELEM_DATA_DIR")
@click.option("--sidecar-url", default=None, help="override DOCELEM_SIDECAR_URL")
@click.option("--gazetteer", default=None, help="override DOCELEM_GAZETTEER")
def serve(host: str | None, port: int | None, data_dir: str | None,
          sidecar_url: str | None, gazetteer: str | None) -> None:
    """Run the HTTP service (uvicorn)."""
    import uvicorn

    from docelem.service import config_from_env, create_app

    base = config_from_env()
    from dataclasses import replace

    overrides = {}
    if host:
        overrides["host"] = host
    if port is not None:
        overrides["port"] = port
    if data_dir:
        overrides["data_dir"] = Path(data_dir)
    if sidecar_url:
        overrides["sidecar_url"] = sidecar_url
    if gazetteer:
        overrides["gazetteer_path"] = Path(gazetteer)
    config = replace(base, **overrides)
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())

"""Command-line pipeline: run / sweep / stats / export.

A run executes the whole chain (select, count, correlate, distance, cluster,
elbow, ordinate, label, layout) and writes the map payload plus side
artifacts into the output directory. Configuration comes from a flat
dotted-key file, overridable flag-for-flag on the command line; the manifest
written next to the results is itself a valid config file, so a run can be
reproduced from its output directory alone.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import os
import sys
from dataclasses import dataclass, replace
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from . import corpus as corpus_mod
from . import simcluster, stats
from .cooccur import SelectionConfig, build_cooccurrence, select_documents
from .errors import CoreadmapError, NoDocumentsSelectedError
from .labeling import label_cluster, load_label_overrides
from .layout import (
    DomainMap,
    Provenance,
    export_map,
    load_map,
    make_areas,
    place_documents,
    settle_documents,
)
from .ordination import ACCEPTABLE_R_SQUARED, nmds

OUTPUT_DIR_ENV = "COREADMAP_OUTPUT_DIR"

EXIT_OK = 0
EXIT_STAGE_FAILED = 1
EXIT_BAD_INPUT = 2


class ConfigError(CoreadmapError):
    pass


class StageError(CoreadmapError):
    def __init__(self, stage: str, cause: Exception, exit_code: int = EXIT_STAGE_FAILED):
        self.stage = stage
        self.cause = cause
        self.exit_code = exit_code
        super().__init__(f"stage {stage}: {cause}")


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved configuration for one pipeline run (manifest-serializable)."""

    libraries: Optional[str] = None
    documents: Optional[str] = None
    taxonomy: Optional[str] = None
    labels_override: Optional[str] = None
    output_dir: Optional[str] = None
    threshold: int = 16
    scope_filter: Optional[str] = None
    cap: int = 500
    seed: int = 0
    as_of: Optional[str] = None
    timestamp: Optional[str] = None
    nmds_restarts: int = 20
    nmds_max_iter: int = 500
    nmds_tol: float = 1e-6
    elbow_variance_floor: float = 0.80
    elbow_increment_ceiling: float = 0.01
    layout_max_iter: int = 1000
    layout_scale: Optional[float] = None

    def validate(self) -> None:
        if self.threshold < 1:
            raise ConfigError("threshold must be >= 1")
        if self.cap < 1:
            raise ConfigError("cap must be >= 1")
        if self.nmds_restarts < 1:
            raise ConfigError("nmds.restarts must be >= 1")
        if self.nmds_max_iter < 1:
            raise ConfigError("nmds.max_iter must be >= 1")
        if self.nmds_tol <= 0:
            raise ConfigError("nmds.tol must be positive")
        if not (0.0 < self.elbow_variance_floor <= 1.0):
            raise ConfigError("elbow.variance_floor must be in (0, 1]")
        if self.elbow_increment_ceiling <= 0:
            raise ConfigError("elbow.increment_ceiling must be positive")
        if self.layout_max_iter < 1:
            raise ConfigError("layout.max_iter must be >= 1")
        if self.layout_scale is not None and self.layout_scale <= 0:
            raise ConfigError("layout.scale must be positive")


# dotted config key -> (dataclass field, parser); parser None keeps strings
_KEYMAP: dict[str, tuple[str, Optional[type]]] = {
    "paths.libraries": ("libraries", None),
    "paths.documents": ("documents", None),
    "paths.taxonomy": ("taxonomy", None),
    "paths.labels_override": ("labels_override", None),
    "paths.output_dir": ("output_dir", None),
    "threshold": ("threshold", int),
    "scope_filter": ("scope_filter", None),
    "cap": ("cap", int),
    "seed": ("seed", int),
    "as_of": ("as_of", None),
    "timestamp": ("timestamp", None),
    "nmds.restarts": ("nmds_restarts", int),
    "nmds.max_iter": ("nmds_max_iter", int),
    "nmds.tol": ("nmds_tol", float),
    "elbow.variance_floor": ("elbow_variance_floor", float),
    "elbow.increment_ceiling": ("elbow_increment_ceiling", float),
    "layout.max_iter": ("layout_max_iter", int),
    "layout.scale": ("layout_scale", float),
}

_FIELD_TO_KEY = {field: key for key, (field, _) in _KEYMAP.items()}


def parse_config_file(path: str) -> dict[str, str]:
    """Read `key = value` lines; '#' lines are comments, blanks are skipped."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{line_no}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _KEYMAP:
                raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def config_from_values(values: dict[str, str]) -> PipelineConfig:
    kwargs = {}
    for key, raw in values.items():
        field_name, parser = _KEYMAP[key]
        if raw == "" or raw.lower() == "none":
            kwargs[field_name] = None
            continue
        try:
            kwargs[field_name] = parser(raw) if parser else raw
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from exc
    config = PipelineConfig(**kwargs)
    config.validate()
    return config


def write_manifest(config: PipelineConfig, path: str, extras: dict[str, object]) -> None:
    """Persist the resolved config; the file re-parses as a config file."""
    lines = ["# pipeline manifest: re-run with `coreadmap run --config <this file>`"]
    for key, (field_name, _) in _KEYMAP.items():
        value = getattr(config, field_name)
        if value is None:
            continue
        if isinstance(value, float):
            value = repr(value)
        lines.append(f"{key} = {value}")
    for name, value in extras.items():
        lines.append(f"# {name}: {value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_reference_labels(path: str) -> dict[str, str]:
    """Read the doc_id,class CSV used for purity evaluation."""
    labels: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"doc_id", "class"}.issubset(reader.fieldnames):
            raise ConfigError(f"{path}: expected columns doc_id, class")
        for row in reader:
            labels[row["doc_id"]] = row["class"]
    return labels


def _inputs_fingerprint(paths: Sequence[str]) -> str:
    digest = hashlib.sha256()
    for path in paths:
        digest.update(Path(path).name.encode("utf-8"))
        digest.update(b"\0")
        digest.update(Path(path).read_bytes())
        digest.update(b"\0")
    return digest.hexdigest()


def _distance_model(corpus, selection: SelectionConfig):
    """Shared front half: selection through the imputed distance matrix."""
    selected = select_documents(corpus, selection)
    matrix = build_cooccurrence(corpus, selected, selection)
    model = simcluster.pearson_pairwise(matrix)
    model = simcluster.euclidean_from_correlations(model)
    full = simcluster.impute_missing_distances(model.distances)
    return matrix, model, full


def run_pipeline(config: PipelineConfig, output_dir: Path) -> tuple[DomainMap, dict]:
    """Execute every stage and write all artifacts; raises StageError."""
    report: dict = {"warnings": []}

    stage = "validate-inputs"
    required = {
        "paths.libraries": config.libraries,
        "paths.documents": config.documents,
        "paths.taxonomy": config.taxonomy,
    }
    for key, value in required.items():
        if not value:
            raise StageError(stage, ConfigError(f"{key} is required"), EXIT_BAD_INPUT)
        if not Path(value).is_file():
            raise StageError(
                stage, FileNotFoundError(f"input file not found: {value}"), EXIT_BAD_INPUT
            )
    if config.labels_override and not Path(config.labels_override).is_file():
        raise StageError(
            stage,
            FileNotFoundError(f"input file not found: {config.labels_override}"),
            EXIT_BAD_INPUT,
        )

    stage = "load-corpus"
    try:
        corpus, dangling = corpus_mod.load_corpus(config.libraries, config.documents)
        taxonomy = corpus_mod.load_taxonomy(config.taxonomy)
        overrides = (
            load_label_overrides(config.labels_override) if config.labels_override else {}
        )
    except Exception as exc:
        raise StageError(stage, exc, EXIT_BAD_INPUT) from exc
    if dangling:
        report["warnings"].append(f"{len(dangling)} dangling document references")

    selection = SelectionConfig(
        threshold=config.threshold,
        scope_filter=config.scope_filter,
        cap=config.cap,
        seed=config.seed,
    )

    try:
        stage = "select-and-count"
        matrix, model, full = _distance_model(corpus, selection)
        report["n_documents"] = matrix.n

        stage = "cluster"
        solution = simcluster.solve_clusters(
            full,
            matrix.doc_ids,
            variance_floor=config.elbow_variance_floor,
            increment_ceiling=config.elbow_increment_ceiling,
        )
        report["k"] = solution.k

        stage = "ordinate"
        embedding = nmds(
            full,
            matrix.doc_ids,
            restarts=config.nmds_restarts,
            max_iter=config.nmds_max_iter,
            tol=config.nmds_tol,
            seed=config.seed,
        )
        report["stress"] = embedding.stress
        report["r_squared"] = embedding.r_squared
        if embedding.r_squared < ACCEPTABLE_R_SQUARED:
            report["warnings"].append(
                f"ordination fit r^2={embedding.r_squared:.3f} is below the "
                f"conventional {ACCEPTABLE_R_SQUARED:.2f} threshold"
            )

        stage = "label"
        members: dict[int, list[str]] = {}
        for doc_id, cluster in solution.assignment.items():
            members.setdefault(cluster, []).append(doc_id)
        labels: dict[int, str] = {}
        for cluster, doc_ids in sorted(members.items()):
            docs = [corpus.documents[d] for d in sorted(doc_ids)]
            labels[cluster], _ = label_cluster(docs)
        labels.update(overrides)

        stage = "layout"
        readers = {doc_id: matrix.readers[i] for i, doc_id in enumerate(matrix.doc_ids)}
        areas = make_areas(
            embedding, solution.assignment, labels, readers, area_scale=config.layout_scale
        )
        placed = place_documents(
            embedding, solution.assignment, areas, readers, corpus.documents
        )
        settled, iterations, layout_warnings = settle_documents(
            areas, placed, max_iter=config.layout_max_iter, seed=config.seed
        )
        report["layout_iterations"] = iterations
        report["warnings"].extend(layout_warnings)

        stage = "export"
        provenance = Provenance(
            threshold=config.threshold,
            k=solution.k,
            stress=embedding.stress,
            r_squared=embedding.r_squared,
            seed=config.seed,
            timestamps={
                "created_at": config.timestamp,
                "inputs_fingerprint": _inputs_fingerprint(
                    [config.libraries, config.documents, config.taxonomy]
                ),
            },
        )
        domain_map = DomainMap(areas=areas, documents=settled, provenance=provenance)
        export_map(domain_map, str(output_dir / "map.json"))
        _write_coordinates(embedding.coords, output_dir / "coordinates.csv")
        simcluster.write_dendrogram(solution.merges, str(output_dir / "dendrogram.csv"))
        matrix.write_csv(str(output_dir / "cooccurrence.csv"))
        _write_run_report(
            output_dir / "report.txt", config, corpus, taxonomy, matrix, solution, embedding, areas, report
        )
        write_manifest(
            config,
            str(output_dir / "manifest.cfg"),
            extras={
                "k": solution.k,
                "stress": repr(embedding.stress),
                "r_squared": repr(embedding.r_squared),
                "documents": matrix.n,
                "finished_at": datetime.now(timezone.utc).isoformat(),
            },
        )
    except StageError:
        raise
    except Exception as exc:
        raise StageError(stage, exc) from exc

    return domain_map, report


def _write_coordinates(coords: dict[str, tuple[float, ...]], path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_id", "x", "y"])
        for doc_id in sorted(coords):
            x, y = coords[doc_id][:2]
            writer.writerow([doc_id, repr(x), repr(y)])


def _write_run_report(
    path: Path, config, corpus, taxonomy, matrix, solution, embedding, areas, report
) -> None:
    lines = []
    lines.append(f"documents selected\t{matrix.n}")
    lines.append(f"libraries\t{len(corpus.libraries)}")
    lines.append(f"clusters (k)\t{solution.k}")
    ev = solution.explained_variance[solution.k]
    lines.append(f"explained variance at k\t{ev:.4f}")
    lines.append(f"stress\t{embedding.stress:.4f}")
    lines.append(f"r_squared\t{embedding.r_squared:.4f}")
    lines.append("")
    lines.append("Topic Area\tNo. Documents\tNo. Readers\t% Readership")
    for area in sorted(areas, key=lambda a: -a.num_readers):
        lines.append(
            f"{area.label}\t{area.num_docs}\t{area.num_readers}\t"
            f"{100.0 * area.readership_share:.1f}%"
        )
    total_docs = sum(a.num_docs for a in areas)
    total_readers = sum(a.num_readers for a in areas)
    lines.append(f"Sum\t{total_docs}\t{total_readers}\t100.0%")
    lines.append("")
    try:
        dist = stats.subject_distribution(corpus, taxonomy)
        lines.append(stats.format_subject_table(dist).rstrip("\n"))
    except ValueError:
        lines.append("subject distribution: no matched journal articles")
    if config.as_of:
        as_of = date.fromisoformat(config.as_of)
        selected_docs = [corpus.documents[d] for d in matrix.doc_ids]
        try:
            ages = stats.age_type_stats(selected_docs, as_of)
            lines.append("")
            lines.append(f"median age (years)\t{ages.median_age_years:.1f}")
            lines.append(f"mean age (years)\t{ages.mean_age_years:.1f}")
            for pub_type, count in ages.type_counts.items():
                lines.append(f"type:{pub_type}\t{count}")
        except ValueError:
            pass
    for warning in report["warnings"]:
        lines.append(f"warning\t{warning}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def sweep_threshold(
    config: PipelineConfig,
    thresholds: Sequence[int],
    reference_labels: dict[str, str],
) -> list[dict]:
    """Selection + clustering per threshold, scoring each solution's purity.

    Rows carry threshold, document count, chosen k, and purity; thresholds
    whose solution cannot be built (too few documents, no elbow) keep None
    entries. The best row is flagged.
    """
    corpus, _ = corpus_mod.load_corpus(config.libraries, config.documents)
    rows: list[dict] = []
    for threshold in thresholds:
        selection = SelectionConfig(
            threshold=threshold,
            scope_filter=config.scope_filter,
            cap=config.cap,
            seed=config.seed,
        )
        row: dict = {"threshold": threshold, "n_docs": 0, "k": None, "purity": None, "best": False}
        try:
            matrix, model, full = _distance_model(corpus, selection)
            row["n_docs"] = matrix.n
            solution = simcluster.solve_clusters(
                full,
                matrix.doc_ids,
                variance_floor=config.elbow_variance_floor,
                increment_ceiling=config.elbow_increment_ceiling,
            )
            row["k"] = solution.k
            row["purity"] = simcluster.purity(solution.assignment, reference_labels)
        except (CoreadmapError, ValueError):
            pass
        rows.append(row)
    scored = [r for r in rows if r["purity"] is not None]
    if scored:
        best = max(scored, key=lambda r: (r["purity"], -r["threshold"]))
        best["best"] = True
    return rows


def _resolve_output_dir(config: PipelineConfig) -> Path:
    if config.output_dir:
        return Path(config.output_dir)
    env = os.environ.get(OUTPUT_DIR_ENV)
    return Path(env) if env else Path("coreadmap-out")


def _merge_cli_overrides(config: PipelineConfig, args: argparse.Namespace) -> PipelineConfig:
    updates = {}
    for _key, (field_name, _caster) in _KEYMAP.items():
        value = getattr(args, field_name, None)
        if value is not None:
            updates[field_name] = value
    if updates:
        config = replace(config, **updates)
    config.validate()
    return config


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat dotted-key config file")
    for key, (field_name, caster) in _KEYMAP.items():
        parser.add_argument(
            f"--{key}",
            dest=field_name,
            type=caster if caster else str,
            default=None,
            help=f"override config key {key}",
        )


def _load_config(args: argparse.Namespace) -> PipelineConfig:
    values = parse_config_file(args.config) if args.config else {}
    config = config_from_values(values)
    return _merge_cli_overrides(config, args)


def _parse_threshold_range(text: str) -> list[int]:
    if ":" in text:
        lo, _, hi = text.partition(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coreadmap",
        description="Map a research field from co-readership patterns in user libraries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the full pipeline")
    _add_config_flags(p_run)

    p_sweep = sub.add_parser("sweep", help="evaluate thresholds by cluster purity")
    _add_config_flags(p_sweep)
    p_sweep.add_argument(
        "--thresholds", required=True, help="range lo:hi or comma list, e.g. 11:25"
    )
    p_sweep.add_argument(
        "--reference-labels", required=True, help="doc_id,class CSV for purity"
    )

    p_stats = sub.add_parser("stats", help="write distribution reports")
    _add_config_flags(p_stats)

    p_export = sub.add_parser("export", help="derive CSV tables from a map payload")
    p_export.add_argument("--map", required=True, help="map payload JSON")
    p_export.add_argument("--out", required=True, help="output directory")
    return parser


def cmd_run(config: PipelineConfig) -> int:
    output_dir = _resolve_output_dir(config)
    output_dir.mkdir(parents=True, exist_ok=True)
    failed_marker = output_dir / "FAILED"
    if failed_marker.exists():
        failed_marker.unlink()
    try:
        domain_map, report = run_pipeline(config, output_dir)
    except StageError as err:
        failed_marker.write_text(f"{err.stage}: {err.cause}\n", encoding="utf-8")
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    print(f"map written to {output_dir / 'map.json'}")
    print(
        f"documents={report['n_documents']} k={report['k']} "
        f"stress={report['stress']:.3f} r_squared={report['r_squared']:.3f}"
    )
    for warning in report["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(config: PipelineConfig, thresholds: list[int], labels_path: str) -> int:
    for path_key, value in (("paths.libraries", config.libraries), ("paths.documents", config.documents)):
        if not value or not Path(value).is_file():
            print(f"error: {path_key} missing or not a file: {value}", file=sys.stderr)
            return EXIT_BAD_INPUT
    if not Path(labels_path).is_file():
        print(f"error: reference labels file not found: {labels_path}", file=sys.stderr)
        return EXIT_BAD_INPUT
    reference = load_reference_labels(labels_path)
    rows = sweep_threshold(config, thresholds, reference)
    output_dir = _resolve_output_dir(config)
    output_dir.mkdir(parents=True, exist_ok=True)
    out_path = output_dir / "sweep.csv"
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "n_docs", "k", "purity", "best"])
        for row in rows:
            writer.writerow(
                [
                    row["threshold"],
                    row["n_docs"],
                    row["k"] if row["k"] is not None else "",
                    f"{row['purity']:.4f}" if row["purity"] is not None else "",
                    "*" if row["best"] else "",
                ]
            )
    print(f"{'threshold':>9} {'n_docs':>7} {'k':>4} {'purity':>7}")
    for row in rows:
        k = row["k"] if row["k"] is not None else "-"
        pur = f"{row['purity']:.3f}" if row["purity"] is not None else "-"
        flag = " *" if row["best"] else ""
        print(f"{row['threshold']:>9} {row['n_docs']:>7} {k:>4} {pur:>7}{flag}")
    print(f"sweep table written to {out_path}")
    return EXIT_OK


def cmd_stats(config: PipelineConfig) -> int:
    required = {
        "paths.libraries": config.libraries,
        "paths.documents": config.documents,
        "paths.taxonomy": config.taxonomy,
    }
    for key, value in required.items():
        if not value or not Path(value).is_file():
            print(f"error: {key} missing or not a file: {value}", file=sys.stderr)
            return EXIT_BAD_INPUT
    corpus, _ = corpus_mod.load_corpus(config.libraries, config.documents)
    taxonomy = corpus_mod.load_taxonomy(config.taxonomy)
    output_dir = _resolve_output_dir(config)
    output_dir.mkdir(parents=True, exist_ok=True)

    dist = stats.subject_distribution(corpus, taxonomy)
    (output_dir / "subject_distribution.tsv").write_text(
        stats.format_subject_table(dist), encoding="utf-8"
    )

    sizes = stats.library_size_stats(corpus, taxonomy)
    size_lines = [
        "metric\tvalue",
        f"mean\t{sizes.mean:.1f}",
        f"sd\t{sizes.sd:.1f}",
        f"median\t{sizes.median:.1f}",
        f"matched_mean\t{sizes.matched_mean:.1f}",
        f"matched_sd\t{sizes.matched_sd:.1f}",
        f"matched_median\t{sizes.matched_median:.1f}",
        f"top_decile_share\t{100.0 * sizes.top_decile_share:.1f}%",
    ]
    (output_dir / "library_sizes.tsv").write_text(
        "\n".join(size_lines) + "\n", encoding="utf-8"
    )
    with open(output_dir / "library_size_histogram.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bin_start", "bin_end", "count"])
        for bin_start, bin_end, count in sizes.histogram:
            writer.writerow([bin_start, bin_end, count])

    countries = stats.country_distribution(corpus.libraries)
    country_lines = ["country\tshare"]
    for country, share in countries.shares.items():
        country_lines.append(f"{country}\t{100.0 * share:.1f}%")
    if countries.other_aggregate > 0:
        country_lines.append(f"Other\t{100.0 * countries.other_aggregate:.1f}%")
    country_lines.append(f"# users with a country: {countries.n_with_country}")
    country_lines.append(f"# countries listed: {countries.n_countries}")
    (output_dir / "countries.tsv").write_text(
        "\n".join(country_lines) + "\n", encoding="utf-8"
    )

    if config.as_of:
        selection = SelectionConfig(
            threshold=config.threshold,
            scope_filter=config.scope_filter,
            cap=config.cap,
            seed=config.seed,
        )
        try:
            selected = select_documents(corpus, selection)
        except NoDocumentsSelectedError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_STAGE_FAILED
        docs = [corpus.documents[d] for d in selected]
        ages = stats.age_type_stats(docs, date.fromisoformat(config.as_of))
        age_lines = [
            "metric\tvalue",
            f"median_age_years\t{ages.median_age_years:.1f}",
            f"mean_age_years\t{ages.mean_age_years:.1f}",
        ]
        for year, count in ages.year_histogram.items():
            age_lines.append(f"year:{year}\t{count}")
        for pub_type, count in ages.type_counts.items():
            age_lines.append(f"type:{pub_type}\t{count}")
        for journal, count in ages.journal_counts.items():
            age_lines.append(f"journal:{journal}\t{count}")
        (output_dir / "publication_ages.tsv").write_text(
            "\n".join(age_lines) + "\n", encoding="utf-8"
        )

    print(f"stats written to {output_dir}")
    return EXIT_OK


def cmd_export(map_path: str, out_dir: str) -> int:
    if not Path(map_path).is_file():
        print(f"error: map payload not found: {map_path}", file=sys.stderr)
        return EXIT_BAD_INPUT
    domain_map = load_map(map_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "coordinates.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_id", "x", "y"])
        for doc in sorted(domain_map.documents, key=lambda d: d.doc_id):
            writer.writerow([doc.doc_id, repr(doc.x), repr(doc.y)])
    with open(out / "areas.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "label", "num_docs", "readers", "share"])
        for area in domain_map.areas:
            writer.writerow(
                [area.index, area.label, area.num_docs, area.num_readers, repr(area.readership_share)]
            )
    print(f"exports written to {out}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(_load_config(args))
        if args.command == "sweep":
            thresholds = _parse_threshold_range(args.thresholds)
            return cmd_sweep(_load_config(args), thresholds, args.reference_labels)
        if args.command == "stats":
            return cmd_stats(_load_config(args))
        if args.command == "export":
            return cmd_export(args.map, args.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

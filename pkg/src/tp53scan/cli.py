"""Command-line surface: one subcommand per pipeline stage.

Exit codes: 0 success, 1 domain or I/O error (named on stderr), 2 usage
error. Codon numbers everywhere are 1-based from the first base of the
supplied sequence, so inputs should start exactly at the coding start.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .alignment import (
    DNA_SCHEME,
    PROTEIN_SCHEME,
    AlignOp,
    AlignmentResult,
    ScoringScheme,
    align_global,
    identity_percent,
)
from .composition import DEFAULT_GC_THRESHOLD, composition, reference_gate
from .datafiles import bundled_db_path, bundled_refstore_path
from .errors import RecordCountError, ScanError
from .mutcall import MutationCallSet, call_mutations
from .mutdb import FilterQuery, load_db, query
from .pipeline import (
    PipelineConfig,
    _mutation_to_dict,
    _record_to_dict,
    predict,
    render_text,
    report_to_dict,
)
from .refstore import DEFAULT_PREFIX_CAP, load_store
from .seqio import Alphabet, FastaDocument, read_fasta, write_fasta
from .translation import translate

WRAP = 60


@dataclass(frozen=True)
class CliConfig:
    """Resolved settings for one invocation."""

    gc_threshold: float = DEFAULT_GC_THRESHOLD
    dna_scheme: ScoringScheme = field(default_factory=lambda: DNA_SCHEME)
    protein_scheme: ScoringScheme = field(default_factory=lambda: PROTEIN_SCHEME)
    db_path: Path = field(default_factory=bundled_db_path)
    refstore_path: Path = field(default_factory=bundled_refstore_path)
    output: str = "text"
    where_clauses: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not 0.0 <= self.gc_threshold <= 100.0:
            raise ValueError(
                f"threshold must be within [0, 100], got {self.gc_threshold}"
            )
        if self.output not in ("text", "json"):
            raise ValueError(f"output must be text or json, got {self.output!r}")


def _where_pair(pair: str) -> str:
    name, sep, value = pair.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected field=value, got {pair!r}")
    if name.strip() == "codon":
        try:
            int(value.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"codon clause needs an integer, got {value.strip()!r}"
            ) from None
    return pair


def _scheme_from_args(args: argparse.Namespace, base: ScoringScheme) -> ScoringScheme:
    return ScoringScheme(
        match=base.match if args.match is None else args.match,
        mismatch=base.mismatch if args.mismatch is None else args.mismatch,
        gap_open=base.gap_open if args.gap_open is None else args.gap_open,
        gap_extend=base.gap_extend if args.gap_extend is None else args.gap_extend,
    )


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    kwargs: dict[str, object] = {"output": getattr(args, "output", "text")}
    if getattr(args, "threshold", None) is not None:
        kwargs["gc_threshold"] = args.threshold
    if getattr(args, "db", None) is not None:
        kwargs["db_path"] = Path(args.db)
    if getattr(args, "refstore", None) is not None:
        kwargs["refstore_path"] = Path(args.refstore)
    if getattr(args, "where", None):
        kwargs["where_clauses"] = tuple(args.where)
    alphabet = getattr(args, "alphabet", "dna")
    if hasattr(args, "match"):
        scheme = _scheme_from_args(
            args, PROTEIN_SCHEME if alphabet == "protein" else DNA_SCHEME
        )
        if alphabet == "protein":
            kwargs["protein_scheme"] = scheme
        else:
            kwargs["dna_scheme"] = scheme
    return CliConfig(**kwargs)


def _emit(payload: dict, text: str, output: str) -> None:
    if output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _cmd_gc(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    doc = read_fasta(args.fasta, Alphabet.DNA)
    blocks: list[str] = []
    rows: list[dict] = []
    for rec in doc:
        report = composition(rec)
        decision = reference_gate(report, config.gc_threshold)
        counts = " ".join(f"{b}={report.counts[b]}" for b in "ACGTN")
        blocks.append(
            "\n".join(
                [
                    f"record: {rec.id}",
                    f"length: {report.length}",
                    f"counts: {counts}",
                    f"gc_percent: {report.gc_percent:.2f}",
                    f"at_percent: {report.at_percent:.2f}",
                    f"gate({config.gc_threshold:g}): {decision.value}",
                ]
            )
        )
        rows.append(
            {
                "id": rec.id,
                "length": report.length,
                "counts": dict(report.counts),
                "gc_percent": report.gc_percent,
                "at_percent": report.at_percent,
                "threshold": config.gc_threshold,
                "decision": decision.value,
            }
        )
    _emit({"records": rows}, "\n\n".join(blocks) + "\n", config.output)
    return 0


def _alignment_blocks(result: AlignmentResult) -> str:
    marks = {
        AlignOp.MATCH: "|",
        AlignOp.MISMATCH: ".",
        AlignOp.INSERT: " ",
        AlignOp.DELETE: " ",
    }
    midline = "".join(
        marks[op] for op, count in result.ops for _ in range(count)
    )
    chunks = []
    for start in range(0, len(result.aligned_a), WRAP):
        end = start + WRAP
        chunks.append(
            "\n".join(
                [
                    f"a {result.aligned_a[start:end]}",
                    f"  {midline[start:end]}",
                    f"b {result.aligned_b[start:end]}",
                ]
            )
        )
    return "\n\n".join(chunks)


def _cmd_align(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    alphabet = Alphabet.PROTEIN if args.alphabet == "protein" else Alphabet.DNA
    scheme = config.protein_scheme if args.alphabet == "protein" else config.dna_scheme
    doc = read_fasta(args.fasta, alphabet)
    if len(doc) != 2:
        raise RecordCountError(f"align needs exactly 2 records, found {len(doc)}")
    result = align_global(doc[0], doc[1], scheme)
    ops_text = ", ".join(f"{op.value} x{count}" for op, count in result.ops)
    text = "\n".join(
        [
            f"a: {doc[0].id}",
            f"b: {doc[1].id}",
            f"score: {result.score}",
            f"identity: {identity_percent(result):.2f}%",
            f"ops: {ops_text}",
            "",
            _alignment_blocks(result),
        ]
    )
    payload = {
        "a": doc[0].id,
        "b": doc[1].id,
        "score": result.score,
        "identity_percent": identity_percent(result),
        "aligned_a": result.aligned_a,
        "aligned_b": result.aligned_b,
        "ops": [[op.value, count] for op, count in result.ops],
    }
    _emit(payload, text + "\n", config.output)
    return 0


def _cmd_translate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    doc = read_fasta(args.fasta, Alphabet.DNA)
    proteins = tuple(translate(rec, frame=args.frame) for rec in doc)
    out_doc = FastaDocument(records=proteins)
    payload = {
        "records": [
            {"id": p.id, "description": p.description, "protein": p.residues}
            for p in proteins
        ]
    }
    _emit(payload, write_fasta(out_doc), config.output)
    return 0


def _callset_text(ref_id: str, subj_id: str, calls: MutationCallSet) -> str:
    lines = [
        f"reference: {ref_id}",
        f"subject: {subj_id}",
        f"dna_identical: {str(calls.dna_identical).lower()}",
        f"has_indel: {str(calls.has_indel).lower()}",
    ]
    if calls.mutations:
        lines.append("mutations:")
        for m in calls.mutations:
            lines.append(
                f"  {m.codon_number} {m.ref_codon}>{m.alt_codon} "
                f"{m.ref_aa}>{m.alt_aa} {m.kind.value}"
            )
    else:
        lines.append("mutations: none")
    return "\n".join(lines) + "\n"


def _cmd_call(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    ref = read_fasta(args.ref_fasta, Alphabet.DNA)[0]
    subj = read_fasta(args.subj_fasta, Alphabet.DNA)[0]
    calls = call_mutations(ref, subj, config.dna_scheme)
    payload = {
        "reference": ref.id,
        "subject": subj.id,
        "dna_identical": calls.dna_identical,
        "has_indel": calls.has_indel,
        "calls": [_mutation_to_dict(m) for m in calls.mutations],
    }
    _emit(payload, _callset_text(ref.id, subj.id, calls), config.output)
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    db = load_db(config.db_path)
    try:
        q = FilterQuery.from_strings(config.where_clauses)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = query(db, q)
    lines = [f"matches: {len(result.matches)}"]
    for r in result.matches:
        lines.append(
            f"  {r.record_id}  codon {r.codon_number}  {r.wt_codon}>{r.mut_codon}  "
            f"{r.wt_aa}>{r.mut_aa}  {r.tumor_type}"
        )
    if result.distinct_tumor_types:
        lines.append("tumor types: " + "; ".join(result.distinct_tumor_types))
    payload = {
        "matches": [_record_to_dict(r) for r in result.matches],
        "distinct_tumor_types": list(result.distinct_tumor_types),
    }
    _emit(payload, "\n".join(lines) + "\n", config.output)
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    store = load_store(config.refstore_path)
    db = load_db(config.db_path)
    doc = read_fasta(args.subj_fasta, Alphabet.DNA)
    if len(doc) != 1:
        raise RecordCountError(f"predict needs exactly 1 record, found {len(doc)}")
    pipeline_config = PipelineConfig(
        gc_threshold=config.gc_threshold,
        dna_scheme=config.dna_scheme,
        allow_partial=args.allow_partial,
        homolog_prefix_cap=args.prefix_cap,
    )
    report = predict(store, db, doc[0], args.gene, pipeline_config)
    _emit(report_to_dict(report), render_text(report), config.output)
    return 0


def _add_output_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--output",
        choices=("text", "json"),
        default="text",
        help="report format (default: text)",
    )


def _add_scheme_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--match", type=int, default=None, help="match score")
    sub.add_argument("--mismatch", type=int, default=None, help="mismatch score")
    sub.add_argument("--gap-open", type=int, default=None, help="gap open penalty")
    sub.add_argument("--gap-extend", type=int, default=None, help="gap extend penalty")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tp53scan",
        description=(
            "Offline codon-level TP53 pre-cancer screening. Codon numbers are "
            "1-based from the first base of the supplied sequence."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gc = sub.add_parser("gc", help="base composition and GC gate for each record")
    p_gc.add_argument("fasta", help="DNA FASTA file")
    p_gc.add_argument(
        "--threshold",
        type=float,
        default=None,
        help=f"GC acceptance threshold in percent (default: {DEFAULT_GC_THRESHOLD})",
    )
    _add_output_flag(p_gc)
    p_gc.set_defaults(handler=_cmd_gc)

    p_align = sub.add_parser("align", help="globally align the two records of a FASTA")
    p_align.add_argument("fasta", help="FASTA file with exactly two records")
    p_align.add_argument(
        "--alphabet", choices=("dna", "protein"), default="dna",
        help="residue alphabet (default: dna)",
    )
    _add_scheme_flags(p_align)
    _add_output_flag(p_align)
    p_align.set_defaults(handler=_cmd_align)

    p_tr = sub.add_parser("translate", help="translate DNA records to protein FASTA")
    p_tr.add_argument("fasta", help="DNA FASTA file")
    p_tr.add_argument(
        "--frame", type=int, choices=(0, 1, 2), default=0,
        help="reading-frame offset (default: 0)",
    )
    _add_output_flag(p_tr)
    p_tr.set_defaults(handler=_cmd_translate)

    p_call = sub.add_parser(
        "call",
        help="call codon-level mutations of a subject against a reference",
        description=(
            "Aligns the first record of each file and reports per-codon "
            "substitutions in reference coordinates (1-based)."
        ),
    )
    p_call.add_argument("ref_fasta", help="reference DNA FASTA")
    p_call.add_argument("subj_fasta", help="subject DNA FASTA")
    _add_scheme_flags(p_call)
    _add_output_flag(p_call)
    p_call.set_defaults(handler=_cmd_call)

    p_query = sub.add_parser("query", help="filter the mutation database")
    p_query.add_argument(
        "--db", default=None, help="TSV database path (default: bundled fixture)"
    )
    p_query.add_argument(
        "--where",
        action="append",
        type=_where_pair,
        default=[],
        metavar="FIELD=VALUE",
        help="equality clause; repeat to AND clauses together",
    )
    _add_output_flag(p_query)
    p_query.set_defaults(handler=_cmd_query)

    p_pred = sub.add_parser(
        "predict",
        help="run the full prediction pipeline on a subject CDS",
        description=(
            "Ranks reference candidates, applies the GC gate, calls "
            "mutations and looks them up in the database. The subject must "
            "start at the coding start so codon numbers line up."
        ),
    )
    p_pred.add_argument("subj_fasta", help="subject DNA FASTA (one record)")
    p_pred.add_argument(
        "--refstore", default=None,
        help="reference store directory (default: bundled fixture)",
    )
    p_pred.add_argument(
        "--db", default=None, help="TSV database path (default: bundled fixture)"
    )
    p_pred.add_argument("--gene", default="TP53", help="gene token (default: TP53)")
    p_pred.add_argument(
        "--threshold", type=float, default=None,
        help=f"GC acceptance threshold (default: {DEFAULT_GC_THRESHOLD})",
    )
    p_pred.add_argument(
        "--allow-partial", action="store_true",
        help="truncate a subject whose length is not a codon multiple",
    )
    p_pred.add_argument(
        "--prefix-cap", type=int, default=DEFAULT_PREFIX_CAP,
        help=f"prefix length for homolog ranking (default: {DEFAULT_PREFIX_CAP})",
    )
    _add_scheme_flags(p_pred)
    _add_output_flag(p_pred)
    p_pred.set_defaults(handler=_cmd_predict)
    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (ScanError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

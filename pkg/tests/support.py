"""Shared test helpers: independent oracles and store builders.

The oracles here deliberately avoid the library's own algorithms: the
alignment oracle enumerates every monotone alignment path, and the
query oracle is a plain linear scan with its own normalization.
"""

from __future__ import annotations

from pathlib import Path

from tp53scan.alignment import ScoringScheme
from tp53scan.mutdb import Database, MutationRecord
from tp53scan.refstore import ReferenceStore, load_store
from tp53scan.seqio import Alphabet, FastaDocument, Sequence, write_fasta


def oracle_best_score(a: str, b: str, scheme: ScoringScheme) -> int:
    """Exhaustive affine-gap optimum via path enumeration (no DP).

    Walks every monotone alignment with an explicit stack, carrying the
    accumulated score and the previous move so gap runs pay open once
    and extend afterwards. Exponential; keep inputs short.
    """
    match, mismatch = scheme.match, scheme.mismatch
    go, ge = scheme.gap_open, scheme.gap_extend
    n, m = len(a), len(b)
    best = None
    # (i, j, last move: 0 diagonal/none, 1 gap-in-b, 2 gap-in-a, score)
    stack = [(0, 0, 0, 0)]
    push = stack.append
    pop = stack.pop
    while stack:
        i, j, last, acc = pop()
        if i == n and j == m:
            if best is None or acc > best:
                best = acc
            continue
        if i < n and j < m:
            push((i + 1, j + 1, 0, acc + (match if a[i] == b[j] else mismatch)))
        if i < n:
            push((i + 1, j, 1, acc + (ge if last == 1 else go)))
        if j < m:
            push((i, j + 1, 2, acc + (ge if last == 2 else go)))
    assert best is not None
    return best


def rescore_alignment(aligned_a: str, aligned_b: str, scheme: ScoringScheme) -> int:
    """Independent affine rescoring of a finished alignment."""
    total = 0
    last = None  # "a-gap" | "b-gap" | None
    for ca, cb in zip(aligned_a, aligned_b):
        if ca == "-":
            total += scheme.gap_extend if last == "a-gap" else scheme.gap_open
            last = "a-gap"
        elif cb == "-":
            total += scheme.gap_extend if last == "b-gap" else scheme.gap_open
            last = "b-gap"
        else:
            total += scheme.match if ca == cb else scheme.mismatch
            last = None
    return total


def scan_query_oracle(db: Database, clauses: list[tuple[str, object]]) -> list[str]:
    """Record ids matching all clauses, file order, by naive full scan."""

    def norm(text: str) -> str:
        return text.strip().lower()

    def text_of(rec: MutationRecord, field: str) -> str:
        builtin = {
            "record_id": rec.record_id,
            "codon": str(rec.codon_number),
            "wt_codon": rec.wt_codon,
            "mut_codon": rec.mut_codon,
            "wt_aa": rec.wt_aa,
            "mut_aa": rec.mut_aa,
            "mutation_event": rec.mutation_event,
            "tumor_type": rec.tumor_type,
        }
        if field in builtin:
            return builtin[field]
        return rec.extra[field]

    kept = []
    for rec in db.records:
        ok = True
        for field, value in clauses:
            if field == "codon":
                if rec.codon_number != value:
                    ok = False
                    break
            elif norm(text_of(rec, field)) != norm(str(value)):
                ok = False
                break
        if ok:
            kept.append(rec.record_id)
    return kept


def write_store(
    directory: Path, entries: list[tuple[str, str, int, Sequence]]
) -> ReferenceStore:
    """Materialize (gene, source, priority, sequence) rows as a store."""
    directory.mkdir(parents=True, exist_ok=True)
    lines = ["file\tgene\tsource\tpriority"]
    for idx, (gene, source, priority, seq) in enumerate(entries):
        name = f"entry_{idx}.fasta"
        (directory / name).write_text(
            write_fasta(FastaDocument(records=(seq,))), encoding="utf-8"
        )
        lines.append(f"{name}\t{gene}\t{source}\t{priority}")
    (directory / "manifest.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return load_store(directory)


def dna(residues: str, seq_id: str = "seq", description: str = "") -> Sequence:
    return Sequence(
        id=seq_id, description=description, residues=residues, alphabet=Alphabet.DNA
    )


def low_gc_pair() -> tuple[Sequence, Sequence]:
    """Two same-protein sequences: one far below 38% GC, one just above.

    The first is ATG + 65xTTA + 65xAA A (GC 1/393); the second raises GC
    with synonymous swaps only (TTA>CTG, some AAA>AAG) to 151/393.
    """
    first = "ATG" + "TTA" * 65 + "AAA" * 65
    second = "ATG" + "CTG" * 65 + "AAG" * 20 + "AAA" * 45
    assert len(first) == len(second) == 393
    assert first.count("G") + first.count("C") == 1
    assert second.count("G") + second.count("C") == 151  # 151/393 = 38.42%
    return dna(first, "low_gc_entry"), dna(second, "raised_gc_entry")

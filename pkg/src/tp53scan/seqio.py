"""FASTA parsing, validation, and writing for DNA and protein sequences."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import (
    DuplicateIdError,
    EmptyHeaderError,
    EmptyRecordError,
    IllegalResidueError,
    MissingHeaderError,
)

DNA_RESIDUES = frozenset("ACGTN")
PROTEIN_RESIDUES = frozenset("ACDEFGHIKLMNPQRSTVWYX*")


class Alphabet(Enum):
    DNA = "dna"
    PROTEIN = "protein"

    @property
    def residues(self) -> frozenset[str]:
        return DNA_RESIDUES if self is Alphabet.DNA else PROTEIN_RESIDUES


@dataclass(frozen=True)
class Sequence:
    """One identified residue string.

    Residues must already be uppercase and drawn from the declared alphabet;
    parse_fasta performs the normalization. The id is the first
    whitespace-delimited token of the header line and may not contain
    whitespace itself.
    """

    id: str
    description: str
    residues: str
    alphabet: Alphabet

    def __post_init__(self):
        if not self.id or any(c.isspace() for c in self.id):
            raise ValueError(f"sequence id must be a non-empty token, got {self.id!r}")
        if not self.residues:
            raise EmptyRecordError(self.id)
        allowed = self.alphabet.residues
        for i, ch in enumerate(self.residues):
            if ch not in allowed:
                raise IllegalResidueError(self.id, i + 1, ch, self.alphabet.name)

    def __len__(self) -> int:
        return len(self.residues)


@dataclass(frozen=True)
class FastaDocument:
    """Ordered FASTA records with unique ids."""

    records: tuple[Sequence, ...]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen: set[str] = set()
        for rec in self.records:
            if rec.id in seen:
                raise DuplicateIdError(rec.id)
            seen.add(rec.id)

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, index: int) -> Sequence:
        return self.records[index]


def parse_fasta(text: str | bytes, alphabet: Alphabet) -> FastaDocument:
    """Parse FASTA text into validated records.

    Lowercase residues are uppercased, internal whitespace inside sequence
    lines is dropped, \\r\\n line endings are accepted, and blank lines are
    ignored. Raises MissingHeaderError, EmptyHeaderError, EmptyRecordError,
    DuplicateIdError, or IllegalResidueError (with the record id and the
    1-based position in the concatenated residue string).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    records: list[Sequence] = []
    seen_ids: set[str] = set()
    header: tuple[str, str] | None = None
    chunks: list[str] = []

    def flush():
        nonlocal header, chunks
        if header is None:
            return
        rec_id, desc = header
        residues = "".join(chunks)
        if not residues:
            raise EmptyRecordError(rec_id)
        records.append(Sequence(rec_id, desc, residues, alphabet))
        header = None
        chunks = []

    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            head = line[1:].strip()
            if not head:
                raise EmptyHeaderError("header line carries no id")
            parts = head.split(None, 1)
            rec_id = parts[0]
            desc = parts[1].strip() if len(parts) > 1 else ""
            if rec_id in seen_ids:
                raise DuplicateIdError(rec_id)
            seen_ids.add(rec_id)
            header = (rec_id, desc)
        else:
            if header is None:
                raise MissingHeaderError("sequence data before any '>' header")
            # whitespace inside a sequence line is dropped, not an error
            chunks.append("".join(line.split()).upper())

    flush()
    if not records:
        raise MissingHeaderError("input contains no FASTA records")
    return FastaDocument(tuple(records))


def write_fasta(doc: FastaDocument, width: int = 60) -> str:
    """Render a document as FASTA text, wrapping residues at `width` columns.

    parse_fasta(write_fasta(doc)) reproduces ids, descriptions, residues,
    and record order exactly.
    """
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")
    parts: list[str] = []
    for rec in doc.records:
        parts.append(f">{rec.id} {rec.description}".rstrip() + "\n")
        for i in range(0, len(rec.residues), width):
            parts.append(rec.residues[i : i + width] + "\n")
    return "".join(parts)


def read_fasta(path: str | Path, alphabet: Alphabet) -> FastaDocument:
    return parse_fasta(Path(path).read_text(encoding="utf-8"), alphabet)

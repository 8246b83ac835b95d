"""Paths to the data files shipped inside the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def data_root() -> Path:
    return Path(str(resources.files(__package__).joinpath("data")))


def bundled_db_path() -> Path:
    """The synthetic mutation database (TSV)."""
    return data_root() / "tp53_mutations.tsv"


def bundled_refstore_path() -> Path:
    """Directory with the reference manifest and FASTA entries."""
    return data_root() / "refstore"


def bundled_subject_path() -> Path:
    """Subject CDS carrying the codon-248 CGG->TGG change."""
    return data_root() / "subject_r248w.fasta"


def bundled_homolog_path() -> Path:
    """Plain normal-homolog export used by composition checks."""
    return data_root() / "normal_homolog.fasta"

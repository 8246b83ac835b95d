from __future__ import annotations

import pytest

from tp53scan.datafiles import (
    bundled_db_path,
    bundled_homolog_path,
    bundled_refstore_path,
    bundled_subject_path,
)
from tp53scan.mutdb import Database, load_db
from tp53scan.refstore import ReferenceStore, load_store
from tp53scan.seqio import Alphabet, Sequence, read_fasta


@pytest.fixture(scope="session")
def store() -> ReferenceStore:
    return load_store(bundled_refstore_path())


@pytest.fixture(scope="session")
def db() -> Database:
    return load_db(bundled_db_path())


@pytest.fixture(scope="session")
def reference_cds(store: ReferenceStore) -> Sequence:
    entry = next(e for e in store.entries if e.source == "ncbi-export")
    return entry.sequence


@pytest.fixture(scope="session")
def subject_r248w() -> Sequence:
    return read_fasta(bundled_subject_path(), Alphabet.DNA)[0]


@pytest.fixture(scope="session")
def homolog() -> Sequence:
    return read_fasta(bundled_homolog_path(), Alphabet.DNA)[0]

#!/usr/bin/env python3
"""Run the bundled codon-248 example end to end and print both reports.

The subject differs from the primary reference by one base: codon 248
CGG>TGG (R>W). Expected verdict: PreCancerMatch with five database rows.
"""

from __future__ import annotations

import json

from tp53scan import (
    Alphabet,
    load_db,
    load_store,
    predict,
    read_fasta,
    render_text,
    report_to_dict,
)
from tp53scan.datafiles import (
    bundled_db_path,
    bundled_refstore_path,
    bundled_subject_path,
)


def main() -> None:
    store = load_store(bundled_refstore_path())
    db = load_db(bundled_db_path())
    subject = read_fasta(bundled_subject_path(), Alphabet.DNA)[0]

    report = predict(store, db, subject, "TP53")
    print(render_text(report))
    print(json.dumps(report_to_dict(report), indent=2))


if __name__ == "__main__":
    main()

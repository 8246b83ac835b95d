"""Global pairwise alignment with affine gap penalties.

Exact three-state dynamic program (Gotoh). A gap run of length L costs
``gap_open + (L - 1) * gap_extend``. The DP fills numpy matrices row by
row; traceback is pure Python and deterministic: at every choice point
Match/Mismatch is preferred over Delete, and Delete over Insert.

Column conventions: Delete consumes a residue of ``a`` (gap in ``b``),
Insert consumes a residue of ``b`` (gap in ``a``).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import AlphabetMismatchError, EmptyInputError
from .seqio import Sequence

GAP = "-"

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class ScoringScheme:
    """Match/mismatch scores plus affine gap penalties (all integers)."""

    match: int
    mismatch: int
    gap_open: int
    gap_extend: int

    def __post_init__(self) -> None:
        if self.match <= self.mismatch:
            raise ValueError(
                f"match score ({self.match}) must exceed mismatch ({self.mismatch})"
            )
        if not self.gap_open <= self.gap_extend <= 0:
            raise ValueError(
                "gap penalties must satisfy gap_open <= gap_extend <= 0, "
                f"got open={self.gap_open} extend={self.gap_extend}"
            )


DNA_SCHEME = ScoringScheme(match=2, mismatch=-1, gap_open=-5, gap_extend=-1)
PROTEIN_SCHEME = ScoringScheme(match=4, mismatch=-2, gap_open=-10, gap_extend=-1)


class AlignOp(Enum):
    MATCH = "Match"
    MISMATCH = "Mismatch"
    INSERT = "Insert"
    DELETE = "Delete"


def _op_for_column(ca: str, cb: str) -> AlignOp:
    if ca == GAP:
        return AlignOp.INSERT
    if cb == GAP:
        return AlignOp.DELETE
    return AlignOp.MATCH if ca == cb else AlignOp.MISMATCH


@dataclass(frozen=True)
class AlignmentResult:
    """One optimal alignment: gapped rows, total score, run-length ops."""

    aligned_a: str
    aligned_b: str
    score: int
    ops: tuple[tuple[AlignOp, int], ...]

    def __post_init__(self) -> None:
        if len(self.aligned_a) != len(self.aligned_b):
            raise ValueError("aligned rows differ in length")
        if not self.aligned_a:
            raise ValueError("alignment has no columns")
        expanded: list[AlignOp] = []
        for op, count in self.ops:
            if count < 1:
                raise ValueError(f"run length must be positive, got {count}")
            if expanded and expanded[-1] is op:
                raise ValueError("adjacent runs must have distinct ops")
            expanded.extend([op] * count)
        if len(expanded) != len(self.aligned_a):
            raise ValueError("ops do not cover the alignment columns")
        for ca, cb, op in zip(self.aligned_a, self.aligned_b, expanded):
            if ca == GAP and cb == GAP:
                raise ValueError("column with a gap in both rows")
            if _op_for_column(ca, cb) is not op:
                raise ValueError(f"op {op.value} disagrees with column {ca!r}/{cb!r}")

    def degapped_a(self) -> str:
        return self.aligned_a.replace(GAP, "")

    def degapped_b(self) -> str:
        return self.aligned_b.replace(GAP, "")


def _run_length(ops: list[AlignOp]) -> tuple[tuple[AlignOp, int], ...]:
    runs: list[tuple[AlignOp, int]] = []
    for op in ops:
        if runs and runs[-1][0] is op:
            runs[-1] = (op, runs[-1][1] + 1)
        else:
            runs.append((op, 1))
    return tuple(runs)


def _fill_matrices(
    a: str, b: str, scheme: ScoringScheme
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Fill the three Gotoh score matrices.

    M[i, j]: best score where the last column pairs a[i-1] with b[j-1].
    X[i, j]: last column consumes a[i-1] against a gap (Delete run).
    Y[i, j]: last column consumes b[j-1] against a gap (Insert run).

    Rows are vectorized over j. The Insert state has a within-row
    dependency, so it is resolved with a running-maximum prefix scan:
    Y[i, j] = open + (j-1-k)*extend + best entry at k for some k < j.
    """
    n, m = len(a), len(b)
    match, mismatch = float(scheme.match), float(scheme.mismatch)
    go, ge = float(scheme.gap_open), float(scheme.gap_extend)

    mat_m = np.full((n + 1, m + 1), _NEG_INF)
    mat_x = np.full((n + 1, m + 1), _NEG_INF)
    mat_y = np.full((n + 1, m + 1), _NEG_INF)
    mat_m[0, 0] = 0.0

    a_codes = np.frombuffer(a.encode("ascii"), dtype=np.uint8)
    b_codes = np.frombuffer(b.encode("ascii"), dtype=np.uint8)
    js = np.arange(m, dtype=np.float64)
    ladder = go + ge * js  # cost of an Insert run of length j+1

    def insert_row(i: int) -> None:
        # entry points are M or X at some column k, then extend to j
        entry = np.maximum(mat_m[i], mat_x[i]) - ge * np.arange(m + 1)
        best = np.maximum.accumulate(entry)
        mat_y[i, 1:] = ladder + best[:-1]

    insert_row(0)
    for i in range(1, n + 1):
        sub = np.where(b_codes == a_codes[i - 1], match, mismatch)
        prev = np.maximum(np.maximum(mat_m[i - 1], mat_x[i - 1]), mat_y[i - 1])
        mat_m[i, 1:] = prev[:-1] + sub
        mat_x[i] = np.maximum(
            np.maximum(mat_m[i - 1], mat_y[i - 1]) + go,
            mat_x[i - 1] + ge,
        )
        insert_row(i)
    return mat_m, mat_x, mat_y


def _traceback(
    a: str,
    b: str,
    scheme: ScoringScheme,
    mat_m: np.ndarray,
    mat_x: np.ndarray,
    mat_y: np.ndarray,
) -> tuple[str, str, list[AlignOp]]:
    """Walk one optimal path back to (0, 0).

    All cell values are integer-valued floats, so exact equality against
    candidate predecessors is safe. Preference order M > X > Y applies at
    the end cell and at every step.
    """
    go, ge = float(scheme.gap_open), float(scheme.gap_extend)
    i, j = len(a), len(b)

    state = "M"
    best = mat_m[i, j]
    if mat_x[i, j] > best:
        state, best = "X", mat_x[i, j]
    if mat_y[i, j] > best:
        state, best = "Y", mat_y[i, j]

    cols_a: list[str] = []
    cols_b: list[str] = []
    ops: list[AlignOp] = []
    while i > 0 or j > 0:
        here = {"M": mat_m, "X": mat_x, "Y": mat_y}[state][i, j]
        if state == "M":
            cols_a.append(a[i - 1])
            cols_b.append(b[j - 1])
            ops.append(AlignOp.MATCH if a[i - 1] == b[j - 1] else AlignOp.MISMATCH)
            sub = float(scheme.match if a[i - 1] == b[j - 1] else scheme.mismatch)
            i, j = i - 1, j - 1
            if mat_m[i, j] + sub == here:
                state = "M"
            elif mat_x[i, j] + sub == here:
                state = "X"
            else:
                state = "Y"
        elif state == "X":
            cols_a.append(a[i - 1])
            cols_b.append(GAP)
            ops.append(AlignOp.DELETE)
            i -= 1
            if mat_m[i, j] + go == here:
                state = "M"
            elif mat_x[i, j] + ge == here:
                state = "X"
            else:
                state = "Y"
        else:
            cols_a.append(GAP)
            cols_b.append(b[j - 1])
            ops.append(AlignOp.INSERT)
            j -= 1
            if mat_m[i, j] + go == here:
                state = "M"
            elif mat_x[i, j] + go == here:
                state = "X"
            else:
                state = "Y"
    cols_a.reverse()
    cols_b.reverse()
    ops.reverse()
    return "".join(cols_a), "".join(cols_b), ops


def align_global(a: Sequence, b: Sequence, scheme: ScoringScheme) -> AlignmentResult:
    """Align two sequences end to end, maximizing the affine-gap score.

    Raises:
        AlphabetMismatchError: if the sequences use different alphabets.
        EmptyInputError: if either sequence has no residues.
    """
    if a.alphabet is not b.alphabet:
        raise AlphabetMismatchError(
            f"cannot align {a.alphabet.value} against {b.alphabet.value}"
        )
    if len(a) == 0 or len(b) == 0:
        raise EmptyInputError("both sequences must have at least one residue")

    mat_m, mat_x, mat_y = _fill_matrices(a.residues, b.residues, scheme)
    n, m = len(a), len(b)
    score = max(mat_m[n, m], mat_x[n, m], mat_y[n, m])
    aligned_a, aligned_b, ops = _traceback(
        a.residues, b.residues, scheme, mat_m, mat_x, mat_y
    )
    return AlignmentResult(
        aligned_a=aligned_a,
        aligned_b=aligned_b,
        score=int(score),
        ops=_run_length(ops),
    )


def identity_percent(r: AlignmentResult) -> float:
    """Percentage of alignment columns that are exact matches."""
    total = len(r.aligned_a)
    matches = sum(count for op, count in r.ops if op is AlignOp.MATCH)
    return 100.0 * matches / total

"""CSV and PGM writers (and a PGM reader for round trips)."""
from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

import numpy as np


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def fmt(x: float, digits: int = 10) -> str:
    """Fixed-width float formatting so outputs compare byte for byte."""
    return f"{x:.{digits}g}"


def pgm_text(counts: np.ndarray, comments: Sequence[str] = ()) -> str:
    """Plain PGM (P2), maxval 255.  Cells map linearly to gray with the
    largest cell at 255; rows are written top to bottom."""
    counts = np.asarray(counts, dtype=float)
    top = counts.max()
    gray = np.zeros(counts.shape, dtype=int) if top <= 0 else \
        np.rint(counts / top * 255).astype(int)
    h, w = gray.shape
    lines = ["P2"]
    lines += [f"# {c}" for c in comments]
    lines += [f"{w} {h}", "255"]
    lines += [" ".join(map(str, row)) for row in gray]
    return "\n".join(lines) + "\n"


def read_pgm(text: str) -> np.ndarray:
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens += line.split()
    if not tokens or tokens[0] != "P2":
        raise ValueError("not a plain PGM")
    w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    data = np.array([int(t) for t in tokens[4:]], dtype=int)
    if data.size != w * h or data.min(initial=0) < 0 or data.max(initial=0) > maxval:
        raise ValueError("malformed PGM body")
    return data.reshape(h, w)

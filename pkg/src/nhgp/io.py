"""hMetis .hgr reading/writing, partition files and format converters."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .hypergraph import Hypergraph

log = logging.getLogger(__name__)

VALID_FMT = (None, 0, 1, 10, 11)


class HgrParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class HgrFile:
    num_nets: int
    num_vertices: int
    fmt: int | None = None
    nets: list[list[int]] = field(default_factory=list)  # 1-based pins
    net_weights: list[int] | None = None
    vertex_weights: list[int] | None = None
    duplicate_pins: int = 0

    @property
    def has_net_weights(self) -> bool:
        return self.fmt in (1, 11)

    @property
    def has_vertex_weights(self) -> bool:
        return self.fmt in (10, 11)

    def to_hypergraph(self) -> tuple[Hypergraph, int]:
        """Hypergraph with 0-based ids; single-node nets are dropped and counted."""
        nets = []
        weights = []
        dropped = 0
        for i, pins in enumerate(self.nets):
            if len(pins) == 1:
                dropped += 1
                continue
            nets.append([p - 1 for p in pins])
            weights.append(self.net_weights[i] if self.net_weights else 1)
        hg = Hypergraph(self.num_vertices, nets, weights, self.vertex_weights)
        return hg, dropped

    def raw_hypergraph(self) -> Hypergraph:
        """Every net as read, single-node nets included."""
        nets = [[p - 1 for p in pins] for pins in self.nets]
        return Hypergraph(self.num_vertices, nets, self.net_weights, self.vertex_weights)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield lineno, line


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise HgrParseError(f"non-integer token in {line!r}", lineno) from None


def read_hgr(text: str) -> HgrFile:
    lines = list(_content_lines(text))
    if not lines:
        raise HgrParseError("missing header", 1)
    lineno, header = lines[0]
    vals = _ints(header, lineno)
    if len(vals) not in (2, 3):
        raise HgrParseError("header must be 'num_nets num_vertices [fmt]'", lineno)
    m, n = vals[0], vals[1]
    fmt = vals[2] if len(vals) == 3 else None
    if fmt not in VALID_FMT:
        raise HgrParseError(f"unknown fmt code {fmt}", lineno)
    if m < 0 or n < 0:
        raise HgrParseError("negative counts in header", lineno)
    hf = HgrFile(m, n, fmt)
    expected = 1 + m + (n if hf.has_vertex_weights else 0)
    if len(lines) != expected:
        last = lines[-1][0]
        raise HgrParseError(f"expected {expected - 1} data lines, found {len(lines) - 1}", last)

    if hf.has_net_weights:
        hf.net_weights = []
    for lineno, line in lines[1:1 + m]:
        vals = _ints(line, lineno)
        if hf.has_net_weights:
            if not vals:
                raise HgrParseError("missing net weight", lineno)
            w, vals = vals[0], vals[1:]
            if w <= 0:
                raise HgrParseError(f"net weight must be positive, got {w}", lineno)
            hf.net_weights.append(w)
        if not vals:
            raise HgrParseError("empty net", lineno)
        for p in vals:
            if not 1 <= p <= n:
                raise HgrParseError(f"pin {p} out of range [1, {n}]", lineno)
        unique = list(dict.fromkeys(vals))
        if len(unique) != len(vals):
            hf.duplicate_pins += len(vals) - len(unique)
            log.warning("line %d: duplicate pins removed", lineno)
        hf.nets.append(unique)

    if hf.has_vertex_weights:
        hf.vertex_weights = []
        for lineno, line in lines[1 + m:]:
            vals = _ints(line, lineno)
            if len(vals) != 1 or vals[0] < 0:
                raise HgrParseError("vertex weight line must hold one non-negative integer", lineno)
            hf.vertex_weights.append(vals[0])
    return hf


def parse_hgr(text: str) -> Hypergraph:
    return read_hgr(text).to_hypergraph()[0]


def load_hgr(path: str | Path) -> tuple[Hypergraph, HgrFile, int]:
    hf = read_hgr(Path(path).read_text())
    hg, dropped = hf.to_hypergraph()
    return hg, hf, dropped


def write_hgr(hg: Hypergraph) -> str:
    """Serialize the enabled part of ``hg`` (vertices must be 0..n-1, all enabled)."""
    nets = hg.nets()
    net_w = any(hg.e_weight[e] != 1 for e in nets)
    vert_w = any(w != 1 for w in hg.v_weight)
    fmt = (1 if net_w else 0) + (10 if vert_w else 0)
    out = [f"{len(nets)} {len(hg.v_enabled)}" + (f" {fmt}" if fmt else "")]
    for e in nets:
        pins = " ".join(str(p + 1) for p in hg.pins(e))
        out.append(f"{hg.e_weight[e]} {pins}" if net_w else pins)
    if vert_w:
        out.extend(str(w) for w in hg.v_weight)
    return "\n".join(out) + "\n"


def write_partition(assignment: Sequence[int], path: str | Path) -> None:
    Path(path).write_text("".join(f"{b}\n" for b in assignment))


def read_partition(path: str | Path) -> list[int]:
    return [int(line) for line in Path(path).read_text().split()]


# ---------------------------------------------------------------- converters

def mtx_to_hgr(path: str | Path) -> Hypergraph:
    """Row-net model: rows become nets over their nonzero columns; empty rows are dropped."""
    from scipy.io import mmread
    from scipy.sparse import csr_matrix

    mat = csr_matrix(mmread(str(path)))
    nets = []
    for r in range(mat.shape[0]):
        cols = mat.indices[mat.indptr[r]:mat.indptr[r + 1]]
        if len(cols):
            nets.append(sorted(set(int(c) for c in cols)))
    return Hypergraph(mat.shape[1], nets)


def cnf_to_hgr(text: str) -> Hypergraph:
    """Clauses become nets over their variables; a literal and its negation share a vertex."""
    num_vars = None
    nets = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise HgrParseError("bad problem line", lineno)
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if current:
                    nets.append(list(dict.fromkeys(current)))
                current = []
            else:
                current.append(abs(lit) - 1)
    if current:
        nets.append(list(dict.fromkeys(current)))
    if num_vars is None:
        num_vars = max((p + 1 for net in nets for p in net), default=0)
    return Hypergraph(num_vars, nets)

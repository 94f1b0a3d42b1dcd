"""Loewy diagrams: one node per basis vector of a radical-layered eigenbasis.

Basis vectors of layer i+1 are taken, where possible, as images of layer-i
vectors under the generators, so free modules get their monomial basis and
the pictures look like the usual ones: in case A, Z goes down-left and Y
down-right; in case B, X goes down-left, Z straight down and Y down-right.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .calculus import eigen_part, radical_series
from .linalg import complement_basis, solve, span, subspace_sum
from .module import ModuleRep

# horizontal step per generator
_STEP = {"A": {"Z": -1, "Y": 1}, "D": {"Y": 1}, "B": {"X": -1, "Z": 0, "Y": 1}, "A4": {"X": -1, "Y": 1}}


@dataclass
class Node:
    id: str
    layer: int
    x: int
    name: str  # composition factor, e.g. k, ε, ω
    path: str  # how the vector was obtained, e.g. "ZY·v0"


@dataclass
class Edge:
    src: str
    dst: str
    gen: str
    coeff: int


@dataclass
class Diagram:
    nodes: list = dc_field(default_factory=list)
    edges: list = dc_field(default_factory=list)
    basis: np.ndarray | None = None  # columns, in node order
    title: str = ""

    def rows(self) -> list[list[Node]]:
        if not self.nodes:
            return []
        out = [[] for _ in range(max(n.layer for n in self.nodes) + 1)]
        for n in self.nodes:
            out[n.layer].append(n)
        return [sorted(r, key=lambda n: n.x) for r in out]

    def row_sizes(self) -> list[int]:
        return [len(r) for r in self.rows()]

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "nodes": [{"id": n.id, "layer": n.layer, "x": n.x, "name": n.name, "path": n.path} for n in self.nodes],
            "edges": [{"src": e.src, "dst": e.dst, "gen": e.gen, "coeff": e.coeff} for e in self.edges],
            "row_sizes": self.row_sizes(),
        }


def loewy_diagram(m: ModuleRep) -> Diagram:
    f = m.field
    a = m.algebra
    step = _STEP.get(a.case, {g: 0 for g in a.nilpotent})
    layers = radical_series(m)
    order = [g for g in ("X", "Z", "Y") if g in a.nilpotent]  # left to right
    nodes: list[Node] = []
    vecs: list[np.ndarray] = []
    prev: list[int] = []
    for i in range(len(layers) - 1):
        here, below = layers[i], layers[i + 1]
        chosen = below
        cur: list[int] = []
        taken_x: set = set()

        def add(v, x, path):
            nonlocal chosen
            lam = _eig(m, v)
            idx = len(nodes)
            nodes.append(Node(f"v{idx}", i, x, a.simple_name(lam), path))
            vecs.append(v)
            cur.append(idx)
            taken_x.add(x)
            chosen = subspace_sum(chosen, span(f, m.dim, v))

        # images of the previous layer, left to right
        for j in sorted(prev, key=lambda j: nodes[j].x):
            for g in order:
                w = f.matmul(m[g], vecs[j])
                if np.any(w) and not chosen.contains(w):
                    add(w, nodes[j].x + step[g], _compose(g, nodes[j].path))
        # complete with eigenvectors of the layer
        for lam in a.eigenvalues:
            for v in complement_basis(eigen_part(m, chosen, lam), inside=eigen_part(m, here, lam)):
                if chosen.contains(v):
                    continue
                x = 0
                while x in taken_x:
                    x = -x if x > 0 else -x + 1
                add(v, x, f"v{len(nodes)}")
        prev = cur
    basis = np.stack(vecs, axis=1) if vecs else np.zeros((m.dim, 0), dtype=np.int64)
    edges = []
    for j in range(len(nodes)):
        for g in order:
            w = f.matmul(m[g], vecs[j])
            if not np.any(w):
                continue
            c = solve(f, basis, w)
            for k in np.flatnonzero(c):
                edges.append(Edge(nodes[j].id, nodes[k].id, g, int(c[k])))
    return Diagram(nodes, edges, basis, m.label)


def _eig(m: ModuleRep, v) -> int:
    from .calculus import eigenvalue_of_vector

    return int(eigenvalue_of_vector(m, v))


def _compose(g: str, path: str) -> str:
    if "·" in path:
        word, base = path.split("·")
    else:
        word, base = "", path
    return f"{g}{word}·{base}"


def to_dot(d: Diagram, field_symbol=str) -> str:
    lines = ["digraph loewy {", "  rankdir=TB;", '  node [shape=plaintext];']
    if d.title:
        lines.append(f'  label="{_esc(d.title)}";')
    for i, row in enumerate(d.rows()):
        ids = " ".join(n.id for n in row)
        lines.append(f"  {{ rank=same; {ids}; }}")
        for n in row:
            lines.append(f'  {n.id} [label="{_esc(n.name)}", pos="{n.x},{-i}!"];')
    for e in d.edges:
        lab = e.gen if e.coeff == 1 else f"{field_symbol(e.coeff)}{e.gen}"
        lines.append(f'  {e.src} -> {e.dst} [label="{_esc(lab)}", arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_ascii(d: Diagram) -> str:
    """Rows of composition factors; '/', '|', '\\' mark edges to the next row, '×' a crossing."""
    if not d.nodes:
        return "(zero module)\n"
    xs = [n.x for n in d.nodes]
    lo = min(xs)
    width = 4 * (max(xs) - lo) + 4
    by_id = {n.id: n for n in d.nodes}
    col = lambda x: 4 * (x - lo) + 1  # noqa: E731
    out = []
    extra = []
    rows = d.rows()
    for i, row in enumerate(rows):
        line = [" "] * width
        for n in row:
            line[col(n.x)] = n.name  # one cell, whatever the combining marks
        out.append("".join(line).rstrip())
        if i + 1 < len(rows):
            conn = [" "] * width
            for e in d.edges:
                s, t = by_id[e.src], by_id[e.dst]
                if s.layer != i:
                    continue
                if t.layer == i + 1 and t.x - s.x in (-1, 0, 1):
                    c = col(s.x) + 2 * (t.x - s.x)
                    mark = {-1: "/", 0: "|", 1: "\\"}[t.x - s.x]
                    conn[c] = mark if conn[c] in (" ", mark) else "×"
                else:
                    extra.append(e)
            out.append("".join(conn).rstrip())
    if extra:
        out.append("")
        for e in extra:
            out.append(f"{e.src} --{e.gen}{'' if e.coeff == 1 else f'*{e.coeff}'}--> {e.dst}")
    return "\n".join(out) + "\n"


__all__ = ["Diagram", "Node", "Edge", "loewy_diagram", "to_dot", "to_ascii"]

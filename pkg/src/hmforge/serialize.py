"""JSON and DOT documents for graphs, colorings and reports.

Graph documents have the shape ``{"vertices": [...], "edges": [[u, v], ...]}``
where an edge may carry a third entry (its label).  Vertices are spelled as
ordinals (``w*3``), tree nodes (``w*3|1,0``) or finite sets (``{0,1,3}``).
Output is sorted and indented the same way every time, so equal inputs give
byte-equal files.
"""

from __future__ import annotations

import json

from .graphprops import OrdGraph, adjacency
from .hmbuild import TreeNode, node_level
from .ordinal import Ordinal, format_ordinal, parse_ordinal
from .specker import TypeGraph, colex_rank


def spell(v) -> str:
    if isinstance(v, Ordinal):
        return format_ordinal(v)
    if isinstance(v, TreeNode):
        return str(v)
    if isinstance(v, tuple):
        return "{" + ",".join(str(x) for x in v) + "}"
    return str(v)


def unspell(text: str):
    if text.startswith("{"):
        body = text[1:-1]
        return tuple(int(x) for x in body.split(",")) if body else ()
    if "|" in text:
        return TreeNode.parse(text)
    return parse_ordinal(text)


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=True) + "\n"


def graph_doc(G, labels=None) -> dict:
    if isinstance(G, TypeGraph):
        verts = sorted(G.adj, key=colex_rank)
        edges = G.edges()
    elif isinstance(G, OrdGraph):
        verts = list(G.vertices)
        edges = G.edges()
    else:
        adj = adjacency(G)
        verts = sorted(adj)
        edges = sorted({(min(u, v), max(u, v)) for u in adj for v in adj[u]})
    rows = []
    for a, b in edges:
        row = [spell(a), spell(b)]
        if labels is not None:
            row.append(labels[(a, b)])
        rows.append(row)
    return {"vertices": [spell(v) for v in verts], "edges": rows}


def graph_from_doc(doc: dict):
    """An ``OrdGraph`` (plus edge labels, possibly empty) from a graph document."""
    verts = [unspell(v) for v in doc.get("vertices", [])]
    lower = {v: set() for v in verts}
    labels = {}
    for row in doc.get("edges", []):
        a, b = unspell(row[0]), unspell(row[1])
        lo, hi = (a, b) if a < b else (b, a)
        lower.setdefault(lo, set())
        lower.setdefault(hi, set()).add(lo)
        if len(row) > 2:
            labels[(lo, hi)] = row[2]
    level = node_level if any(isinstance(v, TreeNode) for v in lower) else None
    G = OrdGraph(lower, level=level) if level else OrdGraph(lower)
    return G, labels


def to_dot(doc: dict, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in doc["vertices"]:
        lines.append(f"  {json.dumps(v)};")
    for row in doc["edges"]:
        attr = f" [label={json.dumps(str(row[2]))}]" if len(row) > 2 else ""
        lines.append(f"  {json.dumps(row[0])} -- {json.dumps(row[1])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def coloring_doc(coloring) -> dict:
    return {spell(v): c for v, c in sorted(coloring.items(), key=lambda kv: _sort_key(kv[0]))}


def _sort_key(v):
    return colex_rank(v) if isinstance(v, tuple) else v


def jsonable(x):
    """Recursively spell ordinals, nodes and sets so ``json`` can take the value."""
    if isinstance(x, dict):
        return {spell(k) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)) and not (x and all(isinstance(i, int) for i in x)):
        return [jsonable(i) for i in x]
    if isinstance(x, (Ordinal, TreeNode)):
        return spell(x)
    return x

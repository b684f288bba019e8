"""File formats: edge lists, canonical documents, DOT export.

Documents are canonical JSON (sorted keys, sorted point lists, trailing
newline) so equal inputs serialize byte-identically. All numbers are
integers; the format version is "fdim/1".
"""

from __future__ import annotations

import json

from .embed import Embedding
from .errors import ParseError
from .fiber import FiberGraph, MoveSet, validate_move_set
from .graphs import Graph
from .lattice import LatticePolytope

FORMAT_VERSION = "fdim/1"


def parse_edge_list(text):
    """Edge-list graph format: one edge per line ("a b"), '#' comments,
    isolated nodes declared as "node a". Returns (Graph, labels)."""
    labels = []
    index = {}

    def node_id(label, line_no):
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "node":
            if len(parts) != 2:
                raise ParseError("expected 'node <label>'", line=line_no)
            node_id(parts[1], line_no)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected two labels, got {len(parts)}", line=line_no)
        a, b = parts
        if a == b:
            raise ParseError(f"loop at node {a!r}: simple graphs only", line=line_no)
        edges.append((node_id(a, line_no), node_id(b, line_no)))
    return Graph.from_edges(len(labels), edges), tuple(labels)


def serialize_document(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_document(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_VERSION:
        raise ParseError(f"missing or unsupported format marker (want {FORMAT_VERSION!r})")
    if "kind" not in doc:
        raise ParseError("document has no kind")
    return doc


def polytope_document(p: LatticePolytope):
    return {
        "format": FORMAT_VERSION,
        "kind": "polytope",
        "ambient_dim": p.ambient_dim,
        "generators": [list(g) for g in p.generators],
    }


def polytope_from_document(doc) -> LatticePolytope:
    if doc.get("kind") != "polytope":
        raise ParseError(f"expected a polytope document, got {doc.get('kind')!r}")
    gens = doc.get("generators")
    if not isinstance(gens, list) or not gens:
        raise ParseError("polytope document needs a nonempty generator list")
    try:
        return LatticePolytope(gens, ambient_dim=doc.get("ambient_dim"))
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def moveset_document(m: MoveSet):
    return {
        "format": FORMAT_VERSION,
        "kind": "moveset",
        "ambient_dim": m.ambient_dim,
        "moves": [list(r) for r in m.positive_representatives()],
    }


def moveset_from_document(doc) -> MoveSet:
    if doc.get("kind") != "moveset":
        raise ParseError(f"expected a moveset document, got {doc.get('kind')!r}")
    reps = doc.get("moves")
    if not isinstance(reps, list):
        raise ParseError("moveset document needs a move list")
    try:
        return MoveSet.from_representatives(doc["ambient_dim"], [tuple(r) for r in reps])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def embedding_document(emb: Embedding, labels):
    if len(labels) != emb.graph.node_count:
        raise ValueError("one label per node required")
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    return {
        "format": FORMAT_VERSION,
        "kind": "embedding",
        "method": emb.method_tag,
        "ambient_dim": emb.polytope.ambient_dim,
        "generators": [list(g) for g in emb.polytope.generators],
        "moves": [list(r) for r in emb.moves.positive_representatives()],
        "vertex_map": {labels[v]: list(emb.vertex_map[v]) for v in range(emb.graph.node_count)},
    }


def verify_embedding_document(doc, graph: Graph, labels) -> bool:
    """Re-check a document against a graph: the stored vertex map must be a
    bijection onto the lattice points of the stored polytope whose edge
    relation (difference is a move) matches the graph exactly."""
    from .fiber import build

    if doc.get("kind") != "embedding":
        raise ParseError(f"expected an embedding document, got {doc.get('kind')!r}")
    try:
        polytope = LatticePolytope(doc["generators"], ambient_dim=doc["ambient_dim"])
        moves = MoveSet.from_representatives(
            doc["ambient_dim"], [tuple(r) for r in doc["moves"]]
        )
        vertex_map = {lbl: tuple(pt) for lbl, pt in doc["vertex_map"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed embedding document: {exc}") from exc

    if sorted(vertex_map) != sorted(labels):
        return False
    fiber = build(polytope, moves)
    point_index = {pt: i for i, pt in enumerate(fiber.points)}
    if len(fiber.points) != graph.node_count:
        return False
    seen = set()
    node_of = {}
    for v, lbl in enumerate(labels):
        pt = vertex_map[lbl]
        if pt not in point_index or pt in seen:
            return False
        seen.add(pt)
        node_of[v] = point_index[pt]
    mapped = {tuple(sorted((node_of[u], node_of[v]))) for u, v in graph.edges}
    return mapped == set(fiber.graph.edges)


def _dot_escape(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: Graph, labels=None) -> str:
    if labels is None:
        labels = [str(v) for v in range(g.node_count)]
    lines = ["graph {"]
    for v in range(g.node_count):
        lines.append(f"  {_dot_escape(labels[v])};")
    for u, v in sorted(g.edges):
        lines.append(f"  {_dot_escape(labels[u])} -- {_dot_escape(labels[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def fiber_graph_to_dot(fg: FiberGraph) -> str:
    labels = ["(" + ", ".join(str(x) for x in pt) + ")" for pt in fg.points]
    return graph_to_dot(fg.graph, labels)

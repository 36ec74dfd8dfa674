# incidence.py
"""
Signed graphs as oriented incidence structures.

An IncidenceStructure is a vertex list plus an edge list; every edge owns an
ordered tuple of incidences (vertex, sigma). A 2-incidence edge is a
bidirected edge whose adjacency sign is -sigma(i)*sigma(j). Larger edges are
stored as oriented hyperedges. Vertex order is input order and every matrix is
indexed in that order.
"""

import json
import logging
from dataclasses import dataclass
from functools import cached_property

from errors import CapabilityError, InvalidGraphError, QueryError
from exact_matrix import IntMatrix

log = logging.getLogger(__name__)

_TOP_KEYS = {"vertices", "edges"}
_SIGNED_EDGE_KEYS = {"id", "ends", "sign"}
_INCIDENCE_EDGE_KEYS = {"id", "incidences"}
_INCIDENCE_KEYS = {"vertex", "sigma"}


def _check_unit(value, what):
    if isinstance(value, bool) or value not in (1, -1):
        raise InvalidGraphError(f"{what} must be +1 or -1, got {value!r}.")
    return int(value)


@dataclass(frozen=True)
class Incidence:
    vertex: str
    sigma: int


@dataclass(frozen=True)
class Edge:
    id: str
    incidences: tuple

    @property
    def ends(self):
        return tuple(inc.vertex for inc in self.incidences)

    @property
    def size(self):
        return len(self.incidences)

    @property
    def sign(self):
        """Adjacency sign of a 2-edge."""
        if self.size != 2:
            raise CapabilityError(f"Edge '{self.id}' has {self.size} incidences; sign needs exactly 2.")
        return self.adjacency_sign(0, 1)

    def adjacency_sign(self, i, j):
        return -self.incidences[i].sigma * self.incidences[j].sigma

    def position_of(self, vertex):
        return self.ends.index(vertex)


@dataclass(frozen=True)
class IncidenceStructure:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str) or not v:
                raise InvalidGraphError(f"Vertex ids must be non-empty strings, got {v!r}.")
            if v in seen:
                raise InvalidGraphError(f"Duplicate vertex id '{v}'.")
            seen.add(v)
        edge_ids = set()
        for e in self.edges:
            if e.id in edge_ids:
                raise InvalidGraphError(f"Duplicate edge id '{e.id}'.")
            edge_ids.add(e.id)
            if e.size < 2:
                raise InvalidGraphError(f"Edge '{e.id}' needs at least 2 incidences (no half-edges).")
            ends = e.ends
            for v in ends:
                if v not in seen:
                    raise InvalidGraphError(f"Edge '{e.id}' references unknown vertex '{v}'.")
            if len(set(ends)) != len(ends):
                raise InvalidGraphError(f"Edge '{e.id}' is a loop (repeated vertex); loops are not supported.")
            for inc in e.incidences:
                _check_unit(inc.sigma, f"sigma of edge '{e.id}' at '{inc.vertex}'")

    # --- lookups ---
    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_map(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def incidences_at(self):
        """vertex -> tuple of (edge, incidence position) in edge order."""
        table = {v: [] for v in self.vertices}
        for e in self.edges:
            for pos, inc in enumerate(e.incidences):
                table[inc.vertex].append((e, pos))
        return {v: tuple(items) for v, items in table.items()}

    def require_vertex(self, v):
        if v not in self.index:
            raise QueryError(f"Unknown vertex '{v}'.")
        return v

    def edge(self, edge_id):
        try:
            return self.edge_map[edge_id]
        except KeyError:
            raise QueryError(f"Unknown edge '{edge_id}'.") from None

    def sign(self, edge_id):
        return self.edge(edge_id).sign

    def degree(self, v):
        return len(self.incidences_at[self.require_vertex(v)])

    def edges_between(self, a, b):
        return tuple(e for e in self.edges if a in e.ends and b in e.ends)

    def multiplicity(self, a, b):
        return len(self.edges_between(a, b))

    def adjacent_pairs(self):
        """Ordered pairs (a, b), a != b, that share at least one edge, in vertex order."""
        linked = set()
        for e in self.edges:
            for a in e.ends:
                for b in e.ends:
                    if a != b:
                        linked.add((a, b))
        return [(a, b) for a in self.vertices for b in self.vertices if (a, b) in linked]

    # --- classification ---
    @property
    def is_signed_graph(self):
        return all(e.size == 2 for e in self.edges)

    def require_signed_graph(self, operation):
        if not self.is_signed_graph:
            raise CapabilityError(f"{operation} needs a signed graph (every edge with exactly 2 incidences).")

    def _adjacency_signs(self):
        for e in self.edges:
            for i in range(e.size):
                for j in range(i + 1, e.size):
                    yield e.adjacency_sign(i, j)

    @property
    def is_all_positive(self):
        return all(s == 1 for s in self._adjacency_signs())

    @property
    def is_all_negative(self):
        return all(s == -1 for s in self._adjacency_signs())

    # --- derived structures ---
    def reorient(self, edge_ids):
        """Flips every sigma on the given edges; adjacency signs are unchanged."""
        flip = {self.edge(eid).id for eid in edge_ids}
        edges = tuple(
            Edge(e.id, tuple(Incidence(inc.vertex, -inc.sigma) for inc in e.incidences)) if e.id in flip else e
            for e in self.edges
        )
        return IncidenceStructure(self.vertices, edges)

    def all_negative(self):
        """Reorientation with every sigma = +1, so every adjacency is negative."""
        edges = tuple(Edge(e.id, tuple(Incidence(inc.vertex, 1) for inc in e.incidences)) for e in self.edges)
        return IncidenceStructure(self.vertices, edges)

    def underlying(self):
        """All-positive copy of a signed graph (same edge ids and ends)."""
        self.require_signed_graph("underlying")
        return from_signed_edges(self.vertices, [(e.id, *e.ends, 1) for e in self.edges])

    def with_edge(self, edge):
        return IncidenceStructure(self.vertices, self.edges + (edge,))

    def signed_edges(self):
        self.require_signed_graph("signed_edges")
        return [(e.id, e.ends[0], e.ends[1], e.sign) for e in self.edges]

    def __repr__(self):
        return f"IncidenceStructure(|V|={len(self.vertices)}, |E|={len(self.edges)})"


def _signed_edge(edge_id, a, b, sign):
    sign = _check_unit(sign, f"sign of edge '{edge_id}'")
    if a == b:
        raise InvalidGraphError(f"Edge '{edge_id}' is a loop at '{a}'; loops are not supported.")
    return Edge(edge_id, (Incidence(a, 1), Incidence(b, -sign)))


def from_signed_edges(vertices, signed_edges):
    """
    Builds the canonical orientation of a signed graph: the first incidence
    gets sigma = +1 and the second gets sigma = -sign.

    Args:
        vertices: ordered vertex ids.
        signed_edges: (a, b, sign) triples, ids e1, e2, ... assigned in order,
            or (id, a, b, sign) quadruples.
    """
    edges = []
    for k, record in enumerate(signed_edges, start=1):
        if len(record) == 3:
            edges.append(_signed_edge(f"e{k}", *record))
        elif len(record) == 4:
            edges.append(_signed_edge(*record))
        else:
            raise InvalidGraphError(f"Signed edge record {record!r} must have 3 or 4 fields.")
    return IncidenceStructure(tuple(vertices), tuple(edges))


def from_networkx(nx_graph, signs=None):
    """
    Converts a networkx graph; vertex ids become str(node).

    Args:
        signs: optional list of edge signs aligned with nx_graph.edges() order.
    """
    vertices = [str(n) for n in nx_graph.nodes()]
    pairs = list(nx_graph.edges())
    signs = signs if signs is not None else [1] * len(pairs)
    return from_signed_edges(vertices, [(str(a), str(b), s) for (a, b), s in zip(pairs, signs)])


# --- Matrices ---

def incidence_matrix(G):
    H = IntMatrix.zeros(len(G.vertices), len(G.edges))
    for col, e in enumerate(G.edges):
        for inc in e.incidences:
            H.entries[G.index[inc.vertex], col] += inc.sigma
    return H


def degree_matrix(G):
    D = IntMatrix.zeros(len(G.vertices), len(G.vertices), labels=G.vertices)
    for v, items in G.incidences_at.items():
        D.entries[G.index[v], G.index[v]] = len(items)
    return D


def adjacency_matrix(G):
    """A[v, w] sums the adjacency signs -sigma(i)sigma(j) over every edge joining v and w."""
    A = IntMatrix.zeros(len(G.vertices), len(G.vertices), labels=G.vertices)
    for e in G.edges:
        for i, a in enumerate(e.incidences):
            for j, b in enumerate(e.incidences):
                if i != j:
                    A.entries[G.index[a.vertex], G.index[b.vertex]] += e.adjacency_sign(i, j)
    return A


def laplacian(G):
    """L = H H^T, which equals D - A."""
    H = incidence_matrix(G)
    L = H @ H.T
    return IntMatrix._from_array(L.entries, G.vertices)


def signless_laplacian(G):
    return laplacian(G.all_negative())


def local_loading(G, w1, w2):
    """
    Adjoins a positive w1w2-edge when none exists.

    Returns:
        (G', edge_id): G unchanged with its first w1w2-edge in edge order, or G plus a
        new edge 'load:w1-w2'.
    """
    G.require_vertex(w1)
    G.require_vertex(w2)
    if w1 == w2:
        raise QueryError(f"Local loading needs two distinct vertices, got '{w1}' twice.")
    existing = [e for e in G.edges_between(w1, w2) if e.size == 2]
    if existing:
        return G, existing[0].id
    edge_id = f"load:{w1}-{w2}"
    while edge_id in G.edge_map:
        edge_id += "'"
    return G.with_edge(_signed_edge(edge_id, w1, w2, 1)), edge_id


# --- Graph JSON ---

def graph_from_json(data):
    """Parses signed-form or incidence-form Graph JSON (already decoded)."""
    if not isinstance(data, dict):
        raise InvalidGraphError("Graph JSON must be an object.")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise InvalidGraphError(f"Unknown graph fields: {sorted(unknown)}.")
    raw_edges = data.get("edges")
    if not isinstance(raw_edges, list):
        raise InvalidGraphError("Graph JSON needs an 'edges' list.")

    edges = []
    appearance = []
    for k, raw in enumerate(raw_edges, start=1):
        if not isinstance(raw, dict):
            raise InvalidGraphError(f"Edge #{k} must be an object.")
        edge_id = str(raw.get("id", f"e{k}"))
        if "incidences" in raw:
            unknown = set(raw) - _INCIDENCE_EDGE_KEYS
            if unknown:
                raise InvalidGraphError(f"Unknown fields on edge '{edge_id}': {sorted(unknown)}.")
            if not isinstance(raw["incidences"], list):
                raise InvalidGraphError(f"Edge '{edge_id}' needs an 'incidences' list.")
            incs = []
            for inc in raw["incidences"]:
                if not isinstance(inc, dict) or set(inc) - _INCIDENCE_KEYS or "vertex" not in inc:
                    raise InvalidGraphError(f"Bad incidence on edge '{edge_id}': {inc!r}.")
                incs.append(Incidence(str(inc["vertex"]), _check_unit(inc.get("sigma", 1), "sigma")))
            edge = Edge(edge_id, tuple(incs))
        else:
            unknown = set(raw) - _SIGNED_EDGE_KEYS
            if unknown:
                raise InvalidGraphError(f"Unknown fields on edge '{edge_id}': {sorted(unknown)}.")
            ends = raw.get("ends")
            if not isinstance(ends, list) or len(ends) != 2:
                raise InvalidGraphError(f"Edge '{edge_id}' needs 'ends' with exactly two vertices.")
            edge = _signed_edge(edge_id, str(ends[0]), str(ends[1]), raw.get("sign", 1))
        edges.append(edge)
        appearance.extend(v for v in edge.ends if v not in appearance)

    if "vertices" in data:
        if not isinstance(data["vertices"], list):
            raise InvalidGraphError("'vertices' must be a list.")
        vertices = [str(v) for v in data["vertices"]]
    else:
        vertices = appearance
    return IncidenceStructure(tuple(vertices), tuple(edges))


def graph_to_json(G):
    """Signed form when every edge is a canonically oriented 2-edge, incidence form otherwise."""
    canonical = G.is_signed_graph and all(e.incidences[0].sigma == 1 for e in G.edges)
    if canonical:
        edges = [{"id": e.id, "ends": list(e.ends), "sign": e.sign} for e in G.edges]
    else:
        edges = [
            {"id": e.id, "incidences": [{"vertex": inc.vertex, "sigma": inc.sigma} for inc in e.incidences]}
            for e in G.edges
        ]
    return {"vertices": list(G.vertices), "edges": edges}


def dump_graph(G):
    return json.dumps(graph_to_json(G), indent=2, sort_keys=True) + "\n"


def load_graph(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InvalidGraphError(f"Graph file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InvalidGraphError(f"Graph file {path} is not valid JSON: {exc}") from None
    except UnicodeDecodeError as exc:
        raise InvalidGraphError(f"Graph file {path} is not valid UTF-8: {exc}") from None
    G = graph_from_json(data)
    log.debug("Loaded %r from %s", G, path)
    return G

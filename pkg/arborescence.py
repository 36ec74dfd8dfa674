# arborescence.py
"""
Spanning forests, 2-arborescences and Tutte transpedances, plus the
bijection between 2-arborescences and trivial-class reduced contributors.

Counts here use the underlying graph: edge signs are ignored.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import config
from activation import trivial_reduced_classes
from contributors import Contributor, Move, decompose
from errors import CapacityError, QueryError
from exact_matrix import tree_number
from incidence import laplacian, local_loading

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoArborescence:
    roots: tuple       # (r1, r2)
    marked: tuple      # (w1, w2)
    tree1: tuple       # edge ids of r1's tree, in graph order
    tree2: tuple
    vertices1: frozenset
    vertices2: frozenset

    @property
    def sign(self):
        """sgn_T: +1 when w1 hangs below r1 and w2 below r2, -1 when crossed."""
        w1, w2 = self.marked
        if w1 in self.vertices1 and w2 in self.vertices2:
            return 1
        return -1

    @property
    def edges(self):
        return self.tree1 + self.tree2

    def to_json(self):
        return {
            "tree1": {"root": self.roots[0], "edges": list(self.tree1)},
            "tree2": {"root": self.roots[1], "edges": list(self.tree2)},
            "sgnT": self.sign,
        }


@dataclass(frozen=True)
class SourceSinkPath:
    vertices: tuple
    edges: tuple
    loaded_edge: str

    def to_json(self):
        return {"vertices": list(self.vertices), "edges": list(self.edges), "loaded_edge": self.loaded_edge}


@dataclass
class TreeSortReport:
    source: str
    sink: str
    groups: dict        # (path vertices, path edges) -> tuple of spanning trees (edge-id tuples)
    outflow: dict       # edge id at the source -> number of trees leaving through it
    tau: int            # tree number of the underlying Laplacian
    complete: bool      # every spanning tree was sorted exactly once

    @property
    def total_outflow(self):
        return sum(self.outflow.values())


def _labels(vertices, edges):
    """Union-find component labels, or None when the edges close a cycle."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = e.ends
        ra, rb = find(a), find(b)
        if ra == rb:
            return None
        parent[ra] = rb
    return {v: find(v) for v in vertices}


@lru_cache(maxsize=64)
def _forests(G, k):
    G.require_signed_graph("spanning forests")
    size = len(G.vertices) - k
    if size < 0 or size > len(G.edges):
        return ()
    subsets = math.comb(len(G.edges), size)
    if subsets > config.FOREST_SUBSET_CAP:
        log.warning("Refusing to scan %d edge subsets (cap %d).", subsets, config.FOREST_SUBSET_CAP)
        raise CapacityError(f"Spanning {k}-forest search needs {subsets} edge subsets, over the cap.")
    found = []
    for subset in itertools.combinations(G.edges, size):
        labels = _labels(G.vertices, subset)
        if labels is not None:
            found.append((tuple(e.id for e in subset), labels))
    log.debug("%d spanning %d-forests in %r", len(found), k, G)
    return tuple(found)


def spanning_forests(G, k):
    """Edge-id tuples of every spanning forest of G with exactly k trees."""
    return [edges for edges, _ in _forests(G, k)]


def spanning_trees(G):
    return spanning_forests(G, 1)


def _check_vertices(G, *vertices):
    for v in vertices:
        G.require_vertex(v)


def count_pairs(G, u1, w1, u2, w2):
    """
    Calculates ⟨u1w1, u2w2⟩: spanning 2-forests with u1 and u2 in different
    trees, w1 in u1's tree and w2 in u2's tree.
    """
    _check_vertices(G, u1, w1, u2, w2)
    if u1 == u2:
        return 0
    total = 0
    for _, labels in _forests(G, 2):
        r1, r2 = labels[u1], labels[u2]
        if r1 != r2 and labels[w1] == r1 and labels[w2] == r2:
            total += 1
    return total


def tutte_transpedance(G, u1, u2, w1, w2):
    """[u1u2, w1w2] = ⟨u1w1, u2w2⟩ - ⟨u1w2, u2w1⟩."""
    if not G.is_all_positive:
        log.debug("Tutte transpedance of a signed graph uses its underlying graph.")
    return count_pairs(G, u1, w1, u2, w2) - count_pairs(G, u1, w2, u2, w1)


def two_arborescences(G, u1, u2, w1, w2):
    """Every 2-arborescence counted by [u1u2, w1w2], each carrying its sign."""
    _check_vertices(G, u1, u2, w1, w2)
    if u1 == u2:
        return []
    found = []
    for edges, labels in _forests(G, 2):
        r1, r2 = labels[u1], labels[u2]
        if r1 == r2:
            continue
        straight = labels[w1] == r1 and labels[w2] == r2
        crossed = labels[w1] == r2 and labels[w2] == r1
        if not (straight or crossed):
            continue
        tree1 = tuple(e for e in edges if labels[G.edge(e).ends[0]] == r1)
        tree2 = tuple(e for e in edges if labels[G.edge(e).ends[0]] == r2)
        found.append(TwoArborescence(
            (u1, u2), (w1, w2), tree1, tree2,
            frozenset(v for v in G.vertices if labels[v] == r1),
            frozenset(v for v in G.vertices if labels[v] == r2),
        ))
    return found


# --- Bijection with trivial-class contributors ---

def arbor_to_contributor(G, F):
    """
    Unpacks a 2-arborescence into its reduced contributor. Vertices on the
    tree path from each marked vertex to its root step toward the root; every
    other vertex backsteps through the edge leading toward its root.
    """
    G.require_signed_graph("arbor_to_contributor")
    u1, u2 = F.roots
    w1, w2 = F.marked
    adjacency = {v: [] for v in G.vertices}
    for eid in F.edges:
        e = G.edge(eid)
        a, b = e.ends
        adjacency[a].append((e, b))
        adjacency[b].append((e, a))

    parent = {}
    for root in (u1, u2):
        frontier, seen = [root], {root}
        while frontier:
            x = frontier.pop()
            for e, y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = (e, x)
                    frontier.append(y)
    if len(parent) != len(G.vertices) - 2:
        raise QueryError("Edge set is not a 2-arborescence rooted at the source and sink.")

    on_path = set()
    for x in (w1, w2):
        while x not in (u1, u2):
            on_path.add(x)
            x = parent[x][1]

    moves = []
    for v in G.vertices:
        if v in (u1, u2):
            continue
        e, toward = parent[v]
        tail = e.position_of(v)
        if v in on_path:
            moves.append(Move(v, e.id, tail, 1 - tail, toward, e.adjacency_sign(tail, 1 - tail)))
        else:
            moves.append(Move(v, e.id, tail, tail, v, 1))
    return Contributor(tuple(moves), (u1, u2), (w1, w2))


def contributor_to_arbor(G, c):
    """
    Packs a trivial-class reduced contributor into its 2-arborescence: the
    tail edges of all moves.

    Raises:
        QueryError: c is inconsistent or its class is not a singleton.
    """
    G.require_signed_graph("contributor_to_arbor")
    if len(c.u) != 2:
        raise QueryError("contributor_to_arbor needs a contributor reduced against two vertices.")
    decompose(c)
    u1, u2 = c.u
    step = {}
    for m in c.moves:
        e = G.edge(m.edge)
        step[m.tail] = e.ends[1 - m.tail_incidence]
    for start in step:
        x, walk = start, set()
        while x in step:
            if x in walk:
                raise QueryError("Contributor is not in a trivial activation class (its tail map has a cycle).")
            walk.add(x)
            x = step[x]

    edge_ids = {m.edge for m in c.moves}
    edges = [e for e in G.edges if e.id in edge_ids]
    labels = _labels(G.vertices, edges)
    r1, r2 = labels[u1], labels[u2]
    return TwoArborescence(
        (u1, u2), tuple(c.w),
        tuple(e.id for e in edges if labels[e.ends[0]] == r1),
        tuple(e.id for e in edges if labels[e.ends[0]] == r2),
        frozenset(v for v in G.vertices if labels[v] == r1),
        frozenset(v for v in G.vertices if labels[v] == r2),
    )


def unique_path(G, c, via=None):
    """
    The source-sink path of a reduced contributor through the loaded edge.

    Each marked vertex w_i starts an open path of c ending at a source or
    sink. The path runs backwards along the one ending at u1, crosses the
    loaded w1w2-edge and follows the other one to u2.

    Args:
        via: edge id to cross; defaults to the local-loading edge.
    """
    if len(c.u) != 2 or c.u[0] == c.u[1] or c.w[0] == c.w[1]:
        raise QueryError("unique_path needs distinct u1, u2 and distinct w1, w2.")
    u1, u2 = c.u
    w1, w2 = c.w
    if via is None:
        _, via = local_loading(G, w1, w2)
    chains = {p.start: p for p in decompose(c).paths}
    first, second = (chains[w1], chains[w2]) if chains[w1].end == u1 else (chains[w2], chains[w1])
    vertices = first.vertices[::-1] + second.vertices
    edges = tuple(m.edge for m in reversed(first.moves)) + (via,) + tuple(m.edge for m in second.moves)
    return SourceSinkPath(vertices, edges, via)


def is_source_sink_path(G, path, u1, u2):
    """Checks that path is a simple u1-u2 path of G plus its loaded edge, crossing that edge once."""
    vs, es = path.vertices, path.edges
    if not vs or vs[0] != u1 or vs[-1] != u2 or len(set(vs)) != len(vs):
        return False
    if len(es) != len(vs) - 1 or es.count(path.loaded_edge) != 1:
        return False
    for k, eid in enumerate(es):
        a, b = vs[k], vs[k + 1]
        if eid == path.loaded_edge and eid not in G.edge_map:
            continue
        if eid not in G.edge_map or set(G.edge(eid).ends) != {a, b}:
            return False
    return True


def tree_sort_report(G, u1, u2):
    """
    Sorts spanning trees by their source-sink path.

    For every edge e and each orientation (w1, w2) of it, every trivial-class
    contributor whose 2-arborescence keeps w1 with the source completes
    through e to a spanning tree; the tree is filed under its u1-u2 path.
    complete is True when no tree lands under two paths and every spanning
    tree is reached.
    """
    G.require_signed_graph("tree_sort_report")
    _check_vertices(G, u1, u2)
    if u1 == u2:
        raise QueryError("Source and sink must differ.")
    groups = {}
    for e in G.edges:
        a, b = e.ends
        for w1, w2 in ((a, b), (b, a)):
            for c in trivial_reduced_classes(G, (u1, u2), (w1, w2)):
                F = contributor_to_arbor(G, c)
                if F.sign != 1:
                    continue
                ids = set(F.edges) | {e.id}
                tree = tuple(x.id for x in G.edges if x.id in ids)
                if _labels(G.vertices, [G.edge(x) for x in tree]) is None:
                    raise QueryError(f"Completion of a trivial contributor through '{e.id}' is not a tree.")
                # the same tree is reached once per edge of its path
                path = unique_path(G, c, via=e.id)
                groups.setdefault((path.vertices, path.edges), set()).add(tree)

    outflow = {x.id: 0 for x, _ in G.incidences_at[u1]}
    for (_, edges), trees in groups.items():
        outflow[edges[0]] += len(trees)
    sorted_trees = [t for trees in groups.values() for t in trees]
    complete = len(sorted_trees) == len(set(sorted_trees)) and set(sorted_trees) == set(spanning_trees(G))
    return TreeSortReport(
        u1, u2,
        {path: tuple(sorted(trees)) for path, trees in groups.items()},
        outflow,
        tree_number(laplacian(G.underlying())),
        complete,
    )

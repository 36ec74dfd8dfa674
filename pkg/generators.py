# generators.py
"""
Test-corpus graphs: seeded random signed graphs and the exhaustive list of
small connected simple graphs from the networkx graph atlas.
"""

import logging

import networkx as nx
import numpy as np

import config
from errors import QueryError
from incidence import from_networkx, from_signed_edges

log = logging.getLogger(__name__)


def random_signed_graph(n, edge_probability=None, negative_probability=None, seed=None):
    """
    Generates an Erdos-Renyi signed graph on vertices "1".."n".

    Args:
        n: number of vertices (>= 1).
        edge_probability: probability of each edge of K_n.
        negative_probability: probability that a present edge is negative.
        seed: integer seed; the same seed always gives the same graph.

    Returns:
        IncidenceStructure with a simple underlying graph and edges e1, e2, ...
        listed in lexicographic order of their ends.
    """
    p = config.GEN_EDGE_PROBABILITY if edge_probability is None else edge_probability
    q = config.GEN_NEGATIVE_PROBABILITY if negative_probability is None else negative_probability
    seed = config.GEN_SEED if seed is None else seed
    if n < 1:
        raise QueryError(f"Random graph needs n >= 1, got {n}.")
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise QueryError(f"Probabilities must lie in [0, 1], got p={p}, q={q}.")

    nx_graph = nx.gnp_random_graph(n, p, seed=seed)
    pairs = sorted(tuple(sorted(edge)) for edge in nx_graph.edges())
    rng = np.random.default_rng(seed)
    signs = [-1 if rng.random() < q else 1 for _ in pairs]
    vertices = [str(i + 1) for i in range(n)]
    G = from_signed_edges(vertices, [(str(a + 1), str(b + 1), s) for (a, b), s in zip(pairs, signs)])
    log.debug("Generated %r (p=%s, q=%s, seed=%s)", G, p, q, seed)
    return G


def connected_graph_corpus(min_n=3, max_n=5):
    """All connected simple graphs with min_n..max_n vertices, all edges positive."""
    corpus = []
    for nx_graph in nx.graph_atlas_g():
        n = nx_graph.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(nx_graph):
            corpus.append(from_networkx(nx_graph))
    return corpus


def random_corpus(count=200, max_n=6, seed=0):
    """
    Seeded random signed graphs with 3..max_n vertices.

    Edge and negative probabilities cycle through fixed values, so the corpus
    mixes all-positive, all-negative and mixed-sign members.
    """
    edge_probabilities = (0.5, 0.7, 0.9)
    negative_probabilities = (0.0, 0.3, 0.5, 1.0)
    corpus = []
    for i in range(count):
        n = 3 + i % (max_n - 2)
        p = edge_probabilities[i % len(edge_probabilities)]
        q = negative_probabilities[(i // 3) % len(negative_probabilities)]
        corpus.append(random_signed_graph(n, p, q, seed + i))
    return corpus

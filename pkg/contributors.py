# contributors.py
"""
Contributor enumeration, component decomposition and the D/P contributor signs.

A contributor picks one move per vertex: leave through a tail incidence and
re-enter the same edge at a head incidence, with heads covering the vertex
set exactly once. A reduced contributor for (u, w) drops the moves at u and
must cover V minus w; its unreduced completion adds the virtual maps
u_i -> w_i back.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache

import config
from errors import CapacityError, QueryError

log = logging.getLogger(__name__)

VIRTUAL_EDGE = "~"


@dataclass(frozen=True)
class Move:
    tail: str
    edge: str
    tail_incidence: int
    head_incidence: int
    head: str
    sign: int = 1          # adjacency sign; +1 for backsteps and virtual moves
    virtual: bool = False

    @property
    def is_backstep(self):
        return not self.virtual and self.tail_incidence == self.head_incidence

    @property
    def key(self):
        """Identity of the move inside its edge, used to compare circles."""
        return (self.edge, self.tail_incidence, self.head_incidence)

    def to_json(self):
        return {"tail": self.tail, "edge": self.edge, "head": self.head}


@dataclass(frozen=True)
class Contributor:
    moves: tuple
    u: tuple = ()
    w: tuple = ()

    @cached_property
    def by_tail(self):
        return {m.tail: m for m in self.moves}

    def move_at(self, v):
        return self.by_tail[v]

    @property
    def is_identity_clone(self):
        return all(m.is_backstep for m in self.moves)

    @property
    def tail_map(self):
        return tuple((m.tail, m.edge, m.tail_incidence) for m in self.moves)

    def to_json(self):
        return [m.to_json() for m in self.moves]


@dataclass(frozen=True)
class Circle:
    moves: tuple

    @property
    def length(self):
        return len(self.moves)

    @property
    def sign(self):
        s = 1
        for m in self.moves:
            s *= m.sign
        return s

    @property
    def key(self):
        return frozenset(m.key for m in self.moves)

    @property
    def vertices(self):
        return tuple(m.tail for m in self.moves)


@dataclass(frozen=True)
class OpenPath:
    """Directed path from a w vertex to a u vertex; empty when the two coincide."""
    start: str
    end: str
    moves: tuple

    @property
    def sign(self):
        s = 1
        for m in self.moves:
            s *= m.sign
        return s

    @property
    def vertices(self):
        return (self.start,) + tuple(m.head for m in self.moves)


@dataclass(frozen=True)
class ComponentDecomposition:
    circles: tuple
    backsteps: tuple
    paths: tuple
    cycle_lengths: tuple   # every cycle of the unreduced completion, virtual fixed points included
    linked_cycles: int     # completion cycles that carry a virtual move

    @property
    def ec(self):
        return sum(1 for n in self.cycle_lengths if n % 2 == 0)

    @property
    def odd_cycles(self):
        return sum(1 for n in self.cycle_lengths if n % 2)

    @property
    def nc(self):
        """Negative circles plus negative open paths."""
        return sum(1 for c in self.circles if c.sign < 0) + sum(1 for p in self.paths if p.sign < 0)

    @property
    def bs(self):
        return len(self.backsteps)

    @property
    def nontrivial_paths(self):
        return tuple(p for p in self.paths if p.moves)

    @property
    def component_count(self):
        return len(self.circles) + len(self.backsteps) + len(self.nontrivial_paths)


# --- Move tables & search ---

@lru_cache(maxsize=256)
def move_table(G):
    """vertex -> every move available at that vertex, ordered by edge then head incidence."""
    table = {}
    for v in G.vertices:
        moves = []
        for edge, tail in G.incidences_at[v]:
            for head, inc in enumerate(edge.incidences):
                sign = 1 if head == tail else edge.adjacency_sign(tail, head)
                moves.append(Move(v, edge.id, tail, head, inc.vertex, sign))
        table[v] = tuple(moves)
    return table


class Budget:
    """Counts visited objects against a cap; shared by worker threads."""

    def __init__(self, cap=None):
        self.cap = config.CONTRIBUTOR_CAP if cap is None else cap
        self.count = 0
        self._lock = threading.Lock()

    def spend(self, n=1):
        with self._lock:
            self.count += n
            if self.count > self.cap:
                log.warning("Enumeration cap of %d objects reached.", self.cap)
                raise CapacityError(f"Enumeration exceeds the cap of {self.cap} objects.")


def backtrack_moves(options, order, budget, prefix=()):
    """
    Yields every tuple of moves, one per vertex of `order` and taken from
    options[vertex], whose heads are pairwise distinct and cover the heads
    offered by the options.

    Branches die as soon as some remaining vertex has no free head or some
    free target can no longer be reached.
    """
    n = len(order)
    chosen = list(prefix)
    used = {m.head for m in prefix}

    def feasible(i):
        reachable = set()
        for v in order[i:]:
            heads = {m.head for m in options[v] if m.head not in used}
            if not heads:
                return False
            reachable |= heads
        return len(reachable) >= n - i

    def step(i):
        if i == n:
            budget.spend()
            yield tuple(chosen)
            return
        if not feasible(i):
            return
        for m in options[order[i]]:
            if m.head in used:
                continue
            used.add(m.head)
            chosen.append(m)
            yield from step(i + 1)
            chosen.pop()
            used.discard(m.head)

    yield from step(len(prefix))


def _check_query(G, u, w):
    u, w = tuple(u), tuple(w)
    if len(u) != len(w):
        raise QueryError(f"u and w must have equal length, got {len(u)} and {len(w)}.")
    for v in u + w:
        G.require_vertex(v)
    return u, w


def _is_degenerate(u, w):
    return len(set(u)) != len(u) or len(set(w)) != len(w)


def _reduced_search_space(G, u, w):
    """Free vertices in order and their admissible moves, or None for a degenerate query."""
    if _is_degenerate(u, w):
        return None
    targets = set(G.vertices) - set(w)
    free = [v for v in G.vertices if v not in u]
    table = move_table(G)
    options = {v: tuple(m for m in table[v] if m.head in targets) for v in free}
    return free, options


# --- Enumeration ---

def enumerate_reduced_nonzero(G, u, w, cap=None):
    """
    Stream of reduced contributors for (u, w) whose moves all exist in G.

    Duplicate entries in u or w give an empty stream. Unknown vertices
    raise QueryError immediately.
    """
    u, w = _check_query(G, u, w)
    space = _reduced_search_space(G, u, w)
    if space is None:
        log.debug("Degenerate query u=%s w=%s: empty contributor set.", u, w)
        return iter(())
    free, options = space
    budget = Budget(cap)
    return (Contributor(moves, u, w) for moves in backtrack_moves(options, free, budget))


def enumerate_contributors(G, cap=None):
    """Stream of every contributor of G (hyperedges allowed)."""
    return enumerate_reduced_nonzero(G, (), (), cap=cap)


def enumerate_restricted(G, u, w, cap=None):
    """Contributors of G that send each u_i to w_i through a real move."""
    u, w = _check_query(G, u, w)
    if _is_degenerate(u, w):
        return iter(())
    forced = dict(zip(u, w))
    table = move_table(G)
    options = {
        v: tuple(m for m in table[v] if v not in forced or m.head == forced[v])
        for v in G.vertices
    }
    budget = Budget(cap)
    return (Contributor(moves) for moves in backtrack_moves(options, list(G.vertices), budget))


# --- Decomposition & signs ---

def unreduce(c, u=None, w=None):
    """Closes a reduced contributor with the virtual moves u_i -> w_i."""
    u = c.u if u is None else tuple(u)
    w = c.w if w is None else tuple(w)
    virtual = tuple(Move(a, VIRTUAL_EDGE, -1, -1, b, 1, True) for a, b in zip(u, w))
    return Contributor(c.moves + virtual)


def decompose(c, u=None, w=None):
    """
    Splits a (reduced) contributor into circles, backsteps and open paths.

    Raises:
        QueryError: when c does not assign exactly one move to each vertex
            outside u with heads bijective onto the vertices outside w.
    """
    u = c.u if u is None else tuple(u)
    w = c.w if w is None else tuple(w)
    if c.u and (c.u, c.w) != (u, w):
        raise QueryError(f"Contributor was reduced against u={c.u} w={c.w}, not u={u} w={w}.")
    if len(u) != len(w):
        raise QueryError("u and w must have equal length.")

    tails = [m.tail for m in c.moves]
    vertices = tails + list(u)
    heads = [m.head for m in c.moves] + list(w)
    if len(set(vertices)) != len(vertices) or sorted(heads) != sorted(vertices):
        raise QueryError(f"Contributor is inconsistent with u={u} w={w}.")

    step = {m.tail: m for m in unreduce(c, u, w).moves}
    seen = set()
    circles, backsteps, paths, lengths = [], [], [], []
    linked = 0
    for start in vertices:
        if start in seen:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(step[x])
            x = step[x].head
        lengths.append(len(cycle))

        cuts = [k for k, m in enumerate(cycle) if m.virtual]
        if not cuts:
            if len(cycle) == 1:
                backsteps.append(cycle[0])
            else:
                circles.append(Circle(tuple(cycle)))
            continue
        linked += 1
        for n, k in enumerate(cuts):
            nxt = cuts[(n + 1) % len(cuts)]
            if nxt > k:
                body = cycle[k + 1:nxt]
            else:
                body = cycle[k + 1:] + cycle[:nxt]
            paths.append(OpenPath(cycle[k].head, cycle[nxt].tail, tuple(body)))

    return ComponentDecomposition(tuple(circles), tuple(backsteps), tuple(paths), tuple(lengths), linked)


def _decomposition(c):
    return c if isinstance(c, ComponentDecomposition) else decompose(c)


def sgn_D(c):
    """(-1)^(ec + nc + bs); accepts a contributor or its decomposition."""
    d = _decomposition(c)
    return -1 if (d.ec + d.nc + d.bs) % 2 else 1


def sgn_P(c):
    """(-1)^(nc + bs)."""
    d = _decomposition(c)
    return -1 if (d.nc + d.bs) % 2 else 1


# --- Transpedances by brute force ---

def signed_sum(G, u, w, sign, cap=None, threads=None):
    """
    Sums sign(c) over the reduced contributors for (u, w).

    With threads > 1 the search is split on the moves of the first free
    vertex; partial sums are exact integers, so the total does not depend
    on scheduling.
    """
    u, w = _check_query(G, u, w)
    space = _reduced_search_space(G, u, w)
    if space is None:
        return 0
    free, options = space
    budget = Budget(cap)
    threads = config.DEFAULT_THREADS if threads is None else threads

    def partial(prefix):
        return sum(sign(Contributor(moves, u, w)) for moves in backtrack_moves(options, free, budget, prefix))

    if threads <= 1 or not free:
        total = partial(())
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(partial, [(m,) for m in options[free[0]]]))
    log.debug("Signed sum over u=%s w=%s: %d (%d contributors)", u, w, total, budget.count)
    return total


def transpedance_D_bruteforce(G, u1, u2, w1, w2, cap=None, threads=None):
    """[u1u2, w1w2]_D as the sum of sgn_D over reduced non-zero contributors."""
    return signed_sum(G, (u1, u2), (w1, w2), sgn_D, cap, threads)


def transpedance_P_bruteforce(G, u1, u2, w1, w2, cap=None, threads=None):
    """[u1u2, w1w2]_P as the sum of sgn_P over reduced non-zero contributors."""
    return signed_sum(G, (u1, u2), (w1, w2), sgn_P, cap, threads)


def count_reduced_nonzero(G, u, w, cap=None, threads=None):
    return signed_sum(G, u, w, lambda c: 1, cap, threads)

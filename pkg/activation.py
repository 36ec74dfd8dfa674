# activation.py
"""
Tail-equivalence (activation) classes and their partial order.

Contributors that leave every vertex through the same tail incidence form a
class. On a signed graph the tail map fixes, for each vertex, the one vertex
it can step to, so the class is "backstep everywhere, then switch on any
subset of the cycles of that map": a Boolean lattice. Larger hyperedges give
non-Boolean classes, which are built by direct search.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property

from contributors import (
    Budget,
    Circle,
    Contributor,
    Move,
    backtrack_moves,
    decompose,
    move_table,
    sgn_D,
    sgn_P,
)
from errors import QueryError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TailMap:
    tails: tuple   # ((vertex, edge id, incidence position), ...) in vertex order

    def to_json(self):
        return [{"vertex": v, "edge": e, "incidence": pos} for v, e, pos in self.tails]


@dataclass(frozen=True)
class ActivationClass:
    tailmap: TailMap
    base: Contributor                  # least element
    circles: tuple = ()                # activatable circles of a Boolean class
    explicit_members: tuple = ()       # members of a non-Boolean class, least-first
    u: tuple = ()
    w: tuple = ()
    boolean: bool = True

    def activate(self, chosen):
        """Member obtained from the least element by switching on the given circles."""
        replaced = {m.tail: m for C in chosen for m in C.moves}
        moves = tuple(replaced.get(m.tail, m) for m in self.base.moves)
        return Contributor(moves, self.base.u, self.base.w)

    @cached_property
    def members(self):
        if not self.boolean:
            return self.explicit_members
        return tuple(
            self.activate(chosen)
            for r in range(len(self.circles) + 1)
            for chosen in itertools.combinations(self.circles, r)
        )

    @property
    def size(self):
        return 2 ** len(self.circles) if self.boolean else len(self.explicit_members)

    @cached_property
    def rank(self):
        return len(self.circles) if self.boolean else class_poset(self).height

    @cached_property
    def maximal(self):
        if self.boolean:
            return self.activate(self.circles)
        poset = class_poset(self)
        return self.members[poset.maximal[0]]

    @property
    def eta(self):
        """Negative circles of the maximal element."""
        if self.boolean:
            return sum(1 for C in self.circles if C.sign < 0)
        return sum(1 for C in decompose(self.maximal).circles if C.sign < 0)

    @property
    def positive_circle_free(self):
        if self.boolean:
            return all(C.sign < 0 for C in self.circles)
        return all(C.sign < 0 for C in decompose(self.maximal).circles)

    def sum_sgn_D(self):
        return sum(sgn_D(c) for c in self.members)

    def sum_sgn_P(self):
        return sum(sgn_P(c) for c in self.members)


@dataclass(frozen=True)
class ClassPoset:
    members: tuple
    covers: tuple          # (i, j): members[i] is covered by members[j]
    incomparable: tuple    # (i, j), i < j, related in neither direction
    conflicts: tuple = ()  # (i, j) related both ways after closure
    least: object = None
    ranks: tuple = field(default=())

    @property
    def height(self):
        return max(self.ranks, default=0)

    @property
    def maximal(self):
        below = {i for i, _ in self.covers}
        return tuple(i for i in range(len(self.members)) if i not in below)

    def rank_sizes(self):
        sizes = [0] * (self.height + 1)
        for r in self.ranks:
            sizes[r] += 1
        return sizes


# --- Class construction ---

def _across(v, edge, tail):
    head = 1 - tail
    return Move(v, edge.id, tail, head, edge.incidences[head].vertex, edge.adjacency_sign(tail, head))


def _backstep(v, edge, tail):
    return Move(v, edge.id, tail, tail, v, 1)


def _cycles_of(step, allowed):
    """Cycles of the partial map `step` that stay inside `allowed`, each from its first vertex in order."""
    found, seen = [], set()
    for start in allowed:
        if start in seen:
            continue
        walk, x = [], start
        while x in allowed and x not in seen and x not in walk:
            walk.append(x)
            x = step[x]
        seen.update(walk)
        if x in walk:
            found.append(walk[walk.index(x):])
    return found


def _boolean_class(G, tailmap, u, w, reduced):
    """Builds the Boolean class of a signed-graph tail map, or None when it is empty."""
    order = [v for v, _, _ in tailmap.tails]
    chosen = {v: (G.edge(e), pos) for v, e, pos in tailmap.tails}
    across = {v: _across(v, *chosen[v]) for v in order}
    target = {v: across[v].head for v in order}
    moves = {v: _backstep(v, *chosen[v]) for v in order}

    if reduced:
        U, W = set(u), set(w)
        claimed = set()
        for start in [x for x in w if x not in U]:
            x = start
            while True:
                if x in claimed:
                    return None
                claimed.add(x)
                moves[x] = across[x]
                nxt = target[x]
                if nxt in W:
                    return None
                if nxt in U:
                    if nxt in claimed:
                        return None
                    claimed.add(nxt)
                    break
                x = nxt
        rest = [v for v in order if v not in claimed]
        circles = _cycles_of(target, rest)
        forced = []
    else:
        forced_on = {a for a, b in zip(u, w) if a != b}
        forced_off = {a for a, b in zip(u, w) if a == b}
        for a, b in zip(u, w):
            if a != b and target[a] != b:
                return None
        cycles = _cycles_of(target, order)
        on_cycle = {v for cyc in cycles for v in cyc}
        if not forced_on <= on_cycle:
            return None
        forced, circles = [], []
        for cyc in cycles:
            members = set(cyc)
            if members & forced_on and members & forced_off:
                return None
            if members & forced_on:
                forced.append(cyc)
            elif not members & forced_off:
                circles.append(cyc)

    for cyc in forced:
        for v in cyc:
            moves[v] = across[v]
    base_u, base_w = (u, w) if reduced else ((), ())
    base = Contributor(tuple(moves[v] for v in order), base_u, base_w)
    circle_objs = tuple(Circle(tuple(across[v] for v in cyc)) for cyc in circles)
    return ActivationClass(tailmap, base, circle_objs, (), tuple(u), tuple(w), True)


def _searched_class(G, tailmap, u, w, reduced, budget):
    """Builds a class by direct search over head choices; used for hyperedges."""
    table = move_table(G)
    tails = {v: (e, pos) for v, e, pos in tailmap.tails}
    order = [v for v, _, _ in tailmap.tails]
    targets = set(G.vertices) - set(w) if reduced else set(G.vertices)
    forced = {} if reduced else dict(zip(u, w))
    options = {
        v: tuple(
            m for m in table[v]
            if (m.edge, m.tail_incidence) == tails[v] and m.head in targets
            and (v not in forced or m.head == forced[v])
        )
        for v in order
    }
    base_u, base_w = (u, w) if reduced else ((), ())
    found = [Contributor(moves, base_u, base_w) for moves in backtrack_moves(options, order, budget)]
    if not found:
        return None

    def weight(c):
        d = decompose(c)
        return (len(d.circles), -d.component_count)

    found.sort(key=weight)
    members = tuple(found)
    cls = ActivationClass(tailmap, members[0], (), members, tuple(u), tuple(w), False)
    return cls


def tail_classes(G, u=(), w=(), reduced=True, cap=None):
    """
    Partitions contributors into activation classes.

    Args:
        G: incidence structure.
        u, w: optional restriction. With reduced=True the classes partition
            the reduced non-zero contributors for (u, w); with reduced=False
            they partition the contributors of G sending each u_i to w_i.
        cap: bound on tail maps plus searched members.

    Returns:
        list of non-empty ActivationClass, in tail-map order.
    """
    u, w = tuple(u), tuple(w)
    if len(u) != len(w):
        raise QueryError("u and w must have equal length.")
    for v in u + w:
        G.require_vertex(v)
    if len(set(u)) != len(u) or len(set(w)) != len(w):
        return []

    free = [v for v in G.vertices if not (reduced and v in u)]
    choices = [[(v, e.id, pos) for e, pos in G.incidences_at[v]] for v in free]
    budget = Budget(cap)
    boolean = G.is_signed_graph
    classes = []
    for combo in itertools.product(*choices):
        budget.spend()
        tailmap = TailMap(tuple(combo))
        if boolean:
            cls = _boolean_class(G, tailmap, u, w, reduced and bool(u))
        else:
            cls = _searched_class(G, tailmap, u, w, reduced, budget)
        if cls is not None:
            classes.append(cls)
    log.debug("%d activation classes for u=%s w=%s (reduced=%s)", len(classes), u, w, reduced)
    return classes


# --- Partial order ---

def _incidence_set(c):
    touched = set()
    for m in c.moves:
        touched.add((m.edge, m.tail_incidence))
        touched.add((m.edge, m.head_incidence))
    return frozenset(touched)


def class_poset(cls):
    """
    Order on a class: c < c' when the circles of c are a proper subset of
    those of c'. Pairs that this leaves unrelated are ordered by packing:
    c < c' when both touch the same incidences and c has more components.
    Packing only refines non-Boolean classes.
    """
    members = cls.members
    n = len(members)
    info = []
    for c in members:
        d = decompose(c)
        info.append((frozenset(C.key for C in d.circles), _incidence_set(c), d.component_count))

    less = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ci, ii, ki = info[i]
            cj, ij, kj = info[j]
            if ci < cj:
                less[i][j] = True
            elif not cls.boolean and not cj < ci and ii == ij and ki > kj:
                less[i][j] = True

    for k in range(n):
        for i in range(n):
            if less[i][k]:
                for j in range(n):
                    if less[k][j]:
                        less[i][j] = True

    conflicts = tuple((i, j) for i in range(n) for j in range(i + 1, n) if less[i][j] and less[j][i])
    if conflicts:
        log.warning("Activation order is not antisymmetric on %d pairs.", len(conflicts))
    covers = tuple(
        (i, j)
        for i in range(n)
        for j in range(n)
        if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n))
    )
    incomparable = tuple(
        (i, j) for i in range(n) for j in range(i + 1, n) if not less[i][j] and not less[j][i]
    )
    least = [i for i in range(n) if all(less[i][j] for j in range(n) if j != i)]

    ranks = [0] * n
    for i in sorted(range(n), key=lambda i: sum(less[k][i] for k in range(n))):
        below = [k for k in range(n) if less[k][i]]
        ranks[i] = max((ranks[k] + 1 for k in below), default=0)

    return ClassPoset(members, covers, incomparable, conflicts, least[0] if len(least) == 1 else None, tuple(ranks))


# --- Transpedances from class maxima ---

def transpedance_D_activation(G, u1, u2, w1, w2, cap=None):
    """
    Sums sgn_D(m) * 2^eta(m) over the maximal elements m of the reduced
    classes that carry no positive circle; every other class cancels.
    """
    G.require_signed_graph("transpedance_D_activation")
    total = 0
    for cls in tail_classes(G, (u1, u2), (w1, w2), reduced=True, cap=cap):
        if cls.positive_circle_free:
            total += sgn_D(cls.maximal) * 2 ** cls.eta
    return total


def transpedance_P_activation(G, u1, u2, w1, w2, cap=None):
    """
    Each class contributes sgn_P(least) * prod(1 + eps_C) over its circles,
    where eps_C = (-1)^(length + [C negative]).
    """
    G.require_signed_graph("transpedance_P_activation")
    total = 0
    for cls in tail_classes(G, (u1, u2), (w1, w2), reduced=True, cap=cap):
        weight = sgn_P(cls.base)
        for C in cls.circles:
            eps = -1 if (C.length + (C.sign < 0)) % 2 else 1
            weight *= 1 + eps
        total += weight
    return total


def trivial_reduced_classes(G, u, w, cap=None):
    """Reduced non-zero contributors that sit alone in their activation class."""
    G.require_signed_graph("trivial_reduced_classes")
    return tuple(cls.base for cls in tail_classes(G, u, w, reduced=True, cap=cap) if not cls.circles)


def class_report(cls):
    return {
        "tailmap": cls.tailmap.to_json(),
        "size": cls.size,
        "rank": cls.rank,
        "maximal": cls.maximal.to_json(),
        "eta": cls.eta,
        "positive_circle_free": cls.positive_circle_free,
        "sum_sgnD": cls.sum_sgn_D(),
    }

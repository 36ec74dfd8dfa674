# kirchhoff_laws.py
"""
Edge labelings for a source/sink pair and machine-checkable verdicts for
each Kirchhoff-type law.

Conservation laws are checked in Tutte's sign convention, T = (-1)^|V| * D,
so that the source pushes +τ into the network. Raw D values are reported
alongside.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import config
from activation import (
    class_poset,
    tail_classes,
    transpedance_D_activation,
    transpedance_P_activation,
    trivial_reduced_classes,
)
from arborescence import is_source_sink_path, tutte_transpedance, unique_path
from contributors import (
    count_reduced_nonzero,
    enumerate_contributors,
    enumerate_reduced_nonzero,
    transpedance_D_bruteforce,
    transpedance_P_bruteforce,
)
from errors import CapabilityError, QueryError
from exact_matrix import ordered_second_cofactor, permanent, totalminor_coeff2, tree_number
from incidence import laplacian, signless_laplacian

log = logging.getLogger(__name__)

METHODS = ("contributor", "activation", "cofactor", "arborescence")
SIGNS = ("det", "perm")

HOLDS, VIOLATED, SKIPPED = "holds", "violated", "skipped"


def transpedance(G, u1, u2, w1, w2, sign="det", method="contributor", cap=None, threads=None, perm_max=None):
    """
    [u1u2, w1w2] under the det (D) or perm (P) sign, by one of four methods.
    Every method returns the raw contributor convention; the arborescence
    method converts Tutte's value with (-1)^|V|.
    """
    if sign not in SIGNS:
        raise CapabilityError(f"Unknown sign '{sign}' (expected one of {SIGNS}).")
    if method == "contributor":
        fn = transpedance_D_bruteforce if sign == "det" else transpedance_P_bruteforce
        return fn(G, u1, u2, w1, w2, cap=cap, threads=threads)
    if method == "activation":
        fn = transpedance_D_activation if sign == "det" else transpedance_P_activation
        return fn(G, u1, u2, w1, w2, cap=cap)
    if method == "cofactor":
        return totalminor_coeff2(laplacian(G), u1, w1, u2, w2, kind=sign, max_n=perm_max)
    if method == "arborescence":
        if sign != "det":
            raise CapabilityError("The arborescence method only yields det-sign transpedances.")
        if not (G.is_signed_graph and G.is_all_positive):
            raise CapabilityError("The arborescence method needs an all-positive signed graph.")
        return _tutte(G, tutte_transpedance(G, u1, u2, w1, w2))
    raise CapabilityError(f"Unknown method '{method}' (expected one of {METHODS}).")


def _tutte(G, value):
    return -value if len(G.vertices) % 2 else value


def _check_pair(G, u1, u2):
    G.require_vertex(u1)
    G.require_vertex(u2)
    if u1 == u2:
        raise QueryError("Source and sink must be different vertices.")


@dataclass
class EdgeLabeling:
    source: str
    sink: str
    sign: str
    method: str
    labels: dict          # (w1, w2) -> value
    multiplicity: dict    # (w1, w2) -> number of w1w2-edges
    tau: object = None    # τ(G) when G is an all-positive signed graph

    def to_json(self):
        return {
            "source": self.source,
            "sink": self.sink,
            "sign": self.sign,
            "method": self.method,
            "tau": self.tau,
            "labels": [
                {"from": a, "to": b, "value": value, "multiplicity": self.multiplicity[(a, b)]}
                for (a, b), value in self.labels.items()
            ],
        }


@dataclass
class LawVerdict:
    law: str
    status: str
    detail: str = ""
    witness: object = None
    residuals: list = field(default_factory=list)

    @property
    def holds(self):
        return self.status != VIOLATED

    def to_json(self):
        return {
            "law": self.law,
            "status": self.status,
            "detail": self.detail,
            "witness": self.witness,
            "residuals": self.residuals,
        }


@dataclass
class LawReport:
    source: str
    sink: str
    vertex_count: int
    all_positive: bool
    tau: object
    method: str
    verdicts: list

    @property
    def violated(self):
        return any(v.status == VIOLATED for v in self.verdicts)

    def verdict(self, law):
        return next(v for v in self.verdicts if v.law == law)

    def to_json(self):
        return {
            "source": self.source,
            "sink": self.sink,
            "vertices": self.vertex_count,
            "all_positive": self.all_positive,
            "tau": self.tau,
            "method": self.method,
            "violated": self.violated,
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def label_edges(G, u1, u2, sign="det", method="contributor", cap=None, threads=None, perm_max=None):
    """
    Labels every ordered adjacency (w1, w2) with [u1u2, w1w2].

    Returns:
        EdgeLabeling with labels in vertex order.
    """
    _check_pair(G, u1, u2)
    labels, multiplicity = {}, {}
    for a, b in G.adjacent_pairs():
        labels[(a, b)] = transpedance(G, u1, u2, a, b, sign, method, cap, threads, perm_max)
        multiplicity[(a, b)] = G.multiplicity(a, b)
    tau = None
    if G.is_signed_graph and G.is_all_positive:
        tau = tree_number(laplacian(G))
    log.info("Labeled %d adjacencies for source %s, sink %s (%s, %s).", len(labels), u1, u2, sign, method)
    return EdgeLabeling(u1, u2, sign, method, labels, multiplicity, tau)


def _ordered_pairs(G):
    return [(a, b) for a in G.vertices for b in G.vertices if a != b]


def _value_table(G, u1, u2, sign, method, cap, threads):
    return {(a, b): transpedance(G, u1, u2, a, b, sign, method, cap, threads) for a, b in _ordered_pairs(G)}


def _perm_method(method):
    return "contributor" if method == "arborescence" else method


def _verdict(law, failures, detail="", residuals=None):
    if failures:
        log.info("Law %s violated: %s", law, failures[0])
        return LawVerdict(law, VIOLATED, detail or f"{len(failures)} failing case(s)", failures[0], residuals or [])
    return LawVerdict(law, HOLDS, detail, None, residuals or [])


# --- Individual laws ---

def check_degeneracy(G, u1, u2, method="contributor", cap=None, threads=None):
    """Repeated sources or repeated marked vertices give 0 for both signs."""
    _check_pair(G, u1, u2)
    failures = []
    for sign, m in (("det", method), ("perm", _perm_method(method))):
        for w1, w2 in itertools.product(G.vertices, repeat=2):
            value = transpedance(G, u1, u1, w1, w2, sign, m, cap, threads)
            if value:
                failures.append({"u": [u1, u1], "w": [w1, w2], "sign": sign, "value": value})
        for w1 in G.vertices:
            value = transpedance(G, u1, u2, w1, w1, sign, m, cap, threads)
            if value:
                failures.append({"u": [u1, u2], "w": [w1, w1], "sign": sign, "value": value})
    return _verdict("degeneracy", failures)


def check_energy_reversal(G, u1, u2, method="contributor", cap=None, threads=None):
    """[u1u2, w1w2]_D = -[u1u2, w2w1]_D = -[u2u1, w1w2]_D."""
    _check_pair(G, u1, u2)
    forward = _value_table(G, u1, u2, "det", method, cap, threads)
    backward = _value_table(G, u2, u1, "det", method, cap, threads)
    failures = []
    for (a, b), value in forward.items():
        if value != -forward[(b, a)] or value != -backward[(a, b)]:
            failures.append({
                "w": [a, b], "value": value,
                "reversed_w": forward[(b, a)], "reversed_u": backward[(a, b)],
            })
    return _verdict("energy-reversal", failures)


def check_cycle_conservation(G, u1, u2, method="contributor", cap=None, threads=None):
    """
    For every vertex triple the three Tutte-convention labels around it sum
    to zero. Residuals are reported per triple. On signed graphs the
    trivial-class counts around every triple must also be even.
    """
    _check_pair(G, u1, u2)
    table = _value_table(G, u1, u2, "det", method, cap, threads)
    trivial = {}
    if G.is_signed_graph:
        trivial = {pair: len(trivial_reduced_classes(G, (u1, u2), pair, cap)) for pair in table}
    failures, residuals = [], []
    for a, b, c in itertools.combinations(G.vertices, 3):
        raw = table[(a, b)] + table[(b, c)] + table[(c, a)]
        residual = _tutte(G, raw)
        row = {"triple": [a, b, c], "residual": residual, "residual_d": raw}
        if trivial:
            row["trivial_count"] = trivial[(a, b)] + trivial[(b, c)] + trivial[(c, a)]
        residuals.append(row)
        if residual or row.get("trivial_count", 0) % 2:
            failures.append(row)
    detail = "" if G.is_all_positive else "signed graph: residuals reported, conservation not guaranteed"
    return _verdict("cycle-conservation", failures, detail, residuals)


def check_vertex_conservation(G, u1, u2, method="contributor", cap=None, threads=None):
    """
    At every vertex v the Tutte-convention labels on its incident edges
    (with multiplicity) sum to τ(δ_{u1v} - δ_{u2v}), τ taken from the
    underlying graph. Trivial-class counts over incoming and outgoing
    incident edges must balance as well.
    """
    _check_pair(G, u1, u2)
    if not G.is_signed_graph:
        return LawVerdict("vertex-conservation", SKIPPED, "needs a signed graph")
    tau = tree_number(laplacian(G.underlying()))
    table = _value_table(G, u1, u2, "det", method, cap, threads)
    counts = {}

    def trivial(a, b):
        if (a, b) not in counts:
            counts[(a, b)] = len(trivial_reduced_classes(G, (u1, u2), (a, b), cap))
        return counts[(a, b)]

    failures, residuals = [], []
    for v in G.vertices:
        others = [e.ends[1 - pos] for e, pos in G.incidences_at[v]]
        total = _tutte(G, sum(table[(v, x)] for x in others))
        expected = tau * ((v == u1) - (v == u2))
        row = {"vertex": v, "sum": total, "expected": expected, "residual": total - expected}
        if v not in (u1, u2):
            row["trivial_in"] = sum(trivial(x, v) for x in others)
            row["trivial_out"] = sum(trivial(v, x) for x in others)
        residuals.append(row)
        if row["residual"] or row.get("trivial_in") != row.get("trivial_out"):
            failures.append(row)

    source_side = sum(trivial(u1, e.ends[1 - pos]) for e, pos in G.incidences_at[u1])
    sink_side = sum(trivial(e.ends[1 - pos], u2) for e, pos in G.incidences_at[u2])
    if source_side != sink_side:
        failures.append({"vertex": u1, "trivial_source": source_side, "trivial_sink": sink_side})
    detail = "" if G.is_all_positive else "signed graph: residuals reported, conservation not guaranteed"
    return _verdict("vertex-conservation", failures, detail, residuals)


def check_path_property(G, u1, u2, cap=None):
    """Every reduced contributor for every (w1, w2) yields a unique source-sink path."""
    _check_pair(G, u1, u2)
    if not G.is_signed_graph:
        return LawVerdict("path-property", SKIPPED, "needs a signed graph")
    failures, checked = [], 0
    for w1, w2 in _ordered_pairs(G):
        for c in enumerate_reduced_nonzero(G, (u1, u2), (w1, w2), cap):
            checked += 1
            path = unique_path(G, c)
            if not is_source_sink_path(G, path, u1, u2):
                failures.append({"w": [w1, w2], "contributor": c.to_json(), "path": path.to_json()})
    return _verdict("path-property", failures, f"{checked} contributors checked")


def check_boolean_classes(G, cap=None):
    """
    Unrestricted activation classes: size 2^rank, exactly one identity
    clone each, and sizes summing to perm of the signless Laplacian.
    """
    if not G.is_signed_graph:
        return LawVerdict("boolean-classes", SKIPPED, "needs a signed graph")
    failures = []
    total = 0
    for cls in tail_classes(G, cap=cap):
        members = cls.members
        total += len(members)
        clones = sum(1 for c in members if c.is_identity_clone)
        if len(members) != 2 ** cls.rank or len(set(members)) != len(members) or clones != 1:
            failures.append({"tailmap": cls.tailmap.to_json(), "size": len(members), "rank": cls.rank, "identity_clones": clones})
            continue
        if not cls.base.is_identity_clone:
            failures.append({"tailmap": cls.tailmap.to_json(), "least_is_identity": False})
        if cls.rank <= 3:
            poset = class_poset(cls)
            if len(poset.covers) != cls.rank * 2 ** max(cls.rank - 1, 0) or poset.least != 0:
                failures.append({"tailmap": cls.tailmap.to_json(), "covers": len(poset.covers)})
        if G.is_all_positive and cls.circles and cls.sum_sgn_D() != 0:
            failures.append({"tailmap": cls.tailmap.to_json(), "sum_sgnD": cls.sum_sgn_D()})

    expected = permanent(signless_laplacian(G))
    enumerated = sum(1 for _ in enumerate_contributors(G, cap))
    if not total == expected == enumerated:
        failures.append({"class_total": total, "perm_signless": expected, "enumerated": enumerated})
    return _verdict("boolean-classes", failures, f"{total} contributors in classes")


def check_permanent_laws(G, u1, u2, method="contributor", cap=None, threads=None):
    """
    P-degeneracy, P-reversal without a sign flip, the all-negative count
    law and |C(G)| = perm(Q).
    """
    _check_pair(G, u1, u2)
    method = _perm_method(method)
    n = len(G.vertices)
    failures = []
    for w1, w2 in itertools.product(G.vertices, repeat=2):
        if transpedance(G, u1, u1, w1, w2, "perm", method, cap, threads):
            failures.append({"law": "degeneracy", "u": [u1, u1], "w": [w1, w2]})
    forward = _value_table(G, u1, u2, "perm", method, cap, threads)
    backward = _value_table(G, u2, u1, "perm", method, cap, threads)
    for (a, b), value in forward.items():
        if a == b:
            continue
        if value != forward[(b, a)] or value != backward[(a, b)]:
            failures.append({"law": "reversal", "w": [a, b], "value": value,
                             "reversed_w": forward[(b, a)], "reversed_u": backward[(a, b)]})
        if G.is_all_negative:
            count = count_reduced_nonzero(G, (u1, u2), (a, b), cap, threads)
            expected = -count if n % 2 else count
            if value != expected:
                failures.append({"law": "all-negative count", "w": [a, b], "value": value, "expected": expected})
    total = sum(1 for _ in enumerate_contributors(G, cap))
    perm_q = permanent(signless_laplacian(G))
    if total != perm_q:
        failures.append({"law": "contributor total", "enumerated": total, "perm_signless": perm_q})
    return _verdict("permanent-count", failures, f"{total} contributors, perm(Q) = {perm_q}")


def check_parity_polarity(G, u1, u2, method="contributor", cap=None, threads=None):
    """On all-positive graphs: Tutte's value = (-1)^|V| D = ordered second cofactor."""
    _check_pair(G, u1, u2)
    if not (G.is_signed_graph and G.is_all_positive):
        return LawVerdict("parity-polarity", SKIPPED, "needs an all-positive signed graph")
    L = laplacian(G)
    failures = []
    for a, b in _ordered_pairs(G):
        tutte = tutte_transpedance(G, u1, u2, a, b)
        d = transpedance(G, u1, u2, a, b, "det", method, cap, threads)
        cofactor = ordered_second_cofactor(L, u1, a, u2, b)
        if not tutte == _tutte(G, d) == cofactor:
            failures.append({"w": [a, b], "tutte": tutte, "d": d, "cofactor": cofactor})
    return _verdict("parity-polarity", failures)


def full_report(G, u1, u2, method="contributor", cap=None, threads=None):
    """
    Runs every law check. With threads > 1 the checks run side by side;
    the verdict order is fixed either way.
    """
    _check_pair(G, u1, u2)
    threads = config.DEFAULT_THREADS if threads is None else threads
    inner = 1 if threads > 1 else threads
    checks = [
        lambda: check_degeneracy(G, u1, u2, method, cap, inner),
        lambda: check_energy_reversal(G, u1, u2, method, cap, inner),
        lambda: check_cycle_conservation(G, u1, u2, method, cap, inner),
        lambda: check_vertex_conservation(G, u1, u2, method, cap, inner),
        lambda: check_path_property(G, u1, u2, cap),
        lambda: check_boolean_classes(G, cap),
        lambda: check_permanent_laws(G, u1, u2, method, cap, inner),
        lambda: check_parity_polarity(G, u1, u2, method, cap, inner),
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(lambda check: check(), checks))
    else:
        verdicts = [check() for check in checks]
    tau = None
    if G.is_signed_graph:
        tau = tree_number(laplacian(G.underlying()))
    return LawReport(u1, u2, len(G.vertices), G.is_signed_graph and G.is_all_positive, tau, method, verdicts)

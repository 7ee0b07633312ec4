"""Eulerian circuits, wirings, rewiring, and vertex splitting.

A circuit is a closed walk stored as its arc-id sequence.  The wiring a
circuit induces at a vertex is the perfect matching "arrived on arc a, left on
arc b"; two circuits are compatible when their wirings are edge-disjoint at
every vertex.  Rewiring replaces the matching at one vertex while keeping all
others, subject to the result still being a single closed walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .alphabet import Word, as_entries
from .errors import (
    DegreeMismatch,
    InsufficientDegree,
    MultipleCycles,
    NotConnected,
    ParameterOutOfRange,
    SearchExhausted,
    TooManyForbidden,
)
from .graphs import DirectedMultigraph


@dataclass(frozen=True)
class Circuit:
    """A closed walk given by its cyclic arc-id sequence.

    The stored rotation is significant (stream pairing in the tensor
    composition is phase-sensitive); use :meth:`canonical` when comparing.
    """

    graph: DirectedMultigraph
    arc_seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arc_seq", tuple(self.arc_seq))
        if not self.arc_seq:
            raise ParameterOutOfRange("empty circuit")
        arcs = self.graph.arcs
        n = len(self.arc_seq)
        for i, aid in enumerate(self.arc_seq):
            nxt = arcs[self.arc_seq[(i + 1) % n]]
            if arcs[aid].head != nxt.tail:
                raise ParameterOutOfRange(
                    f"arc {aid} -> {nxt.id} is not a valid transition"
                )

    def __len__(self) -> int:
        return len(self.arc_seq)

    def canonical(self) -> "Circuit":
        i = self.arc_seq.index(min(self.arc_seq))
        return Circuit(self.graph, self.arc_seq[i:] + self.arc_seq[:i])

    def vertex_seq(self) -> tuple[int, ...]:
        """Tail vertex of each arc, in walk order."""
        return tuple(self.graph.arcs[a].tail for a in self.arc_seq)

    def to_json_dict(self) -> dict:
        return {"graph": self.graph.signature, "arcs": list(self.arc_seq)}


def circuit_to_word(circuit: Circuit) -> Word:
    """Concatenate arc symbols along the walk into a circular word."""
    arcs = circuit.graph.arcs
    return Word(tuple(arcs[a].symbol for a in circuit.arc_seq), circular=True)


def word_to_circuit(word, graph: DirectedMultigraph) -> Circuit:
    """Interpret a circular word as a closed walk; inverse of circuit_to_word.

    The arc at position t is the k-window ending at t, so the returned
    circuit's word equals the input in the same rotation.
    """
    entries = as_entries(word)
    k = graph.k
    if k is None:
        raise ParameterOutOfRange("graph does not carry a word order")
    if not entries:
        raise ParameterOutOfRange("empty word")
    if k > 1:
        # short periodic words wrap: a length-1 word on an order-2 graph is a loop
        reps = (k - 1 + len(entries) - 1) // len(entries)
        ext = (entries * reps)[-(k - 1):] + entries
    else:
        ext = entries
    seq = []
    for t in range(len(entries)):
        window = ext[t : t + k]
        try:
            seq.append(graph.arc_id_of_word(window))
        except KeyError:
            raise ParameterOutOfRange(f"window {window!r} is not an arc of the graph") from None
    return Circuit(graph, tuple(seq))


# ----------------------------------------------------------------------
# wirings and transition systems


@dataclass(frozen=True)
class Wiring:
    """Perfect matching of in-arcs to out-arcs at one vertex."""

    vertex: int
    pairs: frozenset  # of (in_arc_id, out_arc_id)

    def out_for(self, in_arc: int) -> int:
        for i, o in self.pairs:
            if i == in_arc:
                return o
        raise KeyError(in_arc)


def wiring_of(vertex: int, circuit: Circuit) -> Wiring:
    """The matching induced at `vertex` by consecutive arc pairs."""
    arcs = circuit.graph.arcs
    seq = circuit.arc_seq
    n = len(seq)
    pairs = set()
    for i, aid in enumerate(seq):
        if arcs[aid].head == vertex:
            pairs.add((aid, seq[(i + 1) % n]))
    deg = circuit.graph.in_degree(vertex)
    if len(pairs) != deg:
        raise ParameterOutOfRange(
            f"circuit does not traverse every arc at vertex {vertex} exactly once"
        )
    return Wiring(vertex, frozenset(pairs))


@dataclass(frozen=True)
class TransitionSystem:
    """One wiring per arc-carrying vertex."""

    graph: DirectedMultigraph
    wirings: tuple[Wiring, ...]  # indexed by vertex, arcless vertices included

    def successor_map(self) -> list[int]:
        succ = [-1] * self.graph.num_arcs
        for w in self.wirings:
            for i, o in w.pairs:
                succ[i] = o
        return succ


def transition_system_of(circuit: Circuit) -> TransitionSystem:
    g = circuit.graph
    ws = tuple(
        wiring_of(v, circuit) if g.in_arcs[v] else Wiring(v, frozenset())
        for v in range(g.num_vertices)
    )
    return TransitionSystem(g, ws)


def circuit_from_transition_system(ts: TransitionSystem) -> Circuit:
    """Follow the successor permutation; error unless it is one full cycle."""
    g = ts.graph
    succ = ts.successor_map()
    if any(s < 0 for s in succ):
        raise ParameterOutOfRange("transition system does not cover every arc")
    # count orbits of the permutation
    seen = [False] * g.num_arcs
    count = 0
    first_cycle: list[int] = []
    for start in range(g.num_arcs):
        if seen[start]:
            continue
        count += 1
        cur = start
        cycle = []
        while not seen[cur]:
            seen[cur] = True
            cycle.append(cur)
            cur = succ[cur]
        if count == 1:
            first_cycle = cycle
    if count != 1:
        raise MultipleCycles(count)
    # successor order walks head-to-tail, so the cycle is already a walk
    return Circuit(g, tuple(first_cycle)).canonical()


# ----------------------------------------------------------------------
# Eulerian circuits


def find_eulerian_circuit(graph: DirectedMultigraph) -> Circuit:
    """Deterministic Hierholzer traversal, canonical rotation.

    Raises DegreeMismatch at the first unbalanced vertex (lexicographic order)
    and NotConnected when the arc-carrying vertices are not strongly connected.
    """
    if graph.num_arcs == 0:
        raise ParameterOutOfRange("graph has no arcs")
    for v in range(graph.num_vertices):
        if graph.in_degree(v) != graph.out_degree(v):
            raise DegreeMismatch(
                graph.vertex_labels[v], graph.in_degree(v), graph.out_degree(v)
            )
    if not graph.is_strongly_connected_on_support():
        raise NotConnected("arc-carrying vertices are not strongly connected")
    start = next(v for v in range(graph.num_vertices) if graph.out_arcs[v])
    next_idx = [0] * graph.num_vertices
    vertex_stack = [start]
    arc_stack: list[int] = []
    out: list[int] = []
    while vertex_stack:
        v = vertex_stack[-1]
        if next_idx[v] < len(graph.out_arcs[v]):
            aid = graph.out_arcs[v][next_idx[v]]
            next_idx[v] += 1
            vertex_stack.append(graph.arcs[aid].head)
            arc_stack.append(aid)
        else:
            vertex_stack.pop()
            if arc_stack:
                out.append(arc_stack.pop())
    if len(out) != graph.num_arcs:
        raise NotConnected("traversal did not reach every arc")
    out.reverse()
    return Circuit(graph, tuple(out)).canonical()


# ----------------------------------------------------------------------
# rewiring

# The circuit decomposes at v into deg(v) segments (maximal stretches between
# consecutive visits).  Those segments are invariant under rewiring at v, so a
# candidate matching is a permutation of segments and is acceptable exactly
# when that permutation is a single cycle.


def _segments_at(vertex: int, circuit: Circuit):
    arcs = circuit.graph.arcs
    seq = circuit.arc_seq
    n = len(seq)
    arrivals = [i for i, aid in enumerate(seq) if arcs[aid].head == vertex]
    if not arrivals:
        raise ParameterOutOfRange(f"circuit never visits vertex {vertex}")
    d = len(arrivals)
    segments = []  # (start_pos, end_pos) inclusive, cyclic slices
    for j in range(d):
        start = (arrivals[j - 1] + 1) % n
        end = arrivals[j]
        segments.append((start, end))
    seg_by_in = {seq[end]: j for j, (_, end) in enumerate(segments)}
    seg_by_out = {seq[start]: j for j, (start, _) in enumerate(segments)}
    return segments, seg_by_in, seg_by_out


def _cyclic_slice(seq: Sequence[int], start: int, end: int) -> list[int]:
    if start <= end:
        return list(seq[start : end + 1])
    return list(seq[start:]) + list(seq[: end + 1])


def _rewire_search(vertex: int, circuit: Circuit, forbidden_pairs: set) -> Circuit:
    """First perfect matching (lexicographic by arc ids) avoiding
    forbidden_pairs whose segment permutation is a single cycle."""
    g = circuit.graph
    seq = circuit.arc_seq
    segments, seg_by_in, seg_by_out = _segments_at(vertex, circuit)
    d = len(segments)
    in_ids = sorted(seg_by_in)  # in-arc ids ascending
    out_ids = sorted(seg_by_out)
    # forbidden segment transitions
    banned = {
        (seg_by_in[i], seg_by_out[o])
        for (i, o) in forbidden_pairs
        if i in seg_by_in and o in seg_by_out
    }
    succ = [-1] * d  # segment permutation under the partial matching
    pred = [-1] * d
    used_out = [False] * d

    def chain_head(t: int) -> int:
        while pred[t] >= 0:
            t = pred[t]
        return t

    def assign(idx: int) -> bool:
        if idx == d:
            return True
        s = seg_by_in[in_ids[idx]]
        for o in out_ids:
            t = seg_by_out[o]
            if used_out[t] or (s, t) in banned:
                continue
            if t == chain_head(s) and idx < d - 1:
                continue  # would close a short cycle
            succ[s] = t
            pred[t] = s
            used_out[t] = True
            if assign(idx + 1):
                return True
            succ[s] = -1
            pred[t] = -1
            used_out[t] = False
        return False

    if not assign(0):
        raise SearchExhausted(
            f"no acceptable rewiring at vertex {g.vertex_labels[vertex]!r}"
        )
    # lay segments out along the new permutation, starting from segment 0
    order = [0]
    while len(order) < d:
        order.append(succ[order[-1]])
    new_seq: list[int] = []
    for t in order:
        start, end = segments[t]
        new_seq.extend(_cyclic_slice(seq, start, end))
    return Circuit(g, tuple(new_seq))


def rewire(vertex: int, circuit: Circuit) -> Circuit:
    """New circuit whose wiring at `vertex` shares no pair with the old one.

    Requires degree >= 3 at the vertex (counting a loop once); degree 2 is
    rejected without searching.
    """
    g = circuit.graph
    deg = g.in_degree(vertex)
    if deg != g.out_degree(vertex):
        raise DegreeMismatch(g.vertex_labels[vertex], deg, g.out_degree(vertex))
    if deg <= 2:
        raise InsufficientDegree(
            f"rewiring needs degree >= 3, vertex {g.vertex_labels[vertex]!r} has {deg}"
        )
    current = wiring_of(vertex, circuit)
    return _rewire_search(vertex, circuit, set(current.pairs))


def rewire_given(vertex: int, circuit: Circuit, forbidden: Sequence[Circuit]) -> Circuit:
    """Rewire so the new wiring avoids every pair used by the forbidden
    circuits at this vertex.  Supports t <= floor(deg/2) - 1 forbidden
    circuits; the forbidden list is expected to be pairwise compatible."""
    g = circuit.graph
    deg = g.in_degree(vertex)
    if deg != g.out_degree(vertex):
        raise DegreeMismatch(g.vertex_labels[vertex], deg, g.out_degree(vertex))
    t = len(forbidden)
    if t > deg // 2 - 1:
        raise TooManyForbidden(
            f"{t} forbidden circuits at degree {deg}; at most {deg // 2 - 1} supported"
        )
    banned: set = set()
    for c in forbidden:
        banned |= wiring_of(vertex, c).pairs
    return _rewire_search(vertex, circuit, banned)


def rewire_vertex_set(
    vertices: Iterable[int],
    circuit: Circuit,
    forbidden: Optional[Sequence[Circuit]] = None,
) -> Circuit:
    """Fold rewire (or rewire_given) over the vertices in the given order."""
    c = circuit
    for v in vertices:
        if forbidden is None:
            c = rewire(v, c)
        else:
            c = rewire_given(v, c, forbidden)
    return c


# ----------------------------------------------------------------------
# vertex splitting


def split_vertex(
    graph: DirectedMultigraph, vertex: int, wiring: Wiring
) -> DirectedMultigraph:
    """Replace `vertex` by one degree-1 vertex per wiring pair.

    Arc ids are preserved, so any circuit of the split graph is a valid arc
    sequence of the original; that is what merge_circuit relies on.
    """
    return split_vertices(graph, {vertex: wiring})


def split_vertices(
    graph: DirectedMultigraph, wirings: dict[int, Wiring]
) -> DirectedMultigraph:
    for v, w in wirings.items():
        ins = {i for i, _ in w.pairs}
        outs = {o for _, o in w.pairs}
        if ins != set(graph.in_arcs[v]) or outs != set(graph.out_arcs[v]):
            raise ParameterOutOfRange(
                f"wiring at vertex {graph.vertex_labels[v]!r} is not a perfect matching"
            )
    in_piece: dict[int, tuple] = {}
    out_piece: dict[int, tuple] = {}
    new_labels: list = []
    for v, lab in enumerate(graph.vertex_labels):
        if v not in wirings:
            new_labels.append(lab)
            continue
        for j, (i, o) in enumerate(sorted(wirings[v].pairs)):
            piece = (lab, j)
            new_labels.append(piece)
            in_piece[i] = piece
            out_piece[o] = piece
    arc_specs = []
    for a in graph.arcs:
        tail = out_piece[a.id] if a.tail in wirings else graph.vertex_labels[a.tail]
        head = in_piece[a.id] if a.head in wirings else graph.vertex_labels[a.head]
        arc_specs.append((tail, head, a.symbol))
    base = graph.base if graph.kind == "split" else graph
    return DirectedMultigraph(
        new_labels, arc_specs, kind="split", sigma=graph.sigma, k=graph.k, base=base
    )


def merge_circuit(circuit: Circuit, original: DirectedMultigraph) -> Circuit:
    """Reinterpret a circuit of a split graph on the graph it came from."""
    g = circuit.graph
    if g.kind != "split" or g.base is not original:
        raise ParameterOutOfRange("circuit does not belong to a split of this graph")
    if g.num_arcs != original.num_arcs:
        raise ParameterOutOfRange("arc sets differ")
    return Circuit(original, circuit.arc_seq)


# ----------------------------------------------------------------------
# order lift


def hamiltonian_from_eulerian(circuit: Circuit, lifted: DirectedMultigraph) -> Circuit:
    """Map an Eulerian circuit of the order-k graph to a Hamiltonian cycle of
    the order-(k+1) graph: each traversed arc becomes a visited vertex."""
    g = circuit.graph
    if lifted.k != (g.k or 0) + 1:
        raise ParameterOutOfRange("lifted graph must have order k+1")
    if len(circuit) != g.num_arcs:
        raise ParameterOutOfRange("circuit is not Eulerian")
    seq = circuit.arc_seq
    n = len(seq)
    out = []
    for i in range(n):
        w = g.arc_word(seq[i]) + (g.arcs[seq[(i + 1) % n]].symbol,)
        out.append(lifted.arc_id_of_word(w))
    ham = Circuit(lifted, tuple(out))
    if len(set(ham.vertex_seq())) != lifted.num_vertices:
        raise ParameterOutOfRange("lift did not visit every vertex once")
    return ham


def eulerian_from_hamiltonian(circuit: Circuit, original: DirectedMultigraph) -> Circuit:
    """Inverse lift: visited (k+1)-graph vertices are the traversed k-arcs."""
    g = circuit.graph
    if g.k != (original.k or 0) + 1:
        raise ParameterOutOfRange("graphs are not consecutive orders")
    seq = tuple(
        original.arc_id_of_word(g.vertex_labels[v]) for v in circuit.vertex_seq()
    )
    return Circuit(original, seq)

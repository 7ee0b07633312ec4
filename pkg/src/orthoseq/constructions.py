"""Constructions of orthogonal, balanced, and fixed-weight sequence families.

Each public construct_* function builds its collection by graph surgery
(rewiring, vertex splitting, cycle combination, stream composition) and then
certifies the result with the independent window-counting oracle before
returning it.  A failed certificate raises CertificationError: no uncertified
object ever leaves this module.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .alphabet import Alphabet, LanguageSpec, Word, default_alphabet, expand_language
from .circuits import (
    Circuit,
    Wiring,
    circuit_to_word,
    find_eulerian_circuit,
    hamiltonian_from_eulerian,
    merge_circuit,
    rewire_vertex_set,
    split_vertices,
    word_to_circuit,
)
from .errors import (
    CertificationError,
    NotCoprime,
    NotPrimePower,
    ParameterOutOfRange,
    SearchExhausted,
    UnsupportedCase,
)
from .graphs import (
    DirectedMultigraph,
    build_de_bruijn_graph,
    build_kautz_graph,
    build_language_graph,
    build_restricted_graph,
    tensor_product,
)
from . import verify


@dataclass(frozen=True)
class OrthogonalCollectionRequest:
    """Parameters of one collection request, as the CLI hands them over."""

    family: str  # de-bruijn | kautz | balanced-de-bruijn | balanced-kautz |
    #              fixed-weight-de-bruijn | fixed-weight-kautz
    sigma: Optional[int] = None
    k: int = 2
    ell: int = 1
    c: Optional[int] = None
    b: Optional[int] = None
    weight: Optional[int] = None
    weight_band: Optional[tuple[int, int]] = None
    alphabet: Optional[Alphabet] = None
    attempt_search: bool = False


@dataclass
class ConstructionResult:
    """A certified collection: words, their circuits, and the certificate."""

    family: str
    parameters: dict
    alphabet: Alphabet
    sigma: int
    k: int
    words: list[Word]
    circuits: list[Circuit]
    certificate: list[verify.VerificationReport]
    provenance: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)


def _certified(reports: Sequence[verify.VerificationReport]) -> list[verify.VerificationReport]:
    for r in reports:
        if not r.holds:
            raise CertificationError(f"{r.property} failed, witness {r.witness!r}")
    return list(reports)


def _fit_alphabet(alphabet: Optional[Alphabet], sigma: int) -> Alphabet:
    if alphabet is None:
        return default_alphabet(sigma)
    if alphabet.sigma != sigma:
        raise ParameterOutOfRange(
            f"alphabet has {alphabet.sigma} symbols, construction needs {sigma}"
        )
    return alphabet


# ----------------------------------------------------------------------
# small number-theory helpers


def factorize(n: int) -> dict[int, int]:
    if n < 2:
        raise ParameterOutOfRange(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorize(n)) == 1


def smallest_prime_power_geq(n: int) -> int:
    m = max(n, 2)
    while not is_prime_power(m):
        m += 1
    return m


# ----------------------------------------------------------------------
# vertex partition and the rewiring recursion


def partition_vertices(graph: DirectedMultigraph, ell: int) -> list[list[int]]:
    """Split the vertex ids into ell lexicographic blocks of near-equal size;
    earlier blocks take the smaller size when it does not divide evenly."""
    n = graph.num_vertices
    if not 1 <= ell <= n:
        raise ParameterOutOfRange(f"need 1 <= ell <= {n}, got {ell}")
    q, r = divmod(n, ell)
    blocks = []
    pos = 0
    for i in range(ell):
        size = q + (1 if i >= ell - r else 0)
        blocks.append(list(range(pos, pos + size)))
        pos += size
    return blocks


def _rewiring_family(
    graph: DirectedMultigraph, ell: int, big_k: int, conditioned: bool
) -> tuple[list[Circuit], list[str]]:
    """The ell x K grid of circuits built by group rewiring.

    Row 1 starts from the Eulerian circuit; each step rewires one vertex
    block of the previous circuit, avoiding the wirings of earlier rows'
    first columns when `conditioned` (degree >= 4 path).  The last row is
    conditioned on rows 2..K so the count K stays within the degree budget.
    """
    fam: dict[tuple[int, int], Circuit] = {}
    prov: list[str] = []
    groups = partition_vertices(graph, ell)
    fam[(1, 1)] = find_eulerian_circuit(graph)
    prov.append("C[1,1]: Eulerian circuit")

    def emit(i: int, j: int, group_idx: int, base: tuple[int, int], forbidden_cols):
        forb = [fam[(m, 1)] for m in forbidden_cols] if conditioned else None
        fam[(i, j)] = rewire_vertex_set(groups[group_idx], fam[base], forb)
        given = f" given columns {list(forbidden_cols)}" if conditioned else ""
        prov.append(f"C[{i},{j}]: rewired block {group_idx + 1} of C[{base[0]},{base[1]}]{given}")

    for j in range(2, ell + 1):
        emit(1, j, j - 2, (1, j - 1), range(1, 2))
    for i in range(2, big_k + 1):
        emit(i, 1, ell - 1, (i - 1, ell), range(1, i))
        for j in range(2, ell + 1):
            cols = range(1, i + 1) if i < big_k else range(2, big_k + 1)
            emit(i, j, j - 2, (i, j - 1), cols)
    ordered = [fam[(i, j)] for i in range(1, big_k + 1) for j in range(1, ell + 1)]
    return ordered, prov


# ----------------------------------------------------------------------
# orthogonal de Bruijn / Kautz families


def construct_l_orthogonal_de_bruijn(
    sigma: int, k: int, ell: int, alphabet: Optional[Alphabet] = None
) -> ConstructionResult:
    """ell*K pairwise "each window at most ell times" de Bruijn sequences,
    K = floor(sigma/2) for sigma >= 4 and K = 2 for sigma = 3."""
    if sigma < 3:
        raise ParameterOutOfRange(f"need sigma >= 3, got {sigma}")
    if k < 1:
        raise ParameterOutOfRange(f"need k >= 1, got {k}")
    if not 1 <= ell <= sigma ** (k - 1):
        raise ParameterOutOfRange(f"need 1 <= ell <= sigma^(k-1) = {sigma ** (k - 1)}")
    alphabet = _fit_alphabet(alphabet, sigma)
    graph = build_de_bruijn_graph(sigma, k)
    big_k = sigma // 2 if sigma >= 4 else 2
    circuits, prov = _rewiring_family(graph, ell, big_k, conditioned=sigma >= 4)
    words = [circuit_to_word(c) for c in circuits]
    certificate = _certified(
        [verify.is_de_bruijn(w, sigma, k) for w in words]
        + [verify.is_l_orthogonal(words, k, ell), verify.are_compatible(circuits, ell)]
    )
    return ConstructionResult(
        family="de-bruijn",
        parameters={"sigma": sigma, "k": k, "ell": ell},
        alphabet=alphabet,
        sigma=sigma,
        k=k,
        words=words,
        circuits=circuits,
        certificate=certificate,
        provenance=prov,
        info={"count": len(words), "K": big_k, "upper_bound": ell * (sigma - 1)},
    )


def construct_l_orthogonal_kautz(
    sigma: int, k: int, ell: int, alphabet: Optional[Alphabet] = None
) -> ConstructionResult:
    """Same recursion on the Kautz graph; K' = max(2, floor((sigma-1)/2))."""
    if sigma < 4:
        raise ParameterOutOfRange(f"need sigma >= 4, got {sigma}")
    if k < 2:
        raise ParameterOutOfRange(f"need k >= 2, got {k}")
    graph = build_kautz_graph(sigma, k)
    if not 1 <= ell <= graph.num_vertices:
        raise ParameterOutOfRange(f"need 1 <= ell <= {graph.num_vertices}")
    alphabet = _fit_alphabet(alphabet, sigma)
    big_k = max(2, (sigma - 1) // 2)
    circuits, prov = _rewiring_family(graph, ell, big_k, conditioned=sigma >= 5)
    words = [circuit_to_word(c) for c in circuits]
    certificate = _certified(
        [verify.is_kautz_word(w, sigma, k) for w in words]
        + [verify.is_l_orthogonal(words, k, ell), verify.are_compatible(circuits, ell)]
    )
    return ConstructionResult(
        family="kautz",
        parameters={"sigma": sigma, "k": k, "ell": ell},
        alphabet=alphabet,
        sigma=sigma,
        k=k,
        words=words,
        circuits=circuits,
        certificate=certificate,
        provenance=prov,
        info={"count": len(words), "K": big_k},
    )


# ----------------------------------------------------------------------
# arc-disjoint avoiding cycles (prime-power alphabets)


def _digit_add_table(sigma: int, p: int) -> list[list[int]]:
    """Digitwise addition mod p of base-p expansions; the additive group."""

    def add(a: int, b: int) -> int:
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    return [[add(s, t) for t in range(sigma)] for s in range(sigma)]


@functools.lru_cache(maxsize=None)
def _avoiding_cycle_base(sigma: int, k: int, p: int) -> tuple[int, ...]:
    """Cycle word through all k-words except 0^k whose (k+1)-window set is
    disjoint from its own nontrivial digitwise translates.  Its sigma
    translates then form the whole arc-disjoint family."""
    add = _digit_add_table(sigma, p)
    zero = (0,) * k
    start = (0,) * (k - 1) + (1,)
    target = sigma**k - 1
    visited = {zero, start}
    path = [start]
    forbidden: set = set()

    def translates(w: tuple) -> list[tuple]:
        return [tuple(add[s][t] for s in w) for t in range(sigma)]

    def dfs(u: tuple) -> bool:
        if len(path) == target:
            if u[1:] != start[:-1]:
                return False
            return u + (start[-1],) not in forbidden
        for c in range(sigma):
            v = u[1:] + (c,)
            w = u + (c,)
            if v in visited or w in forbidden:
                continue
            tr = translates(w)
            forbidden.update(tr)
            visited.add(v)
            path.append(v)
            if dfs(v):
                return True
            path.pop()
            visited.remove(v)
            forbidden.difference_update(tr)
        return False

    if not dfs(start):
        raise SearchExhausted(f"no translate-disjoint cycle for sigma={sigma}, k={k}")
    return tuple(v[0] for v in path)


def _avoiding_cycles_generic(sigma: int, k: int, max_nodes: int = 20_000_000) -> list[tuple]:
    """Level-wise backtracking without the translate structure (non prime
    powers).  May legitimately exhaust."""
    words: list[tuple] = []
    used: set = set()
    nodes = 0
    n = sigma**k

    def level(i: int) -> bool:
        nonlocal nodes
        if i == sigma:
            return True
        avoid = (i,) * k
        start = (0,) * k if avoid != (0,) * k else (0,) * (k - 1) + (1,)
        visited = {avoid, start}
        path = [start]

        def dfs(u: tuple) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > max_nodes:
                raise SearchExhausted(f"avoiding-cycle search exceeded {max_nodes} nodes")
            if len(path) == n - 1:
                w = u + (start[-1],)
                if u[1:] != start[:-1] or w in used:
                    return False
                used.add(w)
                word = tuple(v[0] for v in path)
                words.append(word)
                if level(i + 1):
                    return True
                words.pop()
                used.discard(w)
                return False
            for c in range(sigma):
                v = u[1:] + (c,)
                w = u + (c,)
                if v in visited or w in used:
                    continue
                visited.add(v)
                used.add(w)
                path.append(v)
                if dfs(v):
                    return True
                path.pop()
                used.discard(w)
                visited.remove(v)
            return False

        return dfs(start)

    if not level(0):
        raise SearchExhausted(f"no arc-disjoint avoiding cycles found for sigma={sigma}")
    return words


def find_arc_disjoint_avoiding_cycles(
    sigma: int, k: int, attempt_search: bool = False
) -> list[Circuit]:
    """sigma pairwise arc-disjoint cycles on the order-(k+1) graph, the i-th
    avoiding the all-i vertex and visiting every other k-word exactly once.

    Guaranteed for prime-power sigma; NotPrimePower otherwise unless
    attempt_search asks for a best-effort backtracking run.
    """
    if sigma < 2 or k < 1:
        raise ParameterOutOfRange("need sigma >= 2 and k >= 1")
    graph = build_de_bruijn_graph(sigma, k + 1)
    if is_prime_power(sigma):
        p = next(iter(factorize(sigma)))
        base = _avoiding_cycle_base(sigma, k, p)
        add = _digit_add_table(sigma, p)
        cycle_words = [tuple(add[s][t] for s in base) for t in range(sigma)]
    elif attempt_search:
        cycle_words = _avoiding_cycles_generic(sigma, k)
    else:
        raise NotPrimePower(f"sigma = {sigma} is not a prime power")
    circuits = [word_to_circuit(w, graph) for w in cycle_words]
    # internal invariants: avoidance, coverage, disjointness
    for i, c in enumerate(circuits):
        visits = set(c.vertex_seq())
        if (i,) * k in visits or len(visits) != len(c) or len(c) != sigma**k - 1:
            raise CertificationError(f"avoiding cycle {i} malformed")
    if not verify.are_arc_disjoint(circuits).holds:
        raise CertificationError("avoiding cycles share an arc")
    return circuits


# ----------------------------------------------------------------------
# balanced collections


def insert_loop(circuit: Circuit, vertex_entries: tuple) -> Circuit:
    """Insert the loop arc at a homogeneous vertex into a visiting walk."""
    g = circuit.graph
    loop_id = g.arc_id_of_word(tuple(vertex_entries) + (vertex_entries[-1],))
    v = g.vertex_index[tuple(vertex_entries)]
    for pos, aid in enumerate(circuit.arc_seq):
        if g.arcs[aid].tail == v:
            return Circuit(g, circuit.arc_seq[:pos] + (loop_id,) + circuit.arc_seq[pos:])
    raise ParameterOutOfRange(f"walk never visits vertex {vertex_entries}")


def build_b_circuit(tau: int, b: int, cycles: Sequence[Circuit]) -> Circuit:
    """Combine cycles b*tau .. b*tau+b-1, each with one loop transition added,
    into a closed walk visiting every vertex exactly b times.

    Member i < b-1 takes the loop at the all-(b*tau+i+1) vertex; the last
    member takes the loop at the all-(b*tau) vertex (which it visits because
    only cycle b*tau avoids it, so b >= 2 is the useful range)."""
    if b < 1 or tau < 0:
        raise ParameterOutOfRange("need b >= 1 and tau >= 0")
    if b * (tau + 1) > len(cycles):
        raise ParameterOutOfRange("not enough cycles for this group")
    group = list(cycles[b * tau : b * tau + b])
    g = group[0].graph
    k = g.k - 1
    decorated = []
    for i in range(b - 1):
        decorated.append(insert_loop(group[i], (b * tau + i + 1,) * k))
    decorated.append(insert_loop(group[b - 1], (b * tau,) * k))
    return combine_closed_walks(decorated)


def combine_closed_walks(walks: Sequence[Circuit]) -> Circuit:
    """Splice closed walks into one at their first shared vertices."""
    if not walks:
        raise ParameterOutOfRange("need at least one walk")
    g = walks[0].graph
    result = list(walks[0].arc_seq)
    for w in walks[1:]:
        if w.graph is not g:
            raise ParameterOutOfRange("walks live on different graphs")
        wtails = {g.arcs[a].tail for a in w.arc_seq}
        pos = next((i for i, a in enumerate(result) if g.arcs[a].tail in wtails), None)
        if pos is None:
            raise ParameterOutOfRange("closed walks share no vertex")
        shared = g.arcs[result[pos]].tail
        q = next(i for i, a in enumerate(w.arc_seq) if g.arcs[a].tail == shared)
        result[pos:pos] = list(w.arc_seq[q:] + w.arc_seq[:q])
    return Circuit(g, tuple(result))


def tensor_compose_b_circuits(
    c1: Circuit, c2: Circuit, product: Optional[DirectedMultigraph] = None
) -> Circuit:
    """Index-synchronous pairing of two coprime-length circuit streams into
    one circuit of the tensor product graph."""
    len1, len2 = len(c1), len(c2)
    if math.gcd(len1, len2) != 1:
        raise NotCoprime(f"stream lengths {len1} and {len2} share a factor")
    for c in (c1, c2):
        if len(c) % c.graph.num_vertices != 0:
            raise ParameterOutOfRange("walk length is not a multiple of |V|")
    if product is None:
        product = tensor_product(c1.graph, c2.graph)
    elif getattr(product, "factors", None) != (c1.graph, c2.graph):
        raise ParameterOutOfRange("product graph does not match the factors")
    seq = tuple(
        product.pair_to_arc[(c1.arc_seq[t % len1], c2.arc_seq[t % len2])]
        for t in range(len1 * len2)
    )
    return Circuit(product, seq)


def _mixed_radix_join(words: Sequence[tuple], sigmas: Sequence[int]) -> tuple[int, ...]:
    """Positional join of synchronized circular streams (first factor is the
    most significant digit)."""
    total = math.prod(len(w) for w in words)
    out = []
    for t in range(total):
        val = 0
        for w, s in zip(words, sigmas):
            val = val * s + w[t % len(w)]
        out.append(val)
    return tuple(out)


def construct_orthogonal_balanced_de_bruijn(
    c: int, b: int, k: int, alphabet: Optional[Alphabet] = None
) -> ConstructionResult:
    """c sequences over the smallest workable alphabet, each containing every
    k-word exactly b times, sharing no (k+1)-window.

    sigma = c*b exactly when every prime of c divides b (prime-by-prime
    factor construction composed through the digit map); otherwise the
    smallest prime power >= c*b is used directly.
    """
    if c < 2 or b < 2:
        raise ParameterOutOfRange("need c >= 2 and b >= 2")
    if k < 1:
        raise ParameterOutOfRange("need k >= 1")
    cb = c * b
    c_fac = factorize(c)
    prov: list[str] = []
    if is_prime_power(cb):
        sigma = cb
        components = [_prime_power_component(sigma, c, b, k, prov)]
    elif all(b % p == 0 for p in c_fac):
        sigma = cb
        components = []
        rem = b
        for p in sorted(c_fac, reverse=True):
            x = c_fac[p]
            y = 0
            while rem % p == 0:
                rem //= p
                y += 1
            components.append(_prime_power_component(p ** (x + y), p**x, p**y, k, prov))
        if rem > 1:
            g = build_de_bruijn_graph(rem, k + 1)
            components.append((rem, [find_eulerian_circuit(g)], rem))
            prov.append(f"factor {rem}: Eulerian circuit of the order-{k + 1} graph")
    else:
        sigma = smallest_prime_power_geq(cb)
        components = [_prime_power_component(sigma, c, b, k, prov)]
    alphabet = _fit_alphabet(alphabet, sigma)
    sigmas = [comp[0] for comp in components]
    if math.prod(sigmas) != sigma:
        raise CertificationError("factor alphabets do not multiply out")
    streams = [[tuple(circuit_to_word(w)) for w in comp[1]] for comp in components]
    combo_words = [
        Word(_mixed_radix_join(choice, sigmas), circular=True)
        for choice in itertools.product(*streams)
    ]
    lifted = build_de_bruijn_graph(sigma, k + 1)
    circuits = [word_to_circuit(w, lifted) for w in combo_words]
    certificate = _certified(
        [verify.is_b_balanced(w, sigma, k, b) for w in combo_words]
        + [verify.is_self_orthogonal(w, k) for w in combo_words]
        + [verify.is_l_orthogonal(combo_words, k, 1), verify.are_arc_disjoint(circuits)]
        + [verify.is_b_circuit(cc, lifted, b) for cc in circuits]
    )
    return ConstructionResult(
        family="balanced-de-bruijn",
        parameters={"c": c, "b": b, "k": k},
        alphabet=alphabet,
        sigma=sigma,
        k=k,
        words=combo_words,
        circuits=circuits,
        certificate=certificate,
        provenance=prov,
        info={
            "sigma_used": sigma,
            "lower_bound": cb,
            "upper_bound": smallest_prime_power_geq(cb),
            "count": len(combo_words),
        },
    )


def _prime_power_component(
    sigma: int, c: int, b: int, k: int, prov: list[str]
) -> tuple[int, list[Circuit], int]:
    """c arc-disjoint b-circuits on the order-(k+1) graph over a prime-power
    alphabet, from grouped avoiding cycles."""
    cycles = find_arc_disjoint_avoiding_cycles(sigma, k)
    walks = [build_b_circuit(tau, b, cycles) for tau in range(c)]
    prov.append(f"factor {sigma}: {c} groups of {b} avoiding cycles with loop transitions")
    return (sigma, walks, b)


def construct_orthogonal_balanced_kautz(
    c: int, b: int, k: int, alphabet: Optional[Alphabet] = None
) -> ConstructionResult:
    """c adjacent-distinct sequences over 2cb+1 symbols, each containing every
    adjacent-distinct k-word exactly b times, sharing no (k+1)-window."""
    if c < 1 or b < 1:
        raise ParameterOutOfRange("need c >= 1 and b >= 1")
    if k < 2:
        raise ParameterOutOfRange("need k >= 2")
    sigma = 2 * c * b + 1
    alphabet = _fit_alphabet(alphabet, sigma)
    graph = build_kautz_graph(sigma, k)
    big_k = c * b
    if big_k == 1:
        family = [find_eulerian_circuit(graph)]
        prov = ["C[1,1]: Eulerian circuit"]
    else:
        family, prov = _rewiring_family(graph, 1, big_k, conditioned=True)
    lifted = build_kautz_graph(sigma, k + 1)
    hams = [hamiltonian_from_eulerian(cc, lifted) for cc in family]
    walks = [
        combine_closed_walks(hams[b * tau : b * tau + b]) for tau in range(c)
    ]
    prov.append(f"lifted {c * b} compatible circuits, combined in {c} groups of {b}")
    words = [circuit_to_word(w) for w in walks]
    certificate = _certified(
        [verify.is_b_balanced_kautz(w, sigma, k, b) for w in words]
        + [verify.is_l_orthogonal(words, k, 1), verify.are_arc_disjoint(walks)]
        + [verify.is_b_circuit(w, lifted, b) for w in walks]
    )
    return ConstructionResult(
        family="balanced-kautz",
        parameters={"c": c, "b": b, "k": k},
        alphabet=alphabet,
        sigma=sigma,
        k=k,
        words=words,
        circuits=walks,
        certificate=certificate,
        provenance=prov,
        info={"sigma_used": sigma, "lower_bound": c * b + 1, "upper_bound": sigma,
              "count": len(words)},
    )


# ----------------------------------------------------------------------
# fixed-weight families


def _shift_wiring(graph: DirectedMultigraph, v: int, j: int) -> Wiring:
    """Pair the i-th in-arc (by predecessor's leading symbol) with the
    (i+j)-th out-arc (by trailing symbol); distinct j give disjoint wirings."""
    ins = sorted(graph.in_arcs[v], key=lambda a: graph.arc_word(a)[0])
    outs = sorted(graph.out_arcs[v], key=lambda a: graph.arcs[a].symbol)
    if len(ins) != len(outs):
        raise ParameterOutOfRange("unbalanced vertex cannot be wired")
    d = len(ins)
    return Wiring(v, frozenset((ins[i], outs[(i + j) % d]) for i in range(d)))


def _split_circuit_family(
    graph: DirectedMultigraph, m: int, full_degree: int
) -> tuple[list[Circuit], list[str]]:
    """m pairwise compatible Eulerian circuits of a graph whose low-degree
    vertices are handled by shift wirings (split, traverse, merge) and whose
    full-degree vertices are separated by rewiring."""
    if m == 1:
        return [find_eulerian_circuit(graph)], ["circuit 0: Eulerian circuit"]
    degs = [graph.in_degree(v) for v in range(graph.num_vertices)]
    split_set = [v for v in range(graph.num_vertices) if degs[v] < full_degree]
    if split_set and m > min(degs[v] for v in split_set):
        raise ParameterOutOfRange("more circuits than disjoint shift wirings")
    prov: list[str] = []
    raw: list[Circuit] = []
    for j in range(m):
        wirings = {v: _shift_wiring(graph, v, j) for v in split_set}
        gj = split_vertices(graph, wirings) if wirings else graph
        circ = find_eulerian_circuit(gj)
        raw.append(merge_circuit(circ, graph) if wirings else circ)
        prov.append(f"circuit {j}: shift-{j} wirings at {len(split_set)} split vertices")
    out = [raw[0]]
    middles = [v for v in range(graph.num_vertices) if degs[v] == full_degree]
    for j in range(1, m):
        out.append(rewire_vertex_set(middles, raw[j], out[:j]))
        prov.append(f"circuit {j}: rewired {len(middles)} full-degree vertices given 0..{j - 1}")
    return out, prov


def construct_fixed_weight_orthogonal_db(
    alphabet: Alphabet, k: int, w: int
) -> ConstructionResult:
    """min(|W|,|X|) compatible circuits through all k-words of weight w-1 or w
    (weight counted over the alphabet's weighted subset W)."""
    n_w = len(alphabet.weighted)
    n_x = alphabet.sigma - n_w
    if n_w < 1 or n_x < 1:
        raise ParameterOutOfRange("both symbol classes must be nonempty")
    if k < 2:
        raise ParameterOutOfRange("need k >= 2")
    if not 1 <= w <= k:
        raise ParameterOutOfRange(f"need 1 <= w <= k, got w={w}")
    spec = LanguageSpec("full", k, min_weight=w - 1, max_weight=w)
    language = expand_language(spec, alphabet)
    graph = build_language_graph(spec, alphabet)
    m = min(n_w, n_x)
    circuits, prov = _split_circuit_family(graph, m, alphabet.sigma)
    words = [circuit_to_word(c) for c in circuits]
    certificate = _certified(
        [verify.is_fixed_weight_db(word, language) for word in words]
        + [verify.is_l_orthogonal(words, k, 1), verify.are_compatible(circuits)]
    )
    return ConstructionResult(
        family="fixed-weight-de-bruijn",
        parameters={"k": k, "w": w, "W": sorted(alphabet.weighted), "sigma": alphabet.sigma},
        alphabet=alphabet,
        sigma=alphabet.sigma,
        k=k,
        words=words,
        circuits=circuits,
        certificate=certificate,
        provenance=prov,
        info={"count": m, "language_size": len(language)},
    )


def fixed_weight_kautz_exists(k: int, w_min: int, w_max: int) -> bool:
    """Feasibility of an adjacent-distinct sequence covering the weight band
    [w_min, w_max] exactly once each: only the full-band-at-an-end shapes.

    At order 2 every band is coverable: the windows through a symbol x are
    ax and xb, which weight identically, so the band graph is balanced at
    every vertex (the order >= 3 degree-mismatch argument has no analogue).
    """
    if not 0 <= w_min <= w_max <= k:
        raise ParameterOutOfRange("need 0 <= w_min <= w_max <= k")
    if k == 2:
        return True
    if w_min == w_max:
        return w_min == 0 or w_max == k
    return w_min in (0, 1) and w_max in (k - 1, k)


def construct_fixed_weight_kautz_orthogonal(
    alphabet: Alphabet, k: int, w_min: int, w_max: int
) -> ConstructionResult:
    """Compatible circuit family for the adjacent-distinct weight-band
    languages that admit one; UnsupportedCase otherwise."""
    n_w = len(alphabet.weighted)
    n_x = alphabet.sigma - n_w
    if n_w < 2 or n_x < 2:
        raise ParameterOutOfRange("need at least two symbols in each class")
    if k < 2:
        raise ParameterOutOfRange("need k >= 2")
    if not fixed_weight_kautz_exists(k, w_min, w_max):
        raise UnsupportedCase(f"no such sequence for band ({w_min},{w_max}) at k={k}")
    spec = LanguageSpec("kautz", k, min_weight=w_min, max_weight=w_max)
    language = expand_language(spec, alphabet)
    graph = build_restricted_graph(language, sigma=alphabet.sigma)
    delta = alphabet.sigma - 1
    if w_min == w_max:
        # single-class band: plain traversal of the sub-alphabet language
        m = 1
    else:
        degs = [graph.in_degree(v) for v in range(graph.num_vertices)]
        split_degrees = [d for d in degs if d < delta]
        m = min(min(split_degrees, default=delta), delta // 2)
        m = max(m, 1)
        if k == 2 and not any(d == delta for d in degs):
            m = 1  # no full-degree vertex to rewire at
    circuits, prov = _split_circuit_family(graph, m, delta)
    words = [circuit_to_word(c) for c in circuits]
    certificate = _certified(
        [verify.is_fixed_weight_db(word, language) for word in words]
        + [verify.is_l_orthogonal(words, k, 1), verify.are_compatible(circuits)]
    )
    return ConstructionResult(
        family="fixed-weight-kautz",
        parameters={
            "k": k,
            "w_min": w_min,
            "w_max": w_max,
            "W": sorted(alphabet.weighted),
            "sigma": alphabet.sigma,
        },
        alphabet=alphabet,
        sigma=alphabet.sigma,
        k=k,
        words=words,
        circuits=circuits,
        certificate=certificate,
        provenance=prov,
        info={"count": m, "language_size": len(language)},
    )


# ----------------------------------------------------------------------
# dispatcher


def construct(request: OrthogonalCollectionRequest) -> ConstructionResult:
    fam = request.family
    if fam == "de-bruijn":
        _need(request.sigma, "sigma")
        return construct_l_orthogonal_de_bruijn(
            request.sigma, request.k, request.ell, request.alphabet
        )
    if fam == "kautz":
        _need(request.sigma, "sigma")
        return construct_l_orthogonal_kautz(
            request.sigma, request.k, request.ell, request.alphabet
        )
    if fam == "balanced-de-bruijn":
        _need(request.c, "c")
        _need(request.b, "b")
        return construct_orthogonal_balanced_de_bruijn(
            request.c, request.b, request.k, request.alphabet
        )
    if fam == "balanced-kautz":
        _need(request.c, "c")
        _need(request.b, "b")
        return construct_orthogonal_balanced_kautz(
            request.c, request.b, request.k, request.alphabet
        )
    if fam == "fixed-weight-de-bruijn":
        _need(request.alphabet, "alphabet with a weighted class")
        _need(request.weight, "weight")
        return construct_fixed_weight_orthogonal_db(request.alphabet, request.k, request.weight)
    if fam == "fixed-weight-kautz":
        _need(request.alphabet, "alphabet with a weighted class")
        _need(request.weight_band, "weight band")
        return construct_fixed_weight_kautz_orthogonal(
            request.alphabet, request.k, *request.weight_band
        )
    raise ParameterOutOfRange(f"unknown family {fam!r}")


def _need(value, name: str):
    if value is None:
        raise ParameterOutOfRange(f"missing parameter: {name}")

"""Independent brute-force verification of constructed sequences.

Everything here works by counting windows of circular words with plain tuple
slicing, or by exhaustive search over small instances.  It deliberately shares
no traversal logic with the construction side: a certificate produced by this
module is evidence that a construction is right, not that it agrees with
itself.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .alphabet import Word, as_entries, word_weight
from .errors import GuardExceeded, ParameterOutOfRange


@dataclass
class VerificationReport:
    """Outcome of one checked property.

    witness is set exactly when the property fails and names the offending
    window, arc, or vertex; counts carries the window histogram when one was
    computed.
    """

    property: str
    holds: bool
    witness: Optional[object] = None
    counts: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json_dict(self, alphabet=None) -> dict:
        def render(obj):
            if alphabet is not None and isinstance(obj, tuple) and all(
                isinstance(x, int) for x in obj
            ):
                return alphabet.render(obj)
            if isinstance(obj, tuple):
                return ",".join(str(render(x)) for x in obj)
            return obj

        out = {"property": self.property, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = render(self.witness)
        if self.counts is not None:
            out["counts"] = {str(render(k)): v for k, v in sorted(self.counts.items())}
        return out


def _require(condition: bool, message: str):
    if not condition:
        raise ParameterOutOfRange(message)


# ----------------------------------------------------------------------
# window counting


def circular_window_counts(word, n: int) -> Counter:
    """Histogram of the length-n windows of a circular word.

    Windows longer than the word wrap as often as needed, so short periodic
    words (for example sub-alphabet coverings of length 2) still read out.
    """
    entries = as_entries(word)
    _require(n >= 1, "window length must be >= 1")
    _require(len(entries) >= 1, "empty word has no windows")
    reps = 1 + (n - 1 + len(entries) - 1) // len(entries)
    ext = entries * reps
    return Counter(ext[i : i + n] for i in range(len(entries)))


def _first_window_violation(word, n: int, expected: dict) -> Optional[tuple]:
    """First window (in scan order) whose running count exceeds its target,
    or that is not in the expected support at all."""
    entries = as_entries(word)
    reps = 1 + (n - 1 + len(entries) - 1) // len(entries)
    ext = entries * reps
    running: Counter = Counter()
    for i in range(len(entries)):
        w = ext[i : i + n]
        running[w] += 1
        if running[w] > expected.get(w, 0):
            return w
    return None


def _covering_report(word, n: int, expected: dict, prop: str) -> VerificationReport:
    """Check that the n-windows of `word` hit each expected window the
    expected number of times and nothing else."""
    entries = as_entries(word)
    total = sum(expected.values())
    counts = circular_window_counts(entries, n) if entries else Counter()
    if len(entries) != total:
        return VerificationReport(
            prop, False, witness=("length", len(entries), "expected", total), counts=dict(counts)
        )
    if counts == expected:
        return VerificationReport(prop, True, counts=dict(counts))
    witness = _first_window_violation(entries, n, expected)
    if witness is None:  # some expected window is missing
        witness = next(w for w, c in sorted(expected.items()) if counts.get(w, 0) < c)
    return VerificationReport(prop, False, witness=witness, counts=dict(counts))


# ----------------------------------------------------------------------
# local language generators (kept separate from the construction side)


def _all_words(sigma: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(sigma), repeat=k))


def _kautz_words(sigma: int, k: int) -> list[tuple[int, ...]]:
    return [
        w
        for w in itertools.product(range(sigma), repeat=k)
        if all(w[i] != w[i + 1] for i in range(k - 1))
    ]


# ----------------------------------------------------------------------
# sequence predicates


def is_de_bruijn(word, sigma: int, k: int) -> VerificationReport:
    """Every k-word over the sigma symbols appears exactly once."""
    expected = {w: 1 for w in _all_words(sigma, k)}
    return _covering_report(word, k, expected, f"de_bruijn({sigma},{k})")


def is_b_balanced(word, sigma: int, k: int, b: int) -> VerificationReport:
    """Every k-word appears exactly b times."""
    _require(b >= 1, "b must be >= 1")
    expected = {w: b for w in _all_words(sigma, k)}
    return _covering_report(word, k, expected, f"balanced({sigma},{k},b={b})")


def is_kautz_word(word, sigma: int, k: int) -> VerificationReport:
    """Every adjacent-distinct k-word appears exactly once (circularly)."""
    expected = {w: 1 for w in _kautz_words(sigma, k)}
    return _covering_report(word, k, expected, f"kautz({sigma},{k})")


def is_b_balanced_kautz(word, sigma: int, k: int, b: int) -> VerificationReport:
    _require(b >= 1, "b must be >= 1")
    expected = {w: b for w in _kautz_words(sigma, k)}
    return _covering_report(word, k, expected, f"kautz_balanced({sigma},{k},b={b})")


def is_fixed_weight_db(word, language: Iterable) -> VerificationReport:
    """Every word of the (materialized) language appears exactly once."""
    words = [as_entries(w) for w in language]
    _require(bool(words), "language is empty")
    k = len(words[0])
    _require(all(len(w) == k for w in words), "language mixes word lengths")
    expected = {w: 1 for w in words}
    _require(len(expected) == len(words), "language contains duplicates")
    return _covering_report(word, k, expected, f"language_db(k={k},|L|={len(words)})")


def is_self_orthogonal(word, k: int) -> VerificationReport:
    """No repeated (k+1)-window within the word itself."""
    counts = circular_window_counts(word, k + 1)
    for w, c in counts.items():
        if c > 1:
            witness = _first_window_violation(word, k + 1, {u: 1 for u in counts})
            return VerificationReport(
                f"self_orthogonal(k={k})", False, witness=witness, counts=dict(counts)
            )
    return VerificationReport(f"self_orthogonal(k={k})", True, counts=dict(counts))


def is_l_orthogonal(collection: Sequence, k: int, ell: int) -> VerificationReport:
    """Across the whole collection, every (k+1)-window appears <= ell times."""
    _require(ell >= 1, "ell must be >= 1")
    total: Counter = Counter()
    for word in collection:
        total.update(circular_window_counts(word, k + 1))
    bad = sorted(w for w, c in total.items() if c > ell)
    prop = f"l_orthogonal(k={k},ell={ell},n={len(collection)})"
    if bad:
        return VerificationReport(prop, False, witness=bad[0], counts=dict(total))
    return VerificationReport(prop, True, counts=dict(total))


# ----------------------------------------------------------------------
# circuit-level predicates (wiring route, independent of the window route)


def _check_same_graph(circuits: Sequence) -> None:
    _require(bool(circuits), "need at least one circuit")
    g0 = circuits[0].graph
    _require(
        all(c.graph is g0 or c.graph.signature == g0.signature for c in circuits),
        "circuits live on different graphs",
    )


def are_compatible(circuits: Sequence, ell: int = 1) -> VerificationReport:
    """Wirings pairwise edge-disjoint at every vertex (or, with ell > 1, no
    in/out pair used more than ell times across the collection)."""
    _check_same_graph(circuits)
    use: Counter = Counter()
    for c in circuits:
        arcs = c.graph.arcs
        seq = c.arc_seq
        n = len(seq)
        for i, aid in enumerate(seq):
            nxt = seq[(i + 1) % n]
            use[(arcs[aid].head, aid, nxt)] += 1
    bad = sorted((key, cnt) for key, cnt in use.items() if cnt > ell)
    prop = f"compatible(n={len(circuits)},ell={ell})"
    if bad:
        (vertex, a_in, a_out), cnt = bad[0]
        return VerificationReport(
            prop,
            False,
            witness=(circuits[0].graph.vertex_labels[vertex], a_in, a_out, cnt),
        )
    return VerificationReport(prop, True)


def are_arc_disjoint(walks: Sequence) -> VerificationReport:
    """No arc appears in two walks (or twice in one)."""
    _check_same_graph(walks)
    counts: Counter = Counter()
    for w in walks:
        counts.update(w.arc_seq)
    bad = sorted(a for a, c in counts.items() if c > 1)
    prop = f"arc_disjoint(n={len(walks)})"
    if bad:
        return VerificationReport(prop, False, witness=bad[0])
    return VerificationReport(prop, True)


def is_b_circuit(walk, graph, b: int) -> VerificationReport:
    """Closed walk using distinct arcs that visits every vertex exactly b
    times (counting departures)."""
    _require(b >= 1, "b must be >= 1")
    prop = f"b_circuit(b={b})"
    if walk.graph is not graph and walk.graph.signature != graph.signature:
        return VerificationReport(prop, False, witness="wrong graph")
    if len(set(walk.arc_seq)) != len(walk.arc_seq):
        dup = next(a for a, c in Counter(walk.arc_seq).items() if c > 1)
        return VerificationReport(prop, False, witness=("repeated arc", dup))
    visits = Counter(graph.arcs[a].tail for a in walk.arc_seq)
    for v in range(graph.num_vertices):
        if visits.get(v, 0) != b:
            return VerificationReport(
                prop,
                False,
                witness=(graph.vertex_labels[v], visits.get(v, 0)),
                counts={graph.vertex_labels[v]: c for v, c in visits.items()},
            )
    return VerificationReport(prop, True)


# ----------------------------------------------------------------------
# exhaustive enumeration (small instances only)


def enumerate_db_words(language: Iterable, max_results: int = 10_000) -> list[Word]:
    """All circular words containing each language word exactly once, up to
    rotation, in lexicographic order.  Backtracking over word successions."""
    words = sorted(set(as_entries(w) for w in language))
    _require(bool(words), "language is empty")
    k = len(words[0])
    _require(all(len(w) == k for w in words), "language mixes word lengths")
    by_prefix: dict = defaultdict(list)
    for w in words:
        by_prefix[w[:-1]].append(w)
    first = words[0]
    used = {w: False for w in words}
    used[first] = True
    seq = [first]
    results: list[Word] = []

    def dfs():
        if len(seq) == len(words):
            if seq[-1][1:] == first[:-1]:
                if len(results) >= max_results:
                    raise GuardExceeded(f"more than {max_results} sequences")
                results.append(Word(tuple(w[0] for w in seq), circular=True))
            return
        for w in by_prefix.get(seq[-1][1:], ()):
            if not used[w]:
                used[w] = True
                seq.append(w)
                dfs()
                seq.pop()
                used[w] = False

    dfs()
    canon = sorted({w.canonical().entries for w in results})
    return [Word(e, circular=True) for e in canon]


# ----------------------------------------------------------------------
# exact maximum collection size


def exact_max_orthogonal(
    sigma: int,
    k: int,
    ell: int = 1,
    max_vertices: int = 100_000,
    max_nodes: Optional[int] = 200_000_000,
) -> int:
    """Exact maximum size of an ell-orthogonal collection of (sigma,k)
    de Bruijn sequences (distinct up to rotation), by exhaustive search.

    Collections are explored in strictly increasing lexicographic order with a
    shared (k+1)-window capacity of ell.  The search stops as soon as a
    collection of size ell*(sigma-1) is found: every member must consume one
    of the ell*(sigma-1) available windows of the form (x,0,...,0) with x != 0
    (the window 0^k occurs exactly once per member, and its left extension
    cannot be 0), so no larger collection exists.  Full exhaustion is paid
    only when the maximum is strictly below that cutoff.
    """
    _require(sigma >= 2 and k >= 1 and ell >= 1, "bad parameters")
    n = sigma**k
    if n > max_vertices:
        raise GuardExceeded(f"sigma^k = {n} exceeds guard {max_vertices}")
    upper = ell * (sigma - 1)
    start = (0,) * k
    cap: dict = defaultdict(lambda: ell)
    nodes = 0
    best = 0

    def collection_dfs(depth: int, bound: Optional[tuple]) -> bool:
        """Extend the collection with cycles strictly above `bound`.
        Returns True once the cutoff is reached (propagates the early exit).
        """
        nonlocal best, nodes
        best = max(best, depth)
        if best >= upper:
            return True
        steps: list[int] = []
        visited = {start}

        def cycle_dfs(u, tight: bool) -> bool:
            nonlocal nodes
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise GuardExceeded(f"search exceeded {max_nodes} nodes")
            if len(steps) == n - 1:
                # closure is forced: u -> start needs u = (x,0,..,0), symbol 0
                closing = u + (0,)
                if u[1:] != start[:-1] or cap[closing] <= 0:
                    return False
                if tight:  # equal to the bound; need strictly greater
                    return False
                cap[closing] -= 1
                hit = collection_dfs(depth + 1, tuple(steps) + (0,))
                cap[closing] += 1
                return hit
            lo = bound[len(steps)] if tight else 0
            for c in range(lo, sigma):
                v = u[1:] + (c,)
                w = u + (c,)
                if v in visited or cap[w] <= 0:
                    continue
                visited.add(v)
                cap[w] -= 1
                steps.append(c)
                hit = cycle_dfs(v, tight and c == lo)
                steps.pop()
                cap[w] += 1
                visited.remove(v)
                if hit:
                    return True
            return False

        return cycle_dfs(start, bound is not None)

    collection_dfs(0, None)
    return best

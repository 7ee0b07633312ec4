"""Directed multigraphs whose arcs are words.

Every graph family here follows the same scheme: vertices are labelled by
(k-1)-words, each arc represents one k-word and runs from the word's prefix to
its suffix, and the arc's symbol is the word's last entry.  Arc ids are dense
0..|A|-1 and assigned in lexicographic order of the underlying words, so all
downstream searches are deterministic.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from collections import deque
from typing import Iterable, NamedTuple, Optional, Sequence

from .alphabet import Alphabet, LanguageSpec, Word, as_entries, expand_language
from .errors import ParameterOutOfRange


class Arc(NamedTuple):
    id: int
    tail: int
    head: int
    symbol: object  # int for word graphs, tuple of ints for tensor products


class DirectedMultigraph:
    """Immutable-by-convention directed multigraph with dense arc ids."""

    def __init__(
        self,
        vertex_labels: Sequence,
        arc_specs: Sequence[tuple],  # (tail_label, head_label, symbol)
        kind: str,
        sigma: Optional[int] = None,
        k: Optional[int] = None,
        base: Optional["DirectedMultigraph"] = None,
    ):
        self.vertex_labels: tuple = tuple(vertex_labels)
        if len(set(self.vertex_labels)) != len(self.vertex_labels):
            raise ParameterOutOfRange("duplicate vertex labels")
        self.vertex_index: dict = {lab: i for i, lab in enumerate(self.vertex_labels)}
        self.kind = kind
        self.sigma = sigma
        self.k = k
        self.base = base  # original graph for kind == "split"
        arcs = []
        for aid, (tail_lab, head_lab, symbol) in enumerate(arc_specs):
            arcs.append(
                Arc(aid, self.vertex_index[tail_lab], self.vertex_index[head_lab], symbol)
            )
        self.arcs: tuple[Arc, ...] = tuple(arcs)
        out_lists: list[list[int]] = [[] for _ in self.vertex_labels]
        in_lists: list[list[int]] = [[] for _ in self.vertex_labels]
        for a in self.arcs:
            out_lists[a.tail].append(a.id)
            in_lists[a.head].append(a.id)
        self.out_arcs: tuple[tuple[int, ...], ...] = tuple(tuple(l) for l in out_lists)
        self.in_arcs: tuple[tuple[int, ...], ...] = tuple(tuple(l) for l in in_lists)
        self._signature: Optional[str] = None

    # ------------------------------------------------------------------
    # basic accessors

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def out_degree(self, v: int) -> int:
        return len(self.out_arcs[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_arcs[v])

    def loops(self) -> list[int]:
        return [a.id for a in self.arcs if a.tail == a.head]

    def arc_word(self, arc_id: int) -> tuple[int, ...]:
        """The k-word an arc stands for (word graphs only)."""
        if self.kind == "split":
            return self.base.arc_word(arc_id)
        a = self.arcs[arc_id]
        tail_lab = self.vertex_labels[a.tail]
        return tuple(tail_lab) + (a.symbol,)

    def arc_id_of_word(self, entries: Sequence[int]) -> int:
        """Inverse of :meth:`arc_word`; built lazily."""
        cache = getattr(self, "_word_to_arc", None)
        if cache is None:
            cache = {self.arc_word(a.id): a.id for a in self.arcs}
            self._word_to_arc = cache
        return cache[tuple(entries)]

    @property
    def signature(self) -> str:
        """Stable content hash used when serializing circuits."""
        if self._signature is None:
            payload = json.dumps(
                {
                    "kind": self.kind,
                    "vertices": [repr(lab) for lab in self.vertex_labels],
                    "arcs": [(a.tail, a.head, repr(a.symbol)) for a in self.arcs],
                },
                separators=(",", ":"),
            )
            self._signature = hashlib.sha256(payload.encode()).hexdigest()[:16]
        return self._signature

    def __repr__(self) -> str:
        return (
            f"<DirectedMultigraph {self.kind} |V|={self.num_vertices} "
            f"|A|={self.num_arcs}>"
        )

    # ------------------------------------------------------------------
    # connectivity

    def is_strongly_connected_on_support(self) -> bool:
        """Strong connectivity restricted to vertices that carry arcs."""
        support = [v for v in range(self.num_vertices) if self.out_arcs[v] or self.in_arcs[v]]
        if not support:
            return True
        start = support[0]
        for arcs_of in (self.out_arcs, self.in_arcs):
            seen = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for aid in arcs_of[v]:
                    a = self.arcs[aid]
                    w = a.head if arcs_of is self.out_arcs else a.tail
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            if not all(v in seen for v in support):
                return False
        return True

    # ------------------------------------------------------------------
    # export

    def render_vertex(self, v: int, alphabet: Optional[Alphabet] = None) -> str:
        lab = self.vertex_labels[v]
        if alphabet is not None and isinstance(lab, tuple) and all(
            isinstance(x, int) for x in lab
        ):
            return alphabet.render(lab)
        return str(lab)

    def to_dot(self, alphabet: Optional[Alphabet] = None, name: str = "G") -> str:
        lines = [f"digraph \"{name}\" {{"]
        for v in range(self.num_vertices):
            lines.append(f"  v{v} [label=\"{self.render_vertex(v, alphabet)}\"];")
        for a in self.arcs:
            sym = a.symbol
            if alphabet is not None and isinstance(sym, int):
                sym = alphabet.render((sym,))
            lines.append(f"  v{a.tail} -> v{a.head} [label=\"{sym}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self, alphabet: Optional[Alphabet] = None) -> dict:
        return {
            "kind": self.kind,
            "sigma": self.sigma,
            "k": self.k,
            "signature": self.signature,
            "vertices": [
                {"id": v, "label": self.render_vertex(v, alphabet)}
                for v in range(self.num_vertices)
            ],
            "arcs": [
                {
                    "id": a.id,
                    "tail": a.tail,
                    "head": a.head,
                    "symbol": a.symbol if isinstance(a.symbol, int) else list(a.symbol),
                }
                for a in self.arcs
            ],
        }


# ----------------------------------------------------------------------
# builders


def build_restricted_graph(language: Iterable, kind: str = "restricted",
                           sigma: Optional[int] = None) -> DirectedMultigraph:
    """Graph of a fixed-length language: one arc per word, prefix -> suffix."""
    words = sorted(as_entries(w) for w in language)
    if not words:
        raise ParameterOutOfRange("language is empty")
    k = len(words[0])
    if any(len(w) != k for w in words):
        raise ParameterOutOfRange("language mixes word lengths")
    if len(set(words)) != len(words):
        raise ParameterOutOfRange("language contains duplicate words")
    labels = sorted({w[:-1] for w in words} | {w[1:] for w in words})
    arc_specs = [(w[:-1], w[1:], w[-1]) for w in words]
    return DirectedMultigraph(labels, arc_specs, kind=kind, sigma=sigma, k=k)


def build_de_bruijn_graph(sigma: int, k: int) -> DirectedMultigraph:
    """All k-words over sigma symbols; sigma^(k-1) vertices, sigma^k arcs."""
    if sigma < 2:
        raise ParameterOutOfRange(f"need sigma >= 2, got {sigma}")
    if k < 1:
        raise ParameterOutOfRange(f"need k >= 1, got {k}")
    words = itertools.product(range(sigma), repeat=k)
    return build_restricted_graph(words, kind="de_bruijn", sigma=sigma)


def build_kautz_graph(sigma: int, k: int) -> DirectedMultigraph:
    """k-words with no two adjacent equal symbols; needs sigma >= 3, k >= 2."""
    if sigma < 3:
        raise ParameterOutOfRange(f"Kautz graphs need sigma >= 3, got {sigma}")
    if k < 2:
        raise ParameterOutOfRange(f"Kautz graphs need k >= 2, got {k}")
    words = [
        w
        for w in itertools.product(range(sigma), repeat=k)
        if all(w[i] != w[i + 1] for i in range(k - 1))
    ]
    return build_restricted_graph(words, kind="kautz", sigma=sigma)


def build_language_graph(spec: LanguageSpec, alphabet: Alphabet) -> DirectedMultigraph:
    """Restricted graph of an expanded language spec."""
    return build_restricted_graph(
        expand_language(spec, alphabet), kind="restricted", sigma=alphabet.sigma
    )


# ----------------------------------------------------------------------
# tensor product and the digit isomorphism


def tensor_product(g1: DirectedMultigraph, g2: DirectedMultigraph) -> DirectedMultigraph:
    """Arc-pair product: vertices V1 x V2, one arc per pair of arcs."""
    labels = [
        (l1, l2) for l1 in g1.vertex_labels for l2 in g2.vertex_labels
    ]
    arc_specs = []
    for a1 in g1.arcs:
        for a2 in g2.arcs:
            tail = (g1.vertex_labels[a1.tail], g2.vertex_labels[a2.tail])
            head = (g1.vertex_labels[a1.head], g2.vertex_labels[a2.head])
            arc_specs.append((tail, head, (a1.symbol, a2.symbol)))
    g = DirectedMultigraph(labels, arc_specs, kind="product")
    g.factors = (g1, g2)
    # dense pair -> product arc id lookup, in construction order
    g.pair_to_arc = {
        (a1.id, a2.id): a1.id * g2.num_arcs + a2.id for a1 in g1.arcs for a2 in g2.arcs
    }
    return g


def digit_split(entries: Sequence[int], sigma2: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split each symbol s into (s div sigma2, s mod sigma2)."""
    entries = tuple(entries)
    return tuple(s // sigma2 for s in entries), tuple(s % sigma2 for s in entries)


def digit_join(high: Sequence[int], low: Sequence[int], sigma2: int) -> tuple[int, ...]:
    if len(high) != len(low):
        raise ParameterOutOfRange("digit streams must have equal length")
    return tuple(q * sigma2 + r for q, r in zip(high, low))


class DigitIsomorphism:
    """Entrywise base-(sigma1,sigma2) digit bijection.

    Maps vertices and arcs of the order-k graph over sigma1*sigma2 symbols onto
    the tensor product of the order-k graphs over sigma1 and sigma2 symbols.
    """

    def __init__(self, sigma1: int, sigma2: int, k: int):
        if sigma1 < 2 or sigma2 < 2:
            raise ParameterOutOfRange("factor alphabets need at least 2 symbols")
        if k < 1:
            raise ParameterOutOfRange("need k >= 1")
        self.sigma1, self.sigma2, self.k = sigma1, sigma2, k

    def split_word(self, entries: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        for s in entries:
            if not 0 <= s < self.sigma1 * self.sigma2:
                raise ParameterOutOfRange(f"symbol {s} out of range")
        return digit_split(entries, self.sigma2)

    def join_word(self, high: Sequence[int], low: Sequence[int]) -> tuple[int, ...]:
        return digit_join(high, low, self.sigma2)

    def check(self) -> bool:
        """Exhaustively confirm arcs map to arcs in both directions."""
        big = build_de_bruijn_graph(self.sigma1 * self.sigma2, self.k)
        prod = tensor_product(
            build_de_bruijn_graph(self.sigma1, self.k),
            build_de_bruijn_graph(self.sigma2, self.k),
        )
        g1, g2 = prod.factors
        seen = set()
        for a in big.arcs:
            hi, lo = self.split_word(big.arc_word(a.id))
            pid = prod.pair_to_arc[(g1.arc_id_of_word(hi), g2.arc_id_of_word(lo))]
            if pid in seen:
                return False
            seen.add(pid)
            pa = prod.arcs[pid]
            tail_hi, tail_lo = prod.vertex_labels[pa.tail]
            if self.join_word(tail_hi, tail_lo) != tuple(big.arc_word(a.id))[:-1]:
                return False
        return len(seen) == prod.num_arcs == big.num_arcs


def de_bruijn_digit_isomorphism(sigma1: int, sigma2: int, k: int) -> DigitIsomorphism:
    return DigitIsomorphism(sigma1, sigma2, k)

"""Eulerian circuit machinery tests.

Covers the deterministic circuit finder, the word/circuit correspondence,
wirings and transition systems, rewiring (plain and with forbidden wirings),
vertex splitting with merge, and the Hamiltonian lift between consecutive
graph orders.  Expected words are frozen outputs of the deterministic
algorithms, cross-checked by the oracles.
"""

from __future__ import annotations

import pytest

from orthoseq.alphabet import dna_alphabet
from orthoseq.circuits import (
    Circuit,
    TransitionSystem,
    Wiring,
    circuit_from_transition_system,
    circuit_to_word,
    eulerian_from_hamiltonian,
    find_eulerian_circuit,
    hamiltonian_from_eulerian,
    merge_circuit,
    rewire,
    rewire_given,
    rewire_vertex_set,
    split_vertices,
    transition_system_of,
    word_to_circuit,
    wiring_of,
)
from orthoseq.errors import (
    DegreeMismatch,
    InsufficientDegree,
    MultipleCycles,
    NotConnected,
    ParameterOutOfRange,
    TooManyForbidden,
)
from orthoseq.graphs import build_de_bruijn_graph, build_kautz_graph, build_restricted_graph
from orthoseq.verify import are_compatible, is_de_bruijn, is_l_orthogonal

DNA = dna_alphabet()


def digits(text: str) -> tuple[int, ...]:
    return tuple(int(ch) for ch in text)


def word_of(circuit: Circuit) -> tuple[int, ...]:
    return circuit_to_word(circuit).entries


# ----------------------------------------------------------------------
# the deterministic circuit finder


def test_eulerian_circuit_is_deterministic():
    g = build_de_bruijn_graph(3, 2)
    first = find_eulerian_circuit(g)
    second = find_eulerian_circuit(g)
    assert first.arc_seq == second.arc_seq
    assert word_of(first) == digits("010211220")


@pytest.mark.parametrize("sigma,k", [(2, 3), (3, 2), (4, 2), (3, 3)])
def test_eulerian_circuit_yields_de_bruijn_word(sigma, k):
    circuit = find_eulerian_circuit(build_de_bruijn_graph(sigma, k))
    assert len(circuit) == sigma**k
    assert is_de_bruijn(word_of(circuit), sigma=sigma, k=k).holds


def test_unbalanced_graph_reports_first_offender():
    from orthoseq.alphabet import LanguageSpec, expand_language

    language = expand_language(
        LanguageSpec("kautz", 3, min_weight=1, max_weight=1), DNA
    )
    g = build_restricted_graph(language)
    with pytest.raises(DegreeMismatch) as info:
        find_eulerian_circuit(g)
    assert info.value.vertex_label == DNA.parse("AC")
    assert (info.value.in_degree, info.value.out_degree) == (1, 2)


def test_disconnected_balanced_graph_is_rejected():
    # two isolated loops: balanced everywhere, but no single circuit
    g = build_restricted_graph([(0, 0), (1, 1)], sigma=2)
    with pytest.raises(NotConnected):
        find_eulerian_circuit(g)


# ----------------------------------------------------------------------
# words <-> circuits


def test_word_circuit_round_trip_preserves_phase():
    g = build_de_bruijn_graph(3, 2)
    word = digits("012002211")
    circuit = word_to_circuit(word, g)
    assert word_of(circuit) == word
    assert len(circuit) == g.num_arcs


def test_word_to_circuit_rejects_foreign_window():
    with pytest.raises(ParameterOutOfRange):
        word_to_circuit((0, 0, 1), build_kautz_graph(3, 2))


def test_circuit_canonical_ignores_rotation():
    g = build_de_bruijn_graph(3, 2)
    a = word_to_circuit(digits("012002211"), g)
    b = word_to_circuit(digits("002211012"), g)
    assert a.arc_seq != b.arc_seq
    assert a.canonical() == b.canonical()


# ----------------------------------------------------------------------
# wirings and transition systems


def test_wiring_pairs_of_known_circuit():
    g = build_de_bruijn_graph(3, 2)
    circuit = word_to_circuit(digits("012002211"), g)
    wiring = wiring_of(g.vertex_index[(0,)], circuit)

    def arc(text: str) -> int:
        return g.arc_id_of_word(digits(text))

    assert wiring.pairs == frozenset(
        {(arc("10"), arc("01")), (arc("20"), arc("00")), (arc("00"), arc("02"))}
    )
    assert wiring.out_for(arc("20")) == arc("00")


def test_transition_system_round_trip():
    g = build_de_bruijn_graph(3, 2)
    circuit = find_eulerian_circuit(g)
    rebuilt = circuit_from_transition_system(transition_system_of(circuit))
    assert rebuilt.canonical() == circuit.canonical()


def test_transition_system_with_two_orbits_is_rejected():
    g = build_de_bruijn_graph(2, 2)

    def arc(text: str) -> int:
        return g.arc_id_of_word(digits(text))

    # 00 closes on itself, the other three arcs form a second cycle
    wirings = (
        Wiring(g.vertex_index[(0,)], frozenset({(arc("00"), arc("00")), (arc("10"), arc("01"))})),
        Wiring(g.vertex_index[(1,)], frozenset({(arc("01"), arc("11")), (arc("11"), arc("10"))})),
    )
    with pytest.raises(MultipleCycles) as info:
        circuit_from_transition_system(TransitionSystem(g, wirings))
    assert info.value.count == 2


# ----------------------------------------------------------------------
# rewiring


def assert_rewired_at(vertex: int, before: Circuit, after: Circuit):
    # the rewired circuit must change every pair at `vertex` and nothing else
    assert wiring_of(vertex, after).pairs.isdisjoint(wiring_of(vertex, before).pairs)
    for u in range(before.graph.num_vertices):
        if u != vertex:
            assert wiring_of(u, after) == wiring_of(u, before)


def test_rewire_changes_only_the_chosen_vertex():
    g = build_de_bruijn_graph(3, 2)
    circuit = find_eulerian_circuit(g)
    for v in range(g.num_vertices):
        rewired = rewire(v, circuit)
        assert_rewired_at(v, circuit, rewired)
        assert is_de_bruijn(word_of(rewired), sigma=3, k=2).holds


def test_rewire_needs_degree_three():
    circuit = find_eulerian_circuit(build_de_bruijn_graph(2, 2))
    with pytest.raises(InsufficientDegree):
        rewire(0, circuit)


def test_rewire_given_respects_forbidden_budget():
    circuit = find_eulerian_circuit(build_de_bruijn_graph(3, 2))
    # degree 3 supports no forbidden circuit at all: t <= deg//2 - 1 = 0
    with pytest.raises(TooManyForbidden):
        rewire_given(0, circuit, [circuit])


def test_rewire_given_avoids_the_forbidden_wiring():
    g = build_de_bruijn_graph(4, 2)
    base = find_eulerian_circuit(g)
    out = rewire_given(0, base, [base])
    assert wiring_of(0, out).pairs.isdisjoint(wiring_of(0, base).pairs)
    assert is_de_bruijn(word_of(out), sigma=4, k=2).holds


def test_rewire_vertex_set_builds_a_compatible_circuit():
    g = build_de_bruijn_graph(4, 2)
    base = find_eulerian_circuit(g)
    other = rewire_vertex_set(range(g.num_vertices), base, [base])
    assert are_compatible([base, other]).holds
    # dual route: compatibility is exactly 1-orthogonality of the words
    assert is_l_orthogonal([word_of(base), word_of(other)], k=2, ell=1).holds


# ----------------------------------------------------------------------
# splitting and merging


def test_full_split_pins_the_whole_circuit():
    g = build_de_bruijn_graph(3, 2)
    circuit = find_eulerian_circuit(g)
    wirings = {v: wiring_of(v, circuit) for v in range(g.num_vertices)}
    split = split_vertices(g, wirings)
    assert split.num_arcs == g.num_arcs
    assert all(split.out_degree(v) == 1 for v in range(split.num_vertices))
    merged = merge_circuit(find_eulerian_circuit(split), g)
    assert merged.canonical() == circuit.canonical()


def test_partial_split_forces_one_wiring():
    g = build_de_bruijn_graph(3, 2)
    circuit = find_eulerian_circuit(g)
    target = wiring_of(0, circuit)
    split = split_vertices(g, {0: target})
    merged = merge_circuit(find_eulerian_circuit(split), g)
    assert wiring_of(0, merged) == target
    assert is_de_bruijn(word_of(merged), sigma=3, k=2).holds


def test_split_rejects_non_matching():
    g = build_de_bruijn_graph(3, 2)
    bad = Wiring(0, frozenset({(g.in_arcs[0][0], g.out_arcs[0][0])}))
    with pytest.raises(ParameterOutOfRange):
        split_vertices(g, {0: bad})


# ----------------------------------------------------------------------
# Hamiltonian lift


def test_hamiltonian_lift_round_trip():
    g2 = build_de_bruijn_graph(3, 2)
    g3 = build_de_bruijn_graph(3, 3)
    euler = find_eulerian_circuit(g2)
    ham = hamiltonian_from_eulerian(euler, g3)
    seen = ham.vertex_seq()
    assert len(seen) == len(set(seen)) == g3.num_vertices
    back = eulerian_from_hamiltonian(ham, g2)
    assert back.canonical() == euler.canonical()


def test_kautz_word_lifts_to_known_vertex_cycle():
    g2 = build_kautz_graph(4, 2)
    g3 = build_kautz_graph(4, 3)
    circuit = word_to_circuit(DNA.parse("ATCGAGCTGTAC"), g2)
    ham = hamiltonian_from_eulerian(circuit, g3)
    labels = [DNA.render(g3.vertex_labels[v]) for v in ham.vertex_seq()]
    # the claim is the cyclic visiting order, not the starting phase
    start = labels.index("AT")
    assert labels[start:] + labels[:start] == [
        "AT", "TC", "CG", "GA", "AG", "GC", "CT", "TG", "GT", "TA", "AC", "CA",
    ]

import itertools
import json
import random

import pytest

from stablekneser.graphs import (CircularSet, DihedralElement, Graph,
                                 automorphism_group_order, chromatic_number,
                                 complete_graph, cycle_graph, dihedral_act,
                                 enumerate_stable_sets, exponential,
                                 free_action_check, generate_subgroup,
                                 graph_from_edges, graph_to_dimacs,
                                 graph_to_json_dict, homomorphisms,
                                 is_valid_colouring, k2, kneser_graph,
                                 one_vertex_looped, product,
                                 stable_kneser_graph, stable_set_count,
                                 vertex_criticality_check, vertex_permutation)
from oracles import brute_force_automorphisms, brute_force_chromatic


def is_cycle(g):
    if g.n < 3 or any(g.degree(v) != 2 for v in range(g.n)):
        return False
    seen = {0}
    v, prev = g.neighbours(0)[0], 0
    while v != 0:
        seen.add(v)
        nxt = [w for w in g.neighbours(v) if w != prev]
        prev, v = v, nxt[0]
    return len(seen) == g.n


def test_stable_sets_small():
    assert [s.members() for s in enumerate_stable_sets(1, 5)] == \
        [(0,), (1,), (2,), (3,), (4,)]
    assert [s.members() for s in enumerate_stable_sets(2, 4)] == [(0, 2), (1, 3)]
    nine = enumerate_stable_sets(2, 6)
    assert len(nine) == 9 == stable_set_count(2, 6)
    assert all(s.is_stable() for s in nine)


def test_stable_sets_against_exhaustive():
    for n, m in [(1, 3), (2, 5), (2, 6), (2, 7), (3, 7), (3, 8), (4, 9)]:
        naive = set()
        for comb in itertools.combinations(range(m), n):
            cs = CircularSet.from_members(m, comb)
            if cs.is_stable():
                naive.add(comb)
        got = {s.members() for s in enumerate_stable_sets(n, m)}
        assert got == naive
        assert len(got) == stable_set_count(n, m)


def test_stable_sets_edge_cases():
    assert enumerate_stable_sets(3, 5) == []
    assert [s.members() for s in enumerate_stable_sets(2, 4)] == [(0, 2), (1, 3)]
    with pytest.raises(ValueError):
        enumerate_stable_sets(0, 4)


def test_stable_kneser_graph_families():
    # SG_{1,k} is complete on k+2 vertices
    for k in range(4):
        g = stable_kneser_graph(1, k)
        assert g.n == k + 2
        assert all(g.has_edge(i, j) for i in range(g.n) for j in range(g.n) if i != j)
    # SG_{n,1} is a (2n+1)-cycle
    for n in (2, 3, 4):
        assert is_cycle(stable_kneser_graph(n, 1))
    assert stable_kneser_graph(2, 2).n == 9
    # SG_{n,0} is a single edge on the two parity classes
    g = stable_kneser_graph(3, 0)
    assert g.n == 2 and g.edges() == [(0, 1)]
    with pytest.raises(ValueError):
        stable_kneser_graph(0, 1)


def test_kneser_graph_families():
    assert kneser_graph(1, 1).n == 3
    assert all(kneser_graph(1, 1).has_edge(i, j) for i in range(3) for j in range(3) if i != j)
    petersen = kneser_graph(2, 1)
    assert petersen.n == 10
    assert len(petersen.edges()) == 15
    assert all(petersen.degree(v) == 3 for v in range(10))
    three_edges = kneser_graph(2, 0)
    assert three_edges.n == 6
    assert len(three_edges.edges()) == 3
    assert all(three_edges.degree(v) == 1 for v in range(6))


def test_product():
    p = product(k2(), k2())
    assert p.n == 4
    assert len(p.edges(include_loops=False)) == 2
    assert all(p.degree(v) == 1 for v in range(4))


def test_exponential():
    e = exponential(k2(), complete_graph(3))
    assert len(e.looped_vertices()) == 6 == len(homomorphisms(k2(), complete_graph(3)))
    term = exponential(complete_graph(3), one_vertex_looped())
    assert term.n == 1 and term.has_loop(0)
    with pytest.raises(ValueError):
        exponential(complete_graph(5), complete_graph(20), max_vertices=1000)


def test_hom_count_matches_looped_vertices():
    cases = [(k2(), complete_graph(3)), (k2(), cycle_graph(5)),
             (cycle_graph(3), complete_graph(4)), (k2(), kneser_graph(2, 0))]
    for g, h in cases:
        assert len(homomorphisms(g, h)) == len(exponential(g, h).looped_vertices())


def test_chromatic_number_basics():
    assert chromatic_number(complete_graph(5)) == 5
    assert chromatic_number(cycle_graph(5)) == 3
    chi, witness = chromatic_number(stable_kneser_graph(2, 2), return_colouring=True)
    assert chi == 4
    assert is_valid_colouring(stable_kneser_graph(2, 2), witness)
    with pytest.raises(ValueError):
        chromatic_number(one_vertex_looped())


def test_chromatic_number_against_brute_force():
    rng = random.Random(7)
    for trial in range(20):
        n = rng.randint(1, 7)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        g = graph_from_edges(n, edges)
        assert chromatic_number(g) == brute_force_chromatic(g.adjacency)


def test_chromatic_stable_kneser_is_k_plus_2():
    # includes the 25/36/30/27-vertex instances; all are sub-second
    for n, k in [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (2, 2), (2, 0),
                 (4, 2), (5, 2), (3, 3), (2, 5)]:
        assert chromatic_number(stable_kneser_graph(n, k)) == k + 2


def test_vertex_criticality():
    assert vertex_criticality_check(stable_kneser_graph(2, 2))
    assert vertex_criticality_check(cycle_graph(5))
    pendant = graph_from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    assert chromatic_number(pendant) == 3
    assert not vertex_criticality_check(pendant)
    with pytest.raises(ValueError):
        vertex_criticality_check(Graph(()))


def test_dihedral_act_examples():
    s = CircularSet.from_members(5, [0, 2])
    assert dihedral_act(s, DihedralElement.sigma(5)).members() == (1, 3)
    assert dihedral_act(s, DihedralElement.rho(5)).members() == (0, 3)
    with pytest.raises(ValueError):
        dihedral_act(s, DihedralElement.sigma(6))


def test_dihedral_right_action_and_relation():
    rng = random.Random(3)
    for m in (5, 6, 8):
        elems = [DihedralElement(m, a, f) for a in range(m) for f in (False, True)]
        sets = [CircularSet.from_members(m, c)
                for c in itertools.combinations(range(m), 2)]
        for _ in range(50):
            s = rng.choice(sets)
            g, h = rng.choice(elems), rng.choice(elems)
            assert dihedral_act(s, g * h) == dihedral_act(dihedral_act(s, g), h)
        sigma, rho = DihedralElement.sigma(m), DihedralElement.rho(m)
        for s in sets:
            lhs = dihedral_act(dihedral_act(s, sigma), rho)
            rhs = dihedral_act(dihedral_act(s, rho), sigma.inverse())
            assert lhs == rhs


def test_dihedral_action_preserves_stable_kneser_adjacency():
    g = stable_kneser_graph(2, 2)
    for elem in generate_subgroup([DihedralElement.sigma(6), DihedralElement.rho(6)]):
        perm = vertex_permutation(g, elem)  # raises if not an automorphism
        assert sorted(perm) == list(range(g.n))


def test_free_action_check_rho_on_sg21():
    g = stable_kneser_graph(2, 1)
    result = free_action_check(g, [DihedralElement.rho(5)])
    assert set(result) == {(0, True)}
    witness = result[(0, True)]
    assert witness is not None
    v, k = witness
    perm = vertex_permutation(g, DihedralElement.rho(5))
    assert g.has_edge(v, perm[v])


def test_free_action_check_half_turn_on_sg2s4():
    # the half-turn witness set {2j} u {2j+2s+3} and full freeness of <sigma>
    for s in (1, 2):
        n = 2 * s
        m = 4 * (s + 1)
        g = stable_kneser_graph(n, 4)
        members = [2 * j for j in range(s)] + [2 * j + 2 * s + 3 for j in range(s)]
        vertex = CircularSet.from_members(m, members)
        assert vertex.is_stable()
        half = DihedralElement.sigma(m, m // 2)
        image = dihedral_act(vertex, half)
        idx = g.label_index()
        assert g.has_edge(idx[(m, vertex.mask)], idx[(m, image.mask)])
        result = free_action_check(g, [DihedralElement.sigma(m)])
        assert all(w is not None for w in result.values())


def test_free_action_check_identity_excluded():
    g = stable_kneser_graph(2, 1)
    sigma = DihedralElement.sigma(5)
    result = free_action_check(g, [sigma * sigma.inverse()])
    assert result == {}


def test_free_action_check_reports_not_free():
    # C_4 with rotation labels: the half turn sends every vertex to its
    # antipode, which is never adjacent, and its square is the identity
    labels = [CircularSet.from_members(4, [j]) for j in range(4)]
    square = graph_from_edges(4, [(i, (i + 1) % 4) for i in range(4)], labels)
    result = free_action_check(square, [DihedralElement.sigma(4, 2)])
    assert result == {(2, False): None}


def test_automorphism_group_orders():
    assert automorphism_group_order(cycle_graph(5)) == 10
    assert automorphism_group_order(complete_graph(4)) == 24
    assert automorphism_group_order(stable_kneser_graph(2, 2)) == 12
    with pytest.raises(ValueError):
        automorphism_group_order(kneser_graph(2, 3))  # 35 > 16 vertices


def test_automorphisms_against_brute_force():
    rng = random.Random(11)
    for trial in range(10):
        n = rng.randint(1, 6)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        g = graph_from_edges(n, edges)
        assert automorphism_group_order(g) == brute_force_automorphisms(g.adjacency)


def test_subgroup_generation():
    full = generate_subgroup([DihedralElement.sigma(6), DihedralElement.rho(6)])
    assert len(full) == 12
    rotations = generate_subgroup([DihedralElement.sigma(6)])
    assert len(rotations) == 6
    assert len(generate_subgroup([DihedralElement.sigma(6, 3)])) == 2


def test_json_and_dimacs_export():
    g = stable_kneser_graph(2, 1)
    doc = graph_to_json_dict(g)
    assert doc["m"] == 5 and doc["n"] == 2 and doc["k"] == 1
    assert sorted(map(tuple, doc["vertices"])) == \
        sorted(s.members() for s in enumerate_stable_sets(2, 5))
    assert len(doc["edges"]) == 5
    json.dumps(doc)  # serializable
    dimacs = graph_to_dimacs(g)
    lines = dimacs.strip().split("\n")
    assert lines[0] == "p edge 5 5"
    assert len(lines) == 6 and all(l.startswith("e ") for l in lines[1:])


def test_labels_must_be_injective():
    lab = CircularSet.from_members(4, [0])
    with pytest.raises(ValueError):
        Graph((0, 0), (lab, lab))


def test_vertex_permutation_rejects_broken_action():
    # path labelled so that sigma maps a vertex label off the vertex set
    labels = [CircularSet.from_members(4, [j]) for j in (0, 1)]
    g = graph_from_edges(2, [(0, 1)], labels)
    with pytest.raises(ValueError):
        vertex_permutation(g, DihedralElement.sigma(4))
    # full label set, but adjacency is not preserved by rho
    labels = [CircularSet.from_members(3, [j]) for j in (0, 1, 2)]
    path = graph_from_edges(3, [(0, 1), (1, 2)], labels)
    with pytest.raises(ValueError):
        vertex_permutation(path, DihedralElement.rho(3))

import random
from itertools import product

import pytest

from diversekit import (DynamicCore, Graph, RootedTreeDecomposition, evaluate,
                        extract_witness, normalize, pd_from_vertex_cover,
                        solution_from_witness)
from diversekit.core_engine import check_witness
from diversekit.cores import vc_core


def single_node_dec():
    return RootedTreeDecomposition((-1,), (frozenset(),))


def static_core(accept, process_map):
    return DynamicCore(accept, lambda t, _tables: process_map.get(t, []))


def test_empty_accept_is_always_no():
    dec = single_node_dec()
    core = static_core([], {0: [("w0",)]})
    assert evaluate(core, dec).decision is False


def test_single_node_yes_and_witness():
    dec = single_node_dec()
    core = static_core(["w0"], {0: [("w0",)]})
    result = evaluate(core, dec)
    assert result.decision is True
    witness = extract_witness(dec, result.tables, result.backpointers, core.accept)
    assert witness == {0: "w0"}
    assert check_witness(core, dec, witness)


def test_arity_mismatch_raises():
    dec = single_node_dec()
    core = static_core(["w0"], {0: [("w0", "w1")]})
    with pytest.raises(ValueError, match="arity"):
        evaluate(core, dec)


def test_vc_core_triangle_k1_is_no():
    g = Graph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    dec = normalize(g, pd_from_vertex_cover(g, {0, 1}))
    core, _ = vc_core(g, dec, 1)
    assert evaluate(core, dec).decision is False


def test_extract_witness_none_on_no():
    dec = single_node_dec()
    core = static_core(["other"], {0: [("w0",)]})
    result = evaluate(core, dec)
    assert result.decision is False
    assert extract_witness(dec, result.tables, result.backpointers,
                           core.accept) is None


def _random_core_and_dec(rng, max_nodes, n_states):
    size = rng.randint(1, max_nodes)
    parent = [-1]
    for t in range(1, size):
        parent.append(rng.randrange(t))
    dec = RootedTreeDecomposition(tuple(parent),
                                  tuple(frozenset() for _ in range(size)))
    states = [f"s{i}" for i in range(n_states)]
    process_map = {}
    for t in range(size):
        arity = dec.delta(t) + 1
        universe = list(product(states, repeat=arity))
        rng.shuffle(universe)
        process_map[t] = sorted(universe[:rng.randint(0, min(10, len(universe)))])
    accept = set(rng.sample(states, rng.randint(0, n_states)))
    return static_core(accept, process_map), dec, states, process_map, accept


def _witness_exists_brute_force(dec, states, process_map, accept):
    for assignment in product(states, repeat=dec.size):
        if assignment[dec.root] not in accept:
            continue
        ok = True
        for t in range(dec.size):
            tup = tuple([assignment[t]] + [assignment[c] for c in dec.children[t]])
            if tup not in process_map[t]:
                ok = False
                break
        if ok:
            return True
    return False


def test_evaluator_soundness_and_completeness_random():
    rng = random.Random(12)
    for _ in range(40):
        core, dec, states, process_map, accept = _random_core_and_dec(rng, 5, 4)
        result = evaluate(core, dec)
        assert result.decision == _witness_exists_brute_force(
            dec, states, process_map, accept)
        if result.decision:
            witness = extract_witness(dec, result.tables, result.backpointers,
                                      core.accept)
            assert check_witness(core, dec, witness)


def test_evaluator_larger_exhaustive_case():
    rng = random.Random(13)
    core, dec, states, process_map, accept = _random_core_and_dec(rng, 8, 6)
    result = evaluate(core, dec)
    assert result.decision == _witness_exists_brute_force(
        dec, states, process_map, accept)


def test_each_tuple_inspected_once():
    rng = random.Random(14)
    for _ in range(20):
        core, dec, *_ = _random_core_and_dec(rng, 6, 4)
        result = evaluate(core, dec)
        pulled = sum(s.tuples for s in result.stats)
        assert result.tuple_checks == pulled


def test_threaded_evaluation_matches_sequential():
    rng = random.Random(15)
    for _ in range(10):
        core, dec, *_ = _random_core_and_dec(rng, 7, 4)
        seq = evaluate(core, dec, threads=1)
        par = evaluate(core, dec, threads=3)
        assert seq.decision == par.decision
        assert seq.tables == par.tables


def test_solution_from_witness_zero_membership():
    g = Graph(2, frozenset({(0, 1)}))
    dec = normalize(g, pd_from_vertex_cover(g, {0}))
    witness = {t: "w" for t in range(dec.size)}
    assert solution_from_witness(lambda v, s: 0, dec, witness) == frozenset()


def test_solution_from_witness_vc_single_edge():
    g = Graph(2, frozenset({(0, 1)}))
    dec = normalize(g, pd_from_vertex_cover(g, {0}))
    core, membership = vc_core(g, dec, 1)
    result = evaluate(core, dec)
    assert result.decision
    witness = extract_witness(dec, result.tables, result.backpointers, core.accept)
    cover = solution_from_witness(membership, dec, witness)
    assert cover in (frozenset({0}), frozenset({1}))


def test_solution_from_witness_rejects_inconsistency():
    g = Graph(2, frozenset({(0, 1)}))
    dec = normalize(g, pd_from_vertex_cover(g, {0}))
    witness = {t: t for t in range(dec.size)}
    nodes_with_0 = [t for t in range(dec.size) if 0 in dec.bags[t]]
    flip = nodes_with_0[0]

    def membership(v, state):
        return int(v == 0 and state == flip)

    if len(nodes_with_0) > 1:
        with pytest.raises(ValueError, match="inconsistency"):
            solution_from_witness(membership, dec, witness)

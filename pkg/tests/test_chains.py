from random import Random

import pytest

from hyperramsey.core import (
    BLUE,
    RED,
    TwoColoring,
    colex_subsets,
    complete_hypergraph,
)
from hyperramsey.chains import (
    CLOSED,
    OPEN,
    CliqueChain,
    assemble_chains,
    build_path_system,
    chain_from_sequence,
    clique_partition,
    cut_open,
    double_tree_walk,
    spanning_path,
    validate_chain,
)
from hyperramsey.search import (
    validate_mono_cycle,
    validate_mono_path,
)


def random_valid_chain(rng: Random, k: int = 3) -> tuple[CliqueChain, TwoColoring]:
    """A structurally valid chain with random element sizes, hosted in a
    colouring that makes exactly the needed k-sets red."""
    ell = rng.choice([1, 2])
    kind = rng.choice([OPEN, CLOSED])
    d = rng.randint(2, 4) if kind == CLOSED else rng.randint(1, 4)
    lengths = []
    for _ in range(d):
        base = rng.randint(0, 2)
        lengths.append(k + base * (k - ell))
    if kind == OPEN:
        p = sum(lengths) - (d - 1) * ell
    else:
        p = sum(lengths) - d * ell
        # too-small cycles wrap onto themselves, and no interval may be
        # longer than the whole cycle
        while p <= k or max(lengths) > p:
            shortest = min(range(d), key=lambda i: lengths[i])
            lengths[shortest] += k - ell
            p = sum(lengths) - d * ell
    n = p + rng.randint(0, 3)
    vertices = list(range(n))
    rng.shuffle(vertices)
    vertices = vertices[:p]
    starts = [0]
    for length in lengths[:-1]:
        starts.append(starts[-1] + length - ell)
    chain = CliqueChain(kind, k, ell, tuple(vertices), tuple(zip(starts, lengths)))
    red = set()
    from itertools import combinations
    for j in range(d):
        for sub in combinations(sorted(chain.element_vertices(j)), k):
            red.add(sub)
    col = TwoColoring.from_red_edges(k, n, red)
    return chain, col


class TestValidateChain:
    def test_bare_path_is_valid_all_rigid(self):
        col = TwoColoring.all_red(3, 8)
        chain = chain_from_sequence(OPEN, 3, 2, list(range(8)))
        cert = validate_chain(chain, col)
        assert cert.detail["valid"]
        assert cert.detail["flexible_elements"] == []

    def test_overlap_too_large_rejected(self):
        chain = CliqueChain(OPEN, 3, 1, tuple(range(8)), ((0, 5), (3, 5)))
        cert = validate_chain(chain)
        assert not cert.detail["valid"]
        assert any("junction" in p for p in cert.detail["problems"])

    def test_flexible_threshold(self):
        # for ell=1, k=3 an element of size 5 exceeds max(k, 2*ell)
        col = TwoColoring.all_red(3, 9)
        chain = CliqueChain(OPEN, 3, 1, tuple(range(9)), ((0, 5), (4, 5)))
        cert = validate_chain(chain, col)
        assert cert.detail["valid"]
        assert cert.detail["flexible_elements"] == [0, 1]
        assert cert.detail["spine_vertices"] == [4]

    def test_red_violation_reported(self):
        col = TwoColoring.all_blue(3, 5)
        chain = chain_from_sequence(OPEN, 3, 2, list(range(5)))
        cert = validate_chain(chain, col)
        assert not cert.detail["valid"]

    def test_wrong_length_mod(self):
        chain = CliqueChain(OPEN, 3, 1, tuple(range(4)), ((0, 4),))
        cert = validate_chain(chain)
        assert not cert.detail["valid"]


class TestSpanningPath:
    def test_single_clique_element(self):
        col = TwoColoring.all_red(3, 9)
        chain = CliqueChain(OPEN, 3, 1, tuple(range(9)), ((0, 9),))
        seq, edges = spanning_path(chain)
        assert edges == [(0, 1, 2), (2, 3, 4), (4, 5, 6), (6, 7, 8)]
        assert validate_mono_path(col, seq, 1, RED)

    def test_two_elements(self):
        col = TwoColoring.all_red(3, 9)
        chain = CliqueChain(OPEN, 3, 1, tuple(range(9)), ((0, 5), (4, 5)))
        seq, edges = spanning_path(chain)
        assert len(edges) == 4 and validate_mono_path(col, seq, 1, RED)

    def test_closed_two_tight_elements(self):
        col = TwoColoring.all_red(3, 4)
        chain = CliqueChain(CLOSED, 3, 2, (0, 1, 2, 3), ((0, 4), (2, 4)))
        seq, edges = spanning_path(chain)
        assert len(edges) == 4
        assert validate_mono_cycle(col, seq, 2, RED)

    @pytest.mark.parametrize("seed", range(40))
    def test_random_chains_span(self, seed):
        rng = Random(seed)
        chain, col = random_valid_chain(rng)
        cert = validate_chain(chain, col)
        assert cert.detail["valid"], cert.detail["problems"]
        seq, edges = spanning_path(chain)
        assert sorted(seq) == sorted(chain.vertices)  # covers every vertex once
        if chain.kind == OPEN:
            assert validate_mono_path(col, seq, chain.ell, RED)
        else:
            assert validate_mono_cycle(col, seq, chain.ell, RED)
        for a, b in zip(edges, edges[1:]):
            assert len(set(a) & set(b)) == chain.ell


class TestCutOpen:
    def test_cut_preserves_validity(self):
        col = TwoColoring.all_red(3, 20)
        chain = CliqueChain(CLOSED, 3, 1, tuple(range(20)),
                            ((0, 9), (8, 5), (12, 9)))
        cert = validate_chain(chain, col)
        assert cert.detail["valid"]
        opened = cut_open(chain)
        assert opened.kind == OPEN
        assert validate_chain(opened, col).detail["valid"]
        assert opened.p >= chain.p - 2 * 3

    def test_fallback_drops_smallest(self):
        # no element large enough to split: the smallest one is dropped
        col = TwoColoring.all_red(3, 12)
        chain = CliqueChain(CLOSED, 3, 1, tuple(range(10)),
                            ((0, 3), (2, 3), (4, 3), (6, 5)))
        assert validate_chain(chain, col).detail["valid"]
        opened = cut_open(chain)
        assert opened.kind == OPEN
        assert validate_chain(opened, col).detail["valid"]
        assert opened.p < chain.p  # the dropped element's interior is lost


class TestCliquePartition:
    def test_all_red_k9(self):
        cp = clique_partition(TwoColoring.all_red(3, 9), 3, 3)
        assert [c for c, _ in cp.blocks] == [RED, RED, RED]
        assert cp.leftover == ()

    def test_all_blue_k7(self):
        cp = clique_partition(TwoColoring.all_blue(3, 7), 4, 7)
        assert cp.blocks == [(BLUE, tuple(range(7)))]
        assert cp.leftover == ()

    @pytest.mark.parametrize("seed", range(25))
    def test_leftover_verifiably_clean(self, seed):
        rng = Random(seed)
        n = rng.randint(6, 10)
        col = TwoColoring.random(3, n, rng.random(), seed=900 + seed)
        cp = clique_partition(col, 4, 4)
        seen = set()
        for colour, block in cp.blocks:
            assert not set(block) & seen
            seen.update(block)
            target = complete_hypergraph(3, len(block))
            from hyperramsey.search import validate_embedding
            assert validate_embedding(col, target, list(block), colour)
        assert not set(cp.leftover) & seen
        # the leftover holds no monochromatic clique of either target size
        leftover = list(cp.leftover)
        if len(leftover) >= 4:
            sub_idx = {v: i for i, v in enumerate(leftover)}
            from itertools import combinations
            for colour in (RED, BLUE):
                for four in combinations(leftover, 4):
                    assert not all(col.has_colour(t, colour) for t in combinations(four, 3))


class TestDoubleTreeWalk:
    def test_path(self):
        assert double_tree_walk([(0, 1), (1, 2)]) == [0, 1, 2, 1, 0]

    def test_star(self):
        assert double_tree_walk([(0, 1), (0, 2), (0, 3)], root=0) == [0, 1, 0, 2, 0, 3, 0]

    def test_not_a_tree(self):
        with pytest.raises(ValueError):
            double_tree_walk([(0, 1), (1, 2), (2, 0)])
        with pytest.raises(ValueError):
            double_tree_walk([(0, 1), (2, 3)])

    @pytest.mark.parametrize("seed", range(30))
    def test_random_trees(self, seed):
        rng = Random(seed)
        n = rng.randint(2, 12)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        walk = double_tree_walk(edges)
        assert walk[0] == walk[-1]
        steps = list(zip(walk, walk[1:]))
        from collections import Counter
        counts = Counter(tuple(sorted(s)) for s in steps)
        assert set(counts) == {tuple(sorted(e)) for e in edges}
        assert all(c == 2 for c in counts.values())
        assert set(walk) == set(range(n))


class TestPathSystem:
    def test_two_red_blocks_single_edge(self):
        col = TwoColoring.all_red(3, 14)
        blocks = [tuple(range(7)), tuple(range(7, 14))]
        system = build_path_system(col, blocks, ell=1, alpha=2, epsilon=0.3)
        assert not system.stalled
        assert system.forest_edges == [(0, 1)]
        p1, p2 = system.paths[(0, 1)]
        assert not set(p1) & set(p2)
        assert p1[0] in blocks[0] and p1[-1] in blocks[1]

    def test_stall_on_blue_crossing(self):
        red = [e for e in colex_subsets(3, 8) if e[-1] < 4 or e[0] >= 4]
        col = TwoColoring.from_red_edges(3, 8, red)
        system = build_path_system(col, [(0, 1, 2, 3), (4, 5, 6, 7)], ell=1, alpha=2, epsilon=0.3)
        assert system.stalled
        assert system.stall_blocks == (0, 1)

    def test_tight_connectors(self):
        col = TwoColoring.all_red(3, 12)
        blocks = [tuple(range(6)), tuple(range(6, 12))]
        system = build_path_system(col, blocks, ell=2, alpha=2, epsilon=0.3)
        assert not system.stalled
        for p1, p2 in system.paths.values():
            for p in (p1, p2):
                assert len(p) == 4
                assert validate_mono_path(col, p, 2, RED)

    def test_usage_stays_bounded(self):
        col = TwoColoring.all_red(3, 21)
        blocks = [tuple(range(7 * i, 7 * (i + 1))) for i in range(3)]
        system = build_path_system(col, blocks, ell=1, alpha=2, epsilon=0.5)
        used = system.used_vertices()
        for b in blocks:
            assert sum(1 for v in b if v in used) <= 0.5 * len(b) + 4 * 3  # slack for augmentation


class TestAssembleChains:
    def test_single_block_trivial(self):
        col = TwoColoring.all_red(3, 7)
        system = build_path_system(col, [tuple(range(7))], ell=1, alpha=2, epsilon=0.3)
        report = assemble_chains(col, [tuple(range(7))], system)
        assert len(report.chains) == 1
        chain = report.chains[0]
        assert chain.kind == OPEN and any("trivial" in f for f in chain.flags)

    def test_two_blocks_closed_chain(self):
        col = TwoColoring.all_red(3, 14)
        blocks = [tuple(range(7)), tuple(range(7, 14))]
        system = build_path_system(col, blocks, ell=1, alpha=2, epsilon=0.3)
        report = assemble_chains(col, blocks, system)
        assert len(report.chains) == 1
        chain = report.chains[0]
        assert chain.kind == CLOSED
        assert chain.p >= 7 + 7 - 4
        cert = validate_chain(chain, col)
        assert cert.detail["valid"]
        seq, _ = spanning_path(chain)
        assert validate_mono_cycle(col, seq, 1, RED)

    @pytest.mark.parametrize("seed", range(10))
    def test_dense_red_end_to_end(self, seed):
        col = TwoColoring.random(3, 14, 0.97, seed=seed)
        cp = clique_partition(col, 5, 5)
        blocks = cp.red_blocks()
        if len(blocks) < 2:
            pytest.skip("partition found fewer than two red blocks")
        system = build_path_system(col, blocks, ell=1, alpha=2, epsilon=0.5)
        if system.stalled:
            pytest.skip("no connectors at this seed")
        report = assemble_chains(col, blocks, system)
        for chain in report.chains:
            cert = validate_chain(chain, col)
            assert cert.detail["valid"], cert.detail["problems"]
            seq, _ = spanning_path(chain)
            if chain.kind == CLOSED:
                assert validate_mono_cycle(col, seq, 1, RED)
            else:
                assert validate_mono_path(col, seq, 1, RED)
        assert len(report.chains) <= len(blocks)


class TestAssemblyDisjointness:
    @pytest.mark.parametrize("seed", range(6))
    def test_chains_are_vertex_disjoint(self, seed):
        col = TwoColoring.random(3, 18, 0.93, seed=40 + seed)
        cp = clique_partition(col, 6, 6)
        blocks = cp.red_blocks()
        if len(blocks) < 2:
            pytest.skip("not enough red blocks")
        system = build_path_system(col, blocks, ell=1, alpha=2, epsilon=0.6)
        if system.stalled:
            pytest.skip("stalled")
        try:
            report = assemble_chains(col, blocks, system)
        except ValueError:
            pytest.skip("assembly infeasible at this scale")
        seen = set()
        for chain in report.chains:
            assert not set(chain.vertices) & seen
            seen.update(chain.vertices)
        assert len(report.chains) <= len(system.components())

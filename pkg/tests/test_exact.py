from math import comb

import pytest

from hyperramsey.core import (
    Tournament,
    burr_bound,
    complete_hypergraph,
    ramsey_profile,
)
from hyperramsey.search import (
    find_transitive_subtournament,
    has_two_edge_loose_path,
    independence_number,
    pattern_hypergraph,
    verify_free,
)
from hyperramsey.exact import (
    consecutive_gap_check,
    directed_ramsey_exact,
    free_coloring_exists,
    free_colorings_bruteforce,
    goodness_gap,
    ramsey_exact,
    tau_exact,
)

from oracles import naive_free


class TestFreeColoringSearch:
    @pytest.mark.parametrize("red,blue", [
        ("path:3:2:4", "clique:3:4"),
        ("path:3:1:5", "clique:3:4"),
        ("path:3:1:5", "tth:2:2"),
        ("edge:3", "edge:3"),
        ("path:3:2:4", "tth:2:2"),
    ])
    def test_pruned_matches_bruteforce(self, red, blue):
        for n in (3, 4, 5):
            brute = free_colorings_bruteforce(red, blue, n)
            exists, witness, _ = free_coloring_exists(red, blue, n)
            assert exists == bool(brute)
            if exists:
                assert witness.red_bits in brute

    def test_witness_is_free_by_naive_check(self):
        red_h = pattern_hypergraph("path:3:1:5")
        blue_h = pattern_hypergraph("clique:3:4")
        exists, witness, _ = free_coloring_exists("path:3:1:5", "clique:3:4", 5)
        assert exists
        assert naive_free(witness, red_h, blue_h)


class TestRamseyExact:
    def test_edge_edge(self):
        r = ramsey_exact("edge:3", "edge:3", 6)
        assert r.value == 3 and r.exact

    # expected values derived pair by pair: free colourings exist exactly up
    # to value-1 (checked against unpruned enumeration where C(n,3) <= 10)
    @pytest.mark.parametrize("red,blue,expected", [
        ("path:3:2:4", "clique:3:4", 5),
        ("path:3:1:5", "clique:3:4", 6),
        ("path:3:2:4", "tth:2:2", 4),
        ("path:3:1:5", "tth:2:2", 5),
        ("path:3:2:4", "edge:3", 4),
        ("path:3:1:5", "edge:3", 5),
        ("edge:3", "clique:3:4", 4),
        ("edge:3", "tth:2:2", 4),
    ])
    def test_desk_values(self, red, blue, expected):
        r = ramsey_exact(red, blue, 7)
        assert r.exact and r.value == expected

    def test_lower_witness_verifies_free(self):
        r = ramsey_exact("path:3:2:4", "clique:3:4", 7)
        cert = verify_free(r.lower_witness, "path:3:2:4", complete_hypergraph(3, 4))
        assert cert.kind == "free"
        assert r.lower_witness.n == r.value - 1

    def test_at_least_burr(self):
        for red, blue in [("path:3:2:4", "clique:3:4"), ("path:3:1:5", "clique:3:4"),
                          ("path:3:2:4", "tth:2:2"), ("path:3:1:5", "tth:2:2")]:
            target = pattern_hypergraph(blue)
            profile = ramsey_profile(target)
            bb = burr_bound(pattern_hypergraph(red).n, profile)
            r = ramsey_exact(red, target, 7)
            assert r.value >= bb.value

    def test_colour_swap_symmetry(self):
        # R computed red/blue equals R of the swapped pair computed blue/red:
        # both count the same free colourings up to inverting the bitmap
        for n in (3, 4):
            a = free_colorings_bruteforce("path:3:2:4", "edge:3", n)
            b = free_colorings_bruteforce("edge:3", "path:3:2:4", n)
            full = (1 << comb(n, 3)) - 1
            assert sorted(full ^ bits for bits in b) == sorted(a)

    def test_cap_gives_lower_bound(self):
        r = ramsey_exact("path:3:1:5", "clique:3:4", 4)
        assert not r.exact and r.lower_bound == 5 and r.value is None


class TestTauExact:
    @pytest.mark.parametrize("alpha", range(2, 7))
    def test_k2_values(self, alpha):
        r = tau_exact(2, alpha)
        assert r.exact and r.value == 2 * alpha - 2

    def test_trivial_regime(self):
        r = tau_exact(3, 2)
        assert r.value == 1 and "trivial-regime" in r.flags

    def test_alpha_one(self):
        r = tau_exact(3, 1)
        assert r.value == 0 and "alpha-1-degenerate" in r.flags

    def test_tau_3_4(self):
        r = tau_exact(3, 4)
        assert r.exact and r.value == 5
        assert 5 <= r.value <= 6
        alpha, _ = independence_number(r.witness)
        assert alpha < 4
        assert not has_two_edge_loose_path(r.witness)[0]

    def test_witness_in_construction_bracket(self):
        from hyperramsey.constructions import tau_lower_construction
        for k, alpha in [(2, 4), (3, 3), (3, 4)]:
            r = tau_exact(k, alpha)
            assert tau_lower_construction(k, alpha).n <= r.value <= 2 * alpha - 2


class TestDirectedRamsey:
    def test_r2(self):
        assert directed_ramsey_exact(2).value == 2

    def test_r3_with_cyclic_witness(self):
        r = directed_ramsey_exact(3)
        assert r.value == 4
        assert r.witness.n == 3
        assert not find_transitive_subtournament(r.witness, 3).found

    def test_r4_by_enumeration(self):
        r = directed_ramsey_exact(4)
        assert r.exact and r.value == 8
        assert r.witness.n == 7
        assert not find_transitive_subtournament(r.witness, 4).found

    def test_gap_chi3(self):
        g = consecutive_gap_check(3)
        assert g.inequality_holds and g.value == 4 and g.previous == 2
        assert g.augmented_witness.n == 3
        assert g.augmented_ttfree
        # the construction applied to a single vertex is the cyclic triangle
        arcs = set(g.augmented_witness.arcs())
        assert len(arcs) == 3
        outdeg = [sum(1 for a in arcs if a[0] == v) for v in range(3)]
        assert sorted(outdeg) == [1, 1, 1]

    def test_gap_chi4(self):
        g = consecutive_gap_check(4)
        assert g.inequality_holds and g.augmented_ttfree

    def test_labelled_count_consistency(self):
        # Burnside-style consistency of the searcher: the number of labelled
        # TT_3-free tournaments on 3 vertices is 2 (the two cyclic triangles),
        # and every other 3-tournament is transitive
        from math import comb as c
        free = 0
        for bits in range(1 << c(3, 2)):
            t = Tournament(3, bits)
            if not find_transitive_subtournament(t, 3).found:
                free += 1
        assert free == 2


class TestGoodness:
    def test_good_pair(self):
        target = pattern_hypergraph("clique:3:4")
        r = ramsey_exact("path:3:2:4", target, 7)
        report = goodness_gap("path:3:2:4", target, r)
        assert report.verdict == "good" and report.gap == 0

    def test_not_good_pair(self):
        target = pattern_hypergraph("tth:2:2")
        r = ramsey_exact("edge:3", target, 7)
        report = goodness_gap("edge:3", target, r)
        assert report.verdict == "not-good"

    def test_undecided(self):
        target = pattern_hypergraph("clique:3:4")
        r = ramsey_exact("path:3:1:5", target, 4)
        report = goodness_gap("path:3:1:5", target, r)
        assert report.verdict == "undecided"


class TestNotGoodByConstruction:
    def test_tight_path_exceeds_the_general_bound(self):
        # the overlap >= 2 construction beats the general lower bound as soon
        # as floor(n/k) > sigma: free colouring on 12 vertices, bound 12
        from hyperramsey.constructions import ell_path_lb
        from hyperramsey.core import burr_bound, complete_hypergraph, ramsey_profile
        from hyperramsey.exact import RamseyResult

        target = complete_hypergraph(3, 4)
        inst = ell_path_lb(3, 2, 11, 2)
        cert = verify_free(inst.coloring, "path:3:2:11", target)
        assert cert.kind == "free"
        profile = ramsey_profile(target)
        bb = burr_bound(11, profile)
        assert inst.n == bb.value == 12  # so R >= 13 strictly beats the bound
        result = RamseyResult("path:3:2:11", None, inst.n + 1, False, inst.coloring, None)
        report = goodness_gap("path:3:2:11", target, result, profile)
        assert report.verdict == "not-good"

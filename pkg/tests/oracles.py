"""Brute-force oracles, independent of the library's search paths.

Everything here enumerates naively: all injective vertex sequences, all
bitmaps, all subsets.  The point is that no pruning or data-structure trick is
shared with the code under test.
"""

from itertools import combinations, permutations

from hyperramsey.core import TwoColoring, Hypergraph


def naive_longest_mono_path(col: TwoColoring, ell: int, colour: str) -> int:
    """Max vertex count of a monochromatic ell-path by trying every injective
    vertex sequence of every admissible length."""
    k = col.k
    best_edges = 0
    q = 1
    while ell + q * (k - ell) <= col.n:
        length = ell + q * (k - ell)
        found = False
        for seq in permutations(range(col.n), length):
            ok = True
            for i in range(q):
                if not col.has_colour(seq[i * (k - ell): i * (k - ell) + k], colour):
                    ok = False
                    break
            if ok:
                found = True
                break
        if not found:
            break
        best_edges = q
        q += 1
    return ell + best_edges * (k - ell)


def naive_find_copy(col: TwoColoring, target: Hypergraph, colour: str):
    """First monochromatic copy of the target over all injective maps."""
    for hosts in permutations(range(col.n), target.n):
        if all(col.has_colour([hosts[v] for v in e], colour) for e in target.edges):
            return hosts
    return None


def naive_independence(hg: Hypergraph) -> int:
    for size in range(hg.n, -1, -1):
        for sub in combinations(range(hg.n), size):
            s = set(sub)
            if all(not set(e) <= s for e in hg.edges):
                return size
    return 0


def naive_chromatic(hg: Hypergraph) -> tuple[int, int]:
    """(chi, sigma) by trying every colour assignment."""
    for c in range(1, hg.n + 1):
        best_sigma = None
        for assignment in _assignments(hg.n, c):
            if len(set(assignment)) != c:
                continue
            if any(len({assignment[v] for v in e}) == 1 for e in hg.edges):
                continue
            sizes = [assignment.count(i) for i in range(c)]
            s = min(sizes)
            if best_sigma is None or s < best_sigma:
                best_sigma = s
        if best_sigma is not None:
            return c, best_sigma
    raise AssertionError("some colouring is always proper")


def _assignments(n: int, c: int):
    if n == 0:
        yield ()
        return
    for rest in _assignments(n - 1, c):
        for col in range(c):
            yield rest + (col,)


def naive_free(col: TwoColoring, red_target: Hypergraph, blue_target: Hypergraph) -> bool:
    return naive_find_copy(col, red_target, "red") is None and \
        naive_find_copy(col, blue_target, "blue") is None

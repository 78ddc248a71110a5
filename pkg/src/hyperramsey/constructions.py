"""Generators for the explicit lower-bound colourings and extremal hypergraphs.

Each generator returns a LowerBoundInstance: the colouring itself, the block
partition it was built from, the parameter record, and descriptors of the red
pattern and blue target it is claimed to avoid.  Blocks always occupy
consecutive vertex ranges in index order so the bitmaps are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import (
    Hypergraph,
    Tournament,
    TwoColoring,
    colex_subsets,
    hypergraph_to_json,
)
from .search import has_two_edge_loose_path, independence_number


@dataclass(frozen=True)
class LowerBoundInstance:
    coloring: TwoColoring
    claimed_red_free: str
    claimed_blue_free: str
    partition: tuple[tuple[int, ...], ...]
    parameters: dict
    blue_target: Hypergraph | None = None
    flags: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.coloring.n

    def manifest(self) -> dict:
        out = {
            "n": self.n,
            "k": self.coloring.k,
            "partition": [list(b) for b in self.partition],
            "parameters": dict(self.parameters),
            "claimed_red_free": self.claimed_red_free,
            "claimed_blue_free": self.claimed_blue_free,
            "flags": list(self.flags),
        }
        if self.blue_target is not None:
            out["blue_target"] = hypergraph_to_json(self.blue_target)
        return out


def _blocks(sizes: list[int]) -> tuple[tuple[int, ...], ...]:
    out = []
    start = 0
    for s in sizes:
        out.append(tuple(range(start, start + s)))
        start += s
    return tuple(out)


def _colour_by_rule(k: int, n: int, red_rule) -> TwoColoring:
    bits = 0
    for r, s in enumerate(colex_subsets(k, n)):
        if red_rule(s):
            bits |= 1 << r
    return TwoColoring(k, n, bits)


def _block_of(blocks, v: int) -> int:
    for i, b in enumerate(blocks):
        if b and b[0] <= v <= b[-1]:
            return i
    return -1


# ---------------------------------------------------------------------------
# the general lower-bound colouring: red edges form chi cliques


def burr_coloring(k: int, chi: int, sigma: int, v_g: int) -> LowerBoundInstance:
    """chi-1 red cliques of order v_g-1 plus one of order sigma-1, rest blue,
    on (v_g-1)(chi-1)+sigma-1 vertices."""
    if chi < 1 or sigma < 1 or v_g < sigma:
        raise ValueError("need chi >= 1, sigma >= 1, v_g >= sigma")
    n = (v_g - 1) * (chi - 1) + sigma - 1
    sizes = [v_g - 1] * (chi - 1) + [sigma - 1]
    blocks = _blocks(sizes)
    flags = ()
    if n < k:
        flags = ("no-k-sets",)
    col = _colour_by_rule(k, n, lambda s: _block_of(blocks, s[0]) == _block_of(blocks, s[-1]))
    return LowerBoundInstance(
        coloring=col,
        claimed_red_free=f"any connected k-graph on {v_g} vertices",
        claimed_blue_free=f"any H with chi={chi}, sigma={sigma}",
        partition=blocks,
        parameters={"k": k, "chi": chi, "sigma": sigma, "v_g": v_g, "n": n},
        flags=flags,
    )


# ---------------------------------------------------------------------------
# ell >= 2 paths against colour-concentrated targets


def ell_path_lb(k: int, ell: int, n: int, chi: int) -> LowerBoundInstance:
    """Red = within-block k-sets plus k-sets that meet the last (small) block
    and every other block in at most ell-1 vertices."""
    if ell < 2 or ell > k - 1:
        raise ValueError("this construction needs 2 <= ell <= k-1")
    if chi < 2:
        raise ValueError("need chi >= 2")
    if (n - ell) % (k - ell) != 0 or n < k:
        raise ValueError(f"no path on n={n} vertices for k={k}, ell={ell}")
    small = n // k - 1
    if small < 0:
        raise ValueError("n too small: last block would be negative")
    big_n = (chi - 1) * (n - 1) + small
    blocks = _blocks([n - 1] * (chi - 1) + [small])
    last = chi - 1

    def red_rule(s):
        counts = [0] * chi
        for v in s:
            counts[_block_of(blocks, v)] += 1
        if max(counts) == k:
            return True
        if counts[last] >= 1 and all(c <= ell - 1 for c in counts[:last]):
            return True
        return False

    col = _colour_by_rule(k, big_n, red_rule)
    return LowerBoundInstance(
        coloring=col,
        claimed_red_free=f"path:{k}:{ell}:{n}",
        claimed_blue_free="any H whose proper colourings all have a colour-concentrated edge",
        partition=blocks,
        parameters={"k": k, "ell": ell, "n": n, "chi": chi, "N": big_n},
    )


def qualifies_for_ell_path_lb(hg: Hypergraph, ell: int, max_vertices: int = 12) -> bool:
    """Check the target-side hypothesis of the ell-path lower bound: every
    proper chi-colouring and every colour class i admit an edge meeting class i
    and every other class in at most ell-1 vertices."""
    from .core import _proper_colourings, ramsey_profile

    profile = ramsey_profile(hg, max_vertices=max_vertices)
    chi = profile.chi
    for assignment in _proper_colourings(hg, chi):
        for i in range(chi):
            ok = False
            for e in hg.edges:
                cnt = [0] * chi
                for v in e:
                    cnt[assignment[v]] += 1
                if cnt[i] >= 1 and all(cnt[j] <= ell - 1 for j in range(chi) if j != i):
                    ok = True
                    break
            if not ok:
                return False
    return True


# ---------------------------------------------------------------------------
# loose paths and cycles via two-edge-loose-path-free auxiliary graphs


def _check_aux_graph(aux: Hypergraph, k: int, t: int) -> None:
    if aux.k != k - 1:
        raise ValueError(f"auxiliary graph must be {k - 1}-uniform")
    has_p2, wit = has_two_edge_loose_path(aux)
    if has_p2:
        raise ValueError(f"auxiliary graph has a two-edge loose path: {wit}")
    alpha, _ = independence_number(aux)
    if alpha >= t:
        raise ValueError(f"auxiliary graph has independence number {alpha} >= {t}")


def loose_path_lb(k: int, chi: int, n: int, t: int, aux: Hypergraph) -> LowerBoundInstance:
    """Red = within-block k-sets for the first chi-1 blocks, plus k-sets with
    one vertex in block chi-1 whose remainder is an edge of the auxiliary graph
    living on the last block."""
    if chi < 2:
        raise ValueError("need chi >= 2")
    if (n - 1) % (k - 1) != 0:
        raise ValueError(f"need n = 1 (mod {k - 1})")
    _check_aux_graph(aux, k, t)
    sizes = [n - 1] * (chi - 2) + [n - 2 * k + 1, aux.n]
    if sizes[-2] < 0:
        raise ValueError("n too small for the connector block")
    blocks = _blocks(sizes)
    big_n = sum(sizes)
    bridge = chi - 2  # block index chi-1 in 1-based terms
    last = chi - 1
    aux_edges = {tuple(sorted(blocks[last][v] for v in e)) for e in aux.edges}

    def red_rule(s):
        counts = [0] * chi
        for v in s:
            counts[_block_of(blocks, v)] += 1
        if max(counts[:last]) == k:
            return True
        if counts[bridge] == 1 and counts[last] == k - 1:
            rest = tuple(v for v in s if _block_of(blocks, v) == last)
            return rest in aux_edges
        return False

    col = _colour_by_rule(k, big_n, red_rule)
    return LowerBoundInstance(
        coloring=col,
        claimed_red_free=f"path:{k}:1:{n}",
        claimed_blue_free=f"split target, classes {(chi - 1)} x >(chi-1)(k-2)+{aux.n} and {t}",
        partition=blocks,
        parameters={"k": k, "chi": chi, "n": n, "t": t, "aux_n": aux.n, "N": big_n},
        blue_target=split_target(k, chi, t, aux.n),
    )


def split_target(k: int, chi: int, t: int, tau_value: int) -> Hypergraph:
    """The target hypergraph of the loose lower bounds: chi-1 classes of size
    (chi-1)(k-2)+tau_value+1, one class of size t, edges = all k-sets meeting
    some class in exactly k-1 vertices."""
    big = (chi - 1) * (k - 2) + tau_value + 1
    sizes = [big] * (chi - 1) + [t]
    blocks = _blocks(sizes)
    n = sum(sizes)
    edges = []
    for s in combinations(range(n), k):
        counts = [0] * chi
        for v in s:
            counts[_block_of(blocks, v)] += 1
        if any(c == k - 1 for c in counts):
            edges.append(s)
    return Hypergraph(k, n, tuple(edges))


def loose_cycle_lb(
    k: int,
    chi: int,
    n: int,
    t: int,
    variant: str,
    q: int | None = None,
    aux: Hypergraph | None = None,
    tau_value: int | None = None,
) -> LowerBoundInstance:
    """Two loose-cycle lower-bound colourings.

    "tau" variant: chi-1 full-size blocks plus an auxiliary-graph block, with
    the connector rule reused from the loose-path construction (the block
    playing the connector role is the last full-size one); flagged as
    reconstructed because the source describes it by reference.
    "pencil" variant: last block of size q; the i-th (k-1)-subset of the last
    block extends redly into block i only.
    """
    if chi < 2:
        raise ValueError("need chi >= 2")
    if n % (k - 1) != 0:
        raise ValueError(f"need n = 0 (mod {k - 1})")
    if variant == "tau":
        if aux is None:
            raise ValueError("tau variant needs the auxiliary graph")
        _check_aux_graph(aux, k, t)
        sizes = [n - 1] * (chi - 1) + [aux.n]
        blocks = _blocks(sizes)
        big_n = sum(sizes)
        bridge = chi - 2
        last = chi - 1
        aux_edges = {tuple(sorted(blocks[last][v] for v in e)) for e in aux.edges}

        def red_rule(s):
            counts = [0] * chi
            for v in s:
                counts[_block_of(blocks, v)] += 1
            if max(counts[:last]) == k:
                return True
            if counts[bridge] == 1 and counts[last] == k - 1:
                rest = tuple(v for v in s if _block_of(blocks, v) == last)
                return rest in aux_edges
            return False

        col = _colour_by_rule(k, big_n, red_rule)
        return LowerBoundInstance(
            coloring=col,
            claimed_red_free=f"cycle:{k}:1:{n}",
            claimed_blue_free=f"split target, tau variant, t={t}",
            partition=blocks,
            parameters={"k": k, "chi": chi, "n": n, "t": t, "variant": variant, "N": big_n},
            blue_target=split_target(k, chi, t, aux.n),
            flags=("tau-variant-reconstructed",),
        )
    if variant == "pencil":
        if q is None:
            raise ValueError("pencil variant needs q")
        if chi <= comb(q, k - 1):
            raise ValueError(f"pencil variant needs chi > C({q},{k - 1}) = {comb(q, k - 1)}")
        sizes = [n - 1] * (chi - 1) + [q]
        blocks = _blocks(sizes)
        big_n = sum(sizes)
        last = chi - 1
        pencil_sets = [tuple(sorted(s)) for s in combinations(blocks[last], k - 1)]

        def red_rule(s):
            counts = [0] * chi
            for v in s:
                counts[_block_of(blocks, v)] += 1
            if max(counts[:last]) == k:
                return True
            for i, pset in enumerate(pencil_sets):
                if counts[i] == 1 and set(pset) <= set(s):
                    return True
            return False

        col = _colour_by_rule(k, big_n, red_rule)
        return LowerBoundInstance(
            coloring=col,
            claimed_red_free=f"cycle:{k}:1:{n}",
            claimed_blue_free=f"split target, pencil variant, t={t}",
            partition=blocks,
            parameters={"k": k, "chi": chi, "n": n, "t": t, "q": q, "variant": variant, "N": big_n},
            # class sizes need max{tau(k-1,t), q}; the lower-construction size is
            # exact for k=3 and a caller with the exact tau can override it
            blue_target=split_target(k, chi, t, max(tau_value if tau_value is not None else _tau_lower_size(k - 1, t), q)),
        )
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# tight paths against tournament hypergraphs (3-uniform)


def non_transitive_lb(m: int, t: int) -> LowerBoundInstance:
    """m-1 blocks of size t; a triple with two vertices in block i and one in
    block j is red exactly when i <= j."""
    if m < 2 or t < 1:
        raise ValueError("need m >= 2, t >= 1")
    blocks = _blocks([t] * (m - 1))
    big_n = (m - 1) * t

    def red_rule(s):
        counts = [0] * (m - 1)
        for v in s:
            counts[_block_of(blocks, v)] += 1
        if 2 in counts:
            i = counts.index(2)
            j = counts.index(1)
            return i <= j
        return max(counts) == 3

    col = _colour_by_rule(3, big_n, red_rule)
    return LowerBoundInstance(
        coloring=col,
        claimed_red_free=f"tight path on > t+floor(t/2)+1 = {t + t // 2 + 1} vertices",
        claimed_blue_free="any tournament hypergraph of a non-transitive tournament",
        partition=blocks,
        parameters={"m": m, "t": t, "N": big_n},
    )


def transitive_lb(t: Tournament, n: int) -> LowerBoundInstance:
    """One block per tournament vertex, each of size floor(2n/3)-2; red =
    within-block triples plus two-in-i one-in-j triples along arcs (i, j)."""
    size = (2 * n) // 3 - 2
    if size < 1:
        raise ValueError("block size would be < 1")
    blocks = _blocks([size] * t.n)
    big_n = size * t.n
    arcs = set(t.arcs())

    def red_rule(s):
        counts = [0] * t.n
        for v in s:
            counts[_block_of(blocks, v)] += 1
        if max(counts) == 3:
            return True
        if 2 in counts:
            i = counts.index(2)
            j = counts.index(1)
            return (i, j) in arcs
        return False

    col = _colour_by_rule(3, big_n, red_rule)
    return LowerBoundInstance(
        coloring=col,
        claimed_red_free=f"path:3:2:{n}",
        claimed_blue_free="tth:chi:m for chi with T TT_chi-free and m >= R_vec(chi)",
        partition=blocks,
        parameters={"n": n, "block_size": size, "tournament_n": t.n, "N": big_n},
    )


# ---------------------------------------------------------------------------
# extremal graphs for the no-two-edge-loose-path function


def _tau_lower_size(k: int, alpha: int) -> int:
    if alpha < k:
        return alpha - 1
    return alpha - 1 + (k - 1) * ((alpha - 1) // (k - 1))


def tau_lower_construction(k: int, alpha: int) -> Hypergraph:
    """Disjoint complete k-graphs on 2k-2 vertices plus isolated vertices:
    independence alpha-1, no two-edge loose path.

    Below the nontrivial regime (alpha < k) returns alpha-1 isolated vertices.
    """
    if k < 2 or alpha < 1:
        raise ValueError("need k >= 2 and alpha >= 1")
    if alpha < k:
        return Hypergraph(k, alpha - 1, ())
    r = (alpha - 1) // (k - 1)
    s = (alpha - 1) - r * (k - 1)
    n = r * (2 * k - 2) + s
    edges = []
    for block in range(r):
        base = block * (2 * k - 2)
        for e in combinations(range(base, base + 2 * k - 2), k):
            edges.append(e)
    return Hypergraph(k, n, tuple(edges))

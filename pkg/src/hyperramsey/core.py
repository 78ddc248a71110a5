"""Data model for k-uniform hypergraphs, 2-colourings, tournaments and chromatic data.

Vertices are always the integers 0..n-1.  Edge colourings of the complete
k-graph are stored as a bitmap over all k-subsets of [n], indexed by
colexicographic rank, so that looking up or flipping the colour of one edge is
O(k) arithmetic and a whole colouring is a single Python int.
"""

from __future__ import annotations

import base64
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from random import Random
from typing import Iterable, Iterator, Sequence


class GuardExceeded(RuntimeError):
    """An exact search was asked to run beyond its configured size guard."""


# ---------------------------------------------------------------------------
# colexicographic ranking of k-subsets


def colex_rank(subset: Sequence[int]) -> int:
    """Rank of a sorted tuple of distinct vertices in colexicographic order.

    rank({a1 < a2 < ... < ak}) = sum_i C(a_i, i); this is a bijection from
    k-subsets of the nonnegative integers onto 0, 1, 2, ...
    """
    rank = 0
    prev = -1
    for i, a in enumerate(subset, start=1):
        if a <= prev:
            raise ValueError(f"subset {tuple(subset)} is not sorted and distinct")
        prev = a
        rank += comb(a, i)
    return rank


def colex_unrank(rank: int, k: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`colex_rank` for k-subsets of [n]."""
    total = comb(n, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range for C({n},{k}) = {total}")
    out = []
    r = rank
    for i in range(k, 0, -1):
        a = i - 1
        while comb(a + 1, i) <= r:
            a += 1
        out.append(a)
        r -= comb(a, i)
    out.reverse()
    return tuple(out)


@lru_cache(maxsize=128)
def colex_subsets(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All k-subsets of [n] in colexicographic order."""
    return tuple(sorted(combinations(range(n), k), key=lambda s: s[::-1]))


@lru_cache(maxsize=128)
def colex_rank_table(k: int, n: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(colex_subsets(k, n))}


# ---------------------------------------------------------------------------
# hypergraphs


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices 0..n-1 with edges in colex order."""

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("uniformity k must be at least 2")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = []
        for e in self.edges:
            t = tuple(sorted(e))
            if len(set(t)) != self.k:
                raise ValueError(f"edge {e} does not have {self.k} distinct vertices")
            if t[0] < 0 or t[-1] >= self.n:
                raise ValueError(f"edge {e} has a vertex outside 0..{self.n - 1}")
            canon.append(t)
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edges")
        canon.sort(key=colex_rank)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in set(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def induced(self, vertices: Sequence[int]) -> "Hypergraph":
        """Subhypergraph induced by `vertices`, relabelled to 0..len-1."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        keep = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return Hypergraph(self.k, len(vs), tuple(keep))

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        return Hypergraph(self.k, self.n, tuple(tuple(sorted(perm[v] for v in e)) for e in self.edges))


def complete_hypergraph(k: int, n: int) -> Hypergraph:
    return Hypergraph(k, n, tuple(combinations(range(n), k)))


def single_edge(k: int) -> Hypergraph:
    return Hypergraph(k, k, (tuple(range(k)),))


def ell_path(k: int, ell: int, n: int) -> Hypergraph:
    """The k-uniform path on n vertices whose consecutive edges overlap in ell vertices.

    Exists only for n >= k with n = ell (mod k-ell); edge i covers the window of
    k consecutive vertices starting at i*(k-ell).
    """
    if not 1 <= ell <= k - 1:
        raise ValueError(f"ell must satisfy 1 <= ell <= k-1, got ell={ell}, k={k}")
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    if (n - ell) % (k - ell) != 0:
        raise ValueError(
            f"no such path: n={n} must satisfy n = {ell} (mod {k - ell})"
        )
    q = (n - ell) // (k - ell)
    edges = [tuple(range(i * (k - ell), i * (k - ell) + k)) for i in range(q)]
    return Hypergraph(k, n, tuple(edges))


def ell_cycle(k: int, ell: int, n: int) -> Hypergraph:
    """The k-uniform cycle on n vertices with consecutive overlaps of ell vertices."""
    if not 1 <= ell <= k - 1:
        raise ValueError(f"ell must satisfy 1 <= ell <= k-1, got ell={ell}, k={k}")
    if n % (k - ell) != 0:
        raise ValueError(
            f"no such cycle: n={n} must satisfy n = 0 (mod {k - ell})"
        )
    if n < k:
        raise ValueError(f"degenerate cycle: wrap repeats a vertex (n={n} < k={k})")
    q = n // (k - ell)
    edges = []
    for i in range(q):
        e = tuple(sorted((i * (k - ell) + j) % n for j in range(k)))
        edges.append(e)
    if len(set(edges)) != q:
        raise ValueError(f"degenerate cycle: edges coincide at n={n}, k={k}, ell={ell}")
    return Hypergraph(k, n, tuple(edges))


def fano() -> Hypergraph:
    """The 7-point plane from the cyclic difference set {0,1,3} mod 7.

    The constructor asserts that every pair of points lies in exactly one
    line, so any correct line set is interchangeable with this one.
    """
    lines = [tuple(sorted(((i + d) % 7 for d in (0, 1, 3)))) for i in range(7)]
    hg = Hypergraph(3, 7, tuple(lines))
    cover = {pair: 0 for pair in combinations(range(7), 2)}
    for e in hg.edges:
        for pair in combinations(e, 2):
            cover[pair] += 1
    assert all(c == 1 for c in cover.values()), "pair coverage violated"
    return hg


# ---------------------------------------------------------------------------
# tournaments


@dataclass(frozen=True)
class Tournament:
    """An orientation of the complete graph on 0..n-1.

    For each pair i < j, bit colex_rank((i, j)) of `bits` is 1 iff the arc is
    i -> j (and 0 iff it is j -> i).
    """

    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >= (1 << comb(self.n, 2)):
            raise ValueError("arc bitmap out of range")

    @staticmethod
    def _pair_rank(i: int, j: int) -> int:
        return i + comb(j, 2)

    def has_arc(self, u: int, v: int) -> bool:
        """True iff the arc u -> v is present."""
        if u == v:
            raise ValueError("no loops in a tournament")
        if u < v:
            return bool(self.bits >> self._pair_rank(u, v) & 1)
        return not self.bits >> self._pair_rank(v, u) & 1

    def arcs(self) -> Iterator[tuple[int, int]]:
        for i, j in combinations(range(self.n), 2):
            yield (i, j) if self.has_arc(i, j) else (j, i)

    def out_neighbours(self, v: int) -> list[int]:
        return [u for u in range(self.n) if u != v and self.has_arc(v, u)]

    def relabel(self, perm: Sequence[int]) -> "Tournament":
        return Tournament.from_arcs(self.n, [(perm[u], perm[v]) for u, v in self.arcs()])

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Tournament":
        seen = {}
        bits = 0
        for u, v in arcs:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"pair {key} oriented twice")
            seen[key] = True
            if u < v:
                bits |= 1 << cls._pair_rank(u, v)
        if len(seen) != comb(n, 2):
            raise ValueError("not every pair is oriented")
        return cls(n, bits)

    @classmethod
    def transitive(cls, n: int) -> "Tournament":
        """The transitive tournament with arcs i -> j for all i < j."""
        return cls(n, (1 << comb(n, 2)) - 1 if n >= 2 else 0)

    @classmethod
    def cyclic_triangle(cls) -> "Tournament":
        return cls.from_arcs(3, [(0, 1), (1, 2), (2, 0)])

    @classmethod
    def random(cls, n: int, rng: Random) -> "Tournament":
        bits = rng.getrandbits(comb(n, 2)) if n >= 2 else 0
        return cls(n, bits)


# ---------------------------------------------------------------------------
# two-colourings of complete k-graphs


RED = "red"
BLUE = "blue"


def opposite(colour: str) -> str:
    if colour == RED:
        return BLUE
    if colour == BLUE:
        return RED
    raise ValueError(f"unknown colour {colour!r}")


@dataclass(frozen=True)
class TwoColoring:
    """A red/blue colouring of all k-subsets of [n]: bit r set = edge of rank r is red."""

    k: int
    n: int
    red_bits: int

    def __post_init__(self):
        if self.red_bits < 0 or self.red_bits >= (1 << self.num_edges):
            raise ValueError("red bitmap has bits outside 0..C(n,k)-1")

    @property
    def num_edges(self) -> int:
        return comb(self.n, self.k)

    def rank(self, edge: Iterable[int]) -> int:
        return colex_rank(tuple(sorted(edge)))

    def is_red(self, edge: Iterable[int]) -> bool:
        return bool(self.red_bits >> self.rank(edge) & 1)

    def colour_of(self, edge: Iterable[int]) -> str:
        return RED if self.is_red(edge) else BLUE

    def has_colour(self, edge: Iterable[int], colour: str) -> bool:
        return self.is_red(edge) == (colour == RED)

    def count_red(self) -> int:
        return self.red_bits.bit_count()

    def edges_of(self, colour: str) -> list[tuple[int, ...]]:
        subs = colex_subsets(self.k, self.n)
        want_red = colour == RED
        return [s for r, s in enumerate(subs) if bool(self.red_bits >> r & 1) == want_red]

    def mono_subgraph(self, colour: str) -> Hypergraph:
        return Hypergraph(self.k, self.n, tuple(self.edges_of(colour)))

    def relabel(self, perm: Sequence[int]) -> "TwoColoring":
        table = colex_rank_table(self.k, self.n)
        bits = 0
        for r, s in enumerate(colex_subsets(self.k, self.n)):
            if self.red_bits >> r & 1:
                bits |= 1 << table[tuple(sorted(perm[v] for v in s))]
        return TwoColoring(self.k, self.n, bits)

    @classmethod
    def all_red(cls, k: int, n: int) -> "TwoColoring":
        return cls(k, n, (1 << comb(n, k)) - 1)

    @classmethod
    def all_blue(cls, k: int, n: int) -> "TwoColoring":
        return cls(k, n, 0)

    @classmethod
    def from_red_edges(cls, k: int, n: int, red_edges: Iterable[Iterable[int]]) -> "TwoColoring":
        bits = 0
        for e in red_edges:
            bits |= 1 << colex_rank(tuple(sorted(e)))
        return cls(k, n, bits)

    @classmethod
    def random(cls, k: int, n: int, red_probability: float, seed: int = 0) -> "TwoColoring":
        rng = Random(seed)
        bits = 0
        for r in range(comb(n, k)):
            if rng.random() < red_probability:
                bits |= 1 << r
        return cls(k, n, bits)


# ---------------------------------------------------------------------------
# chi / sigma and the general Ramsey lower bound


@dataclass(frozen=True)
class RamseyProfile:
    """Exact chromatic number, minimum colour-class size, and a witness colouring."""

    chi: int
    sigma: int
    witness: tuple[int, ...]
    flags: tuple[str, ...] = ()


def _proper_colourings(hg: Hypergraph, colours: int) -> Iterator[tuple[int, ...]]:
    """All proper vertex colourings using colours 0..colours-1, up to colour
    relabelling (canonical first-use order), in lexicographic order."""
    n = hg.n
    edges_by_last = [[] for _ in range(n)]
    for e in hg.edges:
        edges_by_last[e[-1]].append(e)
    assignment = [0] * n

    def rec(v: int, used: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(assignment)
            return
        cap = min(used + 1, colours)
        for c in range(cap):
            assignment[v] = c
            ok = True
            for e in edges_by_last[v]:
                first = assignment[e[0]]
                if first == c and all(assignment[u] == c for u in e[1:-1]):
                    ok = False
                    break
            if ok:
                yield from rec(v + 1, max(used, c + 1))
        assignment[v] = 0

    yield from rec(0, 0)


def ramsey_profile(hg: Hypergraph, max_vertices: int | None = None) -> RamseyProfile:
    """Exact chi and sigma of a hypergraph by exhaustive proper-colouring search.

    A colouring is proper when no edge is monochromatic; sigma is the smallest
    colour class over all proper colourings with exactly chi colours.  The
    default size guard can be overridden via HYPERRAMSEY_PROFILE_GUARD.
    """
    if max_vertices is None:
        import os

        max_vertices = int(os.environ.get("HYPERRAMSEY_PROFILE_GUARD") or 16)
    if hg.n == 0:
        raise ValueError("empty hypergraph has no chromatic data")
    if hg.n > max_vertices:
        raise GuardExceeded(f"{hg.n} vertices exceeds exact-search guard {max_vertices}")
    chi = None
    for c in range(1, hg.n + 1):
        if next(_proper_colourings(hg, c), None) is not None:
            chi = c
            break
    assert chi is not None  # colouring every vertex differently is always proper
    best_sigma = None
    best_witness = None
    for assignment in _proper_colourings(hg, chi):
        sizes = [0] * chi
        for c in assignment:
            sizes[c] += 1
        s = min(sizes)
        if best_sigma is None or s < best_sigma:
            best_sigma = s
            best_witness = assignment
    flags = ("edgeless-chi-1",) if chi == 1 else ()
    return RamseyProfile(chi, best_sigma, best_witness, flags)


def verify_profile(hg: Hypergraph, profile: RamseyProfile) -> bool:
    """Independent one-pass check of a profile's witness and class sizes."""
    witness = profile.witness
    if len(witness) != hg.n:
        return False
    used = sorted(set(witness))
    if used != list(range(profile.chi)):
        return False
    for e in hg.edges:
        if len({witness[v] for v in e}) == 1:
            return False
    sizes = [sum(1 for c in witness if c == i) for i in range(profile.chi)]
    return min(sizes) == profile.sigma


@dataclass(frozen=True)
class BurrBound:
    """The general lower bound (v(G)-1)(chi-1)+sigma, with its hypothesis flag."""

    value: int
    hypothesis_ok: bool


def burr_bound(v_g: int, profile: RamseyProfile) -> BurrBound:
    """Lower bound for R(G, H) from chi(H) and sigma(H); needs v(G) >= sigma(H).

    When the hypothesis fails the value is still computed, with a warning flag.
    """
    value = (v_g - 1) * (profile.chi - 1) + profile.sigma
    return BurrBound(value, hypothesis_ok=v_g >= profile.sigma)


# ---------------------------------------------------------------------------
# tournament hypergraphs


def tournament_hypergraph(t: Tournament, m: int) -> tuple[Hypergraph, tuple[tuple[int, ...], ...]]:
    """The 3-graph whose edges are two vertices of class i plus one of class j per arc (i, j).

    Classes A_1..A_{v(T)} are the consecutive blocks of size m.  Returns the
    hypergraph together with its class partition.
    """
    if m < 1:
        raise ValueError("class size m must be at least 1")
    classes = tuple(tuple(range(i * m, (i + 1) * m)) for i in range(t.n))
    edges = []
    for i, j in t.arcs():
        for x, y in combinations(classes[i], 2):
            for z in classes[j]:
                edges.append(tuple(sorted((x, y, z))))
    return Hypergraph(3, t.n * m, tuple(edges)), classes


def transitive_tournament_hypergraph(chi: int, m: int) -> tuple[Hypergraph, tuple[tuple[int, ...], ...]]:
    return tournament_hypergraph(Tournament.transitive(chi), m)


# ---------------------------------------------------------------------------
# JSON interchange (bit-exact formats shared by all modules and the CLI)


def hypergraph_to_json(hg: Hypergraph) -> dict:
    return {"k": hg.k, "n": hg.n, "edges": [list(e) for e in hg.edges]}


def hypergraph_from_json(obj: dict) -> Hypergraph:
    return Hypergraph(int(obj["k"]), int(obj["n"]), tuple(tuple(e) for e in obj["edges"]))


def coloring_to_json(col: TwoColoring) -> dict:
    nbytes = (col.num_edges + 7) // 8
    raw = col.red_bits.to_bytes(nbytes, "little")
    return {
        "k": col.k,
        "n": col.n,
        "encoding": "colex-v1",
        "red_bitmap": base64.b64encode(raw).decode("ascii"),
    }


def coloring_from_json(obj: dict) -> TwoColoring:
    if obj.get("encoding") != "colex-v1":
        raise ValueError(f"unsupported colouring encoding {obj.get('encoding')!r}")
    k, n = int(obj["k"]), int(obj["n"])
    raw = base64.b64decode(obj["red_bitmap"])
    expected = (comb(n, k) + 7) // 8
    if len(raw) != expected:
        raise ValueError(f"bitmap length {len(raw)} != expected {expected} bytes")
    return TwoColoring(k, n, int.from_bytes(raw, "little"))


def tournament_to_json(t: Tournament) -> dict:
    return {"n": t.n, "arcs": [list(a) for a in t.arcs()]}


def tournament_from_json(obj: dict) -> Tournament:
    return Tournament.from_arcs(int(obj["n"]), [tuple(a) for a in obj["arcs"]])

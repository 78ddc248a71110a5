"""Exact monochromatic-substructure searchers with re-checkable certificates.

Every search either returns a witness (a path, an embedding, an independent
set, ...) that re-validates against the input in a single pass, or attests
absence after exhausting its search space.  Guards are soft: when an instance
exceeds its guard the search runs under a node budget and the certificate is
flagged inexact instead of silently approximating.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .core import (
    BLUE,
    GuardExceeded,
    Hypergraph,
    RED,
    Tournament,
    TwoColoring,
    colex_rank,
    ell_cycle,
    ell_path,
)

DEFAULT_NODE_BUDGET = 500_000


def _env_guard(name: str, default: int) -> int:
    """Guard sizes default from the environment (HYPERRAMSEY_*_GUARD)."""
    value = os.environ.get(name)
    return int(value) if value else default


@dataclass
class Certificate:
    """A machine-checkable search outcome.

    kind is one of: red_path, blue_path, red_cycle, blue_cycle, red_embedding,
    blue_embedding, free, not_free, independent_set, tt_embedding, chain,
    mono_biclique.  `witness` is None for exhaustive absence attestations.
    """

    kind: str
    witness: object = None
    stats: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": self.witness, "stats": self.stats, "detail": self.detail}

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        return cls(obj["kind"], obj.get("witness"), dict(obj.get("stats", {})), dict(obj.get("detail", {})))


# ---------------------------------------------------------------------------
# witness validators (single linear pass; used by tests, engines and cmd_check)


def path_edges(seq: list[int] | tuple[int, ...], k: int, ell: int) -> list[tuple[int, ...]]:
    """Edge windows of the vertex sequence read as a k-uniform ell-path."""
    n = len(seq)
    if n < k or (n - ell) % (k - ell) != 0:
        raise ValueError(f"sequence of length {n} is not an ell-path shape for k={k}, ell={ell}")
    q = (n - ell) // (k - ell)
    return [tuple(seq[i * (k - ell): i * (k - ell) + k]) for i in range(q)]


def cycle_edges(seq: list[int] | tuple[int, ...], k: int, ell: int) -> list[tuple[int, ...]]:
    n = len(seq)
    if n < k or n % (k - ell) != 0:
        raise ValueError(f"sequence of length {n} is not an ell-cycle shape for k={k}, ell={ell}")
    q = n // (k - ell)
    return [tuple(seq[(i * (k - ell) + j) % n] for j in range(k)) for i in range(q)]


def validate_mono_path(col: TwoColoring, seq, ell: int, colour: str) -> bool:
    """Check distinctness, window overlaps and edge colours of a path witness."""
    seq = list(seq)
    if len(set(seq)) != len(seq) or any(not 0 <= v < col.n for v in seq):
        return False
    try:
        windows = path_edges(seq, col.k, ell)
    except ValueError:
        return False
    return all(col.has_colour(w, colour) for w in windows)


def validate_mono_cycle(col: TwoColoring, seq, ell: int, colour: str) -> bool:
    seq = list(seq)
    if len(set(seq)) != len(seq) or any(not 0 <= v < col.n for v in seq):
        return False
    try:
        windows = cycle_edges(seq, col.k, ell)
    except ValueError:
        return False
    if len(set(tuple(sorted(w)) for w in windows)) != len(windows):
        return False
    return all(col.has_colour(w, colour) for w in windows)


def validate_embedding(col: TwoColoring, target: Hypergraph, mapping, colour: str) -> bool:
    """Check that `mapping` is injective and sends every target edge to `colour`."""
    mapping = list(mapping)
    if len(mapping) != target.n or len(set(mapping)) != target.n:
        return False
    if any(not 0 <= v < col.n for v in mapping):
        return False
    return all(col.has_colour([mapping[v] for v in e], colour) for e in target.edges)


def validate_independent_set(hg: Hypergraph, vertices) -> bool:
    vs = set(vertices)
    if len(vs) != len(list(vertices)) or any(not 0 <= v < hg.n for v in vs):
        return False
    return all(not set(e) <= vs for e in hg.edges)


def validate_tt_embedding(t: Tournament, order) -> bool:
    order = list(order)
    if len(set(order)) != len(order):
        return False
    return all(t.has_arc(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order)))


# ---------------------------------------------------------------------------
# longest monochromatic ell-path


def _default_path_guard(k: int, ell: int) -> int:
    if ell == 1:
        return _env_guard("HYPERRAMSEY_LOOSE_PATH_GUARD", 20)
    return _env_guard("HYPERRAMSEY_PATH_GUARD", 16)


def longest_mono_ell_path(
    col: TwoColoring,
    ell: int,
    colour: str,
    guard: int | None = None,
    node_budget: int | None = None,
) -> tuple[int, Certificate]:
    """Exact maximum vertex count of a monochromatic ell-path, with a witness.

    Returns (vertices, certificate); a path with q edges has ell + q*(k-ell)
    vertices, so the no-edge degenerate path counts ell vertices.  DFS over
    (ordered boundary, used set) states with a transposition table and a
    remaining-vertices bound; ties are broken toward lowest colex rank so the
    witness is deterministic.
    """
    k = col.k
    if not 1 <= ell <= k - 1:
        raise ValueError("ell out of range")
    if guard is None:
        guard = _default_path_guard(k, ell)
    exact = True
    if col.n > guard and node_budget is None:
        exact = False
        node_budget = DEFAULT_NODE_BUDGET

    mono = [e for e in col.edges_of(colour)]
    stats = {"nodes": 0, "prunes": 0}
    if not mono:
        cert = Certificate(
            kind=f"{colour}_path",
            witness=[],
            stats=stats,
            detail={"edges": 0, "vertices": ell, "ell": ell, "k": k, "exact": True},
        )
        return ell, cert

    by_boundary: dict[frozenset, list[tuple[int, ...]]] = {}
    for e in mono:
        for s in combinations(e, ell):
            by_boundary.setdefault(frozenset(s), []).append(e)

    budget_hit = False
    best = {"edges": 0, "seq": []}
    memo: dict[tuple, int] = {}
    keep = max(0, 2 * ell - k)  # boundary suffix carried into the next boundary
    fresh_pick = ell - keep

    def extensions(boundary: tuple[int, ...], used: int):
        bset = frozenset(boundary)
        out = []
        for e in by_boundary.get(bset, ()):  # candidate next edges
            inter_count = sum(1 for v in e if used >> v & 1)
            if inter_count != ell:  # e already contains bset, so == ell means exactly bset
                continue
            fresh = sorted(v for v in e if not used >> v & 1)
            for pick in combinations(fresh, fresh_pick):
                interior = [v for v in fresh if v not in pick]
                for arr in permutations(pick):
                    out.append((e, interior, arr))
        out.sort(key=lambda t: (colex_rank(tuple(sorted(t[0]))), t[1], t[2]))
        return out

    def dfs(boundary: tuple[int, ...], used: int, edges_so_far: int, seq: list[int]) -> int:
        nonlocal budget_hit
        stats["nodes"] += 1
        if node_budget is not None and stats["nodes"] > node_budget:
            budget_hit = True
            return 0
        if edges_so_far > best["edges"]:
            best["edges"] = edges_so_far
            best["seq"] = list(seq)
        avail = col.n - used.bit_count()
        if edges_so_far + avail // (k - ell) <= best["edges"]:
            stats["prunes"] += 1
            return 0
        key = (boundary, used)
        cached = memo.get(key)
        if cached is not None and edges_so_far + cached <= best["edges"]:
            return cached
        best_add = 0
        for e, interior, arr in extensions(boundary, used):
            add_used = used
            for v in e:
                add_used |= 1 << v
            newb = tuple(boundary[k - ell:]) + arr
            seq.extend(interior)
            seq.extend(arr)
            got = 1 + dfs(newb, add_used, edges_so_far + 1, seq)
            del seq[len(seq) - (len(interior) + len(arr)):]
            best_add = max(best_add, got)
        if not budget_hit:
            memo[key] = best_add
        return best_add

    for e in sorted(mono, key=lambda e: colex_rank(e)):
        used = 0
        for v in e:
            used |= 1 << v
        for bnd in permutations(e, ell):
            interior = sorted(v for v in e if v not in bnd)
            seq = interior + list(bnd)
            dfs(tuple(bnd), used, 1, seq)

    vertices = ell + best["edges"] * (k - ell)
    cert = Certificate(
        kind=f"{colour}_path",
        witness=list(best["seq"]),
        stats=stats,
        detail={
            "edges": best["edges"],
            "vertices": vertices,
            "ell": ell,
            "k": k,
            "exact": exact and not budget_hit,
        },
    )
    return vertices, cert


# ---------------------------------------------------------------------------
# monochromatic copies of an arbitrary hypergraph


def _pattern_order(target: Hypergraph) -> list[int]:
    """Most-constrained-first vertex order: max edges into already-ordered set."""
    deg = target.degrees()
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < target.n:
        def score(v):
            anchored = sum(1 for e in target.edges if v in e and sum(1 for u in e if u in placed) == target.k - 1)
            touching = sum(1 for e in target.edges if v in e and any(u in placed for u in e))
            return (anchored, touching, deg[v], -v)
        v = max((v for v in range(target.n) if v not in placed), key=score)
        order.append(v)
        placed.add(v)
    return order


def find_mono_copy(
    col: TwoColoring,
    target: Hypergraph,
    colour: str,
    node_budget: int | None = None,
    forbidden: frozenset = frozenset(),
) -> Certificate:
    """Backtracking injective embedding of `target` into the given colour.

    Returns a certificate whose witness is a host-vertex list indexed by
    target vertex, or an exhaustive absence attestation (witness None).
    Vertices in `forbidden` are excluded from the image.
    """
    k = col.k
    if target.k != k:
        raise ValueError("uniformity mismatch")
    stats = {"nodes": 0, "prunes": 0}
    if target.n > col.n - len(forbidden):
        return Certificate(kind=f"{colour}_embedding", witness=None, stats=stats,
                           detail={"exact": True, "reason": "target larger than host"})

    order = _pattern_order(target)
    pos_in_order = {v: i for i, v in enumerate(order)}
    # edges become checkable at the order-position of their latest vertex
    edges_at = [[] for _ in range(target.n)]
    for e in target.edges:
        last = max(pos_in_order[v] for v in e)
        edges_at[last].append(e)

    tdeg = target.degrees()
    host_deg = [0] * col.n
    for e in col.edges_of(colour):
        for v in e:
            host_deg[v] += 1

    image = [-1] * target.n
    used: set[int] = set()
    budget_hit = False

    def rec(i: int) -> bool:
        nonlocal budget_hit
        stats["nodes"] += 1
        if node_budget is not None and stats["nodes"] > node_budget:
            budget_hit = True
            return False
        if i == target.n:
            return True
        tv = order[i]
        for hv in range(col.n):
            if hv in used or hv in forbidden or host_deg[hv] < tdeg[tv]:
                continue
            image[tv] = hv
            ok = True
            for e in edges_at[i]:
                if not col.has_colour([image[u] for u in e], colour):
                    ok = False
                    break
            if ok:
                used.add(hv)
                if rec(i + 1):
                    return True
                used.discard(hv)
            else:
                stats["prunes"] += 1
        image[tv] = -1
        return False

    found = rec(0)
    if found:
        return Certificate(kind=f"{colour}_embedding", witness=list(image), stats=stats,
                           detail={"exact": True, "target_edges": target.num_edges})
    return Certificate(kind=f"{colour}_embedding", witness=None, stats=stats,
                       detail={"exact": not budget_hit})


def find_mono_clique(
    col: TwoColoring,
    size: int,
    colour: str,
    pool: list[int] | None = None,
) -> tuple[int, ...] | None:
    """First (colex-least) `size`-set of `pool` whose k-subsets are all `colour`."""
    k = col.k
    pool = sorted(range(col.n)) if pool is None else sorted(pool)
    if size < k:
        return tuple(pool[:size]) if len(pool) >= size else None

    chosen: list[int] = []

    def rec(start: int) -> tuple[int, ...] | None:
        if len(chosen) == size:
            return tuple(chosen)
        if len(pool) - start < size - len(chosen):
            return None
        for idx in range(start, len(pool)):
            v = pool[idx]
            ok = True
            if len(chosen) >= k - 1:
                for rest in combinations(chosen, k - 1):
                    if not col.has_colour(rest + (v,), colour):
                        ok = False
                        break
            if ok:
                chosen.append(v)
                got = rec(idx + 1)
                if got is not None:
                    return got
                chosen.pop()
        return None

    return rec(0)


# ---------------------------------------------------------------------------
# freeness verification


def parse_pattern(spec: str) -> tuple[str, dict]:
    """Parse a pattern mini-language string.

    Supported: path:k:ell:n, cycle:k:ell:n, clique:k:n, edge:k, fano,
    tth:chi:m (the transitive tournament hypergraph).
    """
    parts = spec.split(":")
    name = parts[0]
    args = [int(p) for p in parts[1:]]
    if name == "path" and len(args) == 3:
        return "path", {"k": args[0], "ell": args[1], "n": args[2]}
    if name == "cycle" and len(args) == 3:
        return "cycle", {"k": args[0], "ell": args[1], "n": args[2]}
    if name == "clique" and len(args) == 2:
        return "clique", {"k": args[0], "n": args[1]}
    if name == "edge" and len(args) == 1:
        return "edge", {"k": args[0]}
    if name == "fano" and not args:
        return "fano", {}
    if name == "tth" and len(args) == 2:
        return "tth", {"chi": args[0], "m": args[1]}
    raise ValueError(f"cannot parse pattern {spec!r}")


def pattern_hypergraph(spec: str) -> Hypergraph:
    from .core import complete_hypergraph, fano, single_edge, transitive_tournament_hypergraph

    name, a = parse_pattern(spec)
    if name == "path":
        return ell_path(a["k"], a["ell"], a["n"])
    if name == "cycle":
        return ell_cycle(a["k"], a["ell"], a["n"])
    if name == "clique":
        return complete_hypergraph(a["k"], a["n"])
    if name == "edge":
        return single_edge(a["k"])
    if name == "fano":
        return fano()
    if name == "tth":
        return transitive_tournament_hypergraph(a["chi"], a["m"])[0]
    raise AssertionError


def search_pattern(col: TwoColoring, spec: str, colour: str, node_budget: int | None = None) -> Certificate:
    """Search one colour for the pattern; path patterns use the dedicated
    longest-path search, everything else the generic embedding search."""
    name, a = parse_pattern(spec)
    if name == "path":
        if a["k"] != col.k:
            raise ValueError("uniformity mismatch")
        vertices, cert = longest_mono_ell_path(col, a["ell"], colour, node_budget=node_budget)
        found = vertices >= a["n"]
        witness = None
        if found:
            # a longer path contains the target as a prefix
            q = (a["n"] - a["ell"]) // (col.k - a["ell"])
            witness = cert.witness[: a["ell"] + q * (col.k - a["ell"])]
        return Certificate(
            kind=f"{colour}_path",
            witness=witness,
            stats=cert.stats,
            detail={**cert.detail, "pattern": spec, "max_vertices": vertices},
        )
    target = pattern_hypergraph(spec)
    cert = find_mono_copy(col, target, colour, node_budget=node_budget)
    cert.detail["pattern"] = spec
    if name == "cycle":
        cert.kind = f"{colour}_cycle"
        if cert.found:
            # reconstruct the cyclic vertex sequence from the embedding
            cert.detail["sequence"] = [cert.witness[v] for v in range(target.n)]
    return cert


def verify_free(col, red_pattern: str, blue_target: Hypergraph | str,
                node_budget: int | None = None) -> Certificate:
    """Certify that a colouring has no red copy of the pattern and no blue copy
    of the target (kind "free"), or exhibit the offending witness (kind
    "not_free").  Accepts a colouring or anything carrying one (such as a
    lower-bound instance)."""
    col = getattr(col, "coloring", col)
    red_cert = search_pattern(col, red_pattern, RED, node_budget=node_budget)
    if red_cert.found:
        return Certificate(kind="not_free", witness=red_cert.witness,
                           stats=red_cert.stats,
                           detail={"side": RED, "pattern": red_pattern, "inner": red_cert.to_json()})
    if isinstance(blue_target, str):
        blue_cert = search_pattern(col, blue_target, BLUE, node_budget=node_budget)
        blue_desc = blue_target
    else:
        blue_cert = find_mono_copy(col, blue_target, BLUE, node_budget=node_budget)
        blue_desc = "hypergraph"
    if blue_cert.found:
        return Certificate(kind="not_free", witness=blue_cert.witness,
                           stats=blue_cert.stats,
                           detail={"side": BLUE, "pattern": blue_desc, "inner": blue_cert.to_json()})
    exact = red_cert.detail.get("exact", True) and blue_cert.detail.get("exact", True)
    stats = {
        "nodes": red_cert.stats.get("nodes", 0) + blue_cert.stats.get("nodes", 0),
        "prunes": red_cert.stats.get("prunes", 0) + blue_cert.stats.get("prunes", 0),
    }
    return Certificate(kind="free", witness=None, stats=stats,
                       detail={"red_pattern": red_pattern, "blue_pattern": blue_desc, "exact": exact})


# ---------------------------------------------------------------------------
# independence number


def independence_number(hg: Hypergraph, guard: int | None = None,
                        node_budget: int | None = None) -> tuple[int, Certificate]:
    """Exact independence number by branch and bound on vertex inclusion."""
    if guard is None:
        guard = _env_guard("HYPERRAMSEY_INDEPENDENCE_GUARD", 20)
    if hg.n > guard and node_budget is None:
        raise GuardExceeded(f"{hg.n} vertices exceeds independence guard {guard}")
    stats = {"nodes": 0, "prunes": 0}
    edges = [frozenset(e) for e in hg.edges]
    incident = [[] for _ in range(hg.n)]
    for idx, e in enumerate(edges):
        for v in e:
            incident[v].append(idx)
    count = [0] * len(edges)
    best = {"size": -1, "set": []}
    chosen: list[int] = []

    def rec(v: int):
        stats["nodes"] += 1
        if len(chosen) > best["size"]:
            best["size"] = len(chosen)
            best["set"] = list(chosen)
        if v == hg.n:
            return
        if len(chosen) + hg.n - v <= best["size"]:
            stats["prunes"] += 1
            return
        # include v unless it completes an edge
        completes = any(count[i] == hg.k - 1 for i in incident[v])
        if not completes:
            chosen.append(v)
            for i in incident[v]:
                count[i] += 1
            rec(v + 1)
            for i in incident[v]:
                count[i] -= 1
            chosen.pop()
        rec(v + 1)

    rec(0)
    cert = Certificate(kind="independent_set", witness=best["set"], stats=stats,
                       detail={"alpha": best["size"], "exact": True})
    return best["size"], cert


# ---------------------------------------------------------------------------
# two-edge loose paths (pairwise scan)


def has_two_edge_loose_path(hg: Hypergraph) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """True iff two edges share exactly one vertex, with the witness pair."""
    edges = hg.edges
    for i in range(len(edges)):
        si = set(edges[i])
        for j in range(i + 1, len(edges)):
            if len(si.intersection(edges[j])) == 1:
                return True, (edges[i], edges[j])
    return False, None


# ---------------------------------------------------------------------------
# transitive subtournaments


def find_transitive_subtournament(t: Tournament, chi: int) -> Certificate:
    """Exact search for chi vertices orderable with all arcs forward."""
    stats = {"nodes": 0, "prunes": 0}
    if chi <= 0:
        return Certificate(kind="tt_embedding", witness=[], stats=stats, detail={"exact": True})

    out_mask = [0] * t.n
    for u, v in t.arcs():
        out_mask[u] |= 1 << v

    order: list[int] = []

    def rec(candidates: int) -> bool:
        stats["nodes"] += 1
        if len(order) == chi:
            return True
        if len(order) + candidates.bit_count() < chi:
            stats["prunes"] += 1
            return False
        c = candidates
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            order.append(v)
            if rec(candidates & out_mask[v]):
                return True
            order.pop()
        return False

    all_mask = (1 << t.n) - 1
    if rec(all_mask):
        return Certificate(kind="tt_embedding", witness=list(order), stats=stats, detail={"exact": True})
    return Certificate(kind="tt_embedding", witness=None, stats=stats, detail={"exact": True})

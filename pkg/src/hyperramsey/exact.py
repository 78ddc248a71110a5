"""Exact desk-scale Ramsey quantities by exhaustive enumeration.

ramsey_exact decides, for increasing n, whether a free colouring of the
complete k-graph exists, by DFS over edge colours in colex-bit order: a branch
is pruned the moment the edge just coloured completes a red copy of the
pattern or a blue copy of the target, so every leaf reached is a free
colouring.  tau_exact enumerates edge families that pairwise intersect in 0 or
>= 2 vertices (the structure forced by having no two-edge loose path).
directed_ramsey_exact grows tournaments vertex by vertex, pruning as soon as a
transitive subtournament of the forbidden order appears.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

from .core import (
    BLUE,
    GuardExceeded,
    Hypergraph,
    RED,
    RamseyProfile,
    Tournament,
    TwoColoring,
    colex_subsets,
    ramsey_profile,
)
from .constructions import tau_lower_construction, _tau_lower_size
from .search import (
    find_mono_copy,
    find_transitive_subtournament,
    independence_number,
    parse_pattern,
    pattern_hypergraph,
    search_pattern,
)

FULL_ENUM_BITS = 24          # below this many edges, plain DFS is always fine
MAX_ENUM_BITS = 36           # hard ceiling for the pruned search


# ---------------------------------------------------------------------------
# incremental copy detection for the colouring DFS


def pattern_uniformity(spec: str) -> int:
    name, args = parse_pattern(spec)
    if name in ("fano", "tth"):
        return 3
    return args["k"]


class _PatternWatcher:
    """Detects whether colouring one more edge completes a copy of the pattern.

    For path patterns this grows the path outward from the anchor edge in both
    directions; for everything else it tries every way of mapping a target
    edge onto the anchor and extends by backtracking over the remaining target
    vertices.
    """

    def __init__(self, pattern: str | Hypergraph, n: int):
        self.n = n
        if isinstance(pattern, str):
            self.name, self.args = parse_pattern(pattern)
            if self.name == "path":
                self.k = self.args["k"]
                self.ell = self.args["ell"]
                self.target_edges = (self.args["n"] - self.ell) // (self.k - self.ell)
            else:
                self.target = pattern_hypergraph(pattern)
                self.k = self.target.k
        else:
            self.name = "hypergraph"
            self.target = pattern
            self.k = pattern.k

    def completes(self, edge_set: set[frozenset], new_edge: tuple[int, ...]) -> bool:
        """True iff `edge_set` (which already contains new_edge) has a copy of
        the pattern through new_edge."""
        if self.name == "edge":
            return True
        if self.name == "path":
            return self._path_through(edge_set, new_edge)
        return self._copy_through(edge_set, new_edge)

    # -- paths -----------------------------------------------------------------

    def _path_through(self, edge_set, anchor) -> bool:
        k, ell = self.k, self.ell
        need = self.target_edges
        if need == 1:
            return True
        by_sub: dict[frozenset, list[frozenset]] = {}
        for e in edge_set:
            for s in combinations(sorted(e), ell):
                by_sub.setdefault(frozenset(s), []).append(e)

        def grow_all(boundary, used, steps):
            """All used-sets reachable by exactly `steps` path extensions."""
            if steps == 0:
                yield used
                return
            bset = frozenset(boundary)
            keep = boundary[k - ell:]
            for e in by_sub.get(bset, ()):
                if len(e & used) != ell:
                    continue
                fresh = sorted(e - used)
                for pick in permutations(fresh, ell - len(keep)):
                    yield from grow_all(tuple(keep) + pick, used | e, steps - 1)

        def can_grow(boundary, used, steps):
            if steps == 0:
                return True
            bset = frozenset(boundary)
            keep = boundary[k - ell:]
            for e in by_sub.get(bset, ()):
                if len(e & used) != ell:
                    continue
                fresh = sorted(e - used)
                for pick in permutations(fresh, ell - len(keep)):
                    if can_grow(tuple(keep) + pick, used | e, steps - 1):
                        return True
            return False

        anchor_f = frozenset(anchor)
        for arrangement in permutations(anchor):
            head_rev = tuple(reversed(arrangement[:ell]))  # boundary for leftward growth
            tail = tuple(arrangement[k - ell:])            # boundary for rightward growth
            for right in range(need):
                left = need - 1 - right
                for used_right in grow_all(tail, anchor_f, right):
                    if can_grow(head_rev, used_right, left):
                        return True
        return False

    # -- generic targets ---------------------------------------------------------

    def _copy_through(self, edge_set, anchor) -> bool:
        target = self.target
        anchor = tuple(sorted(anchor))
        for t_edge in target.edges:
            for img in permutations(anchor):
                mapping = dict(zip(t_edge, img))
                if len(mapping) == self.k and self._extend(edge_set, mapping):
                    return True
        return False

    def _extend(self, edge_set, mapping) -> bool:
        target = self.target
        for e in target.edges:
            if all(v in mapping for v in e):
                if frozenset(mapping[v] for v in e) not in edge_set:
                    return False
        unmapped = [v for v in range(target.n) if v not in mapping]
        used = set(mapping.values())

        def rec(i):
            if i == len(unmapped):
                return True
            tv = unmapped[i]
            for hv in range(self.n):
                if hv in used:
                    continue
                mapping[tv] = hv
                good = True
                for e in target.edges:
                    if tv in e and all(v in mapping for v in e):
                        if frozenset(mapping[v] for v in e) not in edge_set:
                            good = False
                            break
                if good:
                    used.add(hv)
                    if rec(i + 1):
                        return True
                    used.discard(hv)
                del mapping[tv]
            return False

        return rec(0)


def free_coloring_exists(
    red_pattern: str,
    blue_target: Hypergraph | str,
    n: int,
    node_cap: int | None = None,
) -> tuple[bool | None, TwoColoring | None, dict]:
    """Decide whether a (red_pattern, blue_target)-free colouring of the
    complete k-graph on n vertices exists.

    Returns (exists, witness, stats); exists is None when the node cap was hit
    before the search space was exhausted.
    """
    k = pattern_uniformity(red_pattern)
    nbits = comb(n, k)
    if nbits > MAX_ENUM_BITS:
        raise GuardExceeded(f"C({n},{k}) = {nbits} edges exceeds enumeration ceiling {MAX_ENUM_BITS}")

    red_watch = _PatternWatcher(red_pattern, n)
    blue_watch = _PatternWatcher(blue_target, n)

    subsets = colex_subsets(k, n)
    stats = {"nodes": 0, "prunes": 0}
    red_set: set[frozenset] = set()
    blue_set: set[frozenset] = set()
    capped = False

    def dfs(r: int, bits: int):
        nonlocal capped
        stats["nodes"] += 1
        if node_cap is not None and stats["nodes"] > node_cap:
            capped = True
            return None
        if r == nbits:
            return bits
        e = subsets[r]
        ef = frozenset(e)
        # red branch
        red_set.add(ef)
        if not red_watch.completes(red_set, e):
            got = dfs(r + 1, bits | (1 << r))
            if got is not None:
                red_set.discard(ef)
                return got
        else:
            stats["prunes"] += 1
        red_set.discard(ef)
        if capped:
            return None
        # blue branch
        blue_set.add(ef)
        if not blue_watch.completes(blue_set, e):
            got = dfs(r + 1, bits)
            if got is not None:
                blue_set.discard(ef)
                return got
        else:
            stats["prunes"] += 1
        blue_set.discard(ef)
        return None

    bits = dfs(0, 0)
    if bits is not None:
        return True, TwoColoring(k, n, bits), stats
    if capped:
        return None, None, stats
    return False, None, stats


# ---------------------------------------------------------------------------
# R(G, H)


@dataclass
class RamseyResult:
    red_pattern: str
    value: int | None            # exact value, or None when only bounded
    lower_bound: int
    exact: bool
    lower_witness: TwoColoring | None
    upper_evidence: dict | None
    stats: dict = field(default_factory=dict)

    def bracket(self) -> tuple[int, int | None]:
        return (self.lower_bound, self.value if self.exact else None)


def ramsey_exact(
    red_pattern: str,
    blue_target: Hypergraph | str,
    n_cap: int,
    node_cap: int | None = None,
) -> RamseyResult:
    """Least n such that no free colouring of the complete k-graph exists,
    searched upward from n = k; a lower-bound-only result past n_cap."""
    k = pattern_uniformity(red_pattern)
    witness = TwoColoring(k, k - 1, 0)  # empty colouring on k-1 vertices is always free
    total_stats = {"nodes": 0, "prunes": 0, "levels": {}}
    for n in range(k, n_cap + 1):
        exists, wit, stats = free_coloring_exists(red_pattern, blue_target, n, node_cap=node_cap)
        total_stats["nodes"] += stats["nodes"]
        total_stats["prunes"] += stats["prunes"]
        total_stats["levels"][n] = dict(stats)
        if exists is None:
            return RamseyResult(red_pattern, None, n, False, witness,
                                None, total_stats)
        if exists:
            witness = wit
            continue
        return RamseyResult(red_pattern, n, n, True, witness,
                            {"exhausted_at": n, "nodes": stats["nodes"]}, total_stats)
    return RamseyResult(red_pattern, None, n_cap + 1, False, witness, None, total_stats)


def free_colorings_bruteforce(red_pattern: str, blue_target: Hypergraph | str, n: int) -> list[int]:
    """All free colourings of K_n by unpruned enumeration of every bitmap.

    Independent of the DFS path; only feasible for C(n,k) <= ~14 bits.
    """
    k = pattern_uniformity(red_pattern)
    nbits = comb(n, k)
    out = []
    for bits in range(1 << nbits):
        col = TwoColoring(k, n, bits)
        red = search_pattern(col, red_pattern, RED)
        if red.found:
            continue
        if isinstance(blue_target, str):
            blue = search_pattern(col, blue_target, BLUE)
        else:
            blue = find_mono_copy(col, blue_target, BLUE)
        if not blue.found:
            out.append(bits)
    return out


# ---------------------------------------------------------------------------
# tau(k, alpha)


@dataclass
class TauResult:
    k: int
    alpha: int
    value: int | None
    lower: int
    upper: int
    exact: bool
    witness: Hypergraph | None
    flags: tuple[str, ...] = ()
    stats: dict = field(default_factory=dict)


def _tau_witness_exists(k: int, alpha: int, n: int, node_cap: int | None, stats: dict) -> Hypergraph | None:
    """Search for an n-vertex k-graph with independence < alpha and no
    two-edge loose path, i.e. all pairwise edge intersections in {0} u [2, k].
    """
    candidates = list(combinations(range(n), k))
    masks = [sum(1 << v for v in e) for e in candidates]
    chosen: list[int] = []
    chosen_masks: list[int] = []

    def alpha_below(edge_idxs) -> bool:
        hg = Hypergraph(k, n, tuple(candidates[i] for i in edge_idxs))
        a, _ = independence_number(hg, guard=n)
        return a < alpha

    # bound: even with every candidate edge present the independence number
    # cannot drop below that of the complete k-graph restricted to compatibles
    def rec(start: int) -> list[int] | None:
        stats["nodes"] += 1
        if node_cap is not None and stats["nodes"] > node_cap:
            raise GuardExceeded("tau search node cap")
        if alpha_below(chosen):
            return list(chosen)
        # upper bound check: adding all still-compatible edges
        compat = [i for i in range(start, len(candidates))
                  if all(_compatible(masks[i], m) for m in chosen_masks)]
        if chosen or compat:
            hg_max = Hypergraph(k, n, tuple(candidates[i] for i in chosen + compat))
            a_min, _ = independence_number(hg_max, guard=n)
            if a_min >= alpha:
                stats["prunes"] += 1
                return None
        for pos, i in enumerate(compat):
            chosen.append(i)
            chosen_masks.append(masks[i])
            got = rec(i + 1)
            chosen.pop()
            chosen_masks.pop()
            if got is not None:
                return got
        return None

    def _compatible(m1: int, m2: int) -> bool:
        return (m1 & m2).bit_count() != 1

    got = rec(0)
    if got is None:
        return None
    return Hypergraph(k, n, tuple(candidates[i] for i in got))


def tau_exact(k: int, alpha: int, n_cap: int | None = None, node_cap: int | None = None) -> TauResult:
    """Largest n admitting a k-graph with independence < alpha and no two-edge
    loose path, searched downward from the proven ceiling 2*alpha - 2."""
    if k < 2 or alpha < 1:
        raise ValueError("need k >= 2, alpha >= 1")
    stats = {"nodes": 0, "prunes": 0}
    if alpha == 1:
        # independence number below 1 forces the empty vertex set
        return TauResult(k, alpha, 0, 0, 0, True, Hypergraph(k, 0, ()),
                         flags=("alpha-1-degenerate",), stats=stats)
    if alpha < k:
        wit = tau_lower_construction(k, alpha)
        return TauResult(k, alpha, alpha - 1, alpha - 1, alpha - 1, True, wit,
                         flags=("trivial-regime",), stats=stats)
    lower = _tau_lower_size(k, alpha)
    upper = 2 * alpha - 2
    start = upper if n_cap is None else min(upper, n_cap)
    try:
        for n in range(start, lower - 1, -1):
            wit = _tau_witness_exists(k, alpha, n, node_cap, stats)
            if wit is not None:
                exact = start == upper
                return TauResult(k, alpha, n if exact else None, n, upper, exact, wit, stats=stats)
    except GuardExceeded:
        wit = tau_lower_construction(k, alpha)
        return TauResult(k, alpha, None, lower, upper, False, wit,
                         flags=("budget-exceeded",), stats=stats)
    # cannot happen: the explicit construction exists at `lower`
    raise AssertionError("tau search failed below the constructive lower bound")


# ---------------------------------------------------------------------------
# directed Ramsey numbers


@dataclass
class DirectedRamseyResult:
    chi: int
    value: int | None
    lower_bound: int
    exact: bool
    witness: Tournament | None   # a TT_chi-free tournament on value-1 vertices
    stats: dict = field(default_factory=dict)


def _contains_tt_through_last(arcs_out: list[int], n: int, chi: int) -> bool:
    """Does the tournament on 0..n-1 contain a transitive chi-set using n-1?

    A transitive set is a chain in which each vertex dominates all later ones,
    so the search intersects out-neighbourhood masks.
    """
    last = n - 1
    out_mask = arcs_out
    found = False

    def rec(order_len: int, candidates: int, contains_last: bool):
        nonlocal found
        if found:
            return
        if order_len == chi:
            if contains_last:
                found = True
            return
        if order_len + candidates.bit_count() < chi:
            return
        if not contains_last and not (candidates >> last & 1):
            return
        c = candidates
        while c and not found:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            rec(order_len + 1, candidates & out_mask[v], contains_last or v == last)

    rec(0, (1 << n) - 1, False)
    return found


def _arcs_from_masks(arcs_out: list[int], n: int):
    for u in range(n):
        m = arcs_out[u]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            yield (u, v)


def _ttfree_tournament_exists(chi: int, order: int, stats: dict) -> Tournament | None:
    """DFS over labelled tournaments grown one vertex at a time, pruning as
    soon as a transitive chi-subtournament appears."""
    arcs_out = [0] * order

    def rec(v: int) -> bool:
        stats["nodes"] += 1
        if v == order:
            return True
        for pattern in range(1 << v):
            # bit u of pattern set = arc v -> u
            arcs_out[v] = pattern
            for u in range(v):
                if pattern >> u & 1:
                    pass
                else:
                    arcs_out[u] |= 1 << v
            if not _contains_tt_through_last(arcs_out, v + 1, chi):
                if rec(v + 1):
                    return True
            else:
                stats["prunes"] += 1
            for u in range(v):
                arcs_out[u] &= ~(1 << v)
        arcs_out[v] = 0
        return False

    if rec(0):
        return Tournament.from_arcs(order, _arcs_from_masks(arcs_out, order))
    return None


def directed_ramsey_exact(chi: int, n_cap: int = 9) -> DirectedRamseyResult:
    """Least N such that every tournament on N vertices contains the
    transitive tournament on chi vertices."""
    if chi < 1:
        raise ValueError("chi must be positive")
    stats = {"nodes": 0, "prunes": 0}
    if chi == 1:
        return DirectedRamseyResult(1, 1, 1, True, Tournament(0, 0), stats)
    # any tournament on chi-1 vertices is TT_chi-free
    witness = Tournament.transitive(chi - 1)
    for order in range(chi, n_cap + 1):
        level = {"nodes": 0, "prunes": 0}
        t = _ttfree_tournament_exists(chi, order, level)
        stats["nodes"] += level["nodes"]
        stats["prunes"] += level["prunes"]
        if t is None:
            return DirectedRamseyResult(chi, order, order, True, witness, stats)
        witness = t
    return DirectedRamseyResult(chi, None, n_cap + 1, False, witness, stats)


@dataclass
class GapCheckReport:
    chi: int
    value: int
    previous: int
    inequality_holds: bool
    augmented_witness: Tournament
    augmented_ttfree: bool


def consecutive_gap_check(chi: int, n_cap: int = 9) -> GapCheckReport:
    """Check R_vec(chi) >= R_vec(chi-1) + 2 and re-validate the constructive
    witness: a TT_{chi-1}-free tournament extended by one dominating vertex,
    one dominated vertex, and the back arc between them."""
    if chi < 3:
        raise ValueError("gap check needs chi >= 3")
    cur = directed_ramsey_exact(chi, n_cap)
    prev = directed_ramsey_exact(chi - 1, n_cap)
    if not (cur.exact and prev.exact):
        raise GuardExceeded("both directed Ramsey values must be exact")
    base = prev.witness  # TT_{chi-1}-free on prev.value - 1 vertices
    m = base.n
    arcs = list(base.arcs())
    v1, v2 = m, m + 1
    for u in range(m):
        arcs.append((v1, u))
        arcs.append((u, v2))
    arcs.append((v2, v1))
    augmented = Tournament.from_arcs(m + 2, arcs)
    cert = find_transitive_subtournament(augmented, chi)
    return GapCheckReport(
        chi=chi,
        value=cur.value,
        previous=prev.value,
        inequality_holds=cur.value >= prev.value + 2,
        augmented_witness=augmented,
        augmented_ttfree=not cert.found,
    )


# ---------------------------------------------------------------------------
# goodness verdicts


@dataclass
class GoodnessReport:
    red_pattern: str
    burr: int
    hypothesis_ok: bool
    ramsey_lower: int
    ramsey_value: int | None
    gap: int | None
    verdict: str  # good | not-good | undecided


def goodness_gap(red_pattern: str, target: Hypergraph, result: RamseyResult,
                 profile: RamseyProfile | None = None) -> GoodnessReport:
    from .core import burr_bound

    if profile is None:
        profile = ramsey_profile(target)
    _, args = parse_pattern(red_pattern)
    v_g = args.get("n", args.get("k"))
    bb = burr_bound(v_g, profile)
    if result.exact:
        gap = result.value - bb.value
        verdict = "good" if gap == 0 else "not-good"
        return GoodnessReport(red_pattern, bb.value, bb.hypothesis_ok,
                              result.lower_bound, result.value, gap, verdict)
    if result.lower_bound > bb.value:
        return GoodnessReport(red_pattern, bb.value, bb.hypothesis_ok,
                              result.lower_bound, None, None, "not-good")
    return GoodnessReport(red_pattern, bb.value, bb.hypothesis_ok,
                          result.lower_bound, None, None, "undecided")

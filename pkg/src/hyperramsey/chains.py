"""Clique chains and the machinery that builds them.

A clique chain is an ordered vertex set covered by intervals, each inducing a
red clique, with consecutive intervals overlapping in exactly ell positions.
Because interval boundaries sit on the (k-ell)-grid, every window of k
consecutive vertices lies inside one interval, so a valid chain always carries
a spanning ell-path (or ell-cycle when the chain is closed).

Intervals are stored as (start, length) pairs over the chain's index space;
for closed chains the index space is cyclic and intervals may wrap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import BLUE, RED, TwoColoring
from .search import Certificate, find_mono_clique

OPEN = "open"
CLOSED = "closed"


@dataclass(frozen=True)
class CliqueChain:
    kind: str
    k: int
    ell: int
    vertices: tuple[int, ...]
    intervals: tuple[tuple[int, int], ...]  # (start, length)
    flags: tuple[str, ...] = ()

    @property
    def p(self) -> int:
        return len(self.vertices)

    def element_positions(self, j: int) -> list[int]:
        s, length = self.intervals[j]
        if self.kind == OPEN:
            return list(range(s, s + length))
        return [(s + i) % self.p for i in range(length)]

    def element_vertices(self, j: int) -> list[int]:
        return [self.vertices[i] for i in self.element_positions(j)]

    def is_flexible(self, j: int) -> bool:
        return self.intervals[j][1] > max(self.k, 2 * self.ell)

    def flexible_elements(self) -> list[int]:
        return [j for j in range(len(self.intervals)) if self.is_flexible(j)]

    def junction_positions(self) -> set[int]:
        """Positions shared by consecutive intervals (the spine positions)."""
        out: set[int] = set()
        d = len(self.intervals)
        juncs = range(1, d) if self.kind == OPEN else range(d)
        for j in juncs:
            s = self.intervals[j][0]
            for i in range(self.ell):
                out.add((s + i) % self.p if self.kind == CLOSED else s + i)
        return out

    def spine_vertices(self) -> set[int]:
        return {self.vertices[i] for i in self.junction_positions()}


def chain_from_sequence(kind: str, k: int, ell: int, seq: list[int]) -> CliqueChain:
    """The chain whose elements are exactly the edge windows of an ell-path or
    ell-cycle vertex sequence."""
    p = len(seq)
    if kind == OPEN:
        q = (p - ell) // (k - ell)
    else:
        q = p // (k - ell)
    intervals = tuple((i * (k - ell), k) for i in range(q))
    return CliqueChain(kind, k, ell, tuple(seq), intervals)


def validate_chain(chain: CliqueChain, coloring: TwoColoring | None = None) -> Certificate:
    """Check all chain invariants; redness of the elements is checked when a
    colouring is supplied.  Violations are reported per offending interval."""
    problems: list[str] = []
    k, ell, p = chain.k, chain.ell, chain.p
    d = len(chain.intervals)
    if chain.kind not in (OPEN, CLOSED):
        problems.append(f"unknown kind {chain.kind!r}")
    if len(set(chain.vertices)) != p:
        problems.append("vertex list has repeats")
    if coloring is not None and any(not 0 <= v < coloring.n for v in chain.vertices):
        problems.append("vertex outside the host")
    if d == 0:
        problems.append("no intervals")
    if chain.kind == CLOSED and d < 2:
        problems.append("closed chain needs at least two elements")
    if chain.kind == CLOSED and p <= k:
        problems.append("closed chain order must exceed k (wrap would repeat an edge)")
    for j, (s, length) in enumerate(chain.intervals):
        if length < k:
            problems.append(f"interval {j}: length {length} < k")
        if (length - ell) % (k - ell) != 0:
            problems.append(f"interval {j}: length {length} != ell (mod k-ell)")
        if length > p:
            problems.append(f"interval {j}: longer than the chain")
    if not problems:
        # consecutive overlaps of exactly ell, in order, covering everything
        if chain.kind == OPEN:
            if chain.intervals[0][0] != 0:
                problems.append("interval 0 must start at position 0")
            for j in range(1, d):
                prev_s, prev_len = chain.intervals[j - 1]
                if chain.intervals[j][0] != prev_s + prev_len - ell:
                    problems.append(f"interval {j}: junction overlap is not exactly ell")
            if not problems:
                last_s, last_len = chain.intervals[-1]
                if last_s + last_len != p:
                    problems.append("intervals do not cover the chain")
        else:
            if chain.intervals[0][0] != 0:
                problems.append("interval 0 must start at position 0")
            for j in range(1, d):
                prev_s, prev_len = chain.intervals[j - 1]
                if chain.intervals[j][0] != prev_s + prev_len - ell:
                    problems.append(f"interval {j}: junction overlap is not exactly ell")
            if not problems:
                last_s, last_len = chain.intervals[-1]
                if last_s + last_len - ell != p:
                    problems.append("cyclic closure overlap is not exactly ell")
    red_failures = []
    if coloring is not None and not problems:
        for j in range(d):
            verts = chain.element_vertices(j)
            for sub in combinations(sorted(verts), k):
                if not coloring.is_red(sub):
                    red_failures.append((j, sub))
                    break
    if red_failures:
        problems.extend(f"interval {j}: k-set {sub} is not red" for j, sub in red_failures)
    flexible = chain.flexible_elements() if not problems else []
    detail = {
        "valid": not problems,
        "problems": problems,
        "flexible_elements": flexible,
        "rigid_elements": [j for j in range(d) if j not in flexible] if not problems else [],
        "spine_vertices": sorted(chain.spine_vertices()) if not problems else [],
    }
    kind = "chain" if not problems else "chain_invalid"
    return Certificate(kind=kind, witness={"vertices": list(chain.vertices),
                                           "intervals": [list(i) for i in chain.intervals],
                                           "kind": chain.kind, "k": k, "ell": ell},
                       detail=detail)


def spanning_path(chain: CliqueChain) -> tuple[list[int], list[tuple[int, ...]]]:
    """The spanning ell-path (ell-cycle if closed) of a valid chain.

    Interval starts are multiples of k-ell, so every edge window of the
    chain's vertex order lies inside one element; within a red-validated chain
    all these windows are red.
    """
    cert = validate_chain(chain)
    if not cert.detail["valid"]:
        raise ValueError(f"invalid chain: {cert.detail['problems']}")
    k, ell, p = chain.k, chain.ell, chain.p
    seq = list(chain.vertices)
    if chain.kind == OPEN:
        q = (p - ell) // (k - ell)
        edges = [tuple(seq[i * (k - ell): i * (k - ell) + k]) for i in range(q)]
    else:
        q = p // (k - ell)
        edges = [tuple(seq[(i * (k - ell) + j) % p] for j in range(k)) for i in range(q)]
    return seq, edges


def cut_open(chain: CliqueChain) -> CliqueChain:
    """Open a closed chain by splitting one flexible element in two, discarding
    the few middle vertices needed to keep both parts = ell (mod k-ell).

    The split point is the median of the element's span; the choice is recorded
    in the result's flags.
    """
    if chain.kind == OPEN:
        return chain
    k, ell, p = chain.k, chain.ell, chain.p
    d = len(chain.intervals)

    def min_part() -> int:
        length = k
        while (length - ell) % (k - ell) != 0:
            length += 1
        return length

    base = min_part()
    candidates = sorted(range(d), key=lambda j: -chain.intervals[j][1])
    for j in candidates:
        s, length = chain.intervals[j]
        # left part anchored at the element start, right part at its end
        left = (length // 2 - base) // (k - ell) * (k - ell) + base if length // 2 >= base else None
        if left is None:
            continue
        right_max = length - left
        right = (right_max - base) // (k - ell) * (k - ell) + base if right_max >= base else None
        if right is None:
            continue
        discard = length - left - right
        # rotate so the right part opens the chain and the left part ends it
        cut_start = (s + length - right) % p
        order = [(cut_start + i) % p for i in range(right)]
        pos_map = {}
        new_vertices = []
        for i in order:
            pos_map[i] = len(new_vertices)
            new_vertices.append(chain.vertices[i])
        intervals = [(0, right)]
        cursor = right - ell
        for step in range(1, d):
            jj = (j + step) % d
            length_jj = chain.intervals[jj][1]
            start_jj = chain.intervals[jj][0]
            for i in range(length_jj):
                ip = (start_jj + i) % p
                if ip not in pos_map:
                    pos_map[ip] = len(new_vertices)
                    new_vertices.append(chain.vertices[ip])
            intervals.append((cursor, length_jj))
            cursor += length_jj - ell
        for i in range(left):
            ip = (s + i) % p
            if ip not in pos_map:
                pos_map[ip] = len(new_vertices)
                new_vertices.append(chain.vertices[ip])
        intervals.append((cursor, left))
        out = CliqueChain(OPEN, k, ell, tuple(new_vertices), tuple(intervals),
                          flags=chain.flags + (f"cut-open:element={j},discarded={discard}",))
        cert = validate_chain(out)
        if cert.detail["valid"]:
            return out
    # no element is splittable: drop the smallest element instead, keeping its
    # junction vertices inside the neighbouring elements
    if d >= 2:
        j = min(range(d), key=lambda jj: (chain.intervals[jj][1], jj))
        new_vertices = []
        pos_map = {}
        intervals = []
        cursor = 0
        for step in range(1, d):
            jj = (j + step) % d
            s_jj, len_jj = chain.intervals[jj]
            for i in range(len_jj):
                ip = (s_jj + i) % p
                if ip not in pos_map:
                    pos_map[ip] = len(new_vertices)
                    new_vertices.append(chain.vertices[ip])
            intervals.append((cursor, len_jj))
            cursor += len_jj - ell
        out = CliqueChain(OPEN, k, ell, tuple(new_vertices), tuple(intervals),
                          flags=chain.flags + (f"cut-open:dropped-element={j}",))
        cert = validate_chain(out)
        if cert.detail["valid"]:
            return out
    raise ValueError("no flexible element is large enough to cut open")


# ---------------------------------------------------------------------------
# monochromatic clique partition


@dataclass
class CliquePartition:
    blocks: list[tuple[str, tuple[int, ...]]]  # (colour, vertices)
    leftover: tuple[int, ...]
    red_size: int
    blue_size: int

    def red_blocks(self) -> list[tuple[int, ...]]:
        return [b for c, b in self.blocks if c == RED]

    def blue_blocks(self) -> list[tuple[int, ...]]:
        return [b for c, b in self.blocks if c == BLUE]


def clique_partition(col: TwoColoring, red_size: int, blue_size: int,
                     pool: list[int] | None = None) -> CliquePartition:
    """Greedy repeated extraction of red or blue cliques of the given orders.

    The leftover is directly verified to contain neither clique: the loop only
    stops when both searches come back empty.
    """
    if red_size < col.k or blue_size < col.k:
        raise ValueError("clique orders must be at least k")
    remaining = sorted(range(col.n)) if pool is None else sorted(pool)
    blocks: list[tuple[str, tuple[int, ...]]] = []
    while True:
        red = find_mono_clique(col, red_size, RED, pool=remaining)
        if red is not None:
            blocks.append((RED, red))
            remaining = [v for v in remaining if v not in set(red)]
            continue
        blue = find_mono_clique(col, blue_size, BLUE, pool=remaining)
        if blue is not None:
            blocks.append((BLUE, blue))
            remaining = [v for v in remaining if v not in set(blue)]
            continue
        break
    return CliquePartition(blocks, tuple(remaining), red_size, blue_size)


# ---------------------------------------------------------------------------
# doubled-tree closed walks


def double_tree_walk(edges: list[tuple[int, int]], root: int | None = None) -> list[int]:
    """Closed walk of a tree that visits every vertex and traverses every edge
    exactly twice (once per direction), via depth-first traversal.

    The walk is returned as a vertex list whose first and last entries agree.
    """
    vertices = sorted({v for e in edges for v in e})
    if not edges:
        if root is not None:
            return [root]
        if len(vertices) <= 1:
            return vertices or []
        raise ValueError("edgeless input with several vertices is not a tree")
    if len(edges) != len(vertices) - 1:
        raise ValueError("edge count does not match a tree")
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        if u == v:
            raise ValueError("loops are not tree edges")
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    start = root if root is not None else vertices[0]
    if start not in adj:
        raise ValueError("root is not a tree vertex")
    walk = [start]
    seen = {start}

    def dfs(u: int):
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                walk.append(w)
                dfs(w)
                walk.append(u)

    dfs(start)
    if len(seen) != len(vertices):
        raise ValueError("input is not connected, hence not a tree")
    return walk


# ---------------------------------------------------------------------------
# path systems


@dataclass
class PathSystem:
    k: int
    ell: int
    t: int
    forest_edges: list[tuple[int, int]]
    paths: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...]]]
    stalled: bool = False
    diagnostic: str | None = None
    stall_blocks: tuple[int, ...] = ()
    no_two_disjoint_connectors: bool = False  # verified exhaustively on exit
    usage_ok: bool = True
    usage: dict[int, int] | None = None

    def used_vertices(self) -> set[int]:
        out: set[int] = set()
        for pair in self.paths.values():
            for path in pair:
                out.update(path)
        return out

    def components(self) -> list[set[int]]:
        parent = list(range(self.t))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.forest_edges:
            parent[find(u)] = find(v)
        comps: dict[int, set[int]] = {}
        for v in range(self.t):
            comps.setdefault(find(v), set()).add(v)
        return sorted(comps.values(), key=min)


def q0(k: int, ell: int) -> int:
    """Minimum length of an ell-path on at least max(k, 2*ell) vertices."""
    return -(-ell // (k - ell))


def _path_order(k: int, ell: int, q: int) -> int:
    return q * (k - ell) + ell


def _find_connector(col: TwoColoring, k: int, ell: int, q: int,
                    side_a: list[int], side_b: list[int], pool: set[int]) -> tuple[int, ...] | None:
    """First red ell-path of length q whose first ell vertices lie in side_a,
    last ell in side_b, all vertices drawn from the pool."""
    order = _path_order(k, ell, q)
    a_set = sorted(v for v in side_a if v in pool)
    b_set = sorted(v for v in side_b if v in pool)
    if len(a_set) < ell or len(b_set) < ell:
        return None
    mid_set = sorted(pool)
    seq: list[int] = []

    def rec(pos: int) -> bool:
        if pos == order:
            return True
        if pos < ell:
            domain = a_set
        elif pos >= order - ell:
            domain = b_set
        else:
            domain = mid_set
        for v in domain:
            if v in seq:
                continue
            seq.append(v)
            ok = True
            # validate the window completed by this position, if any
            if pos + 1 >= k and (pos + 1 - k) % (k - ell) == 0:
                ok = col.is_red(seq[pos + 1 - k: pos + 1])
            if ok and rec(pos + 1):
                return True
            seq.pop()
        return False

    if rec(0):
        return tuple(seq)
    return None


def _find_short_connector(col: TwoColoring, k: int, ell: int,
                          side_a: list[int], side_b: list[int], pool: set[int],
                          max_order: int) -> tuple[int, ...] | None:
    for q in range(1, (max_order - ell) // (k - ell) + 1):
        order = _path_order(k, ell, q)
        if order > max_order:
            break
        if q == 1 and 2 * ell > k:
            continue  # the two ends of a single edge overlap, cannot join disjoint sets
        got = _find_connector(col, k, ell, q, side_a, side_b, pool)
        if got is not None:
            return got
    return None


def build_path_system(col: TwoColoring, blocks: list[tuple[int, ...]], ell: int,
                      alpha: int, epsilon: float) -> PathSystem:
    """Iteratively connect red-clique blocks by pairs of short vertex-disjoint
    red ell-paths until fewer than alpha forest components remain, then add
    further forest edges while any two disjoint short connectors exist between
    distinct components.

    A stall (no connector while >= alpha components remain) is returned as a
    first-class outcome; it indicates the blue side of the dichotomy.
    """
    k = col.k
    if ell not in (1, k - 1):
        raise ValueError("path systems are built for ell = 1 or ell = k-1 only")
    t = len(blocks)
    system = PathSystem(k, ell, t, [], {})
    if t == 0:
        return system
    qq = q0(k, ell)

    def used() -> set[int]:
        return system.used_vertices()

    def add_edge(i: int, j: int, p1: tuple[int, ...], p2: tuple[int, ...]):
        """Record forest edge {i, j}; both paths must run from min(i,j) to max."""
        key = (min(i, j), max(i, j))
        system.forest_edges.append(key)
        system.paths[key] = (p1, p2)

    while len(system.components()) >= alpha:
        comps = system.components()
        u = used()
        reps = []
        for comp in comps:
            rep = min(comp, key=lambda i: (sum(1 for v in blocks[i] if v in u), i))
            reps.append(rep)
        avail = {i: [v for v in blocks[i] if v not in u] for i in reps}
        pool = {v for vs in avail.values() for v in vs}
        merged = False
        if ell == k - 1:
            # collect disjoint connectors until two join the same block pair
            seen_pairs: dict[tuple[int, int], tuple[int, ...]] = {}
            local_pool = set(pool)
            while True:
                got = None
                for i in sorted(reps):
                    for j in sorted(reps):
                        if i == j:
                            continue
                        p = _find_connector(col, k, ell, qq,
                                            [v for v in avail[i] if v in local_pool],
                                            [v for v in avail[j] if v in local_pool],
                                            local_pool)
                        if p is not None:
                            got = (i, j, p)
                            break
                    if got:
                        break
                if got is None:
                    break
                i, j, p = got
                key = (min(i, j), max(i, j))
                oriented = p if i < j else tuple(reversed(p))
                if key in seen_pairs:
                    add_edge(key[0], key[1], seen_pairs[key], oriented)
                    merged = True
                    break
                seen_pairs[key] = oriented
                local_pool -= set(p)
        else:
            # ell = 1: a red crossing matching grouped by block signature
            matching: list[tuple[int, ...]] = []
            local_pool = set(pool)
            block_of = {}
            for i in reps:
                for v in avail[i]:
                    block_of[v] = i
            for e in col.edges_of(RED):
                if not all(v in local_pool for v in e):
                    continue
                touched = {block_of[v] for v in e if v in block_of}
                if len(touched) < 2:
                    continue
                matching.append(e)
                local_pool -= set(e)
            groups: dict[tuple, list[tuple[int, ...]]] = {}
            for e in matching:
                sig = tuple(sorted(block_of[v] for v in e if v in block_of))
                groups.setdefault(sig, []).append(e)
            best_sig = None
            for sig, es in sorted(groups.items()):
                support = sorted(set(sig))
                if len(support) >= 2 and len(es) >= 2 * (len(support) - 1):
                    best_sig = (support, es)
                    break
            if best_sig is not None:
                support, es = best_sig
                idx = 0
                for a, b in zip(support, support[1:]):
                    pair = []
                    for e in es[idx: idx + 2]:
                        first = min(v for v in e if block_of.get(v) == a)
                        last = min(v for v in e if block_of.get(v) == b)
                        middle = sorted(set(e) - {first, last})
                        pair.append(tuple([first] + middle + [last]))
                    idx += 2
                    add_edge(a, b, pair[0], pair[1])
                merged = True
        if not merged:
            system.stalled = True
            system.diagnostic = (
                f"no connector among blocks {tuple(reps)} with >= {alpha} components left"
            )
            system.stall_blocks = tuple(reps)
            return system

    # augmentation: join components while two disjoint short connectors exist
    changed = True
    while changed:
        changed = False
        comps = system.components()
        u = used()
        for ca in range(len(comps)):
            for cb in range(ca + 1, len(comps)):
                for i in sorted(comps[ca]):
                    for j in sorted(comps[cb]):
                        pool = set(v for v in range(col.n) if v not in u)
                        lo, hi = min(i, j), max(i, j)
                        p1 = _find_short_connector(col, k, ell, list(blocks[lo]), list(blocks[hi]),
                                                   pool, 2 * k)
                        if p1 is None:
                            continue
                        p2 = _find_short_connector(col, k, ell, list(blocks[lo]), list(blocks[hi]),
                                                   pool - set(p1), 2 * k)
                        if p2 is None:
                            continue
                        add_edge(lo, hi, p1, p2)
                        changed = True
                        break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break
    # the augmentation loop exits only when no pair of disjoint short
    # connectors joins two components, which is exactly the guarantee the
    # assembled chains rely on
    system.no_two_disjoint_connectors = True
    used_final = system.used_vertices()
    system.usage = {i: sum(1 for v in blocks[i] if v in used_final) for i in range(t)}
    system.usage_ok = all(system.usage[i] <= epsilon * len(blocks[i]) + 4 * alpha * k
                          for i in range(t))
    return system


# ---------------------------------------------------------------------------
# chain assembly


@dataclass
class AssemblyReport:
    chains: list[CliqueChain]
    leftover: tuple[int, ...]
    leftover_count: int
    per_block_connector_use: dict[int, int]
    trivial_components: list[int]


def _reserve_junction_path(col: TwoColoring, k: int, ell: int,
                           tail: tuple[int, ...], head: tuple[int, ...],
                           block: tuple[int, ...], used: set[int]) -> tuple[int, ...]:
    """An in-block ell-path of length q0 starting with `tail` and ending with
    `head`; fresh interior vertices are the lowest-index unused block vertices.
    Inside a red clique block any such sequence is red."""
    need = _path_order(k, ell, q0(k, ell)) - 2 * ell
    fresh = [v for v in block if v not in used and v not in tail and v not in head]
    if len(fresh) < need:
        raise ValueError(f"block {block[:3]}... has no room for a junction path")
    return tuple(tail) + tuple(fresh[:need]) + tuple(head)


def assemble_chains(col: TwoColoring, blocks: list[tuple[int, ...]],
                    system: PathSystem, epsilon: float = 0.25) -> AssemblyReport:
    """Join each forest component's blocks into one closed clique chain.

    The doubled-tree walk of the component is the template: its steps are
    replaced by the system's connector paths, alternating with reserved
    in-block junction paths; one junction path per block is then inflated to a
    flexible element of maximal size with the right residue.  Components with
    a single block and no edges become flagged single-element open chains.
    """
    k, ell = system.k, system.ell
    if system.stalled:
        raise ValueError("cannot assemble a stalled path system")
    chains: list[CliqueChain] = []
    trivial: list[int] = []
    used_global: set[int] = set(system.used_vertices())
    connector_use = {i: 0 for i in range(len(blocks))}
    for key in system.paths:
        for path in system.paths[key]:
            for v in path:
                for i, b in enumerate(blocks):
                    if v in b:
                        connector_use[i] += 1
                        break

    for comp in system.components():
        comp_edges = [e for e in system.forest_edges if e[0] in comp]
        if not comp_edges:
            i = min(comp)
            block = [v for v in blocks[i] if v not in used_global]
            length = len(block)
            while length >= k and (length - ell) % (k - ell) != 0:
                length -= 1
            if length < k:
                trivial.append(i)
                continue
            verts = tuple(sorted(block)[:length])
            chains.append(CliqueChain(OPEN, k, ell, verts, ((0, length),),
                                      flags=(f"trivial-single-block:{i}",)))
            used_global.update(verts)
            trivial.append(i)
            continue

        walk = double_tree_walk(comp_edges, root=min(comp))
        steps = list(zip(walk, walk[1:]))  # b = 2 e(T) steps
        # hand each step one unused copy of its edge's two paths
        remaining: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for key, (p1, p2) in system.paths.items():
            if key in comp_edges:
                remaining[key] = [p1, p2]
        conns: list[tuple[int, ...]] = []
        for u, v in steps:
            key = (min(u, v), max(u, v))
            path = remaining[key].pop()
            if u != key[0]:
                path = tuple(reversed(path))
            conns.append(path)  # runs from V_u to V_v

        used = set(used_global)
        for p in conns:
            used.update(p)
        # reserve junction paths: junction j sits in block walk[j], between
        # conns[j-1] (arriving) and conns[j] (leaving)
        b = len(steps)
        junctions: list[tuple[int, ...]] = []
        for j in range(b):
            arriving = conns[(j - 1) % b]
            leaving = conns[j]
            tail = arriving[len(arriving) - ell:]
            head = leaving[:ell]
            jp = _reserve_junction_path(col, k, ell, tail, head, blocks[walk[j]], used)
            used.update(jp)
            junctions.append(jp)

        # inflate one junction per block to a flexible element
        inflate_at: dict[int, int] = {}
        for j in range(b):
            blk = walk[j]
            if blk not in inflate_at:
                inflate_at[blk] = j
        extras: dict[int, list[int]] = {}
        for blk, j in inflate_at.items():
            room = [v for v in blocks[blk] if v not in used]
            base_len = len(junctions[j])
            add = (len(room) // (k - ell)) * (k - ell)
            target = base_len + add
            take = room[:add]
            extras[j] = take
            used.update(take)

        # build the cyclic vertex sequence, anchored at the first junction
        # path: every later segment shares its first ell vertices with the
        # previous segment's tail, and the final connector wraps into the
        # anchor's first ell vertices
        inflated_js = set(inflate_at.values())

        def junction_element(j: int) -> list[int]:
            jp = junctions[j]
            if j in inflated_js and extras.get(j):
                middle = sorted(list(jp[ell: len(jp) - ell]) + extras[j])
                return list(jp[:ell]) + middle + list(jp[len(jp) - ell:])
            return list(jp)

        segments: list[tuple[list[int], bool]] = []  # (vertex run, is one flexible element)
        for j in range(b):
            segments.append((junction_element(j), j in inflated_js))
            segments.append((list(conns[j]), False))

        seq: list[int] = list(segments[0][0])
        intervals: list[tuple[int, int]] = []
        if segments[0][1]:
            intervals.append((0, len(seq)))
        else:
            q = (len(seq) - ell) // (k - ell)
            intervals.extend((i * (k - ell), k) for i in range(q))
        cursor = len(seq)
        for idx in range(1, len(segments)):
            run, flexible = segments[idx]
            base = cursor - ell
            if flexible:
                intervals.append((base, len(run)))
            else:
                q = (len(run) - ell) // (k - ell)
                intervals.extend((base + i * (k - ell), k) for i in range(q))
            if idx == len(segments) - 1:
                seq.extend(run[ell: len(run) - ell])  # tail wraps into the anchor
            else:
                seq.extend(run[ell:])
            cursor += len(run) - ell
        chain = CliqueChain(CLOSED, k, ell, tuple(seq), tuple(intervals))
        cert = validate_chain(chain, col)
        if not cert.detail["valid"]:
            raise AssertionError(f"assembled chain failed validation: {cert.detail['problems']}")
        chains.append(chain)
        used_global.update(seq)

    all_block_vertices = {v for b in blocks for v in b}
    leftover = tuple(sorted(all_block_vertices - used_global))
    return AssemblyReport(chains, leftover, len(leftover), connector_use, trivial)

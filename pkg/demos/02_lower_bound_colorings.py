"""Generate the explicit lower-bound colourings and verify their freeness
with the exact searchers."""

from hyperramsey.core import RED, Tournament, complete_hypergraph, tournament_hypergraph
from hyperramsey.constructions import (
    burr_coloring,
    ell_path_lb,
    loose_cycle_lb,
    loose_path_lb,
    non_transitive_lb,
    tau_lower_construction,
    transitive_lb,
)
from hyperramsey.search import (
    find_mono_copy,
    independence_number,
    has_two_edge_loose_path,
    longest_mono_ell_path,
    verify_free,
)

# The classical block colouring: red cliques kill the connected red pattern,
# the block structure kills the blue target.
inst = burr_coloring(3, chi=2, sigma=2, v_g=4)
cert = verify_free(inst.coloring, "path:3:2:4", complete_hypergraph(3, 4))
print("block colouring on", inst.n, "vertices:", cert.kind)

# For overlaps >= 2 a small extra block forces every red path to die early.
inst = ell_path_lb(3, ell=2, n=8, chi=2)
vmax, _ = longest_mono_ell_path(inst.coloring, 2, RED)
print(f"\ntight-path bound instance: N = {inst.n}, longest red tight path = {vmax}")
print("blue K4 present:", find_mono_copy(inst.coloring, complete_hypergraph(3, 4), "blue").found)

# Loose paths: the last block carries a graph with small independence number
# and no two-edge loose path; here a perfect matching on four vertices.
aux = tau_lower_construction(2, 3)
print("\nauxiliary graph:", aux.edges,
      "| independence:", independence_number(aux)[0],
      "| two-edge loose path:", has_two_edge_loose_path(aux)[0])
inst = loose_path_lb(3, chi=2, n=11, t=3, aux=aux)
cert = verify_free(inst.coloring, "path:3:1:11", inst.blue_target)
print(f"loose-path instance: N = {inst.n}, verdict: {cert.kind}")

# Loose cycles, pencil variant: each full block extends redly into exactly one
# pencil set of the last block.
inst = loose_cycle_lb(3, chi=2, n=6, t=2, variant="pencil", q=2)
cert = verify_free(inst.coloring, "cycle:3:1:6", inst.blue_target)
print(f"\nloose-cycle pencil instance: N = {inst.n}, verdict: {cert.kind}")

# Tournament-hypergraph targets: the non-transitive colouring keeps red tight
# paths inside a staircase.
inst = non_transitive_lb(m=3, t=6)
vmax, _ = longest_mono_ell_path(inst.coloring, 2, RED)
print(f"\nnon-transitive instance: N = {inst.n}, longest red tight path = {vmax} (bound 10)")
target, _ = tournament_hypergraph(Tournament.cyclic_triangle(), 3)
print("blue copy of the cyclic 3-class target:", find_mono_copy(inst.coloring, target, "blue").found)

# The transitive variant blows the Ramsey number up by a factor of the
# directed Ramsey number.
inst = transitive_lb(Tournament.cyclic_triangle(), n=9)
vmax, _ = longest_mono_ell_path(inst.coloring, 2, RED)
print(f"\ntransitive instance: N = {inst.n}, longest red tight path = {vmax} (< 9)")

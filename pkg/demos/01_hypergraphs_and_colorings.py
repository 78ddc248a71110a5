"""Walk through the basic objects: paths, cycles, the 7-point plane,
tournament hypergraphs, colourings, and the chromatic data behind the
general Ramsey lower bound."""

from hyperramsey import (
    TwoColoring,
    Tournament,
    burr_bound,
    colex_rank,
    colex_unrank,
    coloring_to_json,
    ell_cycle,
    ell_path,
    fano,
    ramsey_profile,
    tournament_hypergraph,
)

# Every k-subset of the vertex set has a colexicographic rank; a colouring of
# the complete k-graph is just a bitmap over those ranks.
print("rank of {1,2,3}:", colex_rank((1, 2, 3)))
print("unrank(3, k=3, n=6):", colex_unrank(3, 3, 6))

# Paths and cycles with prescribed consecutive overlaps.
print("\nloose path on 5 vertices:", ell_path(3, 1, 5).edges)
print("tight path on 4 vertices:", ell_path(3, 2, 4).edges)
print("tight cycle on 4 vertices:", ell_cycle(3, 2, 4).edges)

# The 7-point plane: every pair of points lies in exactly one line.
plane = fano()
print("\n7-point plane lines:", plane.edges)
profile = ramsey_profile(plane)
print(f"chi = {profile.chi}, sigma = {profile.sigma}, witness = {profile.witness}")
print("lower bound for a 7-vertex pattern against it:", burr_bound(7, profile).value)

# A tournament hypergraph: two vertices from a class plus one from the class
# its arc points to.
hg, classes = tournament_hypergraph(Tournament.transitive(2), 2)
print("\nH(TT_2, 2) classes:", classes, "edges:", hg.edges)

# Colourings serialise to a compact, bit-exact JSON form.
col = TwoColoring.from_red_edges(3, 5, [(0, 1, 2), (2, 3, 4)])
print("\ncolouring JSON:", coloring_to_json(col))

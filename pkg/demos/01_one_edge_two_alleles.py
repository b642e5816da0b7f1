"""Build the smallest interesting algebra: one edge, two states.

Two connected vertices with states {a, A} give four cells, so sixteen
generator pairs.  A diagonal pair (same parent twice) squares to itself;
a mixed pair spreads its square over the four pairs built from its two
parents, weighted by the measure.
"""

import numpy as np

import evoalg as ev
from evoalg.cells import Cell, PairCell

graph = ev.Graph(2, frozenset({(0, 1)}))
space = ev.StateSpace(2, ("a", "A"))

# one strictly positive weight per cell, keyed by the cell's state tuple
weights = {(1, 1): 0.1, (1, 2): 0.2, (2, 1): 0.3, (2, 2): 0.4}
raw = np.zeros(4)
for states, w in weights.items():
    raw[Cell.from_states(states, 2).index] = w
mu = ev.from_weights(raw, 2, 2)

algebra = ev.build_algebra(graph, space, mu)
print(f"dimension: {algebra.dimension}")

cells = sorted((Cell.from_index(i, 2, 2) for i in range(4)), key=lambda c: c.states)
aa, aA, Aa, AA = cells

print("\nsquaring rows:")
for pair in (PairCell(aa, aa), PairCell(aa, aA), PairCell(aA, Aa)):
    row = algebra.row(pair)
    terms = " + ".join(
        f"{v:.6f} {algebra.pair_label(j)}" for j, v in sorted(row.items())
    )
    print(f"  {pair.label(space)}^2 = {terms}")

# element arithmetic: distinct generators annihilate, squares expand
x = algebra.generator(PairCell(aa, aA))
y = algebra.generator(PairCell(aA, aa))
print("\nproduct of distinct generators is zero:", algebra.multiply(x, y).is_zero())
print("square of a sum doubles the shared row:")
print(" ", algebra.square(x + y))

# a concrete failure of associativity
z = algebra.generator(PairCell(aa, aa))
left = algebra.multiply(algebra.multiply(x, x), z)
right = algebra.multiply(x, algebra.multiply(x, z))
print("\n(x*x)*z =", left)
print("x*(x*z) =", right)
print("associativity gap:", left.distance(right))

# the hierarchy: four self-squaring singletons below six two-element blocks
hierarchy = ev.build_hierarchy(algebra)
print(f"\nhierarchy has {hierarchy.level_count} levels")
for lvl in range(hierarchy.level_count - 1, -1, -1):
    labels = [
        "{" + " ".join(algebra.pair_label(g) for g in block) + "}"
        for block in hierarchy.levels[lvl]
    ]
    print(f"  level {lvl}: {' '.join(labels)}")

counts = ev.structure_counts(algebra)
print(
    f"\ncounts: dimension {counts.dimension}, "
    f"{counts.one_dimensional} one-dimensional subalgebras, "
    f"{counts.four_dimensional} four-dimensional ones"
)

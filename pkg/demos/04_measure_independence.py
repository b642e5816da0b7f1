"""One graph, many measures, one zero pattern.

The coefficient values change with the measure, but which coefficients
vanish is decided by the graph alone.  So any two strictly positive
measures give matrices with identical sparsity and hierarchies with
identical block structure.
"""

import numpy as np

import evoalg as ev

graph = ev.Graph(3, frozenset({(0, 1), (1, 2)}))
space = ev.StateSpace(2)
rng = np.random.default_rng(2024)

reference = ev.build_algebra(
    graph, space, ev.from_weights(rng.uniform(0.1, 1.0, 8), 3, 2)
)
print("path on three vertices, two states, dimension", reference.dimension)

for trial in range(5):
    other = ev.build_algebra(
        graph, space, ev.from_weights(rng.uniform(0.1, 1.0, 8), 3, 2)
    )
    report = ev.iso_check(reference, other)
    print(
        f"trial {trial}: support_equal={report.support_equal} "
        f"skeleton_equal={report.skeleton_equal} -> {report.verdict}"
    )

# same sparsity, different values
index = reference.pair_index(5 * reference.kn + 2)
row_a = reference.row(index)
other = ev.build_algebra(graph, space, ev.from_weights(rng.uniform(0.1, 1.0, 8), 3, 2))
row_b = other.row(index)
print("\none row under two measures (same keys, different values):")
print("  keys equal:", sorted(row_a) == sorted(row_b))
print("  values a:", [round(v, 4) for _, v in sorted(row_a.items())])
print("  values b:", [round(v, 4) for _, v in sorted(row_b.items())])

hierarchy = ev.build_hierarchy(reference)
print(
    f"\nhierarchy: {hierarchy.level_count} levels with "
    f"{[len(level) for level in hierarchy.levels]} blocks per level"
)

counts = ev.structure_counts(reference)
print(
    f"counts: {counts.one_dimensional} singleton subalgebras, "
    f"{counts.four_dimensional} four-dimensional ones"
)

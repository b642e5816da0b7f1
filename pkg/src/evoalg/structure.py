"""Subalgebra generation, hierarchy levels, descent chains and collapses.

The generator set splits into blocks of equal children sets.  Flows between
blocks follow strict containment of children sets, which yields a DAG; the
level of a block is its longest flow distance to a diagonal singleton.
Diagonal pairs sit alone at level 0, every other block strictly above.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import EvolutionAlgebra
from .errors import ValidationError
from .graphs import components

__all__ = [
    "Subalgebra",
    "DescentChain",
    "Hierarchy",
    "StructureCounts",
    "IsoReport",
    "CollapsedTable",
    "generated_subalgebra",
    "precedes",
    "descent_chain",
    "build_hierarchy",
    "structure_counts",
    "iso_check",
    "collapse_by_symmetry",
]

COLLAPSE_TOL = 1e-10


@dataclass(frozen=True)
class Subalgebra:
    """A set of generators closed under squaring support."""

    basis: frozenset

    @property
    def dimension(self) -> int:
        return len(self.basis)


def generated_subalgebra(algebra: EvolutionAlgebra, seed) -> Subalgebra:
    """Least support-closed superset of the seed generators."""
    todo = [algebra.pair_index(p) for p in seed]
    if not todo:
        raise ValidationError("generated_subalgebra: seed must be nonempty")
    basis = set(todo)
    while todo:
        current = todo.pop()
        for j in algebra.matrix.support(current):
            if j not in basis:
                basis.add(j)
                todo.append(j)
    return Subalgebra(frozenset(basis))


def precedes(algebra: EvolutionAlgebra, tau, sigma) -> bool:
    """Whether the row of ``sigma`` carries a positive coefficient at ``tau``."""
    t = algebra.pair_index(tau)
    s = algebra.pair_index(sigma)
    cells = set(algebra.matrix.children_cells(s))
    a, b = divmod(t, algebra.kn)
    return a in cells and b in cells


@dataclass(frozen=True)
class DescentChain:
    """Successive descendants ending at a diagonal singleton."""

    elements: tuple

    def __len__(self) -> int:
        return len(self.elements)


def descent_chain(algebra: EvolutionAlgebra, sigma) -> DescentChain:
    """Walk strictly shrinking children sets down to a diagonal pair.

    While a transit generator with a strictly smaller children set exists,
    the lowest-indexed one is taken; once only diagonal descendants remain
    the lowest-indexed of those closes the chain.  A diagonal start is its
    own chain.
    """
    kn = algebra.kn
    matrix = algebra.matrix
    current = algebra.pair_index(sigma)
    if len(matrix.children_cells(current)) == 1:
        return DescentChain((algebra.pair_from_index(current),))
    chain = []
    while True:
        cells = matrix.children_cells(current)
        cur_set = frozenset(cells)
        transit, diagonal = [], []
        for a in cells:
            for b in cells:
                candidate = a * kn + b
                if candidate == current:
                    continue
                cand_cells = frozenset(matrix.children_cells(candidate))
                if not cand_cells < cur_set:
                    continue
                (diagonal if len(cand_cells) == 1 else transit).append(candidate)
        if transit:
            current = min(transit)
            chain.append(current)
        else:
            chain.append(min(diagonal))
            return DescentChain(tuple(algebra.pair_from_index(i) for i in chain))


@dataclass(frozen=True)
class Hierarchy:
    """Leveled block decomposition of the generator set.

    ``levels[r]`` lists the blocks of level ``r`` as sorted generator
    tuples; ``flows`` holds ``((level, pos), (level, pos))`` edges, always
    pointing to a strictly lower level.
    """

    levels: tuple
    flows: tuple
    _block_index: dict = field(default=None, repr=False, compare=False)

    @property
    def level_count(self) -> int:
        return len(self.levels)

    def block_of(self, index: int):
        """The ``(level, position)`` coordinates of a generator's block."""
        if self._block_index is not None and index in self._block_index:
            return self._block_index[index]
        for lvl, blocks in enumerate(self.levels):
            for pos, block in enumerate(blocks):
                if index in block:
                    return (lvl, pos)
        raise ValidationError(f"generator {index} not present in the hierarchy")


def build_hierarchy(algebra: EvolutionAlgebra) -> Hierarchy:
    """Group generators by children set and rank blocks by flow depth."""
    matrix = algebra.matrix
    kn = algebra.kn
    groups: dict = {}
    for g in range(algebra.dimension):
        groups.setdefault(frozenset(matrix.children_cells(g)), []).append(g)
    keys = sorted(groups, key=lambda s: (len(s), sorted(s)))
    # every strict-subset key of K is the children set of a pair drawn from
    # K, so the subsets can be enumerated without scanning all key pairs
    level_of: dict = {}
    subsets_of: dict = {}
    for key in keys:
        cells = sorted(key)
        below = set()
        for i, a in enumerate(cells):
            for b in cells[i:]:
                candidate = frozenset(matrix.children_cells(a * kn + b))
                if candidate != key:
                    below.add(candidate)
        subsets_of[key] = below
        level_of[key] = 1 + max((level_of[o] for o in below), default=-1)
    depth = max(level_of.values()) + 1
    leveled = [[] for _ in range(depth)]
    for key in keys:
        leveled[level_of[key]].append(tuple(sorted(groups[key])))
    levels = tuple(tuple(sorted(blocks)) for blocks in leveled)
    coord = {}
    for lvl, blocks in enumerate(levels):
        for pos, block in enumerate(blocks):
            for g in block:
                coord[g] = (lvl, pos)
    flows = set()
    for key in keys:
        src = coord[groups[key][0]]
        for other in subsets_of[key]:
            flows.add((src, coord[groups[other][0]]))
    return Hierarchy(levels, tuple(sorted(flows)), coord)


@dataclass(frozen=True)
class StructureCounts:
    dimension: int
    one_dimensional: int
    four_dimensional: int


def structure_counts(algebra: EvolutionAlgebra) -> StructureCounts:
    """Count the singly-generated subalgebras of a connected-graph algebra.

    Diagonal generators each span a one-dimensional subalgebra; unordered
    pairs of distinct cells each generate a four-dimensional one.  The
    enumeration deduplicates bases, it does not just evaluate formulas.
    """
    if len(components(algebra.graph)) != 1:
        raise ValidationError("structure_counts: graph must be connected")
    kn = algebra.kn
    singles = {frozenset(algebra.matrix.support(a * kn + a)) for a in range(kn)}
    if any(len(s) != 1 for s in singles):
        raise ValidationError("structure_counts: diagonal generator with non-unit row")
    quads = set()
    for a in range(kn):
        for b in range(a + 1, kn):
            quads.add(frozenset(algebra.matrix.support(a * kn + b)))
    return StructureCounts(kn * kn, len(singles), len(quads))


@dataclass(frozen=True)
class IsoReport:
    support_equal: bool
    skeleton_equal: bool
    verdict: str


def iso_check(left: EvolutionAlgebra, right: EvolutionAlgebra) -> IsoReport:
    """Compare zero patterns and hierarchy skeletons of two algebras.

    Both algebras must live over the same graph and state space.  The
    verdict only certifies the relation-preserving identity map on
    generators, hence the qualified name.
    """
    if left.graph != right.graph:
        raise ValidationError("iso_check: algebras built over different graphs")
    if left.space != right.space:
        raise ValidationError("iso_check: algebras built over different state spaces")
    support_equal = all(
        left.matrix.children_cells(g) == right.matrix.children_cells(g)
        for g in range(left.dimension)
    )
    skeleton_equal = build_hierarchy(left).levels == build_hierarchy(right).levels
    verdict = (
        "isomorphic-per-theorem" if support_equal and skeleton_equal else "not-isomorphic-per-theorem"
    )
    return IsoReport(support_equal, skeleton_equal, verdict)


@dataclass(frozen=True)
class CollapsedTable:
    """Reduced squaring table over generator classes.

    ``rows[c]`` maps target class ids to the aggregated coefficients of
    class ``c``'s representative (its first listed member).
    """

    classes: tuple
    rows: tuple

    @property
    def class_count(self) -> int:
        return len(self.classes)


def collapse_by_symmetry(algebra: EvolutionAlgebra, classes) -> CollapsedTable:
    """Collapse generators into classes and reduce the squaring table.

    Every generator's row is aggregated by summing coefficients within each
    target class.  Class members sharing a flow pattern (the same set of
    target classes) must agree within ``1e-10``, otherwise the partition is
    not a valid collapse.  Each class contributes its first member's
    aggregated row to the reduced table.
    """
    normalized = []
    seen = set()
    for cls in classes:
        members = [algebra.pair_index(p) for p in cls]
        if not members:
            raise ValidationError("collapse: empty class")
        if seen & set(members):
            raise ValidationError("collapse: classes must be disjoint")
        seen.update(members)
        normalized.append(tuple(members))
    if seen != set(range(algebra.dimension)):
        raise ValidationError("collapse: classes must partition all generators")
    class_of = {}
    for cid, members in enumerate(normalized):
        for g in members:
            class_of[g] = cid

    def aggregated(g: int) -> dict:
        out: dict = {}
        for j, v in algebra.matrix.row(g).items():
            cid = class_of[j]
            out[cid] = out.get(cid, 0.0) + v
        return out

    rows = []
    for members in normalized:
        agg = {g: aggregated(g) for g in members}
        by_pattern: dict = {}
        for g in members:
            by_pattern.setdefault(frozenset(agg[g]), []).append(g)
        for pattern, group in by_pattern.items():
            base = agg[group[0]]
            for g in group[1:]:
                gap = max(abs(base[cid] - agg[g][cid]) for cid in pattern)
                if gap > COLLAPSE_TOL:
                    raise ValidationError(
                        "collapse: not a valid collapse, rows "
                        f"{algebra.pair_label(group[0])} and {algebra.pair_label(g)} disagree"
                    )
        rows.append(dict(sorted(agg[members[0]].items())))
    return CollapsedTable(tuple(normalized), tuple(rows))

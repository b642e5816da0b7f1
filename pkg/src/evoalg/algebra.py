"""The evolution algebra of a graph, a state space and a positive measure.

Generators are the pair cells.  A diagonal pair squares to itself; any other
pair squares to the product-measure distribution over its pair-children,
normalized within that children set.  Distinct generators multiply to zero,
so products of general elements only keep diagonal terms.

Rows of the coefficient matrix depend on a generator only through its
children set, so rows are stored once per distinct children set and shared.
The children mass is computed as the square of the summed cell masses,
which the product structure of the pair-children set makes exact.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from .cells import Cell, PairCell, StateSpace
from .errors import BudgetError, ValidationError
from .graphs import Graph, components
from .measures import Measure

__all__ = [
    "DIMENSION_BUDGET",
    "COEFF_DROP",
    "HeredityMatrix",
    "AlgebraElement",
    "EvolutionAlgebra",
    "build_algebra",
    "matrix_entries",
    "export_matrix_csv",
    "export_matrix_json",
    "load_matrix_csv",
    "load_matrix_json",
]

DIMENSION_BUDGET = 65536
COEFF_DROP = 1e-15


class HeredityMatrix:
    """Sparse row-stochastic coefficient matrix over the pair cells.

    Each row is the outer product of the normalized cell weights of the
    generator's children set; rows with equal children sets are shared.
    """

    def __init__(self, graph: Graph, space: StateSpace, measure: Measure):
        n, k = graph.vertex_count, space.k
        kn = k**n
        self.kn = kn
        self.dimension = kn * kn
        parts = components(graph)
        # componentwise index contribution of every cell: two cells agree on a
        # component exactly when their contributions there coincide
        place = np.array([k**v for v in range(n)], dtype=np.int64)
        idx = np.arange(kn, dtype=np.int64)
        digits = np.empty((kn, n), dtype=np.int64)
        for v in range(n):
            digits[:, v] = (idx // place[v]) % k
        contrib = np.stack(
            [digits[:, list(blk)] @ place[list(blk)] for blk in parts], axis=1
        )

        row_ids: dict = {}
        row_children = []
        row_weights = []
        gen_row = np.empty(self.dimension, dtype=np.int64)
        pair_rows: dict = {}
        for a in range(kn):
            for b in range(a, kn):
                key = (a, b)
                options = []
                for i in range(len(parts)):
                    sa, sb = int(contrib[a, i]), int(contrib[b, i])
                    options.append((sa,) if sa == sb else (sa, sb))
                children = tuple(sorted(sum(combo) for combo in product(*options)))
                rid = row_ids.get(children)
                if rid is None:
                    rid = len(row_children)
                    row_ids[children] = rid
                    w = measure.weights[list(children)]
                    row_children.append(children)
                    row_weights.append(w / w.sum())
                pair_rows[key] = rid
        for a in range(kn):
            for b in range(kn):
                gen_row[a * kn + b] = pair_rows[(min(a, b), max(a, b))]
        self._gen_row = gen_row
        self._row_children = row_children
        self._row_weights = row_weights
        self._row_support: dict = {}

    def children_cells(self, index: int) -> tuple:
        """Sorted cell indices of the generator's children set."""
        return self._row_children[self._gen_row[index]]

    def support(self, index: int) -> tuple:
        """Sorted pair indices carrying nonzero coefficients in this row."""
        rid = int(self._gen_row[index])
        cached = self._row_support.get(rid)
        if cached is None:
            cells = self._row_children[rid]
            cached = tuple(sorted(a * self.kn + b for a in cells for b in cells))
            self._row_support[rid] = cached
        return cached

    def row(self, index: int) -> dict:
        """The full sparse row as ``{pair_index: coefficient}``."""
        if not 0 <= index < self.dimension:
            raise ValidationError(f"row: pair index {index} out of range")
        rid = int(self._gen_row[index])
        cells = self._row_children[rid]
        w = self._row_weights[rid]
        return {
            a * self.kn + b: float(w[i] * w[j])
            for i, a in enumerate(cells)
            for j, b in enumerate(cells)
        }

    def coefficient(self, row_index: int, col_index: int) -> float:
        rid = int(self._gen_row[row_index])
        cells = self._row_children[rid]
        a, b = divmod(col_index, self.kn)
        try:
            i, j = cells.index(a), cells.index(b)
        except ValueError:
            return 0.0
        w = self._row_weights[rid]
        return float(w[i] * w[j])


class AlgebraElement:
    """Sparse linear combination of generators; near-zero entries dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict = None):
        self.coeffs = {
            int(i): float(v) for i, v in (coeffs or {}).items() if abs(v) >= COEFF_DROP
        }

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coeffs)
        for i, v in other.coeffs.items():
            out[i] = out.get(i, 0.0) + v
        return AlgebraElement(out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar: float) -> "AlgebraElement":
        return AlgebraElement({i: scalar * v for i, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}: {v:g}" for i, v in sorted(self.coeffs.items()))
        return f"AlgebraElement({{{inner}}})"

    def is_zero(self) -> bool:
        return not self.coeffs

    def distance(self, other: "AlgebraElement") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max(
            (abs(self.coeffs.get(i, 0.0) - other.coeffs.get(i, 0.0)) for i in keys),
            default=0.0,
        )


@dataclass(frozen=True)
class EvolutionAlgebra:
    """A built algebra: provenance plus its coefficient matrix."""

    graph: Graph
    space: StateSpace
    measure: Measure
    matrix: HeredityMatrix

    @property
    def dimension(self) -> int:
        return self.matrix.dimension

    @property
    def kn(self) -> int:
        return self.matrix.kn

    def pair_index(self, pair) -> int:
        """Accept a pair cell or a raw index; return the index."""
        if isinstance(pair, PairCell):
            if pair.n != self.graph.vertex_count or pair.k != self.space.k:
                raise ValidationError("pair cell does not match this algebra")
            return pair.index
        index = int(pair)
        if not 0 <= index < self.dimension:
            raise ValidationError(f"pair index {index} out of range")
        return index

    def pair_from_index(self, index: int) -> PairCell:
        return PairCell.from_index(index, self.graph.vertex_count, self.space.k)

    def pair_label(self, index: int) -> str:
        return self.pair_from_index(index).label(self.space)

    def generator(self, pair) -> AlgebraElement:
        return AlgebraElement({self.pair_index(pair): 1.0})

    def row(self, pair) -> dict:
        """The heredity row of a generator as ``{pair_index: coefficient}``."""
        return self.matrix.row(self.pair_index(pair))

    def square(self, x: AlgebraElement) -> AlgebraElement:
        """Square of an element: squared coefficients drive the rows."""
        out: dict = {}
        for i in sorted(x.coeffs):
            scale = x.coeffs[i] ** 2
            for j, v in self.matrix.row(i).items():
                out[j] = out.get(j, 0.0) + scale * v
        return AlgebraElement(out)

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """Product of two elements; only matching generators survive.

        Accumulation runs in sorted generator order, so the result does not
        depend on the argument order.
        """
        out: dict = {}
        for i in sorted(set(x.coeffs) & set(y.coeffs)):
            scale = x.coeffs[i] * y.coeffs[i]
            for j, v in self.matrix.row(i).items():
                out[j] = out.get(j, 0.0) + scale * v
        return AlgebraElement(out)


def build_algebra(graph: Graph, space: StateSpace, measure: Measure) -> EvolutionAlgebra:
    """Construct the algebra for a graph, state space and positive measure."""
    n, k = graph.vertex_count, space.k
    if k ** (2 * n) > DIMENSION_BUDGET:
        raise BudgetError(
            f"pair space of size k^2n = {k ** (2 * n)} exceeds the budget {DIMENSION_BUDGET}"
        )
    if measure.n != n or measure.k != k:
        raise ValidationError("measure does not match the graph and state space")
    return EvolutionAlgebra(graph, space, measure, HeredityMatrix(graph, space, measure))


def matrix_entries(algebra: EvolutionAlgebra):
    """All nonzero matrix entries as ``(row, col, value)``, sorted."""
    for i in range(algebra.dimension):
        row = algebra.matrix.row(i)
        for j in sorted(row):
            yield i, j, row[j]


def export_matrix_csv(algebra: EvolutionAlgebra, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "col", "value"])
        for i, j, v in matrix_entries(algebra):
            writer.writerow([i, j, repr(v)])


def export_matrix_json(algebra: EvolutionAlgebra, path):
    payload = {
        "schema_version": 1,
        "vertices": algebra.graph.vertex_count,
        "states": algebra.space.k,
        "dimension": algebra.dimension,
        "labels": [algebra.pair_label(i) for i in range(algebra.dimension)],
        "entries": [[i, j, v] for i, j, v in matrix_entries(algebra)],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_matrix_csv(path) -> dict:
    """Read an exported CSV back into ``{(row, col): value}``."""
    entries = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["row", "col", "value"]:
            raise ValidationError("matrix csv: unexpected header")
        for r, c, v in reader:
            entries[(int(r), int(c))] = float(v)
    return entries


def load_matrix_json(path) -> dict:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("schema_version") != 1:
        raise ValidationError("matrix json: unsupported schema_version")
    return {(int(r), int(c)): float(v) for r, c, v in payload["entries"]}

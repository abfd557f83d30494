"""Stage algebras ``T_{n_F}`` and the connecting embeddings.

A stage is a finite set of positions of a weighted order.  Its vertices
are the multi-indices over those positions in lexicographic order, so
vertex ``k`` (1-based) is the ``k``-th multi-index.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import cached_property

from .algebra_core import DigraphAlgebra, Element, MatrixUnit, triangular_algebra
from .exceptions import BudgetExceededError, PositionError, PreconditionError
from .order_calculus import canonical_chain, check_position

DEFAULT_BUDGET = 4096


def default_budget():
    env = os.environ.get("LEXALG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def lex_compare(i, j):
    """Dictionary comparison of two multi-indices: -1, 0 or 1."""
    if len(i) != len(j):
        raise PreconditionError(f"multi-index lengths differ: {len(i)} vs {len(j)}")
    for a, b in zip(i, j):
        if a != b:
            return -1 if a < b else 1
    return 0


def first_difference(i, j):
    """Index of the first coordinate where two multi-indices differ, else ``None``."""
    for p, (a, b) in enumerate(zip(i, j)):
        if a != b:
            return p
    return None


@dataclass(frozen=True)
class Stage:
    order: object
    positions: tuple
    mults: tuple

    @property
    def n_f(self):
        return math.prod(self.mults)

    @cached_property
    def factors(self):
        """Per-position factor algebra; ``T_n`` unless the order attaches one."""
        out = []
        for p, n in zip(self.positions, self.mults):
            alg = self.order.factor(p.segment)
            out.append(alg if alg is not None else triangular_algebra(n))
        return tuple(out)

    @cached_property
    def strides(self):
        out, acc = [], 1
        for n in reversed(self.mults):
            out.append(acc)
            acc *= n
        return tuple(reversed(out))

    def index(self, label):
        """1-based vertex of a multi-index."""
        if len(label) != len(self.mults):
            raise PositionError(f"multi-index {label} has wrong length")
        idx = 0
        for v, n, s in zip(label, self.mults, self.strides):
            if not 1 <= v <= n:
                raise PositionError(f"multi-index {label} out of range")
            idx += (v - 1) * s
        return idx + 1

    def label(self, index):
        rest = index - 1
        out = []
        for s in self.strides:
            out.append(rest // s + 1)
            rest %= s
        return tuple(out)

    def labels(self):
        return list(itertools.product(*(range(1, n + 1) for n in self.mults)))

    def related(self, i, j):
        """Whether ``(i, j)`` (multi-indices) is an edge of the stage algebra."""
        p = first_difference(i, j)
        if p is None:
            return True
        return (i[p], j[p]) in self.factors[p].relation

    def edge_count(self):
        total, rest = 1, 1
        for n, alg in zip(reversed(self.mults), reversed(self.factors)):
            strict = alg.dim - n
            total = n * total + strict * rest * rest
            rest *= n
        return total

    def _generate_edges(self):
        n = self.n_f
        edges = [(k, k) for k in range(1, n + 1)]
        for p, alg in enumerate(self.factors):
            stride = self.strides[p]
            block = stride * self.mults[p]
            strict = [(a, b) for a, b in alg.relation if a != b]
            for base in range(0, n, block):
                for a, b in strict:
                    r0 = base + (a - 1) * stride + 1
                    c0 = base + (b - 1) * stride + 1
                    for s in range(stride):
                        for t in range(stride):
                            edges.append((r0 + s, c0 + t))
        return edges

    @cached_property
    def algebra(self):
        return DigraphAlgebra(self.n_f, frozenset(self._generate_edges()),
                              tuple(self.labels()))

    def unit(self, i, j):
        """Matrix unit for a pair of multi-indices."""
        if not self.related(i, j):
            raise PositionError(f"({i}, {j}) is not an edge of the stage")
        return MatrixUnit(self.index(i), self.index(j))

    def element(self, terms):
        """Element from ``{(row_label, col_label): coefficient}``."""
        return Element(self.algebra, {(self.index(i), self.index(j)): c
                                      for (i, j), c in terms.items()})

    def to_json(self):
        return {"positions": [p.to_json() for p in self.positions],
                "mults": list(self.mults), "n_F": self.n_f}


def stage_algebra(w, positions):
    positions = tuple(sorted(set(positions)))
    if not positions:
        raise PositionError("a stage needs at least one position")
    for p in positions:
        check_position(w, p)
    return Stage(w, positions, tuple(w.multiplicity(p) for p in positions))


def embed(w, f, g, x):
    """Image of ``x`` under the unital embedding of stage ``f`` into stage ``g``.

    ``e_{I,J}`` goes to the sum over all assignments ``S`` to the new
    positions of ``e_{I∪S, J∪S}``.
    """
    if not set(f.positions) <= set(g.positions):
        raise PositionError("source stage positions are not contained in the target")
    if x.home is not f.algebra and x.home != f.algebra:
        raise PreconditionError("element does not belong to the source stage algebra")
    slot = {p: t for t, p in enumerate(g.positions)}
    old = [slot[p] for p in f.positions]
    new = [t for t, p in enumerate(g.positions) if p not in set(f.positions)]
    offsets = [0]
    for t in new:
        step = g.strides[t]
        offsets = [o + v * step for o in offsets for v in range(g.mults[t])]

    def base(index):
        lab = f.label(index)
        return sum((v - 1) * g.strides[t] for v, t in zip(lab, old)) + 1

    out = {}
    for (i, j), c in x.terms.items():
        bi, bj = base(i), base(j)
        for o in offsets:
            out[(bi + o, bj + o)] = c
    return Element._raw(g.algebra, out)


@dataclass(frozen=True)
class StageChain:
    order: object
    stages: tuple

    def __len__(self):
        return len(self.stages)

    def __getitem__(self, k):
        return self.stages[k]

    def __iter__(self):
        return iter(self.stages)

    def embed(self, src, dst, x):
        return embed(self.order, self.stages[src], self.stages[dst], x)


def build_chain(w, depth, budget=None):
    """Materialise the canonical chain; stage algebras are built on first use."""
    if budget is None:
        budget = default_budget()
    stages = []
    for positions in canonical_chain(w, depth):
        n_f = math.prod(w.multiplicity(p) for p in positions)
        if n_f > budget:
            raise BudgetExceededError(n_f, budget)
        stages.append(stage_algebra(w, positions))
    return StageChain(w, tuple(stages))

"""Finite digraph algebras and exact matrix-unit arithmetic.

A digraph algebra on ``n`` vertices is the span of the matrix units
``e_ij`` for ``(i, j)`` in a reflexive transitive relation.  Vertices are
1-based throughout.  Coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from . import linalg
from .exceptions import (
    HomeMismatchError,
    NotTriangularError,
    OracleSizeError,
    RelationError,
)

ORACLE_CAP = 6


class MatrixUnit(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class DigraphAlgebra:
    n: int
    relation: frozenset
    labels: tuple = field(default=None, compare=False, repr=False)

    @property
    def triangular(self):
        return all(i == j or (j, i) not in self.relation for i, j in self.relation)

    @property
    def dim(self):
        return len(self.relation)

    def edges(self):
        """Relation pairs in row-major order."""
        return sorted(self.relation)

    def strict_edges(self):
        return [(i, j) for i, j in self.edges() if i != j]

    def label(self, i):
        return self.labels[i - 1] if self.labels is not None else i

    def unit(self, i, j):
        return Element.unit(self, i, j)

    def identity(self):
        return Element(self, {(i, i): Fraction(1) for i in range(1, self.n + 1)})

    def basis(self):
        return [Element.unit(self, i, j) for i, j in self.edges()]

    def to_json(self):
        out = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.labels is not None:
            out["labels"] = [list(lab) if isinstance(lab, tuple) else lab
                             for lab in self.labels]
        return out

    @classmethod
    def from_json(cls, data):
        labels = data.get("labels")
        if labels is not None:
            labels = tuple(tuple(lab) if isinstance(lab, list) else lab for lab in labels)
        return from_relation(data["n"], {tuple(e) for e in data["edges"]}, labels)


def _validated(n, pairs, labels=None):
    if not isinstance(n, int) or n < 1:
        raise RelationError(f"vertex count must be >= 1, got {n!r}")
    rel = frozenset((int(i), int(j)) for i, j in pairs)
    for i, j in rel:
        if not (1 <= i <= n and 1 <= j <= n):
            raise RelationError("pair outside the vertex range", (i, j))
    for i in range(1, n + 1):
        if (i, i) not in rel:
            raise RelationError("relation is not reflexive", (i, i))
    succ = {}
    for i, j in rel:
        succ.setdefault(i, []).append(j)
    for i, j in sorted(rel):
        for k in sorted(succ[j]):
            if (i, k) not in rel:
                raise RelationError("relation is not transitive", ((i, j), (j, k)))
    if labels is not None and len(labels) != n:
        raise RelationError(f"expected {n} labels, got {len(labels)}")
    return DigraphAlgebra(n, rel, None if labels is None else tuple(labels))


def from_relation(n, pairs, labels=None):
    """Validate a reflexive transitive relation; non-transitive input is rejected."""
    return _validated(n, pairs, labels)


def transitive_closure(n, pairs):
    """Reflexive transitive closure of ``pairs`` on vertices ``1..n``."""
    g = nx.DiGraph()
    g.add_nodes_from(range(1, n + 1))
    g.add_edges_from(pairs)
    closed = nx.transitive_closure(g, reflexive=True)
    return frozenset(closed.edges())


def triangular_algebra(n):
    if not isinstance(n, int) or n < 1:
        raise RelationError(f"T_n needs n >= 1, got {n!r}")
    return DigraphAlgebra(n, frozenset((i, j) for i in range(1, n + 1)
                                       for j in range(i, n + 1)))


def diagonal_algebra(n):
    return DigraphAlgebra(n, frozenset((i, i) for i in range(1, n + 1)))


def full_algebra(n):
    return DigraphAlgebra(n, frozenset(itertools.product(range(1, n + 1), repeat=2)))


# ---------------------------------------------------------------------------
# elements

class Element:
    """Sparse exact linear combination of matrix units of one algebra."""

    __slots__ = ("home", "terms")

    def __init__(self, home, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            if (i, j) not in home.relation:
                raise RelationError("matrix unit outside the algebra", (i, j))
            clean[(i, j)] = c
        self.home = home
        self.terms = clean

    @classmethod
    def _raw(cls, home, terms):
        obj = cls.__new__(cls)
        obj.home = home
        obj.terms = terms
        return obj

    @classmethod
    def unit(cls, home, i, j):
        return cls(home, {(i, j): 1})

    def _check(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if self.home is not other.home and self.home != other.home:
            raise HomeMismatchError("elements live in different algebras")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Element._raw(self.home, out)

    def __neg__(self):
        return Element._raw(self.home, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Element._raw(self.home, {})
            return Element._raw(self.home, {k: c * other for k, c in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, p):
        out = self.home.identity()
        for _ in range(p):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.home == other.home and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Element(0)"
        parts = [f"{c}*e{i},{j}" if c != 1 else f"e{i},{j}"
                 for (i, j), c in sorted(self.terms.items())]
        return "Element(" + " + ".join(parts) + ")"

    def coefficient(self, i, j):
        return self.terms.get((i, j), Fraction(0))

    def adjoint_support(self):
        """Transposed support, used for the star of matrix units."""
        return {(j, i) for i, j in self.terms}

    def to_json(self):
        terms = []
        for (i, j), c in sorted(self.terms.items()):
            t = {"row": i, "col": j, "num": c.numerator, "den": c.denominator}
            if self.home.labels is not None:
                t["row_label"] = list(self.home.label(i))
                t["col_label"] = list(self.home.label(j))
            terms.append(t)
        return {"terms": terms}

    @classmethod
    def from_json(cls, home, data):
        return cls(home, {(t["row"], t["col"]): Fraction(t["num"], t.get("den", 1))
                          for t in data["terms"]})


def multiply(x, y):
    """Bilinear extension of ``e_ij e_kl = [j == k] e_il``."""
    if x.home is not y.home and x.home != y.home:
        raise HomeMismatchError("elements live in different algebras")
    by_row = {}
    for (k, l), c in y.terms.items():
        by_row.setdefault(k, []).append((l, c))
    out = {}
    for (i, j), a in x.terms.items():
        for l, b in by_row.get(j, ()):
            v = out.get((i, l), 0) + a * b
            if v:
                out[(i, l)] = v
            else:
                out.pop((i, l), None)
    return Element._raw(x.home, out)


# ---------------------------------------------------------------------------
# ideals and the radical

@dataclass(frozen=True)
class Ideal:
    home: DigraphAlgebra
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        rel = self.home.relation
        if not self.edges <= rel:
            raise RelationError("ideal edge outside the algebra",
                                next(iter(self.edges - rel)))
        succ, pred = {}, {}
        for a, b in rel:
            succ.setdefault(a, []).append(b)
            pred.setdefault(b, []).append(a)
        for i, j in self.edges:
            for b in succ[j]:
                if (i, b) not in self.edges:
                    raise RelationError("not closed on the right", ((i, j), (j, b)))
            for a in pred[i]:
                if (a, j) not in self.edges:
                    raise RelationError("not closed on the left", ((a, i), (i, j)))

    @property
    def dim(self):
        return len(self.edges)

    def basis(self):
        return [Element.unit(self.home, i, j) for i, j in sorted(self.edges)]

    def _times(self, current):
        by_row = {}
        for k, l in self.edges:
            by_row.setdefault(k, []).append(l)
        return {(i, l) for i, j in current for l in by_row.get(j, ())}

    def power(self, p):
        """Edge set spanning the ``p``-th power of the ideal."""
        current = set(self.edges)
        for _ in range(p - 1):
            current = self._times(current)
        return frozenset(current)

    def nilpotency_index(self):
        """Smallest ``p`` with ``I^p = 0``, or ``None`` if the ideal is not nilpotent."""
        if not self.edges:
            return 1
        current = set(self.edges)
        for p in range(2, self.home.n + 2):
            current = self._times(current)
            if not current:
                return p
        return None


def strict_ideal(a):
    """The maximal ideal disjoint from the diagonal of a triangular algebra."""
    if not a.triangular:
        raise NotTriangularError("off-diagonal part is an ideal only for triangular algebras")
    return Ideal(a, frozenset((i, j) for i, j in a.relation if i != j))


def radical_combinatorial(a):
    return Ideal(a, frozenset((i, j) for i, j in a.relation if (j, i) not in a.relation))


def semisimple_quotient(a):
    """Sorted sizes of the full matrix blocks of ``a`` modulo its radical."""
    g = nx.DiGraph()
    g.add_nodes_from(range(1, a.n + 1))
    g.add_edges_from(a.relation)
    return sorted(len(c) for c in nx.strongly_connected_components(g))


def radical_trace_oracle(a, cap=ORACLE_CAP):
    """Basis of the radical as the kernel of ``(x, y) -> tr(L_x L_y)``.

    ``L_x`` is left multiplication on the algebra.  In characteristic zero
    this kernel is the Jacobson radical; nothing here reads the relation
    beyond listing a basis and multiplying.
    """
    if a.n > cap:
        raise OracleSizeError(f"oracle limited to n <= {cap}, got {a.n}")
    basis = a.basis()
    keys = [next(iter(b.terms)) for b in basis]
    index = {k: t for t, k in enumerate(keys)}
    d = len(basis)
    # table[s][t] = (index of basis_s * basis_t, coefficient) or None
    table = []
    for x in basis:
        row = []
        for y in basis:
            prod = multiply(x, y)
            row.append(None if not prod else
                       next((index[k], c) for k, c in prod.terms.items()))
        table.append(row)
    gram = [[Fraction(0)] * d for _ in range(d)]
    for s in range(d):
        for t in range(d):
            total = Fraction(0)
            for c in range(d):
                yc = table[t][c]
                if yc is None:
                    continue
                xyc = table[s][yc[0]]
                if xyc is not None and xyc[0] == c:
                    total += yc[1] * xyc[1]
            gram[s][t] = total
    kernel = linalg.nullspace(gram, d)
    return [Element(a, {keys[t]: v for t, v in enumerate(vec) if v}) for vec in kernel]


def span_equal(a, family_a, family_b):
    """Whether two families of elements of ``a`` span the same subspace."""
    keys = a.edges()
    vec = lambda x: [x.coefficient(i, j) for i, j in keys]
    return linalg.same_span([vec(x) for x in family_a], [vec(x) for x in family_b], len(keys))


# ---------------------------------------------------------------------------
# lexicographic product

def lex_product(a, b):
    """``(A ∩ A*) ⊗ B + A^0 ⊗ C*(B)`` as a relation on ``[a.n] × [b.n]``.

    Vertex ``(i1, i2)`` is flattened to ``(i1 - 1) * b.n + i2`` so that
    ``T_n ⋆ T_m`` is literally ``T_nm``.
    """
    if not a.triangular:
        raise NotTriangularError("the first factor of a lexicographic product must be triangular")
    m = b.n
    rel = set()
    for i1, j1 in a.relation:
        if i1 == j1:
            for i2, j2 in b.relation:
                rel.add(((i1 - 1) * m + i2, (i1 - 1) * m + j2))
        else:
            for i2 in range(1, m + 1):
                for j2 in range(1, m + 1):
                    rel.add(((i1 - 1) * m + i2, (j1 - 1) * m + j2))
    labels = None
    if a.labels is not None or b.labels is not None:
        la = [_as_tuple(a.label(i)) for i in range(1, a.n + 1)]
        lb = [_as_tuple(b.label(i)) for i in range(1, b.n + 1)]
        labels = tuple(x + y for x in la for y in lb)
    return DigraphAlgebra(a.n * m, frozenset(rel), labels)


def _as_tuple(lab):
    return lab if isinstance(lab, tuple) else (lab,)


def stage_radical_formula(a, b):
    """Radical of ``a ⋆ b`` assembled from the factors.

    Diagonal of ``a`` tensor the radical of ``b``, plus the strict part of
    ``a`` tensor everything.
    """
    if not a.triangular:
        raise NotTriangularError("the first factor of a lexicographic product must be triangular")
    m = b.n
    rad_b = radical_combinatorial(b).edges
    edges = set()
    for i1 in range(1, a.n + 1):
        for i2, j2 in rad_b:
            edges.add(((i1 - 1) * m + i2, (i1 - 1) * m + j2))
    for i1, j1 in a.relation:
        if i1 != j1:
            for i2 in range(1, m + 1):
                for j2 in range(1, m + 1):
                    edges.add(((i1 - 1) * m + i2, (j1 - 1) * m + j2))
    return Ideal(lex_product(a, b), frozenset(edges))


def all_preorders(n):
    """Every reflexive transitive relation on ``1..n``."""
    off = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    diag = [(i, i) for i in range(1, n + 1)]
    for mask in range(1 << len(off)):
        rel = set(diag)
        rel.update(p for t, p in enumerate(off) if mask >> t & 1)
        if all((i, l) in rel for i, j in rel for k, l in rel if j == k):
            yield DigraphAlgebra(n, frozenset(rel))


def random_preorder(n, rng, density=0.3):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
             if i != j and rng.random() < density]
    return DigraphAlgebra(n, transitive_closure(n, pairs))


def random_triangular(n, rng, density=0.4):
    """Random partial order compatible with ``1 < 2 < ... < n``."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
             if rng.random() < density]
    return DigraphAlgebra(n, transitive_closure(n, pairs))

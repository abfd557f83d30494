"""Questions about the direct limit, answered from order data and stages.

Radical membership is decided by the closed form: a matrix unit lies in
the Jacobson radical of the limit exactly when its row and column
multi-indices first differ at a position of the maximal well-ordered
initial segment.  Link search is evidence along a chain, never a verdict.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra_core import Element, MatrixUnit
from .exceptions import PositionError, PreconditionError
from .lex_tower import Stage, first_difference
from .order_calculus import (
    Finite,
    Position,
    has_first,
    is_well_ordered,
    normalize,
    wois_boundary,
)


@dataclass(frozen=True)
class RadicalVerdict:
    member: bool
    position: object = None
    quotient_block: dict = field(default=None, compare=False)

    def to_json(self):
        out = {"member": self.member}
        if self.position is not None:
            out["first_difference"] = self.position.to_json()
        if self.quotient_block is not None:
            out["quotient_block"] = self.quotient_block
        return out


@dataclass(frozen=True)
class LinkRecord:
    stage_index: int
    link: MatrixUnit
    domain_witness: tuple
    range_witness: tuple
    canonical: bool

    def to_json(self):
        return {"stage_index": self.stage_index,
                "link": {"row": self.link.row, "col": self.link.col},
                "domain_witness": list(self.domain_witness),
                "range_witness": list(self.range_witness),
                "canonical": self.canonical}


def split_point(w, stage):
    """Number of leading stage positions that lie in the well-ordered initial segment."""
    b = wois_boundary(w.expr)
    return sum(1 for p in stage.positions if p.segment < b)


def _substage(stage, lo, hi):
    return Stage(stage.order, stage.positions[lo:hi], stage.mults[lo:hi])


def _as_unit(e):
    return e if isinstance(e, MatrixUnit) else MatrixUnit(*e)


def limit_radical_member(w, stage, e):
    e = _as_unit(e)
    i, j = stage.label(e.row), stage.label(e.col)
    if not (1 <= e.row <= stage.n_f and 1 <= e.col <= stage.n_f) or not stage.related(i, j):
        raise PositionError(f"{tuple(e)} is not a matrix unit of the stage")
    k = split_point(w, stage)
    p = first_difference(i, j)
    if p is not None and p < k:
        return RadicalVerdict(True, stage.positions[p])
    block = {"initial": list(i[:k]), "row": list(i[k:]), "col": list(j[k:])}
    return RadicalVerdict(False, None, block)


def element_in_radical(w, stage, x):
    return all(limit_radical_member(w, stage, t).member for t in x.terms)


def limit_radical_units(w, stage):
    """Enumerate the member matrix units of a stage (small stages only)."""
    k = split_point(w, stage)
    out = []
    for r, c in stage.algebra.edges():
        p = first_difference(stage.label(r), stage.label(c))
        if p is not None and p < k:
            out.append(MatrixUnit(r, c))
    return out


def limit_radical_dimension(w, stage):
    """Strict edges of the initial part times the square of the remaining size."""
    k = split_point(w, stage)
    head, tail = _substage(stage, 0, k), _substage(stage, k, len(stage.positions))
    return (head.edge_count() - head.n_f) * tail.n_f ** 2


def is_semisimple(w):
    return not has_first(w.expr)


def has_elementary_radical_decomposition(w):
    return is_well_ordered(normalize(w.expr))


# ---------------------------------------------------------------------------
# links

def _lift(g_stage, f_stage, label, assignment, new_slots):
    slot = {p: t for t, p in enumerate(g_stage.positions)}
    out = [0] * len(g_stage.positions)
    for v, p in zip(label, f_stage.positions):
        out[slot[p]] = v
    for v, t in zip(assignment, new_slots):
        out[t] = v
    return tuple(out)


def find_link(w, chain, start, e, horizon):
    """Search stages ``start .. start + horizon`` for a link of ``e``.

    A link at stage ``G`` is a unit ``e_{K,L}`` of ``G`` with ``K`` a lift
    of the column index and ``L`` a lift of the row index.  The canonical
    candidate puts 1 on the ``K`` side and 2 on the ``L`` side at the
    earliest new position below the first difference, and 1 at every
    other new position; otherwise the stage is searched exhaustively and
    the unit of least (row, col) is returned.
    """
    if start < 0 or horizon < 0 or start + horizon >= len(chain):
        raise PreconditionError(
            f"stages {start}..{start + horizon} exceed a chain of length {len(chain)}")
    f = chain[start]
    e = _as_unit(e)
    i, j = f.label(e.row), f.label(e.col)
    if not f.related(i, j):
        raise PositionError(f"{tuple(e)} is not a matrix unit of stage {start}")
    if i == j:
        return LinkRecord(start, e, i, j, True)
    p = f.positions[first_difference(i, j)]
    old = set(f.positions)
    for g_index in range(start + 1, start + horizon + 1):
        g = chain[g_index]
        new_slots = [t for t, q in enumerate(g.positions) if q not in old]
        if not new_slots:
            continue
        below = [t for t in new_slots if g.positions[t] < p]
        if below:
            w1 = below[0]
            ones = tuple(1 for _ in new_slots)
            k_lab = _lift(g, f, j, ones, new_slots)
            l_lab = _lift(g, f, i, tuple(2 if t == w1 else 1 for t in new_slots), new_slots)
            if g.related(k_lab, l_lab):
                return LinkRecord(g_index, MatrixUnit(g.index(k_lab), g.index(l_lab)),
                                  l_lab, k_lab, True)
        ranges = [range(1, g.mults[t] + 1) for t in new_slots]
        best = None
        for sk in itertools.product(*ranges):
            k_lab = _lift(g, f, j, sk, new_slots)
            for sl in itertools.product(*ranges):
                l_lab = _lift(g, f, i, sl, new_slots)
                if g.related(k_lab, l_lab):
                    cand = (g.index(k_lab), g.index(l_lab), k_lab, l_lab)
                    if best is None or cand[:2] < best[:2]:
                        best = cand
        if best is not None:
            return LinkRecord(g_index, MatrixUnit(best[0], best[1]), best[3], best[2], False)
    return None


def is_link(chain, start, e, record):
    """Check ``f*f <= ee*`` and ``ff* <= e*e`` for a record against the image of ``e``."""
    e = _as_unit(e)
    f_stage, g = chain[start], chain[record.stage_index]
    image = chain.embed(start, record.stage_index, Element.unit(f_stage.algebra, e.row, e.col))
    rows = {r for r, _ in image.terms}
    cols = {c for _, c in image.terms}
    # f = e_{K,L}: f*f = e_{L,L} and ff* = e_{K,K}
    return record.link.col in rows and record.link.row in cols and \
        (record.link.row, record.link.col) in g.algebra.relation


# ---------------------------------------------------------------------------
# nilpotency of first-factor elements

def first_factor_image(stage, coefficients):
    """``sum c_ij e_ij ⊗ 1`` for the factor at the stage's first position."""
    rest = list(itertools.product(*(range(1, n + 1) for n in stage.mults[1:])))
    terms = {}
    for (a, b), c in coefficients.items():
        for r in rest:
            terms[(stage.index((a,) + r), stage.index((b,) + r))] = c
    return Element(stage.algebra, terms)


def _first_factor_coefficients(stage, a):
    if not a.terms:
        raise PreconditionError("zero element")
    factor = stage.factors[0]
    coeffs = {}
    for (r, c), v in a.terms.items():
        i, j = stage.label(r), stage.label(c)
        if i[1:] != j[1:] or i[0] == j[0] or (i[0], j[0]) not in factor.relation:
            raise PreconditionError(
                "element is not the image of a strict element of the first factor")
        coeffs.setdefault((i[0], j[0]), v)
        if coeffs[(i[0], j[0])] != v:
            raise PreconditionError("coefficients vary across the other positions")
    if first_factor_image(stage, coeffs) != a:
        raise PreconditionError("element is not the image of a strict element of the first factor")
    return coeffs


def least_position(w):
    """Position of the least element, or ``None`` when there is none."""
    if not has_first(w.expr):
        return None
    return Position(0, 1 if isinstance(w.segments[0], Finite) else 0)


def random_element(stage, rng, low=-2, high=2):
    return Element(stage.algebra, {e: rng.randint(low, high) for e in stage.algebra.edges()})


def nilpotency_check(w, stage, a, trials=50, seed=0):
    """Verify ``(ab)^p == 0`` for seeded random ``b``, ``p`` the first factor's size.

    ``a`` must be the image of a strict element of the factor at the
    first stage position (a single strict matrix unit is the usual case).
    """
    _first_factor_coefficients(stage, a)
    if stage.positions[0] != least_position(w):
        raise PreconditionError("the first stage position is not the least element of the order")
    p = stage.mults[0]
    rng = random.Random(seed)
    for _ in range(trials):
        b = random_element(stage, rng)
        if (a * b) ** p:
            return False
    return True


# ---------------------------------------------------------------------------
# quotient

@dataclass(frozen=True)
class QuotientReport:
    dimension: int
    radical_dimension: int
    quotient_dimension: int
    stage_radical_dimension: int
    strict_containment: bool
    radical_units: tuple = None
    quotient_units: tuple = None

    def to_json(self):
        out = {"dimension": self.dimension,
               "radical_dimension": self.radical_dimension,
               "quotient_dimension": self.quotient_dimension,
               "stage_radical_dimension": self.stage_radical_dimension,
               "strict_containment": self.strict_containment}
        if self.radical_units is not None:
            out["radical_units"] = [list(u) for u in self.radical_units]
            out["quotient_units"] = [list(u) for u in self.quotient_units]
        return out


def quotient_structure(w, stage, with_basis=False):
    """Split the stage into the limit-radical part and the ``C_1 ⊗ A_2`` part."""
    k = split_point(w, stage)
    head, tail = _substage(stage, 0, k), _substage(stage, k, len(stage.positions))
    dim = stage.edge_count()
    rad = limit_radical_dimension(w, stage)
    quot = head.n_f * tail.edge_count()
    stage_rad = dim - stage.n_f
    rad_units = quot_units = None
    if with_basis:
        rad_list, quot_list = [], []
        for r, c in stage.algebra.edges():
            i, j = stage.label(r), stage.label(c)
            (quot_list if i[:k] == j[:k] else rad_list).append(MatrixUnit(r, c))
        rad_units, quot_units = tuple(rad_list), tuple(quot_list)
    return QuotientReport(dim, rad, quot, stage_rad, stage_rad > rad, rad_units, quot_units)

import itertools

import pytest
from hypothesis import assume, given, settings

from conftest import weighted_orders
from lexalg.algebra_core import MatrixUnit, radical_combinatorial
from lexalg.exceptions import PreconditionError
from lexalg.lex_tower import build_chain, first_difference, stage_algebra
from lexalg.limit_analysis import (
    element_in_radical,
    find_link,
    first_factor_image,
    has_elementary_radical_decomposition,
    is_link,
    is_semisimple,
    limit_radical_dimension,
    limit_radical_member,
    limit_radical_units,
    nilpotency_check,
    quotient_structure,
    split_point,
)
from lexalg.order_calculus import Position, has_first, parse_order


def strict_units(stage):
    return [MatrixUnit(i, j) for i, j in stage.algebra.strict_edges()]


# -- membership -------------------------------------------------------------

def test_member_first_difference_in_initial_segment():
    w = parse_order("w[2] + z[2]")
    s = build_chain(w, 1)[0]
    e = s.unit((1, 1, 1), (2, 1, 1))
    v = limit_radical_member(w, s, e)
    assert v.member and v.position == Position(0, 0)
    e = s.unit((1, 1, 1), (1, 2, 1))
    v = limit_radical_member(w, s, e)
    assert not v.member
    assert v.quotient_block == {"initial": [1], "row": [1, 1], "col": [2, 1]}


def test_zeta_never_member():
    w = parse_order("z[2]")
    s = build_chain(w, 2)[1]
    assert not any(limit_radical_member(w, s, e).member for e in strict_units(s))


def test_diagonal_never_member():
    w = parse_order("w[2]")
    s = build_chain(w, 2)[1]
    assert not any(limit_radical_member(w, s, (i, i)).member for i in range(1, 5))


def test_member_rejects_non_unit():
    w = parse_order("w[2]")
    s = build_chain(w, 1)[0]
    with pytest.raises(Exception):
        limit_radical_member(w, s, (2, 1))


def test_element_membership_is_termwise():
    w = parse_order("w[2] + z[2]")
    s = build_chain(w, 1)[0]
    a = s.element({((1, 1, 1), (2, 1, 1)): 1, ((1, 1, 1), (2, 2, 2)): 3})
    b = a + s.element({((1, 1, 1), (1, 1, 2)): 1})
    assert element_in_radical(w, s, a)
    assert not element_in_radical(w, s, b)


# -- dimensions ---------------------------------------------------------------

def test_dimension_mixed_order():
    w = parse_order("w[2] + z[2]")
    s = build_chain(w, 1)[0]
    assert s.n_f == 8 and split_point(w, s) == 1
    assert limit_radical_dimension(w, s) == 16
    assert len(limit_radical_units(w, s)) == 16
    n1, n2 = 2, 4
    assert n1 * n2 * (n2 + 1) // 2 + n1 * (n1 - 1) // 2 * n2 ** 2 == 8 * 9 // 2


def test_dimension_zeta_zero():
    w = parse_order("z[2]")
    assert all(limit_radical_dimension(w, s) == 0 for s in build_chain(w, 3))


def test_dimension_omega_is_strict_part():
    w = parse_order("w[2]")
    s = stage_algebra(w, [Position(0, 0), Position(0, 1)])
    assert limit_radical_dimension(w, s) == 6


@settings(max_examples=40, deadline=None)
@given(weighted_orders(max_terms=3))
def test_dimension_formula_matches_enumeration(w):
    for s in build_chain(w, 2, budget=10**6):
        if s.n_f > 128:
            break
        k = split_point(w, s)
        n1 = 1
        for m in s.mults[:k]:
            n1 *= m
        n2 = s.n_f // n1
        assert limit_radical_dimension(w, s) == len(limit_radical_units(w, s))
        assert limit_radical_dimension(w, s) == n1 * (n1 - 1) // 2 * n2 ** 2
        assert is_semisimple(w) == (limit_radical_dimension(w, s) == 0)


# -- semisimplicity -----------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("q[2]", True), ("w[2]", False), ("w*[2]", True), ("z[2]", True),
    ("1[2] + q[2]", False), ("w*[2] + w[2]", True), ("w[2] + w*[2]", False),
])
def test_is_semisimple(text, expected):
    w = parse_order(text)
    assert is_semisimple(w) is expected
    assert is_semisimple(w) == (not has_first(w.expr))


@pytest.mark.parametrize("text, expected", [
    ("3[2,2,2] + w[2]", True), ("z[2]", False), ("q[2]", False), ("w*[2] + 2[2,2]", False),
    ("w[2] + w[3] + 1[2]", True),
])
def test_elementary_decomposition(text, expected):
    assert has_elementary_radical_decomposition(parse_order(text)) is expected


# -- links ------------------------------------------------------------------

def test_links_zeta_canonical():
    w = parse_order("z[2]")
    chain = build_chain(w, 3)
    f = chain[0]
    for e in strict_units(f):
        rec = find_link(w, chain, 0, e, 1)
        assert rec is not None and rec.stage_index == 1 and rec.canonical
        assert is_link(chain, 0, e, rec)
        g = chain[1]
        w1 = g.positions.index(Position(0, -2))
        # initial projection e_22 ⊗ ee*, final projection e_11 ⊗ e*e
        assert rec.domain_witness[w1] == 2 and rec.range_witness[w1] == 1
        rest = lambda lab: tuple(v for t, v in enumerate(lab) if t != w1 and
                                 g.positions[t] in f.positions)
        assert rest(rec.domain_witness) == f.label(e.row)
        assert rest(rec.range_witness) == f.label(e.col)


def test_links_omega_none():
    w = parse_order("w[2]")
    chain = build_chain(w, 5)
    for start in range(2):
        for e in strict_units(chain[start]):
            assert find_link(w, chain, start, e, 4 - start) is None


def test_link_of_diagonal_is_itself():
    w = parse_order("w[2]")
    chain = build_chain(w, 2)
    rec = find_link(w, chain, 0, (1, 1), 1)
    assert rec.link == MatrixUnit(1, 1) and rec.stage_index == 0


def test_link_bounds():
    w = parse_order("z[2]")
    chain = build_chain(w, 2)
    with pytest.raises(PreconditionError):
        find_link(w, chain, 0, (1, 2), 2)


def test_links_mixed():
    w = parse_order("w[2] + z[2]")
    chain = build_chain(w, 3)
    for e in strict_units(chain[0]):
        rec = find_link(w, chain, 0, e, 2)
        member = limit_radical_member(w, chain[0], e).member
        assert (rec is None) == member


def test_noncanonical_search_finds_links():
    # w* has no first element, so the next stage adds a point below every old one
    w = parse_order("w*[2]")
    chain = build_chain(w, 2)
    e = strict_units(chain[0])[0]
    rec = find_link(w, chain, 0, e, 1)
    assert rec.canonical and is_link(chain, 0, e, rec)


@settings(max_examples=40, deadline=None)
@given(weighted_orders(max_terms=2))
def test_no_first_element_links_within_horizon_two(w):
    assume(not has_first(w.expr))
    try:
        chain = build_chain(w, 3, budget=2048)
    except Exception:
        assume(False)
    f = chain[0]
    assume(f.n_f <= 16)
    for e in strict_units(f):
        rec = find_link(w, chain, 0, e, 2)
        assert rec is not None and is_link(chain, 0, e, rec)


# -- nilpotency -------------------------------------------------------------

def test_nilpotency_omega_two():
    w = parse_order("w[2]")
    s = build_chain(w, 2)[1]
    a = first_factor_image(s, {(1, 2): 1})
    assert nilpotency_check(w, s, a, trials=30, seed=1)


def test_nilpotency_rejects_diagonal():
    w = parse_order("w[2]")
    s = build_chain(w, 2)[1]
    with pytest.raises(PreconditionError):
        nilpotency_check(w, s, first_factor_image(s, {(1, 1): 1}))
    with pytest.raises(PreconditionError):
        nilpotency_check(w, s, s.algebra.unit(1, 2))


def test_nilpotency_requires_least_element():
    w = parse_order("z[2]")
    s = build_chain(w, 1)[0]
    with pytest.raises(PreconditionError):
        nilpotency_check(w, s, first_factor_image(s, {(1, 2): 1}))


def test_single_unit_square_always_vanishes():
    # a b a = e_13 ⊗ b_31 = 0 for every basis b, hence (ab)^2 = 0 for all b
    w = parse_order("w[3]")
    s = build_chain(w, 2)[1]
    a = first_factor_image(s, {(1, 3): 1})
    assert all(not (a * b * a) for b in s.algebra.basis())
    assert nilpotency_check(w, s, a, trials=40, seed=3)


def test_nilpotency_exponent_sharp_for_general_strict_element():
    w = parse_order("w[3]")
    s = build_chain(w, 2)[1]
    a = first_factor_image(s, {(1, 2): 1, (2, 3): 1})
    b = s.algebra.identity()
    assert (a * b) ** 2 and not (a * b) ** 3
    assert nilpotency_check(w, s, a, trials=40, seed=5)


def test_exponent_below_factor_size_is_not_enough():
    w = parse_order("w[3]")
    s = build_chain(w, 2)[1]
    a = first_factor_image(s, {(1, 2): 1, (2, 3): 1})
    b = s.algebra.identity()
    assert (a * b) ** (s.mults[0] - 1)


# -- quotient -----------------------------------------------------------------

def test_quotient_mixed():
    w = parse_order("w[2] + z[2]")
    q = quotient_structure(w, build_chain(w, 1)[0], with_basis=True)
    assert (q.dimension, q.radical_dimension, q.quotient_dimension) == (36, 16, 20)
    assert q.strict_containment and q.stage_radical_dimension == 28
    assert len(q.radical_units) == 16 and len(q.quotient_units) == 20
    assert not set(q.radical_units) & set(q.quotient_units)


def test_quotient_zeta_and_omega():
    w = parse_order("z[2]")
    q = quotient_structure(w, build_chain(w, 2)[1])
    assert q.radical_dimension == 0 and q.quotient_dimension == q.dimension
    w = parse_order("w[2]")
    s = build_chain(w, 2)[1]
    q = quotient_structure(w, s, with_basis=True)
    assert q.quotient_dimension == 4
    assert all(u.row == u.col for u in q.quotient_units)
    assert not q.strict_containment


@pytest.mark.parametrize("text", ["w[2] + z[2]", "1[3] + q[2]", "w[2] + w*[2]", "z[2]", "w[3]"])
def test_stage_containment_and_coherence(text):
    w = parse_order(text)
    chain = build_chain(w, 2)
    for k, s in enumerate(chain):
        limit = set(limit_radical_units(w, s))
        stage_rad = radical_combinatorial(s.algebra).edges
        assert limit <= stage_rad
        tail_strict = any(p.segment >= 0 and t >= split_point(w, s) for t, p in enumerate(s.positions))
        assert (limit == stage_rad) == (not tail_strict)
    f, g = chain[0], chain[1]
    for i, j in f.algebra.edges():
        member = limit_radical_member(w, f, (i, j)).member
        img = chain.embed(0, 1, f.algebra.unit(i, j))
        assert all(limit_radical_member(w, g, t).member == member for t in img.terms)

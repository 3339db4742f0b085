import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wehrl import (
    FiniteAbelianGroup,
    GroupMismatchError,
    PhaseSpacePoint,
    Subgroup,
    all_subgroups,
    annihilator,
    coset_representatives,
    direct_product,
    dual_annihilator,
    is_corwin,
    maximal_compact,
    parse_generators,
    parse_group,
    parse_point,
    phase_space,
    subgroup_closure,
)
from wehrl.groups import character_table, difference_index_table

# groups up to order 36 with at most three factors; big enough to hit
# non-cyclic and non-squarefree structure, small enough for exhaustion
group_descriptors = st.lists(st.integers(2, 6), min_size=1, max_size=3).filter(
    lambda orders: math.prod(orders) <= 36
)


def groups(draw_orders):
    return FiniteAbelianGroup(tuple(draw_orders))


def random_subgroup(group, data):
    n = data.draw(st.integers(0, 2))
    gens = tuple(
        group.element_by_index(data.draw(st.integers(0, group.order - 1)))
        for _ in range(n)
    )
    return subgroup_closure(group, gens)


def coords_of(collection):
    return [x.coords for x in collection]


# ---------------------------------------------------------------------------
# parsing


def test_parse_group_round_trip():
    g = parse_group("Z4xZ2")
    assert g.orders == (4, 2)
    assert str(g) == "Z4xZ2"
    assert parse_group("z6").orders == (6,)
    assert parse_group("Z2XZ3").orders == (2, 3)


@pytest.mark.parametrize("bad", ["", "Z0", "Zx", "4", "Z-2", "Z2x", "xZ2"])
def test_parse_group_rejects(bad):
    with pytest.raises(ValueError):
        parse_group(bad)


def test_parse_generators():
    g = parse_group("Z4")
    assert coords_of(parse_generators(g, "2")) == [(2,)]
    assert parse_generators(g, "") == ()
    assert coords_of(parse_generators(g, "4")) == [(0,)]  # reduced mod 4
    g2 = parse_group("Z2xZ2")
    assert coords_of(parse_generators(g2, "1,0;0,1")) == [(1, 0), (0, 1)]
    with pytest.raises(ValueError):
        parse_generators(g2, "1")  # wrong arity


def test_parse_point():
    g = parse_group("Z2xZ2")
    z = parse_point(g, "0,1;1,0")
    assert z.g.coords == (0, 1)
    assert z.chi.coords == (1, 0)
    with pytest.raises(ValueError):
        parse_point(g, "0,1")  # missing character half


# ---------------------------------------------------------------------------
# element arithmetic


def test_element_arithmetic_frozen():
    g = parse_group("Z4")
    a, b = g.element((3,)), g.element((2,))
    assert (a + b).coords == (1,)
    assert (-a).coords == (1,)
    assert (a - g.element((1,))).coords == (2,)
    assert g.zero().is_zero()


def test_mismatched_groups_rejected():
    a = parse_group("Z2").element((1,))
    b = parse_group("Z3").element((1,))
    with pytest.raises(GroupMismatchError):
        a + b


def test_element_order_is_lex():
    g = parse_group("Z2xZ3")
    coords = [e.coords for e in g.elements()]
    assert coords == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert [e.index for e in g.elements()] == list(range(6))


@settings(max_examples=25, deadline=None)
@given(group_descriptors, st.data())
def test_element_index_round_trip(orders, data):
    g = groups(orders)
    i = data.draw(st.integers(0, g.order - 1))
    assert g.element_by_index(i).index == i
    j = data.draw(st.integers(0, g.order - 1))
    a, b = g.element_by_index(i), g.element_by_index(j)
    assert (a + b).coords == (b + a).coords
    assert (a + (-a)).is_zero()


# ---------------------------------------------------------------------------
# characters


def test_character_pairing_frozen():
    g = parse_group("Z4")
    chi = g.character((1,))
    assert chi.phase(g.element((1,))) == Fraction(1, 4)
    assert chi(g.element((1,))) == pytest.approx(1j)
    chi3 = g.character((3,))
    assert chi3.phase(g.element((3,))) == Fraction(1, 4)
    g2 = parse_group("Z2xZ2")
    assert g2.character((1, 1)).phase(g2.element((1, 1))) == 0


def test_character_multiplicative_exact():
    for spec in ("Z6", "Z2xZ2", "Z4"):
        g = parse_group(spec)
        for chi in g.characters():
            for a in g.elements():
                for b in g.elements():
                    assert chi.phase(a + b) == (chi.phase(a) + chi.phase(b)) % 1


def test_character_group_structure():
    g = parse_group("Z6")
    c2, c3 = g.character((2,)), g.character((3,))
    assert (c2 * c3).coords == (5,)
    assert c2.conjugate().coords == (4,)
    assert g.trivial_character().is_trivial()
    row = c2.values()
    assert np.abs(np.abs(row) - 1.0).max() < 1e-14


def test_character_table_matches_rows():
    g = parse_group("Z4xZ2")
    table = character_table(g)
    for chi in g.characters():
        assert np.array_equal(table[chi.index], chi.values())
    # orthogonality of distinct rows
    gram = table @ table.conj().T / g.order
    assert np.abs(gram - np.eye(g.order)).max() < 1e-13


def test_difference_index_table():
    g = parse_group("Z2xZ3")
    idx = difference_index_table(g)
    for a in g.elements():
        for b in g.elements():
            assert idx[a.index, b.index] == (b - a).index


# ---------------------------------------------------------------------------
# subgroups


def test_subgroup_validation():
    g = parse_group("Z4")
    with pytest.raises(ValueError):
        Subgroup(g, (g.element((1,)),))  # missing zero
    with pytest.raises(ValueError):
        Subgroup(g, (g.element((0,)), g.element((1,))))  # not closed
    with pytest.raises(ValueError):
        Subgroup(g, (g.element((0,)), g.element((2,)), g.element((2,))))


def test_subgroup_closure_frozen():
    g = parse_group("Z4")
    assert coords_of(subgroup_closure(g, (g.element((2,)),)).elements) == [(0,), (2,)]
    g2 = parse_group("Z2xZ2")
    assert coords_of(subgroup_closure(g2, (g2.element((1, 0)),)).elements) == [(0, 0), (1, 0)]
    g6 = parse_group("Z6")
    assert coords_of(subgroup_closure(g6, (g6.element((2,)),)).elements) == [(0,), (2,), (4,)]
    assert coords_of(subgroup_closure(g, ()).elements) == [(0,)]


@pytest.mark.parametrize(
    "spec,count",
    [("Z3", 2), ("Z4", 3), ("Z8", 4), ("Z9", 3), ("Z6", 4),
     ("Z2xZ2", 5), ("Z3xZ3", 6), ("Z4xZ2", 8), ("Z2xZ2xZ2", 16)],
)
def test_subgroup_lattice_counts(spec, count):
    g = parse_group(spec)
    subs = all_subgroups(g)
    assert len(subs) == count
    orders = [H.order for H in subs]
    assert orders == sorted(orders)
    for H in subs:
        assert g.order % H.order == 0


@settings(max_examples=25, deadline=None)
@given(group_descriptors, st.data())
def test_subgroup_closure_is_group(orders, data):
    g = groups(orders)
    H = random_subgroup(g, data)
    members = {e.coords for e in H.elements}
    for a in H.elements:
        assert (-a).coords in members
        for b in H.elements:
            assert (a + b).coords in members


# ---------------------------------------------------------------------------
# annihilators


def test_annihilator_frozen():
    g = parse_group("Z4")
    A = annihilator(subgroup_closure(g, (g.element((2,)),)))
    assert coords_of(A.characters) == [(0,), (2,)]
    g2 = parse_group("Z2xZ2")
    A2 = annihilator(subgroup_closure(g2, (g2.element((1, 0)),)))
    assert coords_of(A2.characters) == [(0, 0), (0, 1)]
    g6 = parse_group("Z6")
    A6 = annihilator(subgroup_closure(g6, (g6.element((2,)),)))
    assert coords_of(A6.characters) == [(0,), (3,)]


def test_annihilator_float_oracle():
    # independent route: brute-force the defining property in floats
    for spec in ("Z4", "Z6", "Z2xZ2", "Z9"):
        g = parse_group(spec)
        for H in all_subgroups(g):
            expected = set()
            for chi in g.characters():
                vals = [
                    np.exp(2j * np.pi * sum(c * h / n for c, h, n
                                            in zip(chi.coords, e.coords, g.orders)))
                    for e in H.elements
                ]
                if max(abs(v - 1.0) for v in vals) < 1e-9:
                    expected.add(chi.coords)
            assert {c.coords for c in annihilator(H).characters} == expected


@settings(max_examples=25, deadline=None)
@given(group_descriptors, st.data())
def test_annihilator_size_and_duality(orders, data):
    g = groups(orders)
    H = random_subgroup(g, data)
    A = annihilator(H)
    assert A.order * H.order == g.order
    back = dual_annihilator(A)
    assert back.elements == H.elements


# ---------------------------------------------------------------------------
# maximal compact subgroup and cosets


def test_maximal_compact_structure():
    g = parse_group("Z4")
    H = subgroup_closure(g, (g.element((2,)),))
    K = maximal_compact(H)
    assert K.order == g.order
    expected = {((0,), (0,)), ((0,), (2,)), ((2,), (0,)), ((2,), (2,))}
    assert {(z.g.coords, z.chi.coords) for z in K.points} == expected


def test_maximal_compact_separation():
    for spec in ("Z4", "Z6", "Z2xZ2", "Z8"):
        g = parse_group(spec)
        for H in all_subgroups(g):
            K = maximal_compact(H)
            A = K.dual_part
            for x in g.elements():
                if x in H:
                    continue
                # some annihilator character must see x
                assert any(chi.phase(x) != 0 for chi in A.characters)


def test_coset_representatives_partition():
    g = parse_group("Z6")
    for H in all_subgroups(g):
        K = maximal_compact(H)
        reps = coset_representatives(K)
        assert len(reps) * K.order == g.order ** 2
        seen = set()
        for rep in reps:
            block = {(rep + u).index for u in K.points}
            assert len(block) == K.order
            assert not (block & seen)
            seen |= block
            assert rep.index == min(block)  # lex-least member represents
        assert len(seen) == g.order ** 2


def test_coset_representatives_trivial_cases():
    g = parse_group("Z4")
    K_full = maximal_compact(subgroup_closure(g, (g.element((1,)),)))
    # H = G gives K = H x {trivial}; |K| = 4, 4 cosets
    assert len(coset_representatives(K_full)) == 4


# ---------------------------------------------------------------------------
# Corwin predicate, phase space, products


def test_is_corwin_frozen():
    g4 = parse_group("Z4")
    assert is_corwin(subgroup_closure(g4, ())) is True
    assert is_corwin(subgroup_closure(g4, (g4.element((2,)),))) is False
    assert is_corwin(subgroup_closure(g4, (g4.element((1,)),))) is False
    g3 = parse_group("Z3")
    assert is_corwin(subgroup_closure(g3, (g3.element((1,)),))) is True
    g2 = parse_group("Z2")
    assert is_corwin(subgroup_closure(g2, (g2.element((1,)),))) is False


def test_phase_space_indexing():
    g = parse_group("Z2xZ2")
    pts = list(phase_space(g))
    assert len(pts) == 16
    for i, z in enumerate(pts):
        assert z.index == i
        assert PhaseSpacePoint.by_index(g, i) == z
    z = pts[5]
    assert (z + (-z)).is_identity()


def test_direct_product():
    g = direct_product(parse_group("Z2"), parse_group("Z3"))
    assert g.orders == (2, 3)
    assert str(g) == "Z2xZ3"

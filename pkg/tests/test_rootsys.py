from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagquant.rootsys import Root, RootSystemError, Weight, WeylWord, positive_roots, root_system, weyl_dim
from oracles import freudenthal_dim, lattice_positive_roots

SMALL = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4), ("G", 2)]
COUNTS = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("B", 2): 4, ("B", 3): 9, ("C", 3): 9, ("D", 4): 12,
          ("G", 2): 6, ("F", 4): 24, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120}


@pytest.mark.parametrize("fam,rank", sorted(COUNTS))
def test_positive_root_counts(fam, rank):
    assert len(positive_roots(fam, rank)) == COUNTS[(fam, rank)]


@pytest.mark.parametrize("fam,rank,bound", [("A", 3, 1), ("B", 3, 2), ("C", 3, 2), ("D", 4, 2),
                                            ("G", 2, 3), ("B", 4, 2), ("E", 6, 3)])
def test_positive_roots_match_lattice_enumeration(fam, rank, bound):
    assert {a.coords for a in positive_roots(fam, rank)} == lattice_positive_roots(fam, rank, bound)


def test_cartan_convention():
    # cartan[i][j] = alpha_j(H_alpha_i); B2 has alpha_1 long, G2 has alpha_1 short
    assert root_system("B", 2).cartan == ((2, -1), (-2, 2))
    assert root_system("G", 2).cartan == ((2, -3), (-1, 2))
    assert root_system("A", 2).cartan == ((2, -1), (-1, 2))


def test_roots_sorted_by_height():
    roots = positive_roots("G", 2)
    assert [r.height for r in roots] == sorted(r.height for r in roots)
    assert roots[-1].coords == (3, 2)


def test_a2_examples():
    rs = root_system("A", 2)
    assert rs.simple_reflection(0, Weight.of(-1, -1)) == Weight.of(1, -2)
    dom, word, inv = rs.to_dominant(Weight.of(-1, -1))
    assert dom == Weight.of(1, 1) and inv == 3 and len(word) == 3
    assert rs.negate_by_w0(Weight.of(5, 0)) == Weight.of(0, 5)
    assert rs.weyl_dim(Weight.of(1, 0)) == 3


@pytest.mark.parametrize("fam,rank,lam", [
    ("G", 2, (1, 0)), ("G", 2, (0, 1)), ("G", 2, (1, 1)), ("B", 2, (1, 1)), ("C", 3, (1, 0, 1)),
    ("A", 3, (2, 0, 1)), ("B", 3, (1, 0, 1)), ("D", 4, (0, 1, 0, 0)), ("C", 2, (2, 1)),
])
def test_weyl_dim_matches_freudenthal(fam, rank, lam):
    w = Weight.of(*lam)
    assert root_system(fam, rank).weyl_dim(w) == freudenthal_dim(fam, rank, w)


def test_exceptional_dims():
    assert weyl_dim(root_system("G", 2), Weight.of(1, 0)) == 7
    assert weyl_dim(root_system("G", 2), Weight.of(0, 1)) == 14
    assert weyl_dim(root_system("E", 8), Weight.of(0, 0, 0, 0, 0, 0, 0, 1)) == 248
    assert weyl_dim(root_system("F", 4), Weight.of(0, 0, 0, 1)) == 26


@pytest.mark.parametrize("fam,rank", [("A", 0), ("B", 1), ("D", 2), ("E", 5), ("F", 3), ("G", 3), ("X", 2)])
def test_inadmissible(fam, rank):
    with pytest.raises(RootSystemError):
        root_system(fam, rank)


def test_weight_parsing_and_errors():
    assert Weight.parse("0,-3/2") == Weight.of(0, Fraction(-3, 2))
    with pytest.raises(RootSystemError):
        root_system("A", 2).weyl_dim(Weight.of(-1, 0))
    with pytest.raises(RootSystemError):
        root_system("A", 2).simple_reflection(5, Weight.of(0, 0))
    assert str(WeylWord((0, 1))) == "s1s2"


def test_longest_element_length():
    for fam, rank in SMALL:
        rs = root_system(fam, rank)
        assert len(rs.longest_element) == len(rs.positive_roots)
        assert rs.apply_word(rs.longest_element, rs.rho) == -rs.rho


systems = st.sampled_from(SMALL)


@st.composite
def system_and_weight(draw):
    fam, rank = draw(systems)
    coords = draw(st.lists(st.integers(-8, 8), min_size=rank, max_size=rank))
    return root_system(fam, rank), Weight.of(*coords)


@settings(max_examples=150, deadline=None)
@given(system_and_weight(), st.integers(0, 3))
def test_reflection_is_involution(sw, i):
    rs, lam = sw
    i %= rs.rank
    assert rs.simple_reflection(i, rs.simple_reflection(i, lam)) == lam


@settings(max_examples=150, deadline=None)
@given(system_and_weight())
def test_to_dominant_properties(sw):
    rs, lam = sw
    dom, word, inv = rs.to_dominant(lam)
    assert dom.is_dominant()
    assert rs.apply_word(word, lam) == dom
    if all(p != 0 for p in rs.pairings(lam)):
        assert len(word) == inv


@settings(max_examples=100, deadline=None)
@given(system_and_weight())
def test_w0_negation_is_involution_on_dominant(sw):
    rs, lam = sw
    dom = rs.to_dominant(lam)[0]
    assert rs.negate_by_w0(rs.negate_by_w0(dom)) == dom
    assert rs.weyl_dim(rs.negate_by_w0(dom)) == rs.weyl_dim(dom)


def test_root_is_ordered_value():
    a, b = Root((1, 0)), Root((1, 1))
    assert a.height == 1 and b.height == 2

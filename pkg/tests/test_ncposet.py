from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import (
    dihedral_group,
    hyperoctahedral_group,
    narayana,
    noncrossing_partitions_by_type,
    symmetric_group,
)

from coxlab.arrangement import build_lattice
from coxlab.group import GroupElement, coxeter_element, enumerate_group
from coxlab.ncposet import (
    absolute_leq,
    build_nc,
    count_maximal_chains,
    kreweras_line_numbers,
    product_poset,
    rank_sizes,
    zeta_value,
)
from coxlab.rootsys import build_root_system

_CACHE = {}


def nc(name, mode="bipartite"):
    key = (name, mode)
    if key not in _CACHE:
        rs = build_root_system(name)
        gt = enumerate_group(rs)
        _CACHE[key] = build_nc(gt, coxeter_element(rs, mode))
    return _CACHE[key]


def oracle(name):
    fam, n = name[0], int(name[1:]) if name[0] != "I" else 0
    if fam == "A":
        return symmetric_group(n + 1)
    if fam == "B":
        return hyperoctahedral_group(n)
    return dihedral_group(int(name[3:-1]))


# --- sizes and chain numbers against the explicit-group oracles -------------

ORACLE_VALUES = {
    # name: (|NC|, MC, Z(2)) computed by the oracles in oracles.py
    "A1": (2, 1, 3),
    "A2": (5, 3, 12),
    "A3": (14, 16, 55),
    "A4": (42, 125, 273),
    "B2": (6, 4, 15),
    "B3": (20, 27, 84),
    "I2(5)": (7, 5, 18),
    "I2(7)": (9, 7, 24),
}


@pytest.mark.parametrize("name", sorted(ORACLE_VALUES))
def test_oracle_values_are_reproduced_by_the_oracle(name):
    g, c = oracle(name)
    size, mc, z2 = ORACLE_VALUES[name]
    assert len(g.nc(c)) == size
    assert len(g.factorizations(c)) == mc
    assert g.multichains(c, 2) == z2


@pytest.mark.parametrize("name", sorted(ORACLE_VALUES))
def test_nc_matches_oracle_values(name):
    p = nc(name)
    size, mc, z2 = ORACLE_VALUES[name]
    assert len(p) == size
    assert count_maximal_chains(p, verify=True) == mc
    assert zeta_value(p, 1) == size
    assert zeta_value(p, 2) == z2


@pytest.mark.parametrize("name,mc", [("B3", 27), ("H3", 50), ("D4", 162), ("F4", 432)])
def test_chain_numbers_by_dfs_agreement(name, mc):
    assert count_maximal_chains(nc(name), verify=True) == mc


@pytest.mark.parametrize("name", ["A2", "A3", "B2"])
def test_zeta_matches_brute_multichain_count(name):
    g, c = oracle(name)
    p = nc(name)
    for k in (1, 2, 3):
        assert zeta_value(p, k) == g.multichains(c, k)


def test_bounded_graded_with_all_reflections_as_atoms():
    for name in ["A3", "B3", "H3", "D4", "I2(8)"]:
        p = nc(name)
        rs = p.gt.rs
        assert p.rank[0] == 0 and p.elements[0] == 0
        assert p.maxima() == [p.pos[p.c]]
        assert rank_sizes(p)[1] == rs.N
        assert p.height == rs.rank


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_a_rank_sizes_are_narayana(n):
    assert rank_sizes(nc(f"A{n}")) == [narayana(n + 1, k) for k in range(1, n + 2)]


def test_absolute_order_examples():
    rs = build_root_system("A2")
    s1, s2 = GroupElement.simple(rs, 0), GroupElement.simple(rs, 1)
    c = s1 * s2
    e = GroupElement.identity(rs)
    assert absolute_leq(e, c) and absolute_leq(c, c)
    assert absolute_leq(s1, c) and not absolute_leq(c, s1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A3", "B3", "H3"]), st.data())
def test_absolute_order_agrees_with_poset(name, data):
    p = nc(name)
    i = data.draw(st.integers(0, len(p) - 1))
    j = data.draw(st.integers(0, len(p) - 1))
    assert p.leq(i, j) == absolute_leq(p.element(i), p.element(j))


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "H3"])
def test_choice_of_coxeter_element_is_immaterial(name):
    a, b = nc(name, "bipartite"), nc(name, "standard")
    assert len(a) == len(b)
    assert count_maximal_chains(a) == count_maximal_chains(b)
    assert [zeta_value(a, k) for k in (1, 2, 3)] == [zeta_value(b, k) for k in (1, 2, 3)]


@pytest.mark.parametrize("parts,mc", [(("A1", "A1"), 2), (("A2", "A1"), 9), (("A2", "B2"), 72)])
def test_shuffle_law_on_product_posets(parts, mc):
    p = product_poset(nc(parts[0]), nc(parts[1]))
    assert count_maximal_chains(p) == mc
    heights = [nc(x).height for x in parts]
    expected = math.comb(sum(heights), heights[0])
    for x in parts:
        expected *= count_maximal_chains(nc(x))
    assert mc == expected


def test_product_poset_matches_nc_of_product_group():
    p = product_poset(nc("A2"), nc("A1"))
    q = nc("A2xA1")
    assert len(p) == len(q) and count_maximal_chains(p) == count_maximal_chains(q)
    assert zeta_value(p, 3) == zeta_value(q, 3) == zeta_value(nc("A2"), 3) * zeta_value(nc("A1"), 3)


@pytest.mark.parametrize("name,expected", [
    ("A2", [(3, 3)]),
    ("B2", [(2, 2), (2, 2)]),
    ("A1", []),
])
def test_kreweras_lines(name, expected):
    p = nc(name)
    lat = build_lattice(p.gt.rs)
    recs = kreweras_line_numbers(p, lat, p.gt)
    assert [(r.count, r.formula) for r in recs] == expected


def test_kreweras_a3_against_noncrossing_partitions():
    # lines of A3 <-> partitions of 4 points into two blocks; the NC elements
    # fixing such a line are the noncrossing partitions of that block type
    by_type = noncrossing_partitions_by_type(4)
    p = nc("A3")
    recs = kreweras_line_numbers(p, build_lattice(p.gt.rs), p.gt)
    assert sorted(r.count for r in recs) == sorted([by_type[(3, 1)], by_type[(2, 2)]])
    assert all(r.count == r.formula for r in recs)


def test_zeta_rejects_nonpositive_k():
    with pytest.raises(ValueError):
        zeta_value(nc("A2"), 0)

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlab.errors import UnknownTypeError
from coxlab.rootsys import (
    CoxeterType,
    RootSystem,
    build_root_system,
    classify_coxeter_matrix,
    coxeter_matrix_of,
    decompose_components,
    parse_type,
    simple_subsystem,
)

# positive-root counts N and Coxeter numbers h = 2N/n
ROOT_DATA = {
    "A1": (1, 2), "A2": (3, 3), "A3": (6, 4), "A4": (10, 5),
    "B2": (4, 4), "B3": (9, 6), "B4": (16, 8),
    "D4": (12, 6), "F4": (24, 12), "H3": (15, 10), "H4": (60, 30), "E6": (36, 12),
    "I2(3)": (3, 3), "I2(4)": (4, 4), "I2(5)": (5, 5), "I2(6)": (6, 6), "I2(9)": (9, 9),
}


@pytest.mark.parametrize("name", sorted(ROOT_DATA))
def test_root_counts_and_coxeter_number(name):
    rs = build_root_system(name)
    n_roots, h = ROOT_DATA[name]
    assert rs.N == n_roots
    assert rs.coxeter_number == h
    assert decompose_components(rs).multiset == [h] * rs.rank


@pytest.mark.parametrize("name", [n for n in ROOT_DATA if not n.startswith("I2(") or n[3] in "346"])
def test_roots_have_length_two_and_are_closed_under_reflections(name):
    rs = build_root_system(name)
    for i in range(2 * rs.N):
        assert rs.inner(i, i) == 2
    for p, perm in enumerate(rs.reflection_perms):
        assert sorted(perm) == list(range(2 * rs.N))
        assert perm[p] == p + rs.N  # s_a(a) = -a


def test_quadratic_fields_per_type():
    assert build_root_system("A3").field == 0
    assert build_root_system("H3").field == 5
    assert build_root_system("B3").field == 2
    assert build_root_system("I2(6)").field == 3


def test_parse_type():
    assert parse_type("A2xB3") == (CoxeterType("A", 2), CoxeterType("B", 3))
    assert parse_type("A1×A1") == (CoxeterType("A", 1), CoxeterType("A", 1))
    assert parse_type("I2(7)") == (CoxeterType("I", 2, 7),)


@pytest.mark.parametrize("bad", ["", "Z3", "A0", "B1", "D3", "E9", "F5", "H5", "I2(2)", "A2x", "I3(5)"])
def test_unknown_types_rejected(bad):
    with pytest.raises(UnknownTypeError):
        build_root_system(bad)


def test_abstract_dihedral_cannot_be_a_factor():
    with pytest.raises(UnknownTypeError):
        build_root_system("I2(5)xA1")


def test_abstract_dihedral_model():
    rs = build_root_system("I2(7)")
    assert rs.abstract and rs.N == 7 and rs.simple_indices == (0, 6)
    # reflecting root k in root j gives root 2j + m - k (mod 2m)
    assert rs.reflection_perms[1][0] == (2 + 7) % 14
    assert rs.orthogonal(0, 0) is False
    even = build_root_system("I2(8)")
    assert even.orthogonal(0, 4) and not even.orthogonal(0, 3)


@pytest.mark.parametrize("name,multiset", [
    ("A2xB3", [3, 3, 6, 6, 6]),
    ("A1xA1", [2, 2]),
    ("A2xA1", [2, 3, 3]),
])
def test_product_multisets(name, multiset):
    rs = build_root_system(name)
    d = decompose_components(rs)
    assert d.multiset == multiset
    assert len(d.components) == len(parse_type(name))


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "D4", "F4", "A2xB2"])
def test_simple_subsystem_of_whole_system_is_the_simple_roots(name):
    rs = build_root_system(name)
    assert simple_subsystem(rs, range(rs.N)) == list(range(rs.rank))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A3", "B3", "H3", "D4"]), st.data())
def test_simple_subsystem_of_a_parabolic(name, data):
    rs = build_root_system(name)
    picks = data.draw(st.lists(st.integers(0, rs.N - 1), min_size=1, max_size=3, unique=True))
    closed = rs.closure(picks)
    simples = simple_subsystem(rs, closed)
    assert len(simples) == rs.rank_of(closed)
    # the simple roots generate a reflection subgroup of the right type
    cm = coxeter_matrix_of(rs, simples)
    sub = RootSystem(cm)
    assert sub.N == len(closed)


def test_classify_names():
    assert classify_coxeter_matrix(build_root_system("E6").coxeter_matrix) == "E6"
    assert classify_coxeter_matrix(build_root_system("D4").coxeter_matrix) == "D4"
    assert classify_coxeter_matrix(((1, 2), (2, 1))) == "A1xA1"
    assert classify_coxeter_matrix(()) == "A0"


def test_bipartition_is_a_proper_two_colouring():
    for name in ["A4", "D4", "E6", "F4", "H4"]:
        rs = build_root_system(name)
        a, b = rs.bipartition
        assert sorted(a + b) == list(range(rs.rank))
        for part in (a, b):
            for i in part:
                for j in part:
                    assert i == j or rs.coxeter_matrix[i][j] == 2

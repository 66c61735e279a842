"""Exact integer linear algebra, checked against sympy and brute force."""
import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from reductive_sheets import lattice as lat
from reductive_sheets.errors import SpecError
from reductive_sheets.rootsys import GroupSpec, RootSystem

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))


def _diag(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def test_snf_identity():
    u, d, v = lat.smith_normal_form(lat.identity(3))
    assert d == lat.identity(3)


def test_snf_2_3():
    _, d, _ = lat.smith_normal_form([[2, 0], [0, 3]])
    assert _diag(d) == [1, 6]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(m):
    u, d, v = lat.smith_normal_form(m)
    assert lat.matmul(lat.matmul(u, m), v) == d
    assert abs(lat.determinant(u)) == 1 and abs(lat.determinant(v)) == 1
    diag = _diag(d)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_matches_sympy(m):
    ours = [x for x in _diag(lat.smith_normal_form(m)[1]) if x]
    ref = sympy_snf(Matrix(m), domain=ZZ)
    theirs = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0)
    assert ours == theirs


def _lattice(text, iso="adjoint"):
    return RootSystem(GroupSpec.parse(text, iso)).character_lattice


def test_lattice_indices():
    for text, order in [("A3", 4), ("B3", 2), ("C4", 2), ("D4", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("G2", 1)]:
        ad, sc = _lattice(text), _lattice(text, "simply_connected")
        assert ad.index_over_roots == 1 and ad.index_in_weights == order
        assert sc.index_in_weights == 1 and sc.index_over_roots == order


def test_intermediate_lattice_so4n():
    # D4 with the half-spin weight: index 2 on both sides
    rs = RootSystem(GroupSpec.parse("D4", "intermediate", [(0, 0, 0, 1)]))
    x = rs.character_lattice
    assert x.index_over_roots * x.index_in_weights == 4
    assert x.index_over_roots == 2


def test_intermediate_rejects_non_weights():
    with pytest.raises(SpecError):
        GroupSpec.parse("A3", "intermediate", [(1, 0)])


def _sigma(rs, J):
    return [[int(x) for x in rs.weight_coords[rs.node_root(c, i)]] for c, i in J]


def test_c2_component_groups():
    ad = RootSystem(GroupSpec.parse("C2"))
    sc = RootSystem(GroupSpec.parse("C2", "simply_connected"))
    J = [(0, 0), (0, 2)]
    assert lat.quotient_torsion(ad.character_lattice, _sigma(ad, J)).invariant_factors == (2,)
    assert lat.quotient_torsion(sc.character_lattice, _sigma(sc, J)).invariant_factors == (2, 2)


def test_type_a_adjoint_always_trivial():
    for n in range(1, 6):
        rs = RootSystem(GroupSpec.parse(f"A{n}"))
        nodes = [(0, i) for i in range(n + 1)]
        for m in range(n + 2):
            for J in itertools.combinations(nodes, m):
                assert lat.quotient_torsion(rs.character_lattice, _sigma(rs, J)).is_trivial


def test_component_group_map_identity_and_inclusion():
    rs = RootSystem(GroupSpec.parse("C2"))
    X = rs.character_lattice
    big = _sigma(rs, [(0, 0), (0, 2)])
    h = lat.component_group_map(X, big, big)
    assert all(h(x) == x for x in h.source.elements())
    h = lat.component_group_map(X, _sigma(rs, [(0, 2)]), big)
    assert h.source.is_trivial and h.target.order == 2
    with pytest.raises(SpecError):
        lat.component_group_map(X, _sigma(rs, [(0, 1)]), big)


def test_component_group_map_functorial():
    rs = RootSystem(GroupSpec.parse("B3", "simply_connected"))
    X = rs.character_lattice
    a = _sigma(rs, [(0, 3)])
    b = _sigma(rs, [(0, 0), (0, 3)])
    c = _sigma(rs, [(0, 0), (0, 1), (0, 3)])
    f, g, h = (lat.component_group_map(X, a, b), lat.component_group_map(X, b, c),
               lat.component_group_map(X, a, c))
    assert g.compose(f) == h


def test_isogeny_map_c2():
    ad = RootSystem(GroupSpec.parse("C2"))
    sc = RootSystem(GroupSpec.parse("C2", "simply_connected"))
    gens = _sigma(ad, [(0, 0), (0, 2)])
    h = lat.isogeny_map(ad.character_lattice, sc.character_lattice, gens)
    # on component groups of centres the isogeny Sp4 -> PSp4 is the dual map
    d = h.dual()
    assert d.source.invariant_factors == (2, 2) and d.target.invariant_factors == (2,)
    assert d.is_surjective()
    assert len(d.kernel()) == 2


def _minor_gcd_order(X, gens):
    """Product of the nonzero invariant factors = gcd of the maximal nonzero minors."""
    m = Matrix([X.coords(g) for g in gens])
    k = m.rank()
    if k == 0:
        return 1
    g = 0
    for rows in itertools.combinations(range(m.rows), k):
        for cols in itertools.combinations(range(m.cols), k):
            g = math.gcd(g, int(m.extract(list(rows), list(cols)).det()))
    return g


@pytest.mark.parametrize("text", ["A2", "B2", "C3", "G2", "A1xA1"])
def test_torsion_order_brute_force(text):
    for iso in ("adjoint", "simply_connected"):
        rs = RootSystem(GroupSpec.parse(text, iso))
        X = rs.character_lattice
        comps = rs.components
        per = [[(k, i) for i in range(c.rank + 1)] for k, c in enumerate(comps)]
        nodes = [x for p in per for x in p]
        for m in range(1, len(nodes) + 1):
            for J in itertools.combinations(nodes, m):
                gens = _sigma(rs, J)
                assert lat.quotient_torsion(X, gens).order == _minor_gcd_order(X, gens)

"""Unipotent classes: classification, dimensions, collapse, induction, rigidity, tables."""
import itertools
from collections import Counter

import numpy as np
import pytest

from reductive_sheets import unipotent as up
from reductive_sheets.errors import CapabilityError, SpecError

from oracles import induce_in_stages


# -- independent oracles --------------------------------------------------------


def _all_partitions(n):
    """Partitions of n from compositions (independent of up.partitions)."""
    out = set()
    for cuts in itertools.product([0, 1], repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def _valid(letter, p):
    c = Counter(p)
    if letter == "C":
        return all(m % 2 == 0 for q, m in c.items() if q % 2 == 1)
    if letter in "BD":
        return all(m % 2 == 0 for q, m in c.items() if q % 2 == 0)
    return True


def _size(letter, n):
    return {"A": n + 1, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[letter]


def _block_form(k, sign):
    """Form on a Jordan block e_1..e_k with N e_i = e_{i+1}, invariant under N."""
    f = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        f[i, k - 1 - i] = (-1) ** i
    return f


def _nilpotent_in_form(letter, p):
    """Explicit nilpotent matrix of Jordan type p and the invariant form it preserves."""
    sign = -1 if letter == "C" else 1  # form symmetric (+1) or alternating (-1)
    blocks, counts = [], Counter(p)
    for k, m in sorted(counts.items(), reverse=True):
        own = (k % 2 == 1) == (sign == 1)  # single block carries a form of the right type
        if own:
            blocks += [("single", k)] * m
        else:
            blocks += [("pair", k)] * (m // 2)
    size = sum(k if t == "single" else 2 * k for t, k in blocks)
    N = np.zeros((size, size), dtype=np.int64)
    F = np.zeros((size, size), dtype=np.int64)
    o = 0
    for t, k in blocks:
        for rep in range(1 if t == "single" else 2):
            for i in range(k - 1):
                N[o + rep * k + i + 1, o + rep * k + i] = 1
        b = _block_form(k, sign)
        if t == "single":
            F[o:o + k, o:o + k] = b
        else:
            F[o:o + k, o + k:o + 2 * k] = b
            F[o + k:o + 2 * k, o:o + k] = sign * b.T
        o += k * (1 if t == "single" else 2)
    return N, F


def _centralizer_orbit_dim(letter, n, p):
    if letter == "A":
        N = np.zeros((sum(p), sum(p)), dtype=np.int64)
        o = 0
        for k in p:
            for i in range(k - 1):
                N[o + i + 1, o + i] = 1
            o += k
        d = sum(p)
        comm = np.array([(np.eye(d)[:, [i]] @ np.eye(d)[[j], :] @ N - N @ np.eye(d)[:, [i]] @ np.eye(d)[[j], :]).ravel()
                         for i in range(d) for j in range(d)]).T
        cent = d * d - np.linalg.matrix_rank(comm)
        return (d * d) - cent  # gl and sl centralizers differ by the centre on both sides
    N, F = _nilpotent_in_form(letter, p)
    d = len(N)
    assert np.array_equal(N.T @ F + F @ N, np.zeros_like(F))
    rows_g, rows_c = [], []
    for i in range(d):
        for j in range(d):
            E = np.zeros((d, d))
            E[i, j] = 1
            rows_g.append((E.T @ F + F @ E).ravel())
            rows_c.append((E @ N - N @ E).ravel())
    g_map = np.array(rows_g).T
    both = np.vstack([g_map, np.array(rows_c).T])
    dim_g = d * d - np.linalg.matrix_rank(g_map)
    dim_c = d * d - np.linalg.matrix_rank(both)
    assert dim_g == up.group_dimension(letter, n)
    return dim_g - dim_c


# -- classification and dimensions ---------------------------------------------


def test_small_class_lists():
    assert [c.label[0] for c in up.classify_unipotent("A", 1)] == [(1, 1), (2,)]
    assert sorted(c.label[0] for c in up.classify_unipotent("C", 2)) == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (4,)]
    d4 = up.classify_unipotent("D", 4)
    assert len(d4) == 12
    assert sorted(c.label for c in d4 if c.label[1]) == [((2, 2, 2, 2), "I"), ((2, 2, 2, 2), "II"),
                                                         ((4, 4), "I"), ((4, 4), "II")]


@pytest.mark.parametrize("letter,n", [(l, n) for l in "ABCD" for n in range(1, 7)
                                      if not (l in "BC" and n < 2) and not (l == "D" and n < 2)])
def test_class_counts_match_partition_oracle(letter, n):
    ps = [p for p in _all_partitions(_size(letter, n)) if _valid(letter, p)]
    very_even = [p for p in ps if letter == "D" and all(x % 2 == 0 for x in p)]
    labels = up.classical_labels(letter, n)
    assert len(labels) == len(ps) + len(very_even)
    assert {lab[0] for lab in labels} == set(ps)


def test_exceptional_letters_directed_to_tables():
    with pytest.raises(CapabilityError):
        up.classify_unipotent("E", 6)


def test_dimension_examples():
    dims = {c.label[0]: c.dim_orbit for c in up.classify_unipotent("C", 2)}
    assert dims == {(1, 1, 1, 1): 0, (2, 1, 1): 4, (2, 2): 6, (4,): 8}
    for n in range(1, 7):
        assert up.orbit_dimension("A", n, ((n + 1,), "")) == (n + 1) ** 2 - (n + 1)
    with pytest.raises(SpecError):
        up.orbit_dimension("C", 2, ((3, 1), ""))


@pytest.mark.parametrize("letter,n", [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2),
                                      ("C", 3), ("D", 3), ("D", 4)])
def test_dimensions_match_matrix_centralizer(letter, n):
    for lab in up.classical_labels(letter, n):
        assert up.orbit_dimension(letter, n, lab) == _centralizer_orbit_dim(letter, n, lab[0])


def test_orbit_dims_below_group():
    for letter, n in [("B", 4), ("C", 4), ("D", 5), ("A", 5)]:
        top = up.group_dimension(letter, n) - n
        dims = [c.dim_orbit for c in up.classify_unipotent(letter, n)]
        assert max(dims) == top and min(dims) == 0
        assert all(d % 2 == 0 for d in dims)


# -- collapse ----------------------------------------------------------------------


def _collapse_oracle(letter, p):
    n = sum(p)
    cands = [q for q in _all_partitions(n) if _valid(letter, q) and up.dominates(p, q)]
    top = [q for q in cands if all(up.dominates(q, r) for r in cands)]
    assert len(top) == 1
    return top[0]


def test_collapse_examples():
    assert up.collapse("C", (3, 1)) == (2, 2)
    assert up.collapse("B", (4, 3)) == (3, 3, 1)
    assert up.collapse("C", (2, 2)) == (2, 2)


@pytest.mark.parametrize("letter", ["B", "C", "D"])
def test_collapse_matches_dominance_oracle(letter):
    sizes = range(1, 13, 2) if letter == "B" else range(2, 13, 2)
    for n in sizes:
        for p in _all_partitions(n):
            c = up.collapse(letter, p)
            assert c == _collapse_oracle(letter, p)
            assert up.collapse(letter, c) == c
            assert up.dominates(p, c)


# -- induction ---------------------------------------------------------------------


def test_induction_examples():
    whole = up.decomposition_from_nodes("C", 2, [0, 1])
    assert whole.is_whole
    assert up.induce(whole, [], ((2, 1, 1), "")).label == ((2, 1, 1), "")
    gl1 = up.decomposition_from_nodes("C", 2, [1])
    assert (gl1.blocks, gl1.core) == ((1,), 1)
    r = up.induce(gl1, [(1,)], ((1, 1), ""))
    assert r.label == ((2, 2), "") and r.dim_orbit == 10 - 4 + 0
    torus = up.decomposition_from_nodes("C", 2, [])
    r = up.induce(torus, [(1,), (1,)])
    assert r.label == ((4,), "") and r.dim_orbit == 8


def test_induction_rejects_bad_input():
    lv = up.decomposition_from_nodes("C", 3, [1])
    with pytest.raises(SpecError):
        up.induce(lv, [(1,)])
    with pytest.raises(SpecError):
        up.induce(lv, [(1,), (2,)], ((1, 1), ""))
    with pytest.raises(SpecError):
        up.LeviDecomposition("B", 3, (1, 1), 0)


def test_type_a_richardson_partitions():
    # from the Levi GL_b1 x ... x GL_bk the Richardson class has the dual partition of the sorted blocks
    for n in range(1, 6):
        for mask in range(2 ** n):
            nodes = [i for i in range(n) if mask >> i & 1]
            lv = up.decomposition_from_nodes("A", n, nodes)
            r = up.induce(lv, [(1,) * b for b in lv.blocks])
            assert r.label[0] == up.dual(tuple(sorted(lv.blocks, reverse=True)))


@pytest.mark.parametrize("letter,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 2),
                                      ("C", 3), ("C", 4), ("D", 4)])
def test_induction_transitive(letter, n):
    checks = 0
    for big_mask in range(2 ** n):
        I2 = [i for i in range(n) if big_mask >> i & 1]
        big = up.decomposition_from_nodes(letter, n, I2)
        for sub in range(2 ** len(I2)):
            I1 = [x for k, x in enumerate(I2) if sub >> k & 1]
            small = up.decomposition_from_nodes(letter, n, I1)
            for bl, core in up.levi_classes(small):
                direct = up.induce(small, bl, core)
                assert induce_in_stages(small, big, bl, core) == direct
                checks += 1
    assert checks > 0


def test_dimension_equation_counter_moves():
    before = up.induction_checks
    up.induce(up.decomposition_from_nodes("B", 3, []), [(1,)] * 3)
    assert up.induction_checks == before + 1


def test_very_even_decorations_follow_the_fork():
    # GL4 Levis of D4 on {a1,a2,a3} and {a1,a2,a4}: Richardson classes [2^4] with opposite decorations
    a = up.induce_from_nodes("D", 4, [0, 1, 2], [((1, 1, 1, 1), "")])
    b = up.induce_from_nodes("D", 4, [0, 1, 3], [((1, 1, 1, 1), "")])
    assert {a.label, b.label} == {((2, 2, 2, 2), "I"), ((2, 2, 2, 2), "II")}
    assert a.dim_orbit == b.dim_orbit


def test_relabel_triality():
    # the triality automorphism of D4 permutes [3,1^5], [2^4]I, [2^4]II
    tri = (3, 1, 0, 2)  # node 0 -> 3 -> 2 -> 0 (0-based), node 1 fixed
    orbit = {((3, 1, 1, 1, 1, 1), "")}
    x = ((3, 1, 1, 1, 1, 1), "")
    for _ in range(3):
        x = up.relabel("D", 4, x, tri)
        orbit.add(x)
    assert orbit == {((3, 1, 1, 1, 1, 1), ""), ((2, 2, 2, 2), "I"), ((2, 2, 2, 2), "II")}
    swap = (0, 1, 3, 2)
    assert up.relabel("D", 4, ((4, 4), "I"), swap) == ((4, 4), "II")
    with pytest.raises(SpecError):
        up.relabel("B", 3, ((3, 1, 1, 1, 1), ""), (2, 1, 0))


# -- rigidity ----------------------------------------------------------------------


def test_c2_rigid_set():
    rigid = {c.label[0] for c in up.classify_unipotent("C", 2) if up.rigid_by_induction("C", 2, c.label)}
    assert rigid == {(1, 1, 1, 1), (2, 1, 1)}


@pytest.mark.parametrize("n", range(1, 6))
def test_type_a_only_trivial_rigid(n):
    rigid = [lab for lab in up.classical_labels("A", n) if up.rigid_by_induction("A", n, lab)]
    assert rigid == [((1,) * (n + 1), "")]


@pytest.mark.parametrize("letter,n", [(l, n) for l in "BCD" for n in range(2, 5)])
def test_rigidity_accelerator_matches_oracle(letter, n):
    for lab in up.classical_labels(letter, n):
        assert up.rigid_by_partition(letter, lab) == up.rigid_by_induction(letter, n, lab)
    labels = up.classical_labels(letter, n)
    assert up.rigid_by_induction(letter, n, up.trivial_label(letter, n))
    assert not up.rigid_by_induction(letter, n, labels[0])  # regular class first in lex order


# -- exceptional tables ------------------------------------------------------------


def test_shipped_tables():
    t = up.load_exceptional_tables()
    assert set(t) == {("G", 2), ("F", 4), ("E", 6)}
    g2 = {c.label: c for c in t[("G", 2)]}
    assert g2["1"].dim_orbit == 0 and g2["1"].rigid
    assert g2["G2"].dim_orbit == 12 and not g2["G2"].rigid
    assert sorted(l for l, c in g2.items() if c.rigid) == ["1", "A1", "~A1"]
    assert len(t[("F", 4)]) == 16 and len(t[("E", 6)]) == 21


def test_missing_table_is_capability_error(tmp_path):
    with pytest.raises(CapabilityError, match="exceptional_E7.tsv"):
        up.classes_of("E", 7)
    assert up.load_exceptional_tables(tmp_path) == {}
    with pytest.raises(CapabilityError):
        up.classes_of("G", 2, {})


def _write(tmp_path, body):
    f = tmp_path / "exceptional_G2.tsv"
    f.write_text("# test\ntype\tlabel\tdim\trigid\n" + body, encoding="utf-8")
    return f


GOOD = "G2\t1\t0\t1\nG2\tA1\t6\t1\nG2\tG2\t12\t0\n"


def test_table_validation(tmp_path):
    assert len(up.load_exceptional_tables(_write(tmp_path, GOOD))[("G", 2)]) == 3
    bad = {
        "no regular": "G2\t1\t0\t1\nG2\tA1\t6\t1\n",
        "rigid regular": "G2\t1\t0\t1\nG2\tG2\t12\t1\n",
        "odd dim": GOOD + "G2\tX\t7\t0\n",
        "too big": GOOD + "G2\tX\t14\t0\n",
        "bad flag": GOOD + "G2\tX\t8\tyes\n",
        "short row": GOOD + "G2\tX\t8\n",
        "duplicate": GOOD + "G2\tA1\t8\t1\n",
        "unknown type": GOOD + "H3\tX\t2\t0\n",
    }
    for why, body in bad.items():
        with pytest.raises(SpecError):
            up.load_exceptional_tables(_write(tmp_path, body))
    f = tmp_path / "exceptional_G2.tsv"
    f.write_text("label\tdim\n", encoding="utf-8")
    with pytest.raises(SpecError, match="header"):
        up.load_exceptional_tables(f)


def test_data_dir_env_and_override(tmp_path, monkeypatch):
    monkeypatch.setenv(up.DATA_ENV, str(tmp_path))
    assert up.data_dir() == tmp_path
    assert up.data_dir("/elsewhere") == up.Path("/elsewhere")
    assert up.table_path("E", 8) == tmp_path / "exceptional_E8.tsv"

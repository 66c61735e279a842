"""Jordan classes, their partial order, and sheets.

A Jordan class is stored as a triple ``(M, tZ°, O)``: a pseudo-Levi class,
an admissible point of ``Z(M)/Z(M)°`` and a unipotent class of ``M`` (one
label per simple factor), taken up to the joint action of ``N_W(Sigma)``.
Sheets correspond to the triples whose unipotent part is rigid in ``M``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from . import unipotent as up
from .errors import CapabilityError, SpecError
from .pseudolevi import (CosetClass, PseudoLevi, admissible_cosets, apply_word_to_weight,
                         enumerate_pseudolevis, find_pseudolevi, inverse_word, levi_envelope,
                         levi_subsets)
from .rootsys import (GroupSpec, RootSystem, canonical_form, generated_subsystem)

# sl4 = so6: partitions of 4 to partitions of 6
_A3_TO_D3 = {(1, 1, 1, 1): (1,) * 6, (2, 1, 1): (2, 2, 1, 1), (2, 2): (3, 1, 1, 1),
             (3, 1): (3, 3), (4,): (5, 1)}


@dataclass(frozen=True)
class ProductClass:
    """A unipotent class of a pseudo-Levi: one label per simple factor."""

    labels: tuple
    dim: int
    rigid: bool
    names: tuple[str, ...] = ()

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0

    @property
    def name(self) -> str:
        return " x ".join(self.names) if self.names else "1"


@dataclass(eq=False)
class JordanClass:
    """Jordan class descriptor ``(M, coset, O)``."""

    M: PseudoLevi
    coset: CosetClass
    O: ProductClass
    dim_G: int
    index: int = -1
    orbit: tuple = field(default=(), repr=False)  # all (chi, labels) in the normalizer orbit

    @property
    def n(self) -> int:
        """Dimension of the conjugacy classes in the Jordan class."""
        return self.dim_G - self.M.dim_M + self.O.dim

    @property
    def dim_Z0(self) -> int:
        return self.M.dim_Z0

    @property
    def dim_jordan(self) -> int:
        return self.n + self.dim_Z0

    @property
    def is_semisimple(self) -> bool:
        return self.O.is_trivial

    @property
    def key(self) -> tuple:
        return (self.M.label, self.coset.element, self.O.labels)

    def describe(self) -> str:
        return f"({self.M.cartan_type}, {coset_name(self.coset)}, {self.O.name})"

    def __repr__(self):
        return f"JordanClass{self.describe()} n={self.n}"


def coset_name(c: CosetClass) -> str:
    return "1" if c.is_trivial else "t" + "".join(str(x) for x in c.element)


@dataclass(frozen=True)
class PosetEdge:
    """Certificate for ``lower <= upper``.

    ``levi`` is a subset of the basis of ``lower.M`` spanning a Levi subsystem
    conjugate to ``upper.M`` by ``word``; ``coset``/``labels`` are the images
    of the data of ``upper`` that satisfy the coset and induction conditions.
    """

    lower: JordanClass
    upper: JordanClass
    levi: tuple[int, ...]
    word: tuple[int, ...]
    coset: tuple[int, ...]
    labels: tuple


@dataclass(eq=False)
class Sheet:
    jordan: JordanClass
    induced_unipotent: ProductClass | None
    envelope: PseudoLevi
    induced_candidates: tuple = ()

    @property
    def n(self) -> int:
        return self.jordan.n

    @property
    def dim_Z0(self) -> int:
        return self.jordan.dim_Z0

    @property
    def dim_sheet(self) -> int:
        j = self.jordan
        return j.dim_G + j.dim_Z0 - (j.M.dim_M - j.O.dim)

    @property
    def is_dixmier(self) -> bool:
        return self.jordan.O.is_trivial

    @property
    def contains_unipotent_up_to_center(self) -> bool:
        return self.jordan.M.is_levi

    @property
    def contains_genuine_unipotent(self) -> bool:
        return self.jordan.M.is_levi and self.jordan.coset.is_trivial

    @property
    def is_single_class(self) -> bool:
        return self.jordan.dim_Z0 == 0

    @property
    def pairs_view(self) -> dict:
        """The Levi envelope L and the rigid class of L the sheet is built from."""
        j = self.jordan
        L = self.envelope
        return {
            "levi": L.cartan_type,
            "levi_J": L.J_label,
            "rigid_class": {"M": j.M.cartan_type, "coset": coset_name(j.coset), "unipotent": j.O.name,
                            "dim_in_levi": L.dim_M - j.M.dim_M + j.O.dim},
            "exceptional_in_levi": j.M.subsystem.rank == L.subsystem.rank,
        }


# ---------------------------------------------------------------------------


class SheetEngine:
    """Cached computations for one group."""

    def __init__(self, spec: GroupSpec, tables: dict | None = None):
        self.spec = spec
        self.rs = RootSystem(spec)
        self.tables = tables
        self.pls = enumerate_pseudolevis(self.rs)
        self.pl_index = {id(p): i for i, p in enumerate(self.pls)}
        self._induce_cache: dict = {}
        self._embed_cache: dict = {}

    @property
    def dim_G(self) -> int:
        return self.rs.dim_G

    @property
    def classical(self) -> bool:
        return self.spec.is_classical

    # -- unipotent classes of M ---------------------------------------------
    def component_classes(self, comp) -> list[up.UnipotentClass]:
        return up.classes_of(comp.letter, comp.rank, self.tables)

    def _class_info(self, comp) -> dict:
        return {c.label: c for c in self.component_classes(comp)}

    def product_class(self, pl: PseudoLevi, labels: Sequence) -> ProductClass:
        dims, rig, names = 0, True, []
        for comp, lab in zip(pl.components, labels):
            c = self._class_info(comp)[lab]
            dims += c.dim_orbit
            rig &= c.rigid
            names.append(f"{comp.name}:{c.name}")
        return ProductClass(tuple(labels), dims, rig, tuple(names))

    def _label_order(self, pl: PseudoLevi):
        return [{c.label: i for i, c in enumerate(self.component_classes(comp))} for comp in pl.components]

    # -- normalizer action ---------------------------------------------------
    @lru_cache(maxsize=None)
    def _component_maps(self, pl_i: int):
        """For each symmetry: (word, [(k, k', perm)]) describing how factors move."""
        pl = self.pls[pl_i]
        comps = pl.components
        where = {b: (k, i) for k, c in enumerate(comps) for i, b in enumerate(c.basis)}
        out = []
        for word, bmap in pl.symmetries:
            moves = []
            for k, c in enumerate(comps):
                k2 = where[bmap[c.basis[0]]][0]
                perm = tuple(where[bmap[b]][1] for b in c.basis)
                moves.append((k, k2, perm))
            out.append((word, moves))
        return out

    def act(self, pl: PseudoLevi, sym, chi, labels):
        word, moves = sym
        new = [None] * len(labels)
        comps = pl.components
        for k, k2, perm in moves:
            c = comps[k]
            new[k2] = up.relabel(c.letter, c.rank, labels[k], perm) if c.letter in "ABCD" else labels[k]
        return pl.act_on_coset(word, chi), tuple(new)

    def orbit_of(self, pl: PseudoLevi, chi, labels) -> list:
        syms = self._component_maps(self.pl_index[id(pl)])
        start = (tuple(chi), tuple(labels))
        orb, seen = [start], {start}
        i = 0
        while i < len(orb):
            for s in syms:
                y = self.act(pl, s, *orb[i])
                if y not in seen:
                    seen.add(y)
                    orb.append(y)
            i += 1
        return orb

    # -- Jordan classes ------------------------------------------------------
    def _triples(self, pl: PseudoLevi, rigid_only: bool):
        cosets = admissible_cosets(pl, quotient=False)
        per_comp = []
        for comp in pl.components:
            cl = self.component_classes(comp)
            per_comp.append([c.label for c in cl if c.rigid or not rigid_only])
        order = self._label_order(pl)

        def sort_key(item):
            chi, labels = item
            return (chi, tuple(o[l] for o, l in zip(order, labels)))

        seen = set()
        out = []
        for c in cosets:
            for labels in itertools.product(*per_comp):
                if (c.element, labels) in seen:
                    continue
                orb = self.orbit_of(pl, c.element, labels)
                seen.update(orb)
                rep = min(orb, key=sort_key)
                out.append((rep, len({x[0] for x in orb}), tuple(sorted(orb, key=sort_key))))
        out.sort(key=lambda t: sort_key(t[0]))
        return out

    def _build(self, rigid_only: bool) -> list[JordanClass]:
        out = []
        for pl in self.pls:
            for (chi, labels), norb, orb in self._triples(pl, rigid_only):
                coset = CosetClass(pl.label, chi, True, norb)
                j = JordanClass(pl, coset, self.product_class(pl, labels), self.dim_G, len(out), orb)
                out.append(j)
        return out

    @cached_property
    def jordan_classes(self) -> list[JordanClass]:
        return self._build(False)

    @cached_property
    def maximal_classes(self) -> list[JordanClass]:
        return [j for j in self.jordan_classes if j.O.rigid] if self._all_tables else self._build(True)

    @property
    def _all_tables(self) -> bool:
        try:
            for pl in self.pls:
                for comp in pl.components:
                    self.component_classes(comp)
        except CapabilityError:
            return False
        return True

    def find_jordan(self, pl: PseudoLevi, chi, labels) -> JordanClass:
        target = (tuple(chi), tuple(labels))
        for j in self.jordan_classes:
            if j.M is pl and target in j.orbit:
                return j
        raise SpecError("no such Jordan class (is the coset admissible?)")

    # -- embeddings and induction -------------------------------------------
    def _embeddings(self, i1: int, i2: int):
        """Levi subsets I of M1 conjugate to M2, with the transporter Sigma2 -> Sigma_I."""
        key = (i1, i2)
        if key in self._embed_cache:
            return self._embed_cache[key]
        pl1, pl2 = self.pls[i1], self.pls[i2]
        out = []
        if pl2.subsystem.size <= pl1.subsystem.size and pl2.dim_Z0 >= pl1.dim_Z0:
            cf2 = canonical_form(self.rs, pl2.subsystem)
            for I in levi_subsets(pl1):
                subI = generated_subsystem(self.rs, I)
                cfI = canonical_form(self.rs, subI)
                if cfI.key != cf2.key:
                    continue
                word = cf2.word + inverse_word(cfI.word)
                node_map = dict(zip(cf2.ordered, cfI.ordered))
                # coset data: generators of torsion(X/Z Sigma_I) and their preimages
                tqI = _torsion_of(self.rs, subI)
                inv = inverse_word(word)
                gens = [(g, apply_word_to_weight(self.rs, inv, g)) for g in tqI.generators]
                comp_map = self._transport_components(pl2, subI, node_map)
                out.append((tuple(I), word, gens, subI, comp_map))
        self._embed_cache[key] = out
        return out

    @staticmethod
    def _transport_components(pl2, subI, node_map):
        where = {b: (k, i) for k, c in enumerate(subI.components) for i, b in enumerate(c.basis)}
        moves = []
        for k, c in enumerate(pl2.components):
            k2 = where[node_map[c.basis[0]]][0]
            perm = tuple(where[node_map[b]][1] for b in c.basis)
            moves.append((k, k2, perm))
        return moves

    def _induce_in(self, pl1: PseudoLevi, subI, labelsI: tuple) -> tuple:
        """Induce the class ``labelsI`` of the Levi ``subI`` of M1 to M1 (labels per factor)."""
        ck = (self.pl_index[id(pl1)], subI.roots, labelsI)
        hit = self._induce_cache.get(ck)
        if hit is not None:
            return hit
        where = {}
        for k, c in enumerate(subI.components):
            for i, b in enumerate(c.basis):
                where[b] = (k, i)
        out = []
        for C in pl1.components:
            pos = {b: i for i, b in enumerate(C.basis)}
            S = sorted(pos[b] for b in where if b in pos)
            ks = sorted({where[b][0] for b in where if b in pos})
            if C.letter not in "ABCD":
                if len(S) != C.rank:
                    raise CapabilityError(f"induction inside {C.name} needs exceptional induction tables")
                (k,) = ks
                out.append(labelsI[k])
                continue
            out.append(_induce_component(C, S, [(subI.components[k], labelsI[k]) for k in ks], pos))
        res = tuple(out)
        self._induce_cache[ck] = res
        return res

    def leq(self, j1: JordanClass, j2: JordanClass) -> PosetEdge | None:
        """Certificate that ``j1 <= j2`` (j1 lies in the regular closure of j2), or None."""
        if j1.n != j2.n:
            return None
        i1, i2 = self.pl_index[id(j1.M)], self.pl_index[id(j2.M)]
        emb = self._embeddings(i1, i2)
        if not emb:
            return None
        tq1 = j1.M.torsion()
        tq2 = j2.M.torsion()
        chi1, lab1 = j1.coset.element, j1.O.labels
        for I, word, gens, subI, moves in emb:
            for chi2, lab2 in j2.orbit:
                if any(tq1.value(chi1, g) != tq2.value(chi2, h) for g, h in gens):
                    continue
                labI = [None] * len(subI.components)
                for k, k2, perm in moves:
                    c = subI.components[k2]
                    labI[k2] = up.relabel(c.letter, c.rank, lab2[k], perm) if c.letter in "ABCD" else lab2[k]
                if self._induce_in(j1.M, subI, tuple(labI)) == lab1:
                    return PosetEdge(j1, j2, I, word, chi2, lab2)
        return None

    def induced_unipotent(self, pl: PseudoLevi, labels) -> set:
        """All classes of G obtained by inducing ``labels`` from the Levi ``pl``."""
        if not pl.is_levi:
            raise SpecError("induction needs a Levi subgroup")
        G = self.pls[-1]
        assert G.subsystem.size == self.rs.size
        results = set()
        for I, word, gens, subI, moves in self._embeddings(len(self.pls) - 1, self.pl_index[id(pl)]):
            for _, lab2 in self.orbit_of(pl, pl.torsion().group.zero(), labels):
                labI = [None] * len(subI.components)
                for k, k2, perm in moves:
                    c = subI.components[k2]
                    labI[k2] = up.relabel(c.letter, c.rank, lab2[k], perm) if c.letter in "ABCD" else lab2[k]
                results.add(self._induce_in(G, subI, tuple(labI)))
        return results

    # -- sheets --------------------------------------------------------------
    @cached_property
    def sheets(self) -> list[Sheet]:
        out = []
        G = self.pls[-1]
        for j in self.maximal_classes:
            ind, cands = None, ()
            if j.M.is_levi and self.classical:
                cands = tuple(sorted(self.induced_unipotent(j.M, j.O.labels), key=repr))
                if len(cands) == 1:
                    ind = self.product_class(G, cands[0])
            out.append(Sheet(j, ind, levi_envelope(j.M), cands))
        out.sort(key=lambda s: (s.n, s.dim_sheet, s.jordan.index))
        return out


def _torsion_of(rs: RootSystem, sub):
    from . import lattice as lat
    return lat.TorsionQuotient(rs.character_lattice, [[int(x) for x in rs.weight_coords[b]] for b in sub.basis])


def _induce_component(C, S: list[int], parts: list, pos: dict):
    """Induce inside one classical factor C of M1 from the standard Levi on positions S.

    ``parts`` lists (factor of the Levi, label) for the Levi factors inside C.
    """
    letter, r = C.letter, C.rank
    levi = up.decomposition_from_nodes(letter, r, S)
    by_nodes = {}
    for comp, lab in parts:
        by_nodes[tuple(sorted(pos[b] for b in comp.basis))] = (comp, lab)
    # GL blocks: node positions of each block
    blocks = []
    start = 0
    m = sum(levi.blocks)
    for j, b in enumerate(levi.blocks):
        nodes = list(range(start, start + b - 1))
        if letter == "D" and levi.fork == "II" and j == len(levi.blocks) - 1 and b > 1:
            nodes[-1] = r - 1
        if b == 1:
            blocks.append((1,))
        else:
            comp, lab = by_nodes[tuple(sorted(nodes))]
            blocks.append(lab[0])
        start += b
    core_label = None
    if letter != "A" and levi.core:
        mcore = levi.core
        core_nodes = tuple(range(r - mcore, r))
        if letter in "BC" and mcore == 1:
            comp, lab = by_nodes[core_nodes]
            reg = lab[0] == (2,)
            core_label = (((3,) if reg else (1, 1, 1)) if letter == "B" else ((2,) if reg else (1, 1)), "")
        elif letter == "D" and mcore == 2:
            _, a = by_nodes[(r - 2,)]
            _, b = by_nodes[(r - 1,)]
            ra, rb = a[0] == (2,), b[0] == (2,)
            core_label = {(False, False): ((1, 1, 1, 1), ""), (True, True): ((3, 1), ""),
                          (False, True): ((2, 2), "I"), (True, False): ((2, 2), "II")}[(ra, rb)]
        elif letter == "D" and mcore == 3:
            _, lab = by_nodes[core_nodes]
            core_label = (_A3_TO_D3[lab[0]], "")
        else:
            comp, lab = by_nodes[core_nodes]
            perm = tuple(pos[b] - (r - mcore) for b in comp.basis)
            core_label = up.relabel(letter, mcore, lab, perm)
    if m == 0 and letter == "A":
        raise SpecError("empty Levi decomposition")
    return up.induce(levi, blocks, core_label).label


# ---------------------------------------------------------------------------
# module-level API


@lru_cache(maxsize=32)
def _engine(spec: GroupSpec, data_dir: str | None) -> SheetEngine:
    tables = up.load_exceptional_tables(data_dir) if data_dir else None
    return SheetEngine(spec, tables)


def engine(spec: GroupSpec, data_dir=None) -> SheetEngine:
    return _engine(spec, str(data_dir) if data_dir is not None else None)


def _require_tables(eng: SheetEngine, rigid_only: bool):
    for pl in eng.pls:
        for comp in pl.components:
            cl = eng.component_classes(comp)  # raises CapabilityError
            del cl


def enumerate_jordan_classes(spec: GroupSpec, data_dir=None) -> list[JordanClass]:
    return engine(spec, data_dir).jordan_classes


def maximal_jordan_classes(spec: GroupSpec, data_dir=None) -> list[JordanClass]:
    return engine(spec, data_dir).maximal_classes


def jordan_leq(j1: JordanClass, j2: JordanClass, spec: GroupSpec | None = None, data_dir=None) -> PosetEdge | None:
    eng = engine(spec or j1.M.rs.spec, data_dir)
    return eng.leq(j1, j2)


def enumerate_sheets(spec: GroupSpec, data_dir=None) -> list[Sheet]:
    eng = engine(spec, data_dir)
    _require_tables(eng, True)
    return eng.sheets


def sheet_of_semisimple(spec: GroupSpec, M: PseudoLevi, coset: Sequence[int], data_dir=None) -> Sheet:
    """The sheet containing the semisimple classes with data (M, coset)."""
    eng = engine(spec, data_dir)
    pl = find_pseudolevi(eng.rs, M.subsystem)
    if pl is not M and pl.J != M.J:
        raise SpecError("pseudo-Levi does not belong to this group")
    if not pl.is_admissible(coset):
        raise SpecError(f"coset {tuple(coset)} is not admissible for {pl.label}")
    triv = tuple(up.trivial_label(c.letter, c.rank) for c in pl.components)
    target = (tuple(coset), triv)
    for s in eng.sheets:
        j = s.jordan
        if j.M is pl and target in j.orbit:
            return s
    raise SpecError("no sheet found")


@dataclass
class Poset:
    nodes: list[JordanClass]
    edges: list[PosetEdge]  # all comparable pairs (lower, upper), excluding equality

    @cached_property
    def hasse(self) -> list[tuple[int, int]]:
        up_ = {}
        for e in self.edges:
            up_.setdefault(e.lower.index, set()).add(e.upper.index)
        cover = []
        for a, ups in up_.items():
            for b in ups:
                if not any(b in up_.get(c, ()) for c in ups if c != b):
                    cover.append((a, b))
        return sorted(cover)

    @property
    def maximal(self) -> list[JordanClass]:
        below = {e.lower.index for e in self.edges}
        return [j for j in self.nodes if j.index not in below]


def build_poset(spec: GroupSpec, data_dir=None) -> Poset:
    eng = engine(spec, data_dir)
    if not eng.classical:
        raise CapabilityError("the Jordan-class order needs induction, available for classical types only")
    nodes = eng.jordan_classes
    by_n = {}
    for j in nodes:
        by_n.setdefault(j.n, []).append(j)
    edges = []
    for group in by_n.values():
        for a in group:
            for b in group:
                if a is not b:
                    e = eng.leq(a, b)
                    if e is not None:
                        edges.append(e)
    return Poset(nodes, edges)


def to_dot(poset: Poset, title: str = "jordan") -> str:
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    maxi = {j.index for j in poset.maximal}
    for j in poset.nodes:
        shape = "doubleoctagon" if j.index in maxi else "box"
        label = f"{j.M.cartan_type}\\n{coset_name(j.coset)}\\n{j.O.name}\\nn={j.n}"
        lines.append(f'  j{j.index} [label="{label}", shape={shape}];')
    for a, b in poset.hasse:
        lines.append(f"  j{a} -> j{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"

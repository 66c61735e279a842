"""Pseudo-Levi subgroups up to conjugacy.

A pseudo-Levi subgroup containing the maximal torus is described by a
subsystem ``Sigma_J`` generated by a set ``J`` of nodes of the extended
Dynkin diagram (one extended node per simple factor).  Its centre has
component group dual to the torsion of ``X / Z Sigma_J``; an element of that
dual (a "coset" ``tZ°``) is stored as a tuple ``chi`` of numerators, see
:class:`reductive_sheets.lattice.TorsionQuotient`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Sequence

import numpy as np

from . import lattice as lat
from .errors import SpecError
from .rootsys import (GroupSpec, RootSystem, Subsystem, canonical_form, generated_subsystem,
                      q_closure)

Node = tuple[int, int]  # (component, node); node 0 is the extended node


def apply_word_to_weight(rs: RootSystem, word: Sequence[int], weight: Sequence[int]) -> list[int]:
    """Act on a weight (fundamental-weight coordinates) by a word in simple reflections."""
    lam = np.array(weight, dtype=object)
    for i in word:
        lam = lam - lam[i] * rs.cartan[:, i].astype(object)
    return [int(x) for x in lam]


def inverse_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(word))


@dataclass(frozen=True)
class CosetClass:
    """A point ``tZ°`` of ``Z/Z°`` of a pseudo-Levi, with the size of its normalizer orbit."""

    parent: str
    element: tuple[int, ...]
    admissible: bool
    orbit_size: int = 1

    @property
    def is_trivial(self) -> bool:
        return not any(self.element)


@dataclass(eq=False)
class PseudoLevi:
    rs: RootSystem = field(repr=False)
    J: tuple[Node, ...]
    subsystem: Subsystem
    key: tuple[int, ...] = field(repr=False)

    @property
    def cartan_type(self) -> str:
        return self.subsystem.cartan_type

    @property
    def components(self):
        return self.subsystem.components

    @property
    def dim_M(self) -> int:
        return self.subsystem.size + self.rs.rank + self.rs.spec.central_torus_rank

    @property
    def dim_Z0(self) -> int:
        return self.rs.rank - self.subsystem.rank + self.rs.spec.central_torus_rank

    @property
    def is_exceptional(self) -> bool:
        """Centre of M is finite (modulo the central torus of G)."""
        return self.rs.rank == self.subsystem.rank

    @cached_property
    def is_levi(self) -> bool:
        return q_closure(self.rs, self.subsystem.roots).roots == self.subsystem.roots

    @property
    def J_label(self) -> str:
        if len(self.rs.components) == 1:
            return "{" + ",".join(str(n) for _, n in self.J) + "}"
        return "{" + ",".join(f"{c}.{n}" for c, n in self.J) + "}"

    @property
    def label(self) -> str:
        return f"{self.cartan_type} J={self.J_label}"

    def __repr__(self):
        return f"PseudoLevi({self.label})"

    # -- centre -----------------------------------------------------------
    def torsion(self, lattice: lat.CharacterLattice | None = None) -> lat.TorsionQuotient:
        if lattice is None:
            return self._torsion
        return lat.TorsionQuotient(lattice, self._basis_weights())

    def _basis_weights(self):
        return [[int(x) for x in self.rs.weight_coords[b]] for b in self.subsystem.basis]

    @cached_property
    def _torsion(self) -> lat.TorsionQuotient:
        return lat.TorsionQuotient(self.rs.character_lattice, self._basis_weights())

    @property
    def component_group(self) -> lat.FinAbGroup:
        return self._torsion.group

    @cached_property
    def canonical(self):
        return canonical_form(self.rs, self.subsystem)

    @property
    def stabilizer(self) -> list[tuple[int, ...]]:
        """Words generating N_W(Sigma)."""
        return self.canonical.stabilizer_words

    @cached_property
    def symmetries(self) -> list[tuple[tuple[int, ...], dict]]:
        """Normalizer elements that permute the basis, as (word, basis map).

        Together with W(Sigma) and the pointwise stabilizer of the basis (both
        acting trivially on Z/Z° and on unipotent classes) they generate
        N_W(Sigma).
        """
        cf = self.canonical
        return [(w, dict(zip(cf.ordered, images))) for w, images in cf.symmetries]

    @cached_property
    def _extra_roots(self) -> list[int]:
        clo = q_closure(self.rs, self.subsystem.roots).roots
        mine = set(self.subsystem.roots)
        return [r for r in clo if r not in mine and self.rs.is_positive(r)]

    def is_admissible(self, chi: Sequence[int], tq: lat.TorsionQuotient | None = None) -> bool:
        """``C_G(tZ°)° = M``: no root of the Q-closure outside Sigma is trivial on tZ°."""
        tq = tq or self._torsion
        wc = self.rs.weight_coords
        return all(tq.value(chi, [int(x) for x in wc[r]]) != 0 for r in self._extra_roots)

    def act_on_coset(self, word: Sequence[int], chi: Sequence[int], tq: lat.TorsionQuotient | None = None):
        """``w . chi = chi o w^{-1}`` for ``w`` normalizing Sigma."""
        tq = tq or self._torsion
        inv = inverse_word(word)
        return tq.character_from(lambda g: tq.value(chi, apply_word_to_weight(self.rs, inv, g)))


def _node_subsets(rs: RootSystem):
    per = []
    for k, c in enumerate(rs.components):
        nodes = [(k, i) for i in range(c.rank + 1)]
        per.append([s for m in range(len(nodes) + 1) for s in itertools.combinations(nodes, m)])
    for parts in itertools.product(*per):
        yield tuple(x for p in parts for x in p)


def subsystem_of(rs: RootSystem, J: Sequence[Node]) -> Subsystem:
    return generated_subsystem(rs, [rs.node_root(c, i) for c, i in J])


def _sort_key(pl: PseudoLevi):
    return (pl.subsystem.rank, pl.subsystem.size, pl.cartan_type, pl.J)


def enumerate_pseudolevis(rs: RootSystem, max_orbit: int | None = None) -> list[PseudoLevi]:
    """One representative per W-class of subsystems ``Sigma_J``.

    Representatives prefer node sets avoiding the extended nodes, so Levi
    classes are shown as standard Levis.
    """
    cache = rs.__dict__.get("_pl_catalog")
    if cache is not None:
        return cache[0]
    subsets = sorted(_node_subsets(rs), key=lambda J: (sum(1 for _, i in J if i == 0), len(J), J))
    found: dict = {}
    for J in subsets:
        sub = subsystem_of(rs, J)
        key = canonical_form(rs, sub, max_orbit).key
        if key not in found:
            found[key] = PseudoLevi(rs, J, sub, key)
    out = sorted(found.values(), key=_sort_key)
    rs.__dict__["_pl_catalog"] = (out, found)
    return out


def find_pseudolevi(rs: RootSystem, sub: Subsystem | Sequence[int]) -> PseudoLevi:
    """The enumerated class containing ``sub`` (which must be a pseudo-Levi subsystem)."""
    enumerate_pseudolevis(rs)
    key = canonical_form(rs, sub).key
    try:
        return rs.__dict__["_pl_catalog"][1][key]
    except KeyError:
        raise SpecError("subsystem is not conjugate to any Sigma_J") from None


def is_levi(pl: PseudoLevi) -> bool:
    return pl.is_levi


def gcd_of_omitted_marks(rs: RootSystem, J: Sequence[Node]) -> int:
    """gcd of the marks of the extended-diagram nodes missing from ``J``.

    For a product the per-factor values are multiplied (the order of Z/Z° in
    the adjoint group).  Omitting nothing gives 1 (then Sigma = Phi).
    """
    Js = set(J)
    out = []
    for k, marks in enumerate(rs.marks):
        omitted = [m for i, m in enumerate(marks) if (k, i) not in Js]
        out.append(reduce(gcd, omitted, 0) or 1)
    return reduce(lambda a, b: a * b, out, 1) if out else 1


def levi_envelope(pl: PseudoLevi) -> PseudoLevi:
    return find_pseudolevi(pl.rs, q_closure(pl.rs, pl.subsystem.roots))


def _orbits(elements, gens, act):
    seen = {}
    orbits = []
    for x in elements:
        if x in seen:
            continue
        orb = [x]
        seen[x] = len(orbits)
        i = 0
        while i < len(orb):
            for g in gens:
                y = act(g, orb[i])
                if y not in seen:
                    seen[y] = len(orbits)
                    orb.append(y)
            i += 1
        orbits.append(orb)
    return orbits


def coset_classes(pl: PseudoLevi, lattice: lat.CharacterLattice | None = None) -> list[CosetClass]:
    """Every element of Z/Z° with its admissibility flag and orbit size (unquotiented)."""
    tq = pl.torsion(lattice)
    words = [w for w, _ in pl.symmetries]
    orbs = _orbits(tq.group.elements(), words, lambda w, x: pl.act_on_coset(w, x, tq))
    size = {x: len(o) for o in orbs for x in o}
    return [CosetClass(pl.label, x, pl.is_admissible(x, tq), size[x]) for x in tq.group.elements()]


def admissible_cosets(pl: PseudoLevi, lattice: lat.CharacterLattice | None = None,
                      quotient: bool = True) -> list[CosetClass]:
    """Admissible points of Z/Z°; one per normalizer orbit unless ``quotient`` is False."""
    allc = [c for c in coset_classes(pl, lattice) if c.admissible]
    if not quotient:
        return allc
    tq = pl.torsion(lattice)
    words = [w for w, _ in pl.symmetries]
    orbs = _orbits([c.element for c in allc], words, lambda w, x: pl.act_on_coset(w, x, tq))
    reps = {min(o) for o in orbs}
    return [c for c in allc if c.element in reps]


# ---------------------------------------------------------------------------
# Levi subgroups of a pseudo-Levi


def abstract_root_system(pl: PseudoLevi) -> tuple[RootSystem, list[int]] | None:
    """Root system of the type of Sigma, with simple root i corresponding to
    ``flat[i]`` (the Bourbaki-ordered basis of Sigma, components concatenated)."""
    comps = pl.components
    if not comps:
        return None
    spec = GroupSpec(tuple((c.letter, c.rank) for c in comps))
    flat = [b for c in comps for b in c.basis]
    return RootSystem(spec), flat


def levi_subsets(pl: PseudoLevi) -> list[tuple[int, ...]]:
    """Subsets of the basis of Sigma, one per W(Sigma)-class of standard Levi subsystems."""
    ab = pl.__dict__.get("_abstract")
    if ab is None:
        ab = pl.__dict__["_abstract"] = abstract_root_system(pl)
    if ab is None:
        return [()]
    ars, flat = ab
    seen = {}
    for m in range(len(flat) + 1):
        for idx in itertools.combinations(range(len(flat)), m):
            k = canonical_form(ars, generated_subsystem(ars, idx)).key
            if k not in seen:
                seen[k] = tuple(sorted(flat[i] for i in idx))
    return list(seen.values())


def levis_of(pl: PseudoLevi) -> list[PseudoLevi]:
    """Levi subgroups of M up to M-conjugacy, each given by its G-class."""
    return [find_pseudolevi(pl.rs, generated_subsystem(pl.rs, I)) for I in levi_subsets(pl)]

"""Integer model of root systems, Weyl group actions and subsystems.

Roots are integer vectors in the basis of simple roots (all components of a
product concatenated) and are referred to by their index in
``RootSystem.roots``: positive roots first, ordered by height and then
lexicographically, followed by their negatives in the same order.  Simple
roots are numbered as in Bourbaki.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import lattice as lat
from .errors import ResourceError, SpecError

#: default cap on stored subsystem images in one orbit enumeration
MAX_ORBIT = 20_000_000

_ISOGENIES = ("adjoint", "simply_connected", "intermediate")


def _valid(letter: str, rank: int) -> bool:
    return {
        "A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 2,
        "E": rank in (6, 7, 8), "F": rank == 4, "G": rank == 2,
    }.get(letter, False)


@dataclass(frozen=True)
class GroupSpec:
    """Root datum of a connected reductive group, up to the central torus.

    ``generators`` (only for ``isogeny="intermediate"``) are weights in
    fundamental-weight coordinates of the whole product; the character
    lattice is ``Q + Z{generators}``.
    """

    factors: tuple[tuple[str, int], ...]
    isogeny: str = "adjoint"
    generators: tuple[tuple[int, ...], ...] = ()
    central_torus_rank: int = 0

    def __post_init__(self):
        factors = tuple((str(l).upper(), int(r)) for l, r in self.factors)
        if not factors:
            raise SpecError("a group needs at least one simple factor")
        for letter, r in factors:
            if not _valid(letter, r):
                raise SpecError(f"invalid Cartan type {letter}{r}")
        if self.isogeny not in _ISOGENIES:
            raise SpecError(f"unknown isogeny {self.isogeny!r}; expected one of {_ISOGENIES}")
        if self.central_torus_rank < 0:
            raise SpecError("central torus rank must be non-negative")
        # D2 = A1xA1 and D3 = A3; only safe to rewrite when no weights refer to the numbering
        if any(l == "D" and r < 4 for l, r in factors):
            if self.isogeny == "intermediate":
                raise SpecError("use A1xA1 / A3 instead of D2 / D3 with explicit weights")
            new = []
            for l, r in factors:
                if l == "D" and r == 2:
                    new += [("A", 1), ("A", 1)]
                elif l == "D" and r == 3:
                    new.append(("A", 3))
                else:
                    new.append((l, r))
            factors = tuple(new)
        object.__setattr__(self, "factors", factors)
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if gens and self.isogeny != "intermediate":
            raise SpecError("weight generators are only meaningful for an intermediate isogeny")
        n = sum(r for _, r in factors)
        if any(len(g) != n for g in gens):
            raise SpecError(f"generators must have length {n}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def parse(cls, text: str, isogeny: str = "adjoint", generators=(), central_torus_rank: int = 0):
        """Parse ``"C2"``, ``"A1xB3"`` or ``"A1+A1"``."""
        parts = [p for p in re.split(r"[x+*\s]+", text.strip()) if p]
        factors = []
        for p in parts:
            m = re.fullmatch(r"([A-Ga-g])(\d+)", p)
            if not m:
                raise SpecError(f"cannot parse Cartan type {p!r}")
            factors.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(factors), isogeny, tuple(generators), central_torus_rank)

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors)

    @property
    def name(self) -> str:
        return "x".join(f"{l}{r}" for l, r in self.factors)

    @property
    def is_classical(self) -> bool:
        return all(l in "ABCD" for l, _ in self.factors)


def gram_matrix(letter: str, n: int) -> np.ndarray:
    """Symmetric matrix of inner products of simple roots (Bourbaki numbering).

    Short roots have squared length 2.
    """
    g = np.zeros((n, n), dtype=np.int64)

    def bond(i, j, v):
        g[i, j] = g[j, i] = v

    if letter == "A":
        np.fill_diagonal(g, 2)
        for i in range(n - 1):
            bond(i, i + 1, -1)
    elif letter == "B":
        np.fill_diagonal(g, 4)
        g[n - 1, n - 1] = 2
        for i in range(n - 1):
            bond(i, i + 1, -2)
    elif letter == "C":
        np.fill_diagonal(g, 2)
        g[n - 1, n - 1] = 4
        for i in range(n - 2):
            bond(i, i + 1, -1)
        bond(n - 2, n - 1, -2)
    elif letter == "D":
        np.fill_diagonal(g, 2)
        for i in range(n - 2):
            bond(i, i + 1, -1)
        bond(n - 3, n - 1, -1)
    elif letter == "E":
        np.fill_diagonal(g, 2)
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        for i, j in edges:
            bond(i, j, -1)
    elif letter == "F":
        g[:] = np.diag([4, 4, 2, 2])
        bond(0, 1, -2)
        bond(1, 2, -2)
        bond(2, 3, -1)
    elif letter == "G":
        g[:] = np.diag([2, 6])
        bond(0, 1, -3)
    else:
        raise SpecError(f"invalid Cartan type {letter}{n}")
    return g


def cartan_matrix(gram: np.ndarray) -> np.ndarray:
    """``A[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``."""
    return (2 * gram) // np.diag(gram)[:, None]


def _generate_positive(gram: np.ndarray) -> list[tuple[int, ...]]:
    n = len(gram)
    cart = cartan_matrix(gram)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        v = np.array(r)
        for i in range(n):
            c = int(cart[i] @ v)  # <alpha_i^vee, r>
            w = v.copy()
            w[i] -= c
            t = tuple(int(x) for x in w)
            if all(x >= 0 for x in t) and any(t) and t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r)))


@dataclass(frozen=True)
class Component:
    letter: str
    rank: int
    offset: int  # index of its first simple root in the global numbering


class RootSystem:
    """Root system of a :class:`GroupSpec` with precomputed reflection tables.

    Immutable after construction.
    """

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.components: list[Component] = []
        n = spec.rank
        self.rank = n
        self.gram = np.zeros((n, n), dtype=np.int64)
        pos: list[tuple[int, ...]] = []
        off = 0
        for letter, r in spec.factors:
            g = gram_matrix(letter, r)
            self.gram[off:off + r, off:off + r] = g
            for p in _generate_positive(g):
                pos.append((0,) * off + p + (0,) * (n - off - r))
            self.components.append(Component(letter, r, off))
            off += r
        pos.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        self.npos = len(pos)
        allr = pos + [tuple(-x for x in r) for r in pos]
        self.roots = np.array(allr, dtype=np.int64).reshape(len(allr), n)
        self.index = {r: i for i, r in enumerate(allr)}
        N = len(allr)
        self.neg = np.array([(i + self.npos) % N for i in range(N)])
        self.norms = np.einsum("ij,jk,ik->i", self.roots, self.gram, self.roots)
        self.cartan = cartan_matrix(self.gram)
        self.component_of = np.array([self._component_index(r) for r in allr], dtype=np.int64)
        # full reflection table: refl[a, b] = s_a(b)
        ip = self.roots @ self.gram @ self.roots.T  # (a, b)
        coef = (2 * ip) // self.norms[:, None]
        self.refl = np.empty((N, N), dtype=np.int64)
        for a in range(N):
            imgs = self.roots - coef[a][:, None] * self.roots[a][None, :]
            self.refl[a] = [self.index[tuple(int(x) for x in v)] for v in imgs]
        self.simple_perm = self.refl[:n].copy()

    def _component_index(self, r) -> int:
        for k, c in enumerate(self.components):
            if any(r[c.offset:c.offset + c.rank]):
                return k
        raise ValueError("zero vector")

    def __repr__(self):
        return f"RootSystem({self.spec.name})"

    # -- basic data --------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.roots)

    @property
    def dim_G(self) -> int:
        return self.size + self.rank + self.spec.central_torus_rank

    def root(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.roots[i])

    def height(self, i: int) -> int:
        return int(self.roots[i].sum())

    def is_positive(self, i: int) -> bool:
        return i < self.npos

    @cached_property
    def highest_roots(self) -> list[int]:
        """Index of the highest root of each component."""
        out = []
        for k in range(len(self.components)):
            cand = [i for i in range(self.npos) if self.component_of[i] == k]
            out.append(max(cand, key=self.height))
        return out

    @cached_property
    def marks(self) -> list[tuple[int, ...]]:
        """``(c0, c1, ..., cn)`` per component with ``c0 = 1``."""
        out = []
        for k, c in enumerate(self.components):
            th = self.roots[self.highest_roots[k]]
            out.append((1,) + tuple(int(x) for x in th[c.offset:c.offset + c.rank]))
        return out

    def node_root(self, comp: int, node: int) -> int:
        """Root of node ``node`` of the extended diagram of a component; node 0 is -theta."""
        c = self.components[comp]
        if node == 0:
            return int(self.neg[self.highest_roots[comp]])
        if not 1 <= node <= c.rank:
            raise SpecError(f"node {node} out of range for {c.letter}{c.rank}")
        return c.offset + node - 1

    def inner(self, a: int, b: int) -> int:
        return int(self.roots[a] @ self.gram @ self.roots[b])

    def reflect(self, r: int, i: int) -> int:
        """Image of root ``r`` under the simple reflection ``s_i`` (0-based)."""
        if not 0 <= i < self.rank:
            raise SpecError(f"simple reflection index {i} out of range")
        return int(self.simple_perm[i, r])

    def word_perm(self, word: Sequence[int]) -> np.ndarray:
        """Root permutation of ``s_{w[-1]} ... s_{w[0]}`` (letters applied left to right)."""
        p = np.arange(self.size)
        for i in word:
            p = self.simple_perm[i][p]
        return p

    @cached_property
    def weight_coords(self) -> np.ndarray:
        """Roots in fundamental-weight coordinates."""
        return self.roots @ self.cartan.T

    @cached_property
    def character_lattice(self) -> lat.CharacterLattice:
        cart = [[int(x) for x in row] for row in self.cartan]
        iso = self.spec.isogeny
        if iso == "adjoint":
            return lat.CharacterLattice.adjoint(cart)
        if iso == "simply_connected":
            return lat.CharacterLattice.simply_connected(cart)
        return lat.CharacterLattice.intermediate(cart, self.spec.generators)

    def adjoint_lattice(self) -> lat.CharacterLattice:
        return lat.CharacterLattice.adjoint([[int(x) for x in row] for row in self.cartan])


def build_root_system(spec: GroupSpec) -> RootSystem:
    return RootSystem(spec)


# ---------------------------------------------------------------------------
# subsystems


@dataclass(frozen=True)
class LabeledComponent:
    """Irreducible component of a subsystem with a Bourbaki-ordered basis."""

    letter: str
    rank: int
    tag: str  # "long", "short" or "" (only simply-laced factors of a non-simply-laced ambient)
    basis: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def type_key(self) -> tuple[str, int]:
        return (self.letter, self.rank)


@dataclass(frozen=True)
class Subsystem:
    roots: tuple[int, ...]
    basis: tuple[int, ...]
    components: tuple[LabeledComponent, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return len(self.roots)

    @property
    def cartan_type(self) -> str:
        return type_string(self.components)

    def __contains__(self, r) -> bool:
        return r in set(self.roots)


def type_string(components: Iterable[LabeledComponent]) -> str:
    comps = sorted(components, key=lambda c: (-c.rank, c.letter, c.tag))
    if not comps:
        return "T"
    s = "+".join(c.name for c in comps)
    tags = [c.tag for c in comps if c.tag]
    if tags:
        s += " (" + ",".join(tags) + ")"
    return s


def _closed_under_reflections(rs: RootSystem, roots: Sequence[int]) -> bool:
    idx = np.asarray(roots, dtype=np.int64)
    if idx.size == 0:
        return True
    img = rs.refl[np.ix_(idx, idx)]
    return bool(np.isin(img, idx).all())


def subsystem_basis(rs: RootSystem, roots: Iterable[int]) -> tuple[int, ...]:
    """Simple system of a reflection-closed set of roots (positive w.r.t. height)."""
    roots = sorted(set(int(r) for r in roots))
    if not _closed_under_reflections(rs, roots):
        raise SpecError("root set is not closed under its own reflections")
    pos = [r for r in roots if rs.is_positive(r)]
    vecs = {rs.root(r) for r in pos}
    basis = []
    for r in pos:
        v = rs.roots[r]
        if not any(tuple(int(x) for x in v - rs.roots[a]) in vecs for a in pos if a != r):
            basis.append(r)
    return tuple(basis)


def _components_of(rs: RootSystem, basis: Sequence[int]) -> list[list[int]]:
    basis = list(basis)
    left = set(basis)
    comps = []
    while left:
        start = min(left)
        comp, stack = [], [start]
        left.discard(start)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in list(left):
                if rs.inner(a, b) != 0:
                    left.discard(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def _path_from(adj: dict, start: int) -> list[int]:
    out, prev, cur = [start], None, start
    while True:
        nxt = [b for b in adj[cur] if b != prev]
        if not nxt:
            return out
        prev, cur = cur, nxt[0]
        out.append(cur)


def _classify_component(rs: RootSystem, comp: list[int], ambient_letter: str):
    """Return (letter, Bourbaki-ordered basis) for one connected component."""
    n = len(comp)
    norm = {a: int(rs.norms[a]) for a in comp}
    adj = {a: [b for b in comp if b != a and rs.inner(a, b) != 0] for a in comp}
    mult = {}
    for a in comp:
        for b in adj[a]:
            mult[(a, b)] = (4 * rs.inner(a, b) ** 2) // (norm[a] * norm[b])
    if n == 1:
        return "A", comp
    leaves = sorted(a for a in comp if len(adj[a]) == 1)
    branch = [a for a in comp if len(adj[a]) == 3]
    if any(len(adj[a]) > 3 for a in comp) or len(branch) > 1:
        raise SpecError("basis does not form a Dynkin diagram")
    if 3 in mult.values():
        short, long_ = sorted(comp, key=lambda a: norm[a])
        return "G", [short, long_]
    if 2 in mult.values():
        (a, b), = {tuple(sorted(k)) for k, v in mult.items() if v == 2}
        if n == 2:
            long_, short = (a, b) if norm[a] > norm[b] else (b, a)
            if ambient_letter in "BF":
                return "B", [long_, short]
            return "C", [short, long_]
        end = [x for x in (a, b) if len(adj[x]) == 1]
        if not end:
            longs = [x for x in leaves if norm[x] == max(norm.values())]
            return "F", _path_from(adj, longs[0])
        e = end[0]
        start = [x for x in leaves if x != e][0]
        path = _path_from(adj, start)
        return ("B" if norm[e] < max(norm.values()) else "C"), path
    if not branch:
        return "A", _path_from(adj, leaves[0])
    b = branch[0]
    arms = []
    for nb in adj[b]:
        arm, prev, cur = [nb], b, nb
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    arms.sort(key=lambda arm: (len(arm), arm[-1]))
    lens = [len(a) for a in arms]
    if lens[0] == 1 and lens[1] == 1:
        if n == 4:
            l1, l2, l3 = sorted([arms[0][0], arms[1][0], arms[2][0]])
            return "D", [l1, b, l2, l3]
        long_arm = arms[2]
        return "D", list(reversed(long_arm)) + [b] + sorted([arms[0][0], arms[1][0]])
    if lens[0] == 1 and lens[1] == 2 and lens[2] in (2, 3, 4):
        a2 = arms[0][0]
        a3, a1 = arms[1]
        rest = arms[2]
        return "E", [a1, a2, a3, b] + rest
    raise SpecError("basis does not form a Dynkin diagram")


def cartan_type_of(rs: RootSystem, basis: Sequence[int]) -> tuple[LabeledComponent, ...]:
    """Classify a simple system; components are returned in a canonical order."""
    basis = [int(b) for b in basis]
    for a, b in itertools.combinations(basis, 2):
        if rs.inner(a, b) > 0:
            raise SpecError("basis elements must have non-positive inner products")
    out = []
    for comp in _components_of(rs, basis):
        amb = rs.components[int(rs.component_of[comp[0]])]
        letter, ordered = _classify_component(rs, comp, amb.letter)
        tag = ""
        if letter in "ADE" and amb.letter in "BCFG":
            amb_roots = [i for i in range(rs.size) if rs.component_of[i] == rs.component_of[comp[0]]]
            longest = max(int(rs.norms[i]) for i in amb_roots)
            tag = "long" if rs.norms[comp[0]] == longest else "short"
        out.append(LabeledComponent(letter, len(comp), tag, tuple(ordered)))
    out.sort(key=lambda c: (-c.rank, c.letter, c.tag, c.basis))
    return tuple(out)


def make_subsystem(rs: RootSystem, roots: Iterable[int]) -> Subsystem:
    roots = tuple(sorted(set(int(r) for r in roots)))
    basis = subsystem_basis(rs, roots)
    return Subsystem(roots, basis, cartan_type_of(rs, basis))


def generated_subsystem(rs: RootSystem, gens: Iterable[int]) -> Subsystem:
    """Smallest reflection-closed set containing ``gens`` (and their negatives)."""
    seen = set()
    gens = list(gens)
    queue = deque(gens)
    seen.update(gens)
    for g in gens:
        if int(rs.neg[g]) not in seen:
            seen.add(int(rs.neg[g]))
            queue.append(int(rs.neg[g]))
    while queue:
        r = queue.popleft()
        for g in gens:
            s = int(rs.refl[g, r])
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return make_subsystem(rs, seen)


def _span_mask(rs: RootSystem, roots: Sequence[int]) -> np.ndarray:
    if not roots:
        return np.zeros(rs.size, dtype=bool)
    m = [[int(x) for x in rs.roots[r]] for r in roots]
    u, d, v = lat.smith_normal_form(m)
    k = sum(1 for i in range(min(len(d), rs.rank)) if d[i][i])
    null = np.array([[v[row][c] for c in range(k, rs.rank)] for row in range(rs.rank)],
                    dtype=object).reshape(rs.rank, rs.rank - k)
    if null.shape[1] == 0:
        return np.ones(rs.size, dtype=bool)
    prod = rs.roots.astype(object) @ null
    return ~np.any(prod != 0, axis=1)


def q_closure(rs: RootSystem, roots: Iterable[int]) -> Subsystem:
    """``span_Q(roots) ∩ Φ`` as a subsystem."""
    roots = sorted(set(int(r) for r in roots))
    return make_subsystem(rs, np.flatnonzero(_span_mask(rs, roots)).tolist())


# ---------------------------------------------------------------------------
# Weyl group orbits of subsystems


def _key(arr: np.ndarray) -> bytes:
    return np.sort(arr).astype(">u2").tobytes()


class SubsystemOrbit:
    """Breadth-first enumeration of the orbit of a root set under a reflection group.

    ``gens`` are root permutations (default: the simple reflections).  Node 0
    is the starting set; ``perm(i)`` maps the starting set onto node ``i``.
    """

    def __init__(self, rs: RootSystem, roots: Sequence[int], gens=None, max_size: int | None = None):
        self.rs = rs
        self.gens = rs.simple_perm if gens is None else np.asarray(gens)
        cap = MAX_ORBIT if max_size is None else max_size
        start = np.sort(np.asarray(list(roots), dtype=np.int64))
        self.sets = [start]
        self.perms = [np.arange(rs.size)]
        self.parent = [(-1, -1)]
        self.lookup = {_key(start): 0}
        self.edges = []  # (node, gen, target node)
        i = 0
        while i < len(self.sets):
            cur = self.sets[i]
            for g, gp in enumerate(self.gens):
                img = np.sort(gp[cur])
                k = _key(img)
                j = self.lookup.get(k)
                if j is None:
                    if len(self.sets) >= cap:
                        raise ResourceError(f"orbit exceeds the configured budget of {cap} subsystems")
                    j = len(self.sets)
                    self.lookup[k] = j
                    self.sets.append(img)
                    self.perms.append(gp[self.perms[i]])
                    self.parent.append((i, g))
                self.edges.append((i, g, j))
            i += 1

    def __len__(self):
        return len(self.sets)

    def canonical_index(self) -> int:
        # orbit-local canonical form; only used for cross-checking
        return min(range(len(self.sets)), key=lambda i: tuple(self.sets[i].tolist()))

    def word(self, i: int) -> tuple[int, ...]:
        out = []
        while i > 0:
            i, g = self.parent[i]
            out.append(g)
        return tuple(reversed(out))

    def stabilizer(self) -> list[tuple[np.ndarray, tuple[int, ...]]]:
        """Schreier generators of the setwise stabilizer as (root permutation, word)."""
        seen = {}
        for i, g, j in self.edges:
            # g_perm o perm_i maps start to set j; undo with perm_j^{-1}
            p = self.gens[g][self.perms[i]]
            inv_j = np.empty_like(self.perms[j])
            inv_j[self.perms[j]] = np.arange(len(inv_j))
            s = inv_j[p]
            key = s.tobytes()
            if key not in seen:
                w = self.word(i) + (g,) + tuple(reversed(self.word(j)))
                seen[key] = (s, w)
        return list(seen.values())


def reduce_tuple(rs: RootSystem, roots: Sequence[int]):
    """Move an ordered tuple of roots to its canonical representative.

    The first root is made dominant, the second dominant for the stabilizer
    of the first (a standard parabolic subgroup), and so on.  Returns
    ``(image tuple, word, free)`` where ``word`` maps the input onto the image
    and ``free`` indexes the simple reflections fixing the whole image.
    """
    wc = rs.weight_coords
    cur = [int(r) for r in roots]
    word: list[int] = []
    free = list(range(rs.rank))
    for k in range(len(cur)):
        while True:
            i = next((i for i in free if wc[cur[k], i] < 0), None)
            if i is None:
                break
            sp = rs.simple_perm[i]
            cur = [int(sp[c]) for c in cur]
            word.append(i)
        free = [i for i in free if wc[cur[k], i] == 0]
    return tuple(cur), tuple(word), tuple(free)


def component_automorphisms(comp: LabeledComponent) -> list[tuple[int, ...]]:
    """Diagram automorphisms as position permutations ``p`` (node i goes to p[i])."""
    r = comp.rank
    ident = tuple(range(r))
    if comp.letter == "A" and r >= 2:
        return [ident, tuple(reversed(ident))]
    if comp.letter == "D" and r == 4:
        out = []
        for a, b, c in itertools.permutations((0, 2, 3)):
            p = [0] * 4
            p[0], p[1], p[2], p[3] = a, 1, b, c
            out.append(tuple(p))
        return sorted(out)
    if comp.letter == "D" and r >= 5:
        return [ident, ident[:-2] + (r - 1, r - 2)]
    if comp.letter == "E" and r == 6:
        return [ident, (5, 1, 4, 3, 2, 0)]
    return [ident]


def _arrangements(sub: Subsystem):
    """All orderings of the basis obtained from diagram automorphisms of ``sub``."""
    comps = list(sub.components)
    groups: dict = {}
    for k, c in enumerate(comps):
        groups.setdefault((c.letter, c.rank, c.tag), []).append(k)
    per_comp = [component_automorphisms(c) for c in comps]
    group_perms = [list(itertools.permutations(ks)) for ks in groups.values()]
    group_keys = list(groups.values())
    for auts in itertools.product(*per_comp):
        # images of each component basis under its own automorphism
        imgs = []
        for c, p in zip(comps, auts):
            b = [0] * c.rank
            for i, j in enumerate(p):
                b[j] = c.basis[i]
            imgs.append(b)
        for choice in itertools.product(*group_perms):
            slot = list(range(len(comps)))
            for ks, perm in zip(group_keys, choice):
                for src, dst in zip(ks, perm):
                    slot[dst] = src
            yield tuple(r for k in range(len(comps)) for r in imgs[slot[k]])


def _count_arrangements(sub: Subsystem) -> int:
    from math import factorial, prod
    counts: dict = {}
    for c in sub.components:
        counts[(c.letter, c.rank, c.tag)] = counts.get((c.letter, c.rank, c.tag), 0) + 1
    return prod(len(component_automorphisms(c)) for c in sub.components) * \
        prod(factorial(v) for v in counts.values())


def _descend_to_simple(rs: RootSystem, r: int) -> tuple[tuple[int, ...], int]:
    """``(word, j)`` with ``word`` mapping the positive root ``r`` to ``alpha_j``."""
    wc = rs.weight_coords
    word = []
    while r >= rs.rank:
        i = next(i for i in range(rs.rank) if wc[r, i] > 0)
        r = int(rs.simple_perm[i, r])
        word.append(i)
    return tuple(word), r


def reflection_word(rs: RootSystem, r: int) -> tuple[int, ...]:
    """A word in simple reflections equal to the reflection in root ``r``."""
    if not rs.is_positive(r):
        r = int(rs.neg[r])
    word, j = _descend_to_simple(rs, r)
    return word + (j,) + tuple(reversed(word))


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical W-conjugate of a subsystem.

    ``word`` maps ``ordered`` (an ordering of the basis) onto ``key``
    elementwise.  ``symmetries`` are pairs ``(word, images)``: the word
    permutes the basis, sending ``ordered[i]`` to ``images[i]``; together with
    ``pointwise`` (fixing the basis) and ``reflections`` (the Weyl group of the
    subsystem) they generate the setwise stabilizer.
    """

    key: tuple[int, ...]
    ordered: tuple[int, ...]
    word: tuple[int, ...]
    symmetries: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    pointwise: tuple[tuple[int, ...], ...]
    reflections: tuple[tuple[int, ...], ...]

    @property
    def stabilizer_words(self) -> list[tuple[int, ...]]:
        return [w for w, _ in self.symmetries] + list(self.pointwise) + list(self.reflections)


def canonical_form(rs: RootSystem, sub: Subsystem | Sequence[int], max_orbit: int | None = None) -> CanonicalForm:
    if not isinstance(sub, Subsystem):
        sub = make_subsystem(rs, sub)
    cache = rs.__dict__.setdefault("_canon_cache", {})
    hit = cache.get(sub.roots)
    if hit is not None:
        return hit
    cap = MAX_ORBIT if max_orbit is None else max_orbit
    if _count_arrangements(sub) > cap:
        raise ResourceError(f"{_count_arrangements(sub)} basis arrangements exceed the budget of {cap}")
    best = None
    found = []
    for arr in _arrangements(sub):
        key, word, free = reduce_tuple(rs, arr)
        if best is None or key < best[0]:
            best = (key, arr, word, free)
            found = [(arr, word)]
        elif key == best[0]:
            found.append((arr, word))
    key, ordered, word0, free = best
    inv0 = tuple(reversed(word0))
    syms = {}
    for arr, w in found:
        # w maps arr[i] -> key[i]; then word0^{-1} maps key[i] -> ordered[i]
        # the composite sends arr[i] to ordered[i]
        perm = rs.word_perm(w + inv0)
        images = [int(perm[r]) for r in ordered]
        syms.setdefault(tuple(images), w + inv0)
    symmetries = tuple(sorted(((w, im) for im, w in syms.items()), key=lambda t: t[1]))
    pointwise = tuple(word0 + (i,) + inv0 for i in free)
    reflections = tuple(reflection_word(rs, b) for b in sub.basis)
    out = CanonicalForm(key, ordered, word0, symmetries, pointwise, reflections)
    cache[sub.roots] = out
    return out


def weyl_canonical(rs: RootSystem, sub: Subsystem | Sequence[int], max_orbit: int | None = None):
    """Canonical W-conjugate of a subsystem and words generating its stabilizer.

    Two subsystems are conjugate iff their canonical forms coincide.  Words
    list simple reflections in the order they are applied.
    """
    cf = canonical_form(rs, sub, max_orbit)
    return generated_subsystem(rs, cf.key), cf.stabilizer_words


def canonical_key(rs: RootSystem, sub: Subsystem | Sequence[int], max_orbit: int | None = None) -> tuple[int, ...]:
    return canonical_form(rs, sub, max_orbit).key


def normalize_pinning(rs: RootSystem, ordered: Sequence[int], target: Sequence[int]) -> tuple[int, ...]:
    """Node permutation relating two simple systems of the same irreducible subsystem.

    ``target`` must consist of positive roots.  Returns ``pi`` with
    ``u(ordered[i]) == target[pi[i]]`` for the unique ``u`` in the Weyl group
    of the subsystem mapping ``set(ordered)`` onto ``set(target)``.
    """
    cur = [int(x) for x in ordered]
    while True:
        neg = next((c for c in cur if not rs.is_positive(c)), None)
        if neg is None:
            break
        cur = [int(rs.refl[neg, c]) for c in cur]
    pos = {r: k for k, r in enumerate(target)}
    try:
        return tuple(pos[c] for c in cur)
    except KeyError:
        raise SpecError("simple systems belong to different subsystems") from None

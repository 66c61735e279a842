"""Exact integer linear algebra: Smith normal form, torsion of lattice quotients
and the homomorphisms they induce.

All matrices are plain lists of lists of Python ints so that entries never
overflow.  Vectors of a character lattice are written in the basis of
fundamental weights, i.e. the weight lattice ``P`` is ``Z^r``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import SpecError

Matrix = list  # list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def matvec(a: Matrix, v: Sequence[int]) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Matrix, rows: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(rows or 0)] if rows else []
    return [list(col) for col in zip(*a)]


def determinant(a: Matrix) -> int:
    """Exact determinant (fraction-free Bareiss elimination)."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_rational(cols: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Solve ``sum c_k cols[k] = b`` over Q; None if b is not in the span.

    The columns must be linearly independent.
    """
    n = len(b)
    k = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(b[i])] for i in range(n)]
    row = 0
    pivots = []
    for c in range(k):
        piv = next((r for r in range(row, n) if aug[r][c] != 0), None)
        if piv is None:
            raise SpecError("columns are linearly dependent")
        aug[row], aug[piv] = aug[piv], aug[row]
        p = aug[row][c]
        aug[row] = [x / p for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(c)
        row += 1
    if any(aug[r][k] != 0 for r in range(row, n)):
        return None
    return [aug[i][k] for i in range(k)]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of integer vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``, U and V unimodular and
    D diagonal with non-negative entries ``d1 | d2 | ...``.

    >>> U, D, V = smith_normal_form([[2, 0], [0, 3]])
    >>> D
    [[1, 0], [0, 6]]
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def inverse_unimodular(u: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(u)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise SpecError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def lattice_basis(generators: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Columns of a basis of the full-rank lattice spanned by ``generators``."""
    if not generators:
        raise SpecError("no generators")
    m = transpose([list(g) for g in generators])  # dim x k
    u, d, _ = smith_normal_form(m)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    if len([x for x in diag if x]) != dim:
        raise SpecError("generators do not span a full-rank lattice")
    uinv = inverse_unimodular(u)
    # lattice = U^{-1} D Z^k  -> basis columns U^{-1}[:, i] * d_i
    return [[uinv[r][i] * diag[i] for i in range(dim)] for r in range(dim)]


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group in invariant-factor form ``Z/d1 x Z/d2 x ...``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = self.invariant_factors
        if any(d <= 1 for d in fs) or any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise SpecError(f"not an invariant-factor chain: {fs}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def element_order(self, x) -> int:
        return reduce(_lcm, (d // gcd(a, d) for a, d in zip(x, self.invariant_factors)), 1)

    def generates(self, x) -> bool:
        """True iff the cyclic subgroup generated by x is the whole group."""
        return self.is_cyclic and self.element_order(x) == self.order

    def __str__(self):
        if self.is_trivial:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class CharacterLattice:
    """A lattice X with Q <= X <= P, written in fundamental-weight coordinates.

    ``basis`` holds the basis vectors as rows; ``cartan`` is the Cartan matrix
    ``A[i][j] = <alpha_i^vee, alpha_j>`` so that simple root j has weight
    coordinates ``A[:, j]``.
    """

    cartan: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]
    kind: str = "intermediate"
    _inv: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        r = self.rank
        cols = [list(b) for b in self.basis]
        if len(cols) != r or rank(cols) != r:
            raise SpecError("character lattice basis must have full rank")
        # Q <= X
        for j in range(r):
            self.coords(self.root_weight([int(i == j) for i in range(r)]))

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @classmethod
    def adjoint(cls, cartan) -> "CharacterLattice":
        c = tuple(tuple(row) for row in cartan)
        n = len(c)
        basis = tuple(tuple(c[i][j] for i in range(n)) for j in range(n))
        return cls(c, basis, "adjoint")

    @classmethod
    def simply_connected(cls, cartan) -> "CharacterLattice":
        c = tuple(tuple(row) for row in cartan)
        return cls(c, tuple(tuple(x) for x in identity(len(c))), "simply_connected")

    @classmethod
    def intermediate(cls, cartan, generators: Iterable[Sequence[int]]) -> "CharacterLattice":
        """X = Q + Z{generators}; generators are weights in fundamental-weight coordinates."""
        c = tuple(tuple(row) for row in cartan)
        n = len(c)
        gens = [[c[i][j] for i in range(n)] for j in range(n)]
        for g in generators:
            g = [int(x) for x in g]
            if len(g) != n:
                raise SpecError(f"weight {g} has wrong length (expected {n})")
            gens.append(g)
        cols = lattice_basis(gens, n)
        basis = tuple(tuple(cols[r][i] for r in range(n)) for i in range(n))
        return cls(c, basis, "intermediate")

    def root_weight(self, alpha_coords: Sequence[int]) -> list[int]:
        """Weight coordinates of a root given in simple-root coordinates."""
        return [sum(self.cartan[i][j] * alpha_coords[j] for j in range(self.rank))
                for i in range(self.rank)]

    def coords(self, weight: Sequence[int]) -> list[int]:
        """Coordinates of ``weight`` in the lattice basis; raises if not in X."""
        sol = solve_rational(self.basis, weight)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise SpecError(f"{list(weight)} is not in the character lattice")
        return [int(x) for x in sol]

    def contains(self, weight: Sequence[int]) -> bool:
        try:
            self.coords(weight)
        except SpecError:
            return False
        return True

    @property
    def index_in_weights(self) -> int:
        """[P : X]."""
        return abs(determinant([list(b) for b in self.basis]))

    @property
    def index_over_roots(self) -> int:
        """[X : Q]."""
        q = [self.coords(self.root_weight([int(i == j) for i in range(self.rank)]))
             for j in range(self.rank)]
        return abs(determinant(q))


class TorsionQuotient:
    """Torsion subgroup of ``X / <gens>`` together with coordinate maps.

    ``generators`` are elements of X (weight coordinates) whose classes form
    the invariant-factor basis; ``coords`` maps an element of the saturation
    of ``<gens>`` to its class.  Elements of the dual group (characters of the
    torsion group, i.e. points of Z/Z0) are tuples ``a`` with
    ``chi(generator_t) = a_t / d_t``.
    """

    def __init__(self, lattice: CharacterLattice, gens: Sequence[Sequence[int]]):
        self.lattice = lattice
        self.gens = [list(g) for g in gens]
        r = lattice.rank
        xcols = [lattice.coords(g) for g in self.gens]
        m = transpose(xcols) if xcols else [[] for _ in range(r)]
        if xcols:
            u, d, _ = smith_normal_form(m)
            diag = [d[i][i] for i in range(min(r, len(xcols)))]
        else:
            u, diag = identity(r), []
        self._u = u
        self.positions = [i for i, x in enumerate(diag) if x > 1]
        self.group = FinAbGroup(tuple(diag[i] for i in self.positions))
        uinv = inverse_unimodular(u)
        basis = lattice.basis
        self.generators = []
        for t in self.positions:
            xc = [uinv[row][t] for row in range(r)]
            self.generators.append([sum(xc[k] * basis[k][i] for k in range(r)) for i in range(r)])

    @property
    def factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors

    def coords(self, weight: Sequence[int]) -> tuple[int, ...]:
        x = self.lattice.coords(weight)
        ux = matvec(self._u, x)
        return tuple(ux[t] % d for t, d in zip(self.positions, self.factors))

    def value(self, chi: Sequence[int], weight: Sequence[int]) -> Fraction:
        """chi(weight) in [0, 1), for weight in the saturation of <gens>."""
        c = self.coords(weight)
        return sum((Fraction(a * x, d) for a, x, d in zip(chi, c, self.factors)), Fraction(0)) % 1

    def character_from(self, func) -> tuple[int, ...]:
        """The dual element whose value on each generator is ``func(generator)``."""
        out = []
        for g, d in zip(self.generators, self.factors):
            v = Fraction(func(g)) * d
            if v.denominator != 1:
                raise ArithmeticError("value is not a d-th root of unity")
            out.append(int(v) % d)
        return tuple(out)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism ``source -> target`` in invariant-factor coordinates.

    Column j of ``matrix`` is the image of the j-th source generator.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, x):
        t = self.target.invariant_factors
        return tuple(sum(self.matrix[i][j] * x[j] for j in range(len(x))) % t[i]
                     for i in range(len(t)))

    def image(self) -> set:
        return {self(x) for x in self.source.elements()}

    def kernel(self) -> list:
        z = self.target.zero()
        return [x for x in self.source.elements() if self(x) == z]

    def is_injective(self) -> bool:
        return len(self.kernel()) == 1

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other."""
        if other.target != self.source:
            raise SpecError("incompatible homomorphisms")
        cols = [self(tuple(other.matrix[i][j] for i in range(len(other.matrix))))
                for j in range(len(other.source.invariant_factors))]
        m = tuple(tuple(cols[j][i] for j in range(len(cols)))
                  for i in range(len(self.target.invariant_factors)))
        return GroupHom(other.source, self.target, m)

    def dual(self) -> "GroupHom":
        """The induced map ``Hom(target, Q/Z) -> Hom(source, Q/Z)``."""
        d = self.source.invariant_factors
        e = self.target.invariant_factors
        m = tuple(tuple((self.matrix[i][j] * d[j] // e[i]) % d[j] for i in range(len(e)))
                  for j in range(len(d)))
        return GroupHom(self.target, self.source, m)


def quotient_torsion(lattice: CharacterLattice, sub_gens: Sequence[Sequence[int]]) -> FinAbGroup:
    """Invariant factors of the torsion subgroup of ``X / <sub_gens>``."""
    return TorsionQuotient(lattice, sub_gens).group


def _induced(src: TorsionQuotient, dst: TorsionQuotient) -> GroupHom:
    cols = [dst.coords(g) for g in src.generators]
    m = tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(len(dst.factors)))
    return GroupHom(src.group, dst.group, m)


def component_group_map(lattice: CharacterLattice, small: Sequence[Sequence[int]],
                        big: Sequence[Sequence[int]]) -> GroupHom:
    """Map ``torsion(X/Z small) -> torsion(X/Z big)`` induced by ``Z small <= Z big``."""
    tq_big = TorsionQuotient(lattice, big)
    # inclusion check: every small generator must lie in Z big
    big_cols = [lattice.coords(g) for g in big]
    for g in small:
        if not _in_span_z(big_cols, lattice.coords(g)):
            raise SpecError("Z small is not contained in Z big")
    return _induced(TorsionQuotient(lattice, small), tq_big)


def isogeny_map(smaller: CharacterLattice, larger: CharacterLattice,
                gens: Sequence[Sequence[int]]) -> GroupHom:
    """Map ``torsion(X1/Z gens) -> torsion(X2/Z gens)`` for ``X1 <= X2``.

    Its dual is the map on component groups of centers induced by the
    isogeny from the group with character lattice X2 onto the one with X1.
    """
    for b in smaller.basis:
        if not larger.contains(b):
            raise SpecError("lattices are not nested")
    return _induced(TorsionQuotient(smaller, gens), TorsionQuotient(larger, gens))


def _in_span_z(cols: list, x: list) -> bool:
    if not cols:
        return not any(x)
    u, d, v = smith_normal_form(transpose(cols))
    ux = matvec(u, x)
    k = len(cols)
    for i, val in enumerate(ux):
        di = d[i][i] if i < k else 0
        if di == 0:
            if val:
                return False
        elif val % di:
            return False
    return True

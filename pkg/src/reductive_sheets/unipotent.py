"""Unipotent classes: partitions, dimensions, collapse, induction and rigidity.

Classical classes are labelled by ``(partition, decoration)`` where the
decoration is ``"I"``/``"II"`` for very even partitions in type D and ``""``
otherwise.  Class ``I`` is the one whose weighted Dynkin diagram, computed
with the usual formula (last node ``h_{n-1} + h_n``), is the one returned by
:func:`weighted_diagram`; ``II`` is its image under the swap of the last two
nodes.  Exceptional classes carry their table label (a string).
"""
from __future__ import annotations

import csv
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import CapabilityError, SheetsError, SpecError

Partition = tuple[int, ...]
Label = tuple  # (Partition, decoration) for classical types, str for exceptional ones

DATA_ENV = "REDUCTIVE_SHEETS_DATA"
DEFAULT_DATA_DIR = Path(__file__).parent / "data" / "v1"
EXCEPTIONAL = {("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)}

#: number of induction steps whose dimension equation was checked
induction_checks = 0


# ---------------------------------------------------------------------------
# partitions


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def dual(p: Sequence[int]) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def add_rows(p: Sequence[int], q: Sequence[int]) -> Partition:
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return tuple(a + b for a, b in zip(p, q) if a + b)


def dominates(p: Sequence[int], q: Sequence[int]) -> bool:
    """p >= q in the dominance order (partitions of the same size)."""
    sp = sq = 0
    for i in range(max(len(p), len(q))):
        sp += p[i] if i < len(p) else 0
        sq += q[i] if i < len(q) else 0
        if sp < sq:
            return False
    return True


def partition_size(letter: str, rank: int) -> int:
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[letter]


def _bad_parity(letter: str) -> int | None:
    """Parity of parts that must have even multiplicity (None for type A)."""
    return {"A": None, "B": 0, "C": 1, "D": 0}[letter]


def is_valid_partition(letter: str, p: Sequence[int]) -> bool:
    par = _bad_parity(letter)
    if par is None:
        return True
    return all(m % 2 == 0 for part, m in Counter(p).items() if part % 2 == par)


def is_very_even(letter: str, p: Sequence[int]) -> bool:
    return letter == "D" and len(p) > 0 and all(x % 2 == 0 for x in p) and is_valid_partition("D", p)


def collapse(letter: str, p: Sequence[int]) -> Partition:
    """Largest partition of the right parity dominated by ``p``."""
    par = _bad_parity(letter)
    p = [x for x in p if x]
    if par is None:
        return tuple(p)
    while True:
        bad = [q for q, m in Counter(p).items() if q % 2 == par and m % 2 == 1]
        if not bad:
            return tuple(p)
        q = max(bad)
        last = max(i for i, x in enumerate(p) if x == q)
        p[last] -= 1
        j = next((i for i in range(last + 1, len(p)) if p[i] < q - 1), None)
        if j is None:
            p.append(1)
        else:
            p[j] += 1
        p = sorted((x for x in p if x), reverse=True)


# ---------------------------------------------------------------------------
# classes and dimensions


def group_dimension(letter: str, rank: int) -> int:
    return {
        "A": (rank + 1) ** 2 - 1, "B": rank * (2 * rank + 1), "C": rank * (2 * rank + 1),
        "D": rank * (2 * rank - 1), "E": {6: 78, 7: 133, 8: 248}.get(rank, 0),
        "F": 52, "G": 14,
    }[letter]


def orbit_dimension(letter: str, rank: int, label: Label) -> int:
    """Dimension of a classical unipotent class, from the dual partition."""
    p, _ = label
    if sum(p) != partition_size(letter, rank) or not is_valid_partition(letter, p):
        raise SpecError(f"{p} is not a unipotent class of {letter}{rank}")
    s = sum(x * x for x in dual(p))
    odd = sum(1 for x in p if x % 2)
    if letter == "A":
        return (rank + 1) ** 2 - s
    if letter == "C":
        return group_dimension("C", rank) - (s + odd) // 2
    return group_dimension(letter, rank) - (s - odd) // 2


@dataclass(frozen=True)
class UnipotentClass:
    letter: str
    rank: int
    label: Label
    dim_orbit: int
    rigid: bool

    @property
    def type_key(self) -> tuple[str, int]:
        return (self.letter, self.rank)

    @property
    def name(self) -> str:
        return label_name(self.label)

    @property
    def is_trivial(self) -> bool:
        return self.dim_orbit == 0


def label_name(label: Label) -> str:
    if isinstance(label, str):
        return label
    p, dec = label
    parts = []
    for part, m in sorted(Counter(p).items(), reverse=True):
        parts.append(str(part) if m == 1 else f"{part}^{m}")
    return "[" + ",".join(parts) + "]" + dec


def classical_labels(letter: str, rank: int) -> list[Label]:
    out = []
    for p in partitions(partition_size(letter, rank)):
        if not is_valid_partition(letter, p):
            continue
        if is_very_even(letter, p):
            out += [(p, "I"), (p, "II")]
        else:
            out.append((p, ""))
    return out


@lru_cache(maxsize=None)
def _classical_classes(letter: str, rank: int) -> tuple[UnipotentClass, ...]:
    labels = classical_labels(letter, rank)
    out = [UnipotentClass(letter, rank, lab, orbit_dimension(letter, rank, lab),
                          rigid_by_partition(letter, lab)) for lab in labels]
    out.sort(key=lambda c: (c.dim_orbit, c.label[0], c.label[1]))
    return tuple(out)


def classify_unipotent(letter: str, rank: int) -> list[UnipotentClass]:
    """All unipotent classes of a classical simple type, by dimension then label."""
    if (letter, rank) in EXCEPTIONAL:
        raise CapabilityError(f"{letter}{rank} classes come from the exceptional tables; "
                              "use classes_of or load_exceptional_tables")
    if letter not in "ABCD":
        raise SpecError(f"invalid Cartan type {letter}{rank}")
    return list(_classical_classes(letter, rank))


def trivial_label(letter: str, rank: int) -> Label:
    if (letter, rank) in EXCEPTIONAL:
        return "1"
    return ((1,) * partition_size(letter, rank), "")


# ---------------------------------------------------------------------------
# weighted diagrams and diagram automorphisms


def _h_values(p: Sequence[int]) -> list[int]:
    out = []
    for part in p:
        out += [part - 1 - 2 * k for k in range(part)]
    return sorted(out, reverse=True)


def weighted_diagram(letter: str, rank: int, label: Label) -> tuple[int, ...]:
    p, dec = label
    h = _h_values(p)
    n = rank
    if letter == "A":
        return tuple(h[i] - h[i + 1] for i in range(n))
    top = h[:n]  # the n largest values; all non-negative for B, C, D
    d = [top[i] - top[i + 1] for i in range(n - 1)]
    if letter == "B":
        d.append(top[-1])
    elif letter == "C":
        d.append(2 * top[-1])
    else:
        d.append(top[-2] + top[-1])
        if dec == "II":
            d[-1], d[-2] = d[-2], d[-1]
    return tuple(d)


@lru_cache(maxsize=None)
def _diagram_lookup(letter: str, rank: int) -> dict:
    return {weighted_diagram(letter, rank, lab): lab for lab in classical_labels(letter, rank)}


def relabel(letter: str, rank: int, label: Label, perm: Sequence[int]) -> Label:
    """Image of a class under the diagram automorphism sending node i to node ``perm[i]``."""
    if isinstance(label, str) or tuple(perm) == tuple(range(rank)):
        return label
    d = weighted_diagram(letter, rank, label)
    new = [0] * rank
    for i, j in enumerate(perm):
        new[j] = d[i]
    try:
        return _diagram_lookup(letter, rank)[tuple(new)]
    except KeyError:
        raise SpecError(f"{perm} is not a diagram automorphism of {letter}{rank}") from None


# ---------------------------------------------------------------------------
# induction


@dataclass(frozen=True)
class LeviDecomposition:
    """Levi subgroup GL_{b_1} x ... x GL_{b_k} x G(core) of a classical group.

    Blocks are listed from the first simple root onwards, so the last block
    is adjacent to the core.  In type D with ``core == 0`` the last block is
    attached through ``alpha_{n-1}`` (fork ``"I"``) or ``alpha_n`` (``"II"``).
    Type A has no core and ``blocks`` sum to ``rank + 1``.
    """

    letter: str
    rank: int
    blocks: tuple[int, ...]
    core: int = 0
    fork: str = ""

    def __post_init__(self):
        if self.letter == "A":
            ok = sum(self.blocks) == self.rank + 1 and self.core == 0
        else:
            ok = sum(self.blocks) + self.core == self.rank
        if not ok or any(b < 1 for b in self.blocks):
            raise SpecError(f"inconsistent Levi decomposition {self}")

    @property
    def dim(self) -> int:
        g = sum(b * b for b in self.blocks)
        if self.letter == "A":
            return g - 1
        return g + group_dimension(self.letter, self.core) if self.core else g

    @property
    def is_whole(self) -> bool:
        if self.letter == "A":
            return len(self.blocks) == 1
        return self.core == self.rank


def decomposition_from_nodes(letter: str, rank: int, nodes: Iterable[int]) -> LeviDecomposition:
    """Levi decomposition of the standard Levi with simple roots ``nodes`` (0-based, Bourbaki)."""
    I = set(nodes)
    if letter == "A":
        blocks, run = [], 1
        for i in range(rank):
            if i in I:
                run += 1
            else:
                blocks.append(run)
                run = 1
        blocks.append(run)
        return LeviDecomposition("A", rank, tuple(blocks))
    n = rank
    core, fork = 0, ""
    links = {i for i in I if i < n - 1}  # node i joins e_{i+1} and e_{i+2}
    if letter in "BC":
        if n - 1 in I:
            core = 1
            while n - 1 - core in I:
                core += 1
    else:
        a, b = n - 2 in I, n - 1 in I
        if a and b:
            core = 2
            while n - 1 - core in I:
                core += 1
        elif b:
            links.add(n - 2)  # alpha_n joins e_{n-1} and -e_n
            fork = "II"
        elif a:
            fork = "I"
    m = n - core
    blocks, run = [], 1
    for i in range(m - 1):
        if i in links:
            run += 1
        else:
            blocks.append(run)
            run = 1
    if m:
        blocks.append(run)
    if fork and m and blocks[-1] == 1:
        fork = ""
    return LeviDecomposition(letter, n, tuple(blocks), core, fork)


def _check_dimension(letter: str, rank: int, levi: LeviDecomposition, source_dim: int, result: UnipotentClass):
    global induction_checks
    expected = group_dimension(letter, rank) - levi.dim + source_dim
    induction_checks += 1
    if result.dim_orbit != expected:
        raise SheetsError(f"induction dimension mismatch: {result.dim_orbit} != {expected} "
                          f"for {levi}")


def induce(levi: LeviDecomposition, block_partitions: Sequence[Partition],
           core_label: Label | None = None) -> UnipotentClass:
    """Induce the class (block partitions, core class) from a Levi to the whole group."""
    letter, rank = levi.letter, levi.rank
    if len(block_partitions) != len(levi.blocks):
        raise SpecError("one partition per GL block is required")
    for b, mu in zip(levi.blocks, block_partitions):
        if sum(mu) != b:
            raise SpecError(f"{mu} is not a partition of {b}")
    src_dim = sum(orbit_dimension("A", b - 1, (tuple(mu), "")) for b, mu in zip(levi.blocks, block_partitions))
    if letter == "A":
        lam: Partition = ()
        for mu in block_partitions:
            lam = add_rows(lam, mu)
        result = _lookup(letter, rank, (lam, ""))
        _check_dimension(letter, rank, levi, src_dim, result)
        return result
    if core_label is None:
        core_label = trivial_label(letter, levi.core)
    nu, dec = core_label
    if sum(nu) != partition_size(letter, levi.core) or not is_valid_partition(letter, nu):
        raise SpecError(f"{core_label} is not a class of the core {letter}{levi.core}")
    src_dim += orbit_dimension(letter, levi.core, core_label) if levi.core else 0
    for mu in reversed(block_partitions):
        lam = collapse(letter, add_rows(nu, tuple(2 * x for x in mu)))
        if is_very_even(letter, lam):
            if is_very_even(letter, nu):
                pass
            elif not nu and levi.fork:
                dec = levi.fork
            else:
                raise SheetsError(f"cannot decorate very even {lam} induced from {nu}")
        else:
            dec = ""
        nu = lam
    result = _lookup(letter, rank, (tuple(nu), dec))
    _check_dimension(letter, rank, levi, src_dim, result)
    return result


def _lookup(letter: str, rank: int, label: Label) -> UnipotentClass:
    for c in _classical_classes(letter, rank):
        if c.label == label:
            return c
    raise SheetsError(f"no class {label_name(label)} in {letter}{rank}")


def induce_from_nodes(letter: str, rank: int, nodes: Iterable[int], levi_class: Sequence[Label]) -> UnipotentClass:
    """Induce from the standard Levi on ``nodes``; ``levi_class`` lists block labels
    (type A partitions) followed by the core label when there is a core."""
    levi = decomposition_from_nodes(letter, rank, nodes)
    k = len(levi.blocks)
    blocks = [lab[0] for lab in levi_class[:k]]
    core = levi_class[k] if levi.core else None
    return induce(levi, blocks, core)


def levi_classes(levi: LeviDecomposition) -> Iterator[tuple[list[Partition], Label | None]]:
    """All unipotent classes of a Levi as (block partitions, core label)."""
    block_choices = [list(partitions(b)) for b in levi.blocks]
    core_choices = classical_labels(levi.letter, levi.core) if levi.letter != "A" and levi.core else [None]
    for bl in product(*block_choices):
        for c in core_choices:
            yield list(bl), c


# ---------------------------------------------------------------------------
# rigidity


@lru_cache(maxsize=None)
def induced_labels(letter: str, rank: int) -> frozenset:
    """Labels of all classes induced from proper Levi subgroups (brute force)."""
    out = set()
    for mask in range(2 ** rank - 1):
        nodes = [i for i in range(rank) if mask >> i & 1]
        levi = decomposition_from_nodes(letter, rank, nodes)
        for bl, core in levi_classes(levi):
            out.add(induce(levi, bl, core).label)
    return frozenset(out)


def rigid_by_induction(letter: str, rank: int, label: Label) -> bool:
    """Defining oracle: not induced from any proper Levi."""
    return label not in induced_labels(letter, rank)


def rigid_by_partition(letter: str, label: Label) -> bool:
    """Closed-form criterion: no gaps larger than one, and no part of the
    restricted parity (odd for B/D, even for C) with multiplicity exactly two."""
    p, _ = label
    if letter == "A":
        return all(x == 1 for x in p)
    q = list(p) + [0]
    if any(q[i] - q[i + 1] > 1 for i in range(len(p))):
        return False
    par = 0 if letter == "C" else 1
    return not any(m == 2 for part, m in Counter(p).items() if part % 2 == par)


def is_rigid(letter: str, rank: int, label: Label, tables: dict | None = None) -> bool:
    if (letter, rank) in EXCEPTIONAL:
        for c in classes_of(letter, rank, tables):
            if c.label == label:
                return c.rigid
        raise SpecError(f"no class {label} in {letter}{rank}")
    return rigid_by_partition(letter, label)


# ---------------------------------------------------------------------------
# exceptional tables


def data_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else DEFAULT_DATA_DIR


def table_path(letter: str, rank: int, directory=None) -> Path:
    return data_dir(directory) / f"exceptional_{letter}{rank}.tsv"


def _parse_table(path: Path) -> dict:
    out: dict = {}
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(fh, delimiter="\t") if r and not r[0].startswith("#")]
    if not rows or [c.strip() for c in rows[0]] != ["type", "label", "dim", "rigid"]:
        raise SpecError(f"{path}: missing header 'type<TAB>label<TAB>dim<TAB>rigid'")
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise SpecError(f"{path}: malformed row {n}: {row}")
        t, label, dim, rigid = (c.strip() for c in row)
        if len(t) < 2 or (t[0], int(t[1:]) if t[1:].isdigit() else -1) not in EXCEPTIONAL:
            raise SpecError(f"{path}: row {n}: unknown exceptional type {t!r}")
        if rigid not in ("0", "1") or not dim.isdigit():
            raise SpecError(f"{path}: row {n}: bad dim/rigid field")
        letter, rank = t[0], int(t[1:])
        out.setdefault((letter, rank), []).append(
            UnipotentClass(letter, rank, label, int(dim), rigid == "1"))
    return out


def _validate(letter: str, rank: int, classes: list, path) -> None:
    top = group_dimension(letter, rank) - rank
    labels = Counter(c.label for c in classes)
    dup = [l for l, m in labels.items() if m > 1]
    if dup:
        raise SpecError(f"{path}: duplicate labels {dup}")
    for c in classes:
        if not 0 <= c.dim_orbit <= top or c.dim_orbit % 2:
            raise SpecError(f"{path}: class {c.label} has impossible dimension {c.dim_orbit}")
    triv = [c for c in classes if c.dim_orbit == 0]
    if len(triv) != 1 or not triv[0].rigid:
        raise SpecError(f"{path}: trivial class (dim 0, rigid) missing")
    reg = [c for c in classes if c.dim_orbit == top]
    if len(reg) != 1 or reg[0].rigid:
        raise SpecError(f"{path}: regular class (dim {top}, not rigid) missing")


def load_exceptional_tables(source=None) -> dict:
    """Read and validate every ``exceptional_*.tsv`` file in a directory (or one file).

    Returns ``{(letter, rank): [UnipotentClass, ...]}`` sorted by dimension;
    types without a file are simply absent.
    """
    src = data_dir(source)
    files = [src] if src.is_file() else sorted(src.glob("exceptional_*.tsv")) if src.is_dir() else []
    out: dict = {}
    for f in files:
        for key, classes in _parse_table(f).items():
            if key in out:
                raise SpecError(f"{f}: type {key[0]}{key[1]} defined twice")
            _validate(*key, classes, f)
            out[key] = sorted(classes, key=lambda c: (c.dim_orbit, c.label))
    return out


@lru_cache(maxsize=None)
def _default_tables(directory: str) -> dict:
    return load_exceptional_tables(directory)


def classes_of(letter: str, rank: int, tables: dict | None = None) -> list[UnipotentClass]:
    """Classes of any simple type; exceptional ones need a table."""
    if (letter, rank) not in EXCEPTIONAL:
        return classify_unipotent(letter, rank)
    if tables is None:
        tables = _default_tables(str(data_dir()))
    if (letter, rank) not in tables:
        raise CapabilityError(f"no unipotent class table for {letter}{rank}; "
                              f"expected {table_path(letter, rank)}")
    return list(tables[(letter, rank)])

"""Independent reference computations shared by the test modules."""
from reductive_sheets import unipotent as up


def _ranges(blocks, start=0):
    out, o = [], start
    for b in blocks:
        out.append((o, o + b))
        o += b
    return out


def induce_in_stages(small, big, bl, core):
    """Induce from ``small`` to ``big`` componentwise, then from ``big`` to the group."""
    letter = big.letter
    sranges = _ranges(small.blocks)
    mid_blocks = []
    for lo, hi in _ranges(big.blocks):
        lam = ()
        for (a, b), mu in zip(sranges, bl):
            if lo <= a and b <= hi:
                lam = up.add_rows(lam, mu)
        mid_blocks.append(lam)
    if letter == "A" or not big.core:
        return up.induce(big, mid_blocks)
    off = sum(big.blocks)
    inner_blocks = [(b - a) for (a, b) in sranges if a >= off]
    inner_parts = [mu for (a, _), mu in zip(sranges, bl) if a >= off]
    fork = small.fork if small.core == 0 else ""
    inner = up.LeviDecomposition(letter, big.core, tuple(inner_blocks), small.core, fork)
    mid_core = up.induce(inner, inner_parts, core if small.core else None).label
    return up.induce(big, mid_blocks, mid_core)


def levi_chains(letter, n):
    """All pairs (small, big) of standard Levi decompositions with small <= big."""
    for big_mask in range(2 ** n):
        I2 = [i for i in range(n) if big_mask >> i & 1]
        big = up.decomposition_from_nodes(letter, n, I2)
        for sub in range(2 ** len(I2)):
            I1 = [x for k, x in enumerate(I2) if sub >> k & 1]
            yield up.decomposition_from_nodes(letter, n, I1), big

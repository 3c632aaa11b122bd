"""Pure-Python search kernels.

Subsets of Z/p are bit masks: bit i set means residue i is in the set. The
compiled twin in _kernels.pyx implements the same two functions with the same
traversal order; the backends must stay byte-for-byte interchangeable.
"""

from __future__ import annotations


def _rotl(mask: int, s: int, p: int, full: int) -> int:
    # left rotation of a p-bit word; rot(A, s) is the translate A + s
    s %= p
    if s == 0:
        return mask
    return ((mask << s) | (mask >> (p - s))) & full


def s1_witness_mask(mask: int, p: int) -> int:
    """Elements a of the set with a centered progression a-d, a, a+d inside it."""
    full = (1 << p) - 1
    w = 0
    for d in range(1, (p - 1) // 2 + 1):
        w |= _rotl(mask, d, p, full) & _rotl(mask, p - d, p, full)
        if mask & ~w == 0:
            break
    return mask & w


def s1_exhaust(p: int, limit: int, node_budget: int) -> tuple[int, bool, int]:
    """Search for a centered-progression-closed set of at most `limit` residues.

    Starts from {0, 1} (every such set with >= 2 elements maps onto one
    containing {0, 1} under x -> (x - a) / (b - a), which preserves the
    property), and repeatedly repairs the smallest element lacking a witness
    by adding the pair {a - d, a + d} for each step d.

    Returns (found_mask, exhausted, nodes): found_mask is 0 when no set was
    found; exhausted is False only when the node budget ran out first.
    """
    if limit < 2:
        return (0, True, 0)
    full = (1 << p) - 1
    half = (p - 1) // 2
    start = 0b11
    visited = {start}
    stack = [start]
    nodes = 0
    while stack:
        a = stack.pop()
        nodes += 1
        if nodes > node_budget:
            return (0, False, nodes)
        uncovered = a & ~s1_witness_mask(a, p)
        if uncovered == 0:
            return (a, True, nodes)
        e = (uncovered & -uncovered).bit_length() - 1
        children = []
        for d in range(1, half + 1):
            child = a | _rotl(1 << e, d, p, full) | _rotl(1 << e, p - d, p, full)
            if child.bit_count() <= limit and child not in visited:
                visited.add(child)
                children.append(child)
        stack.extend(reversed(children))
    return (0, True, nodes)

"""Small helpers for vertex sets stored as int bit masks."""


def popcount(mask):
    return bin(mask).count("1")


def bits(mask):
    """Indices of set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def submasks(mask):
    """All submasks of ``mask`` including 0 and ``mask`` itself (descending)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def maximal(masks):
    """Inclusion-maximal elements, deduplicated, sorted ascending."""
    uniq = sorted(set(masks), key=lambda m: (-popcount(m), m))
    kept = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return sorted(kept)


def minimal(masks):
    """Inclusion-minimal elements, deduplicated, sorted ascending."""
    uniq = sorted(set(masks), key=lambda m: (popcount(m), m))
    kept = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return sorted(kept)


def minimal_transversals(edges):
    """Minimal sets meeting every edge (the blocker of a hypergraph).

    An empty edge can never be met, so the result is empty; no edges at all
    gives ``[0]``.
    """
    edges = minimal(edges)
    if edges and edges[0] == 0:
        return []
    trans = [0]
    for e in edges:
        nxt = []
        for t in trans:
            if t & e:
                nxt.append(t)
            else:
                nxt.extend(t | (1 << v) for v in bits(e))
        trans = minimal(nxt)
    return trans

"""Independent reference computations: dense Fraction arithmetic only.

Nothing here imports the package, so agreement with it is real evidence.
"""

from fractions import Fraction
from itertools import combinations


def dense_rank(rows, p=None):
    """Rank by row reduction over Q (p=None) or GF(p).

    Rows are stored as {column: value} dicts so that the very sparse
    coboundary matrices of nerves stay cheap; arithmetic is plain Fraction.
    """
    pivots = {}
    for raw in rows:
        row = {j: (Fraction(x) if p is None else int(x) % p) for j, x in enumerate(raw)}
        row = {j: x for j, x in row.items() if x}
        _insert(row, pivots, p)
    return len(pivots)


def _insert(row, pivots, p):
    while row:
        lead = min(row)
        if lead not in pivots:
            pivots[lead] = row
            return
        prow = pivots[lead]
        f = row[lead] / prow[lead] if p is None else row[lead] * pow(prow[lead], -1, p) % p
        for j, x in prow.items():
            v = row.get(j, 0) - f * x
            if p is not None:
                v %= p
            if v:
                row[j] = v
            else:
                row.pop(j, None)


def sparse_rank(rows, p=None):
    """Same as dense_rank for rows already given as {column: value} dicts."""
    pivots = {}
    for r in rows:
        _insert({j: (Fraction(x) if p is None else int(x) % p) for j, x in r.items() if x}, pivots, p)
    return len(pivots)


def cochain_betti(cells_by_dim, p=None):
    """Betti numbers of the simplicial cochain complex on ordered cells.

    ``cells_by_dim[d]`` lists d-cells as sorted tuples of hashable labels;
    the boundary of a cell is obtained by deleting one label.
    """
    top = len(cells_by_dim) - 1
    index = [{c: i for i, c in enumerate(cs)} for cs in cells_by_dim]
    ranks = []
    for d in range(top):
        rows = []
        for c in cells_by_dim[d + 1]:
            row = {}
            for i in range(len(c)):
                j = index[d][c[:i] + c[i + 1:]]
                row[j] = row.get(j, 0) + (-1) ** i
            rows.append(row)
        ranks.append(sparse_rank(rows, p))
    out = []
    for d in range(top + 1):
        dim = len(cells_by_dim[d])
        r_out = ranks[d] if d < top else 0
        r_in = ranks[d - 1] if d > 0 else 0
        out.append(dim - r_out - r_in)
    return out


def simplicial_betti(simplices, p=None):
    """Cohomology of the complex generated by ``simplices`` (all faces added)."""
    faces = set()
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            faces.update(combinations(s, k))
    if not faces:
        return []
    top = max(len(f) for f in faces) - 1
    return cochain_betti([sorted(f for f in faces if len(f) == d + 1) for d in range(top + 1)], p)


def order_complex_betti(elements, p=None):
    """Cohomology of the nerve (chains under strict inclusion) of a set of faces.

    For an up-closed set W of simplices this is H^*(|W|) and also the
    cohomology of the constant sheaf's sections over W.
    """
    elems = sorted({tuple(sorted(e)) for e in elements}, key=lambda s: (len(s), s))
    if not elems:
        return []
    pos = {e: i for i, e in enumerate(elems)}
    chains = [[(i,) for i in range(len(elems))]]
    while chains[-1]:
        nxt = []
        for ch in chains[-1]:
            last = elems[ch[-1]]
            for e in elems:
                if len(e) > len(last) and set(last) < set(e):
                    nxt.append(ch + (pos[e],))
        chains.append(nxt)
    chains.pop()
    return cochain_betti([sorted(c) for c in chains], p)

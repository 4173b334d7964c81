"""Complexes of cellular sheaves on face posets.

Open sets of a simplicial complex correspond to up-sets of its face poset
(sets closed under passing to cofaces), and the stalk at a point in the open
cell of a simplex s is the value S(s).  A sheaf complex assigns a cochain
complex S(s) to each simplex of its carrier and a degree-0 chain map
rho[s, t]: S(s) -> S(t) to every pair s < t, strictly functorially.

Derived sections over an up-set W are computed with the ordered-chain (Roos)
double complex: C^{p,q} is the sum over chains s0 < ... < sp in W of
S(sp)^q.  Its terms are injective functors on W, so the total complex computes
hypercohomology, and restricting to a smaller up-set is projection onto the
chains lying in it.  That projection is what makes pushforwards honest
sheaf complexes which can be truncated and pushed forward again.
"""

import json

from .complex import open_star
from .errors import (
    NotChainMap, NotFunctorial, NotNested, NotOpenSubposet, SimplexNotInCarrier,
)
from .infinity import INF, NEG_INF
from .linalg import (
    QQ, Betti, ChainMap, CochainComplex, Quotient, SparseMatrix, cohomology, cone,
    is_iso_on, kernel,
)


def _key(s):
    return (len(s), s)


class CellSheaf:
    """Immutable sheaf complex; ``rho`` maps (s, t) to {degree: matrix}."""

    def __init__(self, complex, carrier, field, stalks, rho):
        self.complex = complex
        self.carrier = frozenset(carrier)
        self.field = field
        self.stalks = stalks
        self.rho = rho
        self._betti = {}
        self._costalk = {}

    def __repr__(self):
        return f"CellSheaf(carrier={len(self.carrier)}, total_dim={self.total_dim()})"

    def stalk(self, s):
        if s not in self.carrier:
            raise SimplexNotInCarrier(self.complex.name(s) if s in self.complex else s)
        return self.stalks[s]

    def restriction(self, s, t, degree):
        m = self.rho[(s, t)].get(degree)
        if m is None:
            return SparseMatrix.zero(self.field, self.stalks[t].dim(degree),
                                     self.stalks[s].dim(degree))
        return m

    def chain_map(self, s, t):
        return ChainMap(self.stalks[s], self.stalks[t], self.rho[(s, t)])

    def stalk_betti(self, s):
        b = self._betti.get(s)
        if b is None:
            b = cohomology(self.stalk(s), check=False)
            self._betti[s] = b
        return b

    def total_dim(self):
        return sum(c.total_dim() for c in self.stalks.values())

    def ordered(self):
        return sorted(self.carrier, key=_key)

    def pairs(self):
        return sorted(self.rho, key=lambda st: (_key(st[0]), _key(st[1])))

    def validate(self):
        """d^2 = 0 on stalks, chain-map condition, strict functoriality."""
        for s in self.ordered():
            self.stalks[s].validate()
        for (s, t) in self.pairs():
            try:
                self.chain_map(s, t).validate()
            except NotChainMap as exc:
                raise NotChainMap(f"{self.complex.name(s)}<{self.complex.name(t)} degree {exc.degree}") from exc
        star = {s: [t for t in self.ordered() if t != s and set(s) < set(t)] for s in self.carrier}
        for s in self.carrier:
            for t in star[s]:
                if (s, t) not in self.rho:
                    raise NotFunctorial(f"{self.complex.name(s)}<{self.complex.name(t)} missing")
                for u in star[t]:
                    lo = self.stalks[s].lo
                    for q in range(lo, self.stalks[s].hi + 1):
                        a = self.restriction(t, u, q) @ self.restriction(s, t, q)
                        b = self.restriction(s, u, q)
                        if not (a - b).is_zero():
                            names = "<".join(self.complex.name(x) for x in (s, t, u))
                            raise NotFunctorial(names)
        return True


def _all_pairs(carrier):
    items = sorted(carrier, key=_key)
    sets = {s: set(s) for s in items}
    for s in items:
        for t in items:
            if len(t) > len(s) and sets[s] < sets[t]:
                yield s, t


def constant_sheaf(complex, carrier=None, rank=1, field=QQ):
    carrier = frozenset(complex.simplices if carrier is None else carrier)
    stalks = {s: CochainComplex.concentrated(field, rank, 0) for s in carrier}
    ident = SparseMatrix.identity(field, rank)
    rho = {(s, t): ({0: ident} if rank else {}) for s, t in _all_pairs(carrier)}
    return CellSheaf(complex, carrier, field, stalks, rho)


def zero_sheaf(complex, carrier=None, field=QQ):
    return constant_sheaf(complex, carrier, 0, field)


def from_data(complex, field, stalks, rho):
    """Build from stalks and restriction maps on covering pairs, composing the rest."""
    carrier = frozenset(stalks)
    full = {}
    for s, t in sorted(_all_pairs(carrier), key=lambda st: (len(st[1]) - len(st[0]), _key(st[0]), _key(st[1]))):
        if (s, t) in rho:
            full[(s, t)] = dict(rho[(s, t)])
            continue
        if len(t) == len(s) + 1:
            raise NotFunctorial(f"{complex.name(s)}<{complex.name(t)} missing")
        mid = next(u for u in sorted(carrier, key=_key)
                   if len(u) == len(s) + 1 and set(s) < set(u) < set(t))
        a, b = full[(s, mid)], full[(mid, t)]
        full[(s, t)] = {q: b[q] @ a[q] for q in set(a) & set(b)}
    return CellSheaf(complex, carrier, field, dict(stalks), full)


def stalk_cohomology(S, s, j):
    return S.stalk_betti(s)[j]


# ---------------------------------------------------------------- truncation

def _restrict_maps(S, new_stalks, degree_fn):
    rho = {}
    for (s, t), maps in S.rho.items():
        rho[(s, t)] = degree_fn(s, t, maps)
    return CellSheaf(S.complex, S.carrier, S.field, new_stalks, rho)


def _trunc_le_data(C, m):
    """tau_{<=m} C plus (free, N) describing degree m, or None if untouched."""
    if m is NEG_INF or (m is not INF and m < C.lo):
        return CochainComplex.zero(C.field), ("zero",)
    if m is INF or m >= C.hi:
        return C, None
    free, basis = kernel(C.d(m))
    N = SparseMatrix(C.field, C.dim(m), len(free), basis)
    dims = C.dims[: m - C.lo] + [len(free)]
    diffs = list(C.diffs[: m - C.lo])
    if diffs:
        diffs[-1] = diffs[-1].select_rows(free)
    return CochainComplex(C.field, C.lo, dims, diffs), ("ker", m, free, N)


def _apply_le(S, levels):
    new, info = {}, {}
    for s in S.carrier:
        new[s], info[s] = _trunc_le_data(S.stalks[s], levels[s])

    def maps_for(s, t, maps):
        a, b = info[s], info[t]
        if (a and a[0] == "zero") or (b and b[0] == "zero"):
            return {}
        out = {}
        top_s = new[s].hi
        for q, m in maps.items():
            if q > top_s:
                continue
            if a and q == a[1]:
                m = m @ a[3]
            if b and q == b[1]:
                m = m.select_rows(b[2])
            elif b and q > b[1]:
                continue
            out[q] = m
        return out

    return _restrict_maps(S, new, maps_for)


def truncate(S, m):
    """Stalkwise tau_{<=m}; degree m becomes ker d^m."""
    return _apply_le(S, {s: m for s in S.carrier})


def _trunc_ge_data(C, m):
    """tau_{>=m} C: degree m becomes C^m / im d^{m-1}."""
    if m is INF or (m is not NEG_INF and m > C.hi):
        return CochainComplex.zero(C.field), ("zero",)
    if m is NEG_INF or m <= C.lo:
        return C, None
    quo = Quotient(C.field, C.dim(m), C.d(m - 1).cols)
    dims = [len(quo.keep)] + C.dims[m - C.lo + 1:]
    diffs = list(C.diffs[m - C.lo:])
    if diffs:
        diffs[0] = diffs[0].select_columns(quo.keep)
    return CochainComplex(C.field, m, dims, diffs), ("quo", m, quo)


def _apply_ge(S, levels):
    new, info = {}, {}
    for s in S.carrier:
        new[s], info[s] = _trunc_ge_data(S.stalks[s], levels[s])

    def maps_for(s, t, maps):
        a, b = info[s], info[t]
        if (a and a[0] == "zero") or (b and b[0] == "zero"):
            return {}
        out = {}
        bottom_s = new[s].lo
        for q, m in maps.items():
            if q < bottom_s:
                continue
            if a and q == a[1]:
                m = m.select_columns(a[2].keep)
            if b and q == b[1]:
                quo = b[2]
                m = SparseMatrix(S.field, len(quo.keep), m.ncols, [quo.coords(c) for c in m.cols])
            elif b and q < b[1]:
                continue
            out[q] = m
        return out

    return _restrict_maps(S, new, maps_for)


def truncate_above(S, m):
    """Stalkwise tau_{>=m}."""
    return _apply_ge(S, {s: m for s in S.carrier})


def reduce(S):
    """Trim every stalk to a window that still carries all its cohomology.

    The upper cut at s is the largest top degree over faces of s and the
    lower cut the smallest bottom degree over cofaces, so cuts grow along
    face relations and the truncation maps stay strictly functorial.  Every
    stalk is replaced by a quasi-isomorphic one, compatibly with restrictions.
    """
    tops, bottoms = {}, {}
    for s in S.carrier:
        b = S.stalk_betti(s)
        tops[s] = b.top()
        bottoms[s] = b.bottom()
    hi, lo = {}, {}
    for s in S.carrier:
        faces = [f for f in S.complex.faces(s) if f in S.carrier]
        cand = [tops[f] for f in faces if tops[f] is not None]
        hi[s] = max(cand) if cand else NEG_INF
        cofaces = [t for t in open_star(S.complex, s) if t in S.carrier]
        cand = [bottoms[t] for t in cofaces if bottoms[t] is not None]
        lo[s] = min(cand) if cand else INF
    out = _apply_ge(_apply_le(S, hi), lo)
    out._betti.update(S._betti)
    return out


# ---------------------------------------------------------------- sections

def check_open(complex, carrier, W):
    for s in W:
        if s not in carrier:
            raise NotOpenSubposet(complex.name(s))
        for t in open_star(complex, s):
            if t in carrier and t not in W:
                raise NotOpenSubposet(complex.name(t))


def chains_from(W):
    """{s: all strictly increasing chains in W starting at s}."""
    ups = {}
    items = sorted(W, key=_key)
    sets = {s: set(s) for s in items}
    for s in items:
        ups[s] = [t for t in items if len(t) > len(s) and sets[s] < sets[t]]
    memo = {}
    for s in reversed(items):
        out = [(s,)]
        for t in ups[s]:
            out.extend((s,) + c for c in memo[t])
        memo[s] = out
    return memo


def _chain_key(c):
    return (len(c), [_key(x) for x in c])


def roos(S, chains):
    """Total Roos complex over a set of chains closed under subchains.

    Returns (complex, layout) with layout[(chain, q)] = offset of that block in
    total degree len(chain) - 1 + q.
    """
    field = S.field
    chains = sorted(chains, key=_chain_key)
    sizes = {}
    layout = {}
    for c in chains:
        C = S.stalks[c[-1]]
        p = len(c) - 1
        for q in range(C.lo, C.hi + 1):
            dq = C.dim(q)
            if dq:
                n = p + q
                off = sizes.get(n, 0)
                layout[(c, q)] = off
                sizes[n] = off + dq
    if not sizes:
        return CochainComplex.zero(field), layout
    lo, hi = min(sizes), max(sizes)
    cols = {n: [{} for _ in range(sizes.get(n, 0))] for n in range(lo, hi + 1)}
    neg = field.neg
    for (c, q), off in layout.items():
        p = len(c) - 1
        n = p + q
        C = S.stalks[c[-1]]
        tgt = layout.get((c, q + 1))
        if tgt is not None:
            d = C.d(q)
            for j, col in enumerate(d.cols):
                dst = cols[n][off + j]
                for i, x in col.items():
                    dst[tgt + i] = x if p % 2 == 0 else neg(x)
        if p == 0:
            continue
        # c receives contributions from its faces: this block is a *target*
        last = len(c) - 1
        for i in range(len(c)):
            face = c[:i] + c[i + 1:]
            if i < last:
                src = layout.get((face, q))
                if src is None:
                    continue
                sign_pos = i % 2 == 0
                for k in range(C.dim(q)):
                    cols[n - 1][src + k][off + k] = field.one if sign_pos else neg(field.one)
            else:
                src = layout.get((face, q))
                if src is None:
                    continue
                r = S.restriction(c[-2], c[-1], q)
                sign_pos = last % 2 == 0
                for j, col in enumerate(r.cols):
                    dst = cols[n - 1][src + j]
                    for ii, x in col.items():
                        dst[off + ii] = x if sign_pos else neg(x)
    dims = [sizes.get(n, 0) for n in range(lo, hi + 1)]
    diffs = [SparseMatrix(field, dims[k + 1], dims[k], cols[lo + k]) for k in range(len(dims) - 1)]
    return CochainComplex(field, lo, dims, diffs), layout


def sections(S, W=None, check=True):
    """Derived sections over an open subposet W of the carrier."""
    W = S.carrier if W is None else frozenset(W)
    if check:
        check_open(S.complex, S.carrier, W)
    memo = chains_from(W)
    chains = [c for s in W for c in memo[s]]
    return roos(S, chains)[0]


def hypercohomology(S):
    return cohomology(sections(S, check=False), check=False)


# ---------------------------------------------------------------- pushforward

def pushforward(S, V):
    """Derived pushforward of S (on its carrier U) to the larger open set V."""
    cx = S.complex
    U = S.carrier
    V = frozenset(V)
    for s in U:
        if s not in V:
            raise NotNested(cx.name(s))
    full = frozenset(cx.simplices)
    check_open(cx, full, V)
    check_open(cx, full, U)
    memo = chains_from(U)
    stalks, layouts = {}, {}
    for s in sorted(V, key=_key):
        W = [t for t in open_star(cx, s) if t in U]
        chains = [c for t in W for c in memo[t]]
        stalks[s], layouts[s] = roos(S, chains)
    field = S.field
    rho = {}
    for s, t in _all_pairs(V):
        Ls, Lt = layouts[s], layouts[t]
        Cs, Ct = stalks[s], stalks[t]
        by_deg = {}
        for (c, q), toff in Lt.items():
            n = len(c) - 1 + q
            soff = Ls[(c, q)]
            dq = S.stalks[c[-1]].dim(q)
            cols = by_deg.get(n)
            if cols is None:
                cols = by_deg[n] = [{} for _ in range(Cs.dim(n))]
            for k in range(dq):
                cols[soff + k][toff + k] = field.one
        rho[(s, t)] = {n: SparseMatrix(field, Ct.dim(n), Cs.dim(n), cols) for n, cols in by_deg.items()}
    return CellSheaf(cx, V, field, stalks, rho)


def restrict(S, W):
    """Restriction of S to an open subset of its carrier."""
    W = frozenset(W)
    check_open(S.complex, S.carrier, W)
    rho = {(s, t): m for (s, t), m in S.rho.items() if s in W and t in W}
    out = CellSheaf(S.complex, W, S.field, {s: S.stalks[s] for s in W}, rho)
    out._betti.update({s: b for s, b in S._betti.items() if s in W})
    return out


def attachment(S, s, W=None):
    """Chain map S(s) -> sections(S|W) with W an up-set inside star(s) - s.

    Default W is the deleted star within the carrier.
    """
    cx = S.complex
    S.stalk(s)
    star = [t for t in open_star(cx, s) if t in S.carrier and t != s]
    W = frozenset(star if W is None else W)
    for t in W:
        if t not in star:
            raise NotOpenSubposet(cx.name(t))
    memo = chains_from(W)
    chains = [c for t in W for c in memo[t]]
    target, layout = roos(S, chains)
    source = S.stalks[s]
    field = S.field
    maps = {}
    for q in range(source.lo, source.hi + 1):
        if not source.dim(q) or not target.dim(q):
            continue
        cols = [{} for _ in range(source.dim(q))]
        for t in W:
            off = layout.get(((t,), q))
            if off is None:
                continue
            r = S.restriction(s, t, q)
            for j, col in enumerate(r.cols):
                for i, x in col.items():
                    cols[j][off + i] = x
        maps[q] = SparseMatrix(field, target.dim(q), source.dim(q), cols)
    return ChainMap(source, target, maps)


def attachment_iso_degrees(f, degrees):
    """Degrees among ``degrees`` where H(f) fails to be an isomorphism."""
    return [i for i in degrees if not is_iso_on(f, i)]


def _costalk_cone(S, s):
    return cone(attachment(S, s))


def costalk_betti(S, s):
    """H^j(f_x^! S) for x in the open cell s.

    The deleted star models a neighbourhood of the cell minus the cell; a
    point-deleted neighbourhood of x is the join of that with S^{dim s - 1},
    which shifts degrees by dim s.  Hence H^j(f_x^!) = H^{j - dim s - 1}(cone).
    """
    b = S._costalk.get(s)
    if b is None:
        S.stalk(s)
        c = cohomology(_costalk_cone(S, s), check=False)
        shift = len(s)  # dim s + 1
        b = Betti({k + shift: v for k, v in c.values.items()})
        S._costalk[s] = b
    return b


def costalk_cohomology(S, s, j):
    return costalk_betti(S, s)[j]


def costalk_les_defect(S, s):
    """Alternating sum over the attachment triangle; zero by exactness.

    Also checks the degreewise consequence h(cone^i) <= h(T^i) + h(S^{i+1}).
    Returns (alternating sum, list of degrees where the bound fails).
    """
    f = attachment(S, s)
    hs = cohomology(f.source, check=False)
    ht = cohomology(f.target, check=False)
    shift = len(s)
    hc = {k - shift: v for k, v in costalk_betti(S, s).values.items()}
    degs = set(hs.values) | set(ht.values) | set(hc)
    total = sum((-1) ** i * (hs[i] - ht[i] + hc.get(i, 0)) for i in degs)
    bad = [i for i in sorted(degs) if hc.get(i, 0) > ht[i] + hs[i + 1]]
    return total, bad


# ---------------------------------------------------------------- supports

def support_dimension(S, j):
    dims = [len(s) - 1 for s in S.carrier if S.stalk_betti(s)[j]]
    return max(dims) if dims else NEG_INF


def cosupport_dimension(S, j, restrict_to=None):
    cells = S.carrier if restrict_to is None else [s for s in restrict_to if s in S.carrier]
    dims = [len(s) - 1 for s in cells if costalk_betti(S, s)[j]]
    return max(dims) if dims else NEG_INF


def clc_check(S, strat):
    """Restrictions between faces in the same stratum are quasi-isomorphisms.

    Covering pairs suffice: between two cells of one stratum every
    intermediate face has the same depth, so isomorphisms compose.
    Returns {"pass": bool, "witness": None or {...}}.
    """
    cx = S.complex
    for t in S.ordered():
        for v in range(len(t)):
            s = t[:v] + t[v + 1:]
            if not s or s not in S.carrier:
                continue
            if strat.depth[s] != strat.depth[t]:
                continue
            f = S.chain_map(s, t)
            c = cohomology(cone(f), check=False)
            if c.nonzero():
                lo = min(f.source.lo, f.target.lo)
                hi = max(f.source.hi, f.target.hi)
                deg = next((i for i in range(lo, hi + 1) if not is_iso_on(f, i)), c.bottom() + 1)
                return {"pass": False,
                        "witness": {"simplex": cx.name(s), "coface": cx.name(t), "degree": deg}}
    return {"pass": True, "witness": None}


# ---------------------------------------------------------------- debug dump

def dump(S):
    """Deterministic JSON-ready description of stalks and restriction maps."""
    cx = S.complex
    stalks = []
    for s in S.ordered():
        C = S.stalks[s]
        stalks.append({"simplex": cx.name(s), "lo": C.lo, "dims": list(C.dims)})
    maps = []
    for (s, t) in S.pairs():
        for q in sorted(S.rho[(s, t)]):
            m = S.rho[(s, t)][q]
            ent = sorted((i, j, S.field.to_json(x)) for i, j, x in m.entries())
            if ent:
                maps.append({"from": cx.name(s), "to": cx.name(t), "degree": q,
                             "shape": [m.nrows, m.ncols], "entries": [list(e) for e in ent]})
    return {"field": S.field.name, "stalks": stalks, "restrictions": maps}


def dumps(S):
    return json.dumps(dump(S), sort_keys=True, separators=(",", ":"))

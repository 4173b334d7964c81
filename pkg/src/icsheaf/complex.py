"""Finite simplicial complexes and their stratifications.

Simplices are sorted tuples of vertex indices; the vertex list fixes the
global order used for names ("a,b,c") and incidence signs.  A stratification
is a depth map: depth(s) = k means s lies in the codimension-k stratum
S_{n-k} = X^{n-k} - X^{n-k-1}, so depth 0 is the open top stratum and the
skeleton X^{n-k} is the set of simplices of depth >= k.
"""

from itertools import combinations

from .errors import (
    DensityFailure, DimensionExceeded, DuplicateSimplex, EmptyComplex, NotClosed,
    SimplexNotFound, TopStratumNotDense, UnknownVertex, ValidationError,
)


def _sort_key(s):
    return (len(s), s)


def _all_faces(s):
    for r in range(1, len(s) + 1):
        yield from combinations(s, r)


class SimplicialComplex:
    def __init__(self, vertices, simplices, allow_empty=False):
        self.vertices = tuple(str(v) for v in vertices)
        simplices = {tuple(sorted(s)) for s in simplices}
        closed = set()
        for s in simplices:
            closed.update(_all_faces(s))
        if not closed and not allow_empty:
            raise EmptyComplex()
        self.simplices = tuple(sorted(closed, key=_sort_key))
        self.index = {s: i for i, s in enumerate(self.simplices)}
        self.dim = max((len(s) - 1 for s in self.simplices), default=-1)
        star = {s: set() for s in self.simplices}
        for t in self.simplices:
            for s in _all_faces(t):
                star[s].add(t)
        self._star = {s: frozenset(v) for s, v in star.items()}

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return s in self.index

    def __iter__(self):
        return iter(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, simplices={len(self)})"

    def name(self, s):
        return ",".join(self.vertices[v] for v in s)

    def parse_key(self, key):
        """Simplex from a comma-joined list of vertex names."""
        if isinstance(key, str):
            names = [x.strip() for x in key.split(",") if x.strip()]
        else:
            names = [str(x) for x in key]
        lookup = {v: i for i, v in enumerate(self.vertices)}
        try:
            s = tuple(sorted(lookup[x] for x in names))
        except KeyError as exc:
            raise SimplexNotFound(key) from exc
        if s not in self.index:
            raise SimplexNotFound(key)
        return s

    def _require(self, s):
        if s not in self.index:
            raise SimplexNotFound(s)

    def faces(self, s):
        """All faces of s, including s."""
        self._require(s)
        return sorted(_all_faces(s), key=_sort_key)

    def maximal_simplices(self):
        return [s for s in self.simplices if len(self._star[s]) == 1]

    def count_by_dim(self):
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def euler_characteristic(self):
        return sum((-1) ** i * c for i, c in enumerate(self.count_by_dim()))


def open_star(c, s):
    """All cofaces of s, including s."""
    c._require(s)
    return c._star[s]


def link(c, s):
    c._require(s)
    ss = set(s)
    out = []
    for t in c._star[s]:
        rest = tuple(v for v in t if v not in ss)
        if rest:
            out.append(rest)
    return SimplicialComplex(c.vertices, out, allow_empty=True)


def closure(simplices):
    out = set()
    for s in simplices:
        out.update(_all_faces(s))
    return out


def subcomplex(c, simplices):
    """A closed set of simplices of c, given by any generating set."""
    gens = []
    for s in simplices:
        s = s if isinstance(s, tuple) and all(isinstance(v, int) for v in s) else c.parse_key(s)
        c._require(s)
        gens.append(s)
    return frozenset(closure(gens))


def load_complex(desc):
    """Build from {"vertices": [...], "maximal_simplices": [[...], ...]}."""
    vertices = [str(v) for v in desc.get("vertices", [])]
    if len(set(vertices)) != len(vertices):
        raise ValidationError("duplicate vertex names")
    lookup = {v: i for i, v in enumerate(vertices)}
    seen = set()
    maximal = []
    for raw in desc.get("maximal_simplices", []):
        names = [str(v) for v in raw]
        for v in names:
            if v not in lookup:
                raise UnknownVertex(v)
        s = tuple(sorted(lookup[v] for v in names))
        if len(set(s)) != len(s) or s in seen:
            raise DuplicateSimplex(list(raw))
        seen.add(s)
        maximal.append(s)
    if not maximal:
        raise EmptyComplex()
    return SimplicialComplex(vertices, maximal)


class Stratification:
    def __init__(self, complex, depth=None):
        self.complex = complex
        self.n = complex.dim
        depth = dict(depth or {})
        for s in depth:
            complex._require(s)
        self.depth = {s: int(depth.get(s, 0)) for s in complex.simplices}

    def __repr__(self):
        return f"Stratification(n={self.n}, depths={self.depth_profile()})"

    @classmethod
    def from_keys(cls, complex, keyed):
        """Depth map keyed by comma-joined vertex names; missing keys are depth 0."""
        depth = {}
        for key, k in (keyed or {}).items():
            depth[complex.parse_key(key)] = int(k)
        return cls(complex, depth)

    def to_keys(self):
        return {self.complex.name(s): k for s, k in self.depth.items() if k}

    def depth_profile(self):
        prof = {}
        for k in self.depth.values():
            prof[k] = prof.get(k, 0) + 1
        return dict(sorted(prof.items()))

    def skeleton(self, j):
        """X^j as a set of simplices."""
        k = self.n - j
        return frozenset(s for s, d in self.depth.items() if d >= k)

    def stratum(self, k):
        """Simplices of the codimension-k stratum S_{n-k}."""
        return frozenset(s for s, d in self.depth.items() if d == k)

    def U(self, k):
        """U_k = X - X^{n-k}: simplices of depth < k (k may be +-inf)."""
        return frozenset(s for s, d in self.depth.items() if d < k)

    @property
    def sigma(self):
        return self.skeleton(self.n - 1)

    def is_trivial(self):
        return not any(self.depth.values())

    def codims(self):
        return sorted({d for d in self.depth.values() if d > 0})


def validate_stratification(s):
    c, n = s.complex, s.n
    for sim in c.simplices:
        k = s.depth[sim]
        if k < 0 or k > n:
            raise ValidationError(f"depth {k} of {c.name(sim)} outside 0..{n}")
    for sim in c.simplices:
        k = s.depth[sim]
        for f in _all_faces(sim):
            if s.depth[f] < k:
                raise NotClosed(n - k, c.name(f))
    for sim in c.simplices:
        k = s.depth[sim]
        if len(sim) - 1 > n - k:
            raise DimensionExceeded(n - k, c.name(sim))
    top = [t for t in c.simplices if len(t) - 1 == n and s.depth[t] == 0]
    covered = closure(top)
    for sim in c.simplices:
        if sim not in covered:
            raise TopStratumNotDense(c.name(sim))
    return True


def pseudoboundary(s):
    return frozenset(closure(s.stratum(1)))


def subject_to(s, sigma):
    return s.skeleton(s.n - 1) == frozenset(sigma)


def default_stratification(c, sigma):
    """Finest filtration with X^{n-1} = sigma: depth n - dim on sigma."""
    n = c.dim
    sigma = frozenset(closure(sigma))
    for sim in sigma:
        c._require(sim)
        if len(sim) - 1 > n - 1:
            raise DimensionExceeded(n - 1, c.name(sim))
    top = [t for t in c.simplices if len(t) - 1 == n and t not in sigma]
    covered = closure(top)
    for sim in c.simplices:
        if sim not in covered:
            raise DensityFailure(c.name(sim))
    depth = {sim: n - (len(sim) - 1) for sim in sigma}
    return Stratification(c, depth)


def stratum_components(s, k):
    """Connected components of S_{n-k}, glued along face relations inside it."""
    cells = s.stratum(k)
    parent = {x: x for x in cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in cells:
        for f in _all_faces(t):
            if f != t and f in parent:
                a, b = find(f), find(t)
                if a != b:
                    parent[a] = b
    groups = {}
    for x in cells:
        groups.setdefault(find(x), []).append(x)
    comps = [sorted(g, key=_sort_key) for g in groups.values()]
    return sorted(comps, key=lambda g: _sort_key(g[0]))


def sphere_betti(d):
    """Betti numbers of S^d (d = -1 is the empty sphere)."""
    if d < 0:
        return []
    if d == 0:
        return [2]
    return [1] + [0] * (d - 1) + [1]


def stratum_sanity_check(s, field=None):
    """Homology-level manifold check of every stratum component.

    Returns a list of entries, one per component, with status "pass" or
    "warn".  Nothing here raises: a topological stratification cannot be
    recognised algorithmically, so problems are reported as warnings.
    """
    from .linalg import simplicial_betti

    c, n = s.complex, s.n
    report = []
    for k in range(0, n + 1):
        comps = stratum_components(s, k)
        if not comps:
            continue
        clos = closure(s.stratum(k))
        clos_complex = SimplicialComplex(c.vertices, clos, allow_empty=True)
        target_dim = n - k
        for comp in comps:
            warnings = []
            members = set(comp)
            tops = [t for t in comp if len(t) - 1 == target_dim]
            pure_cover = closure(tops) & members
            if pure_cover != members:
                bad = sorted(members - pure_cover, key=_sort_key)[0]
                warnings.append(f"not pure of dimension {target_dim}: {c.name(bad)}")
            for sim in comp:
                lk = link(clos_complex, sim)
                want = sphere_betti(target_dim - (len(sim) - 1) - 1)
                got = simplicial_betti(lk, field) if len(lk) else []
                got = _trim(got)
                if got != want:
                    warnings.append(
                        f"link of {c.name(sim)} has Betti {got}, expected {want}")
                    break
            report.append({
                "codim": k,
                "stratum_dim": target_dim,
                "size": len(comp),
                "first": c.name(comp[0]),
                "status": "warn" if warnings else "pass",
                "warnings": warnings,
            })
    return report


def _trim(b):
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return b

"""Local systems, the Deligne recursion and intersection cohomology."""

from dataclasses import dataclass, field as dc_field

from .complex import Stratification, closure
from .errors import NotInvertible, ValidationError
from .linalg import QQ, CochainComplex, SparseMatrix, cohomology, rank as matrix_rank
from .perversity import ExtendedPerversity, Perversity, extend, parse_perversity
from .sheaf import (
    CellSheaf, _key, check_open, constant_sheaf, from_data, hypercohomology, pushforward,
    reduce as reduce_sheaf, sections, truncate,
)


class LocalSystem:
    """Rank-r coefficient system on an open carrier (normally X - Sigma).

    ``maps`` holds invertible r x r matrices for some face pairs s < t;
    missing covering pairs default to the identity and the remaining pairs
    are composed.
    """

    def __init__(self, complex, carrier, rank=1, maps=None, field=QQ):
        self.complex = complex
        self.carrier = frozenset(carrier)
        self.rank = int(rank)
        self.field = field
        self.maps = dict(maps or {})
        if self.rank < 0:
            raise ValidationError("rank must be non-negative")
        check_open(complex, frozenset(complex.simplices), self.carrier)
        for (s, t), m in self.maps.items():
            if s not in self.carrier or t not in self.carrier or not set(s) < set(t):
                raise ValidationError(
                    f"coefficient map on {complex.name(s)}<{complex.name(t)} is not a face pair of the carrier")
            if (m.nrows, m.ncols) != (self.rank, self.rank):
                raise ValidationError(f"coefficient map on {complex.name(s)}<{complex.name(t)} is not {self.rank}x{self.rank}")
            if matrix_rank(m) != self.rank:
                raise NotInvertible(f"{complex.name(s)}<{complex.name(t)}")
        self._sheaf = None

    def is_constant(self):
        return not self.maps

    def sheaf(self):
        if self._sheaf is None:
            self._sheaf = self._build()
        return self._sheaf

    def _build(self):
        if self.is_constant():
            return constant_sheaf(self.complex, self.carrier, self.rank, self.field)
        r = self.rank
        stalks = {s: CochainComplex.concentrated(self.field, r, 0) for s in self.carrier}
        ident = SparseMatrix.identity(self.field, r)
        rho = {}
        for t in self.carrier:
            for v in range(len(t)):
                s = t[:v] + t[v + 1:]
                if s and s in self.carrier:
                    rho[(s, t)] = {0: self.maps.get((s, t), ident)} if r else {}
        for (s, t), m in self.maps.items():
            rho[(s, t)] = {0: m}
        S = from_data(self.complex, self.field, stalks, rho)
        S.validate()
        return S

    @classmethod
    def from_json(cls, complex, carrier, desc, field=QQ):
        """{"rank": r, "edges": {"a,b<a,b,c": [[...], ...]}}."""
        r = int(desc.get("rank", 1))
        maps = {}
        for key, mat in (desc.get("edges") or {}).items():
            if "<" not in key:
                raise ValidationError(f"bad coefficient key {key!r}; expected 's<t'")
            a, b = key.split("<", 1)
            s, t = complex.parse_key(a), complex.parse_key(b)
            maps[(s, t)] = SparseMatrix.from_dense(field, mat)
        return cls(complex, carrier, r, maps, field)

    def to_json(self):
        cx = self.complex
        edges = {}
        for (s, t), m in sorted(self.maps.items(), key=lambda kv: (_key(kv[0][0]), _key(kv[0][1]))):
            edges[f"{cx.name(s)}<{cx.name(t)}"] = [[self.field.to_json(x) for x in row] for row in m.to_dense()]
        return {"rank": self.rank, "edges": edges}

    def with_carrier(self, carrier):
        """Same coefficient data restricted to a smaller open set."""
        carrier = frozenset(carrier)
        maps = {k: m for k, m in self.maps.items() if k[0] in carrier and k[1] in carrier}
        return LocalSystem(self.complex, carrier, self.rank, maps, self.field)


def constant_system(complex, carrier, rank=1, field=QQ):
    return LocalSystem(complex, carrier, rank, None, field)


def _as_extended(p, n, fill=False):
    if isinstance(p, ExtendedPerversity):
        return p
    if not isinstance(p, Perversity):
        p = parse_perversity(p, n)
    return extend(p, n, fill=fill)


def _coefficients(strat, G, field):
    U1 = strat.U(1)
    if G is None:
        return constant_system(strat.complex, U1, 1, field)
    if isinstance(G, int):
        return constant_system(strat.complex, U1, G, field)
    if G.carrier != U1:
        if not U1 <= G.carrier:
            raise ValidationError("coefficient system is not defined on all of X - Sigma")
        G = G.with_carrier(U1)
    return G


@dataclass
class DeligneBuild:
    strat: Stratification
    perversity: ExtendedPerversity
    system: LocalSystem
    stages: dict = dc_field(default_factory=dict)
    final: CellSheaf = None
    steps: list = dc_field(default_factory=list)

    def stage(self, k):
        """The sheaf P_k on U_k (1 <= k <= n+1), if retained."""
        return self.stages[k]


def build_deligne(strat, p, G=None, field=QQ, reduce=False, retain_stages=True, fill=False):
    """P_1 = G on U_1 and P_{k+1} = tau_{<=p(k)} Ri_{k*} P_k.

    Stage k pushes forward only when the stratum S_{n-k} is nonempty
    (otherwise i_k is the identity).  The truncation is still applied then,
    except at k = 1: without a codimension-one stratum p(1) plays no role.
    A trivial stratification gives P = G.
    """
    n = strat.n
    p = _as_extended(p, n, fill)
    G = _coefficients(strat, G, field)
    P = G.sheaf()
    build = DeligneBuild(strat, p, G)
    if retain_stages:
        build.stages[1] = P
    if strat.is_trivial():
        for k in range(1, n + 1):
            if retain_stages:
                build.stages[k + 1] = P
        build.final = P
        build.steps.append("trivial stratification: P = G")
        return build
    for k in range(1, n + 1):
        if strat.stratum(k):
            P = truncate(pushforward(P, strat.U(k + 1)), p(k))
            build.steps.append(f"k={k}: pushforward to U_{k + 1}, truncate at {p(k)}")
        elif k >= 2:
            P = truncate(P, p(k))
            build.steps.append(f"k={k}: empty stratum, truncate at {p(k)}")
        else:
            build.steps.append("k=1: empty stratum, skipped")
        if reduce:
            P = reduce_sheaf(P)
        if retain_stages:
            build.stages[k + 1] = P
    build.final = P
    return build


def full_pushforward(complex, sigma, G=None, field=QQ):
    """Ri_* G for i: X - Sigma -> X, with no truncation."""
    U = frozenset(s for s in complex.simplices if s not in frozenset(sigma))
    if G is None:
        G = constant_system(complex, U, 1, field)
    elif isinstance(G, int):
        G = constant_system(complex, U, G, field)
    elif G.carrier != U:
        G = G.with_carrier(U)
    return pushforward(G.sheaf(), complex.simplices)


def intersection_cohomology(strat, p, G=None, field=QQ, reduce=False, fill=False):
    build = build_deligne(strat, p, G, field, reduce=reduce, retain_stages=False, fill=fill)
    return hypercohomology(build.final)


def complement_cohomology(complex, sigma, G=None, field=QQ):
    """H^*(X - Sigma; G) from the sections of G over the open complement."""
    U = frozenset(s for s in complex.simplices if s not in frozenset(closure(sigma)))
    if G is None:
        G = constant_system(complex, U, 1, field)
    elif isinstance(G, int):
        G = constant_system(complex, U, G, field)
    elif G.carrier != U:
        G = G.with_carrier(U)
    return cohomology(sections(G.sheaf(), U, check=False), check=False)

"""Checkers for the axiom systems characterizing the Deligne sheaf.

Point conditions are evaluated once per simplex: every sheaf complex here is
constant on open cells, so all points of a cell see the same stalk and
costalk.  Each clause produces a list of instances (simplex, degree,
observed, bound); the clause passes when every instance does, and its
witness is the first failing instance or, on success, the tightest one.
"""

from dataclasses import dataclass, field as dc_field

from .complex import subject_to, validate_stratification
from .deligne import _as_extended, constant_system, full_pushforward
from .errors import NoCandidates, ValidationError
from .infinity import INF, NEG_INF, is_infinite, to_json
from .linalg import cohomology, induced_rank
from .perversity import codim_threshold, dual, inverse
from .sheaf import (
    attachment, clc_check, costalk_betti, cosupport_dimension, hypercohomology, restrict,
    support_dimension,
)

SYSTEMS = ("AX1", "AX1'", "AX1''c", "AX2", "AX2'", "AX2''", "AX3", "AX3''")


@dataclass
class Clause:
    id: str
    relation: str
    passed: object = True
    witness: dict = None
    note: str = None

    def to_json(self):
        out = {"id": self.id, "pass": self.passed, "relation": self.relation,
               "witness": self.witness}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AxiomReport:
    system: str
    clauses: list = dc_field(default_factory=list)
    notes: dict = dc_field(default_factory=dict)

    @property
    def passed(self):
        vals = [c.passed for c in self.clauses]
        if any(v is None for v in vals):
            return None
        return all(vals)

    def clause(self, cid):
        return next(c for c in self.clauses if c.id == cid)

    def to_json(self):
        return {"system": self.system, "pass": self.passed,
                "clauses": [c.to_json() for c in self.clauses],
                "notes": {k: to_json(v) for k, v in sorted(self.notes.items())}}


def _ok(observed, bound, rel):
    if rel == "<=":
        return observed <= bound
    if rel == ">=":
        return observed >= bound
    return observed == bound


def _slack(observed, bound, rel):
    if is_infinite(observed) or is_infinite(bound):
        return float("inf")
    if rel == "<=":
        return bound - observed
    if rel == ">=":
        return observed - bound
    return 0


def _witness(name, degree, observed, bound):
    return {"simplex": name, "degree": degree, "observed": to_json(observed), "bound": to_json(bound)}


def _clause(cid, rel, instances):
    """instances: iterable of (name, degree, observed, bound)."""
    best, best_slack = None, None
    for name, degree, observed, bound in instances:
        if not _ok(observed, bound, rel):
            return Clause(cid, rel, False, _witness(name, degree, observed, bound))
        s = _slack(observed, bound, rel)
        if best is None or s < best_slack:
            best, best_slack = (name, degree, observed, bound), s
    return Clause(cid, rel, True, _witness(*best) if best else None)


def _merge(cid, parts):
    """One clause from several sub-checks: first failure wins."""
    for p in parts:
        if p.passed is False:
            return Clause(cid, p.relation, False, p.witness, p.note)
    first = next((p for p in parts if p.witness), parts[0])
    return Clause(cid, first.relation, True, first.witness, first.note)


# ---------------------------------------------------------------- context

class _Context:
    def __init__(self, S, strat, p, G=None):
        self.S = S
        self.strat = strat
        self.cx = strat.complex
        self.n = strat.n
        self.p = _as_extended(p, self.n)
        self.q = dual(self.p)
        if G is None:
            G = constant_system(self.cx, strat.U(1), 1, S.field)
        elif isinstance(G, int):
            G = constant_system(self.cx, strat.U(1), G, S.field)
        self.G = G
        self.cells = sorted(self.cx.simplices, key=lambda s: (len(s), s))

    def name(self, s):
        return self.cx.name(s)

    def singular(self):
        return [s for s in self.cells if self.strat.depth[s] >= 1]


def _bounded_nonneg(ctx, cid):
    """Stalk cohomology vanishes in negative degrees (boundedness is automatic)."""
    inst = []
    for s in ctx.cells:
        b = ctx.S.stalk_betti(s).bottom()
        inst.append((ctx.name(s), b, INF if b is None else b, 0))
    return _clause(cid, ">=", inst)


def _matches_coefficients(ctx, cid, carrier=None):
    """S restricted to X - Sigma agrees with G: stalks G[0] and equal sections."""
    S, G = ctx.S, ctx.G
    U = G.carrier if carrier is None else carrier
    r = G.rank
    inst = []
    for s in sorted(U, key=lambda s: (len(s), s)):
        b = S.stalk_betti(s)
        degs = sorted(set(b.degrees()) | {0})
        for d in degs:
            inst.append((ctx.name(s), d, b[d], r if d == 0 else 0))
    local = _clause(cid, "==", inst)
    if local.passed is False:
        return local
    mine = hypercohomology(restrict(S, U))
    theirs = hypercohomology((G if G.carrier == U else G.with_carrier(U)).sheaf())
    if mine != theirs:
        d = min(k for k in set(mine.degrees()) | set(theirs.degrees()) if mine[k] != theirs[k])
        return Clause(cid, "==", False, _witness(None, d, mine[d], theirs[d]),
                      "sections over X - Sigma differ from those of the coefficient system")
    return local


def _clc(ctx, cid, strat=None):
    res = clc_check(ctx.S, strat or ctx.strat)
    if res["pass"]:
        return Clause(cid, "iso", True, None)
    w = res["witness"]
    return Clause(cid, "iso", False,
                  {"simplex": w["simplex"], "degree": w["degree"], "observed": "not iso",
                   "bound": "iso", "coface": w["coface"]})


def _stalk_vanishing(ctx, cid):
    inst = []
    for s in ctx.singular():
        k = ctx.strat.depth[s]
        top = ctx.S.stalk_betti(s).top()
        inst.append((ctx.name(s), top, top if top is not None else NEG_INF, ctx.p(k)))
    return _clause(cid, "<=", inst)


def _attachment(ctx, cid):
    S, strat = ctx.S, ctx.strat
    last = None
    for s in ctx.singular():
        k = strat.depth[s]
        Uk = strat.U(k)
        W = [t for t in S.carrier if t in Uk and set(s) < set(t)]
        f = attachment(S, s, W)
        hs = cohomology(f.source, check=False)
        ht = cohomology(f.target, check=False)
        lo = min(f.source.lo, f.target.lo)
        top = ctx.p(k)
        for i in range(lo, top + 1):
            a, b = hs[i], ht[i]
            if a != b or (a and induced_rank(f, i) != a):
                return Clause(cid, "iso", False, _witness(ctx.name(s), i, a, b))
        last = _witness(ctx.name(s), top, hs[top], ht[top])
    return Clause(cid, "iso", True, last)


def _costalk_vanishing(ctx, cid, bound_fn):
    inst = []
    for s in ctx.singular():
        k = ctx.strat.depth[s]
        bottom = costalk_betti(ctx.S, s).bottom()
        inst.append((ctx.name(s), bottom, bottom if bottom is not None else INF, bound_fn(k)))
    return _clause(cid, ">=", inst)


def _support_degrees(ctx):
    degs = set()
    for s in ctx.cells:
        degs.update(ctx.S.stalk_betti(s).degrees())
    return sorted(degs)


def _costalk_degrees(ctx):
    degs = set()
    for s in ctx.cells:
        degs.update(costalk_betti(ctx.S, s).degrees())
    return sorted(degs)


def _argmax_cell(ctx, cells, pred):
    best = None
    for s in cells:
        if pred(s) and (best is None or len(s) > len(best)):
            best = s
    return ctx.name(best) if best is not None else None


def _support_bound(ctx, cid, lower=0):
    """dim supp H^j <= n - p^{-1}(j) for j > lower."""
    inst = []
    for j in _support_degrees(ctx):
        if not j > lower:
            continue
        obs = support_dimension(ctx.S, j)
        who = _argmax_cell(ctx, ctx.cells, lambda s: ctx.S.stalk_betti(s)[j])
        inst.append((who, j, obs, ctx.n - inverse(ctx.p, j)))
    return _clause(cid, "<=", inst)


def _cosupport_bound(ctx, cid, sigma=None, top_clause=False):
    """dim{x : H^j(f^!) != 0} <= n - q^{-1}(n-j) for j < n; optionally the
    degree-n condition restricted to the singular set."""
    n = ctx.n
    inst = []
    for j in _costalk_degrees(ctx):
        if j >= n:
            continue
        obs = cosupport_dimension(ctx.S, j)
        who = _argmax_cell(ctx, ctx.cells, lambda s: costalk_betti(ctx.S, s)[j])
        inst.append((who, j, obs, n - inverse(ctx.q, n - j)))
    main = _clause(cid, "<=", inst)
    if not top_clause or main.passed is False:
        return main
    cells = [s for s in ctx.cells if s in sigma]
    obs = cosupport_dimension(ctx.S, n, cells)
    who = _argmax_cell(ctx, cells, lambda s: costalk_betti(ctx.S, s)[n])
    extra = _clause(cid, "<=", [(who, n, obs, n - codim_threshold(ctx.p))])
    return _merge(cid, [extra, main]) if extra.passed is False else _merge(cid, [main, extra])


def _pushforward_match(ctx, cid, strat, c):
    """S and Ri_* G on U_c: equal stalk cohomology and equal sections.

    Stalks alone cannot see monodromy, so the sections over U_c and the
    coefficient match on X - Sigma are compared too.
    """
    sigma = strat.sigma
    R = full_pushforward(ctx.cx, sigma, ctx.G.with_carrier(frozenset(ctx.cx.simplices) - sigma), ctx.S.field)
    Uc = strat.U(c)
    inst = []
    for s in sorted(Uc, key=lambda s: (len(s), s)):
        a, b = ctx.S.stalk_betti(s), R.stalk_betti(s)
        for d in sorted(set(a.degrees()) | set(b.degrees())):
            inst.append((ctx.name(s), d, a[d], b[d]))
    local = _clause(cid, "==", inst)
    if local.passed is False:
        return local
    coeffs = _matches_coefficients(ctx, cid, frozenset(ctx.cx.simplices) - sigma)
    if coeffs.passed is False:
        return coeffs
    if Uc:
        mine, theirs = hypercohomology(restrict(ctx.S, Uc)), hypercohomology(restrict(R, Uc))
        if mine != theirs:
            d = min(k for k in set(mine.degrees()) | set(theirs.degrees()) if mine[k] != theirs[k])
            return Clause(cid, "==", False, _witness(None, d, mine[d], theirs[d]),
                          "sections over U_c differ from those of the pushforward")
    return local


# ---------------------------------------------------------------- systems

def check_AX1(S, strat, p, G=None):
    ctx = _Context(S, strat, p, G)
    rep = AxiomReport("AX1")
    rep.clauses.append(_merge("1a", [_bounded_nonneg(ctx, "1a"), _matches_coefficients(ctx, "1a")]))
    rep.clauses.append(_stalk_vanishing(ctx, "1b"))
    rep.clauses.append(_attachment(ctx, "1c"))
    return rep


def check_AX1prime(S, strat, p, G=None):
    ctx = _Context(S, strat, p, G)
    rep = AxiomReport("AX1'")
    rep.clauses.append(_merge("1'a", [_bounded_nonneg(ctx, "1'a"), _matches_coefficients(ctx, "1'a"),
                                      _clc(ctx, "1'a")]))
    rep.clauses.append(_stalk_vanishing(ctx, "1'b"))
    rep.clauses.append(_costalk_vanishing(ctx, "1'c", lambda k: ctx.n - ctx.q(k)))
    return rep


def check_1doubleprime_c(S, strat, p, G=None):
    """Via H^j(f_x^!) = H^{j-n+k}((j_k^! S)_x): vanishing for j <= p(k) + 1 + n - k."""
    ctx = _Context(S, strat, p, G)
    rep = AxiomReport("AX1''c")
    if not clc_check(S, strat)["pass"]:
        rep.clauses.append(Clause("1''c", ">=", None, None, "not applicable: sheaf is not clc"))
        rep.notes["applicable"] = False
        return rep
    rep.notes["applicable"] = True
    rep.clauses.append(_costalk_vanishing(ctx, "1''c", lambda k: ctx.p(k) + 2 + ctx.n - k))
    return rep


def check_AX2(S, strat, p, G=None):
    ctx = _Context(S, strat, p, G)
    rep = AxiomReport("AX2")
    rep.clauses.append(_merge("2a", [_bounded_nonneg(ctx, "2a"), _matches_coefficients(ctx, "2a"),
                                     _clc(ctx, "2a")]))
    rep.clauses.append(_support_bound(ctx, "2b"))
    rep.clauses.append(_cosupport_bound(ctx, "2c"))
    return rep


def check_AX2prime(S, strat, p, G=None):
    ctx = _Context(S, strat, p, G)
    rep = AxiomReport("AX2'")
    rep.clauses.append(_merge("2'a", [_bounded_nonneg(ctx, "2'a"), _matches_coefficients(ctx, "2'a"),
                                      _clc(ctx, "2'a")]))
    rep.clauses.append(_support_bound(ctx, "2'b"))
    rep.clauses.append(_cosupport_bound(ctx, "2'c", strat.sigma, top_clause=True))
    rep.notes["c"] = codim_threshold(ctx.p)
    return rep


def check_AX3(S, strat, p, G=None):
    ctx = _Context(S, strat, p, G)
    c = codim_threshold(ctx.p)
    rep = AxiomReport("AX3", notes={"c": c})
    rep.clauses.append(_merge("3a", [_bounded_nonneg(ctx, "3a"), _clc(ctx, "3a"),
                                     _pushforward_match(ctx, "3a", strat, c)]))
    rep.clauses.append(_support_bound(ctx, "3b", lower=c - 2))
    rep.clauses.append(_cosupport_bound(ctx, "3c"))
    return rep


def _check_candidates(sigma, candidates):
    if not candidates:
        raise NoCandidates()
    for cand in candidates:
        validate_stratification(cand)
        if not subject_to(cand, sigma):
            raise ValidationError("candidate stratification is not subject to the given singular set")


def check_AX2doubleprime(S, sigma, p, G=None, candidates=()):
    sigma = frozenset(sigma)
    _check_candidates(sigma, candidates)
    ctx = _Context(S, candidates[0], p, G)
    rep = AxiomReport("AX2''")
    clc_ok = [i for i, cand in enumerate(candidates) if clc_check(S, cand)["pass"]]
    clc_clause = Clause("2''a", "exists", bool(clc_ok), None,
                        f"clc for candidate {clc_ok[0]}" if clc_ok else "clc for no candidate")
    rep.clauses.append(_merge("2''a", [_bounded_nonneg(ctx, "2''a"), _matches_coefficients(ctx, "2''a"),
                                       clc_clause]))
    rep.clauses.append(_support_bound(ctx, "2''b"))
    rep.clauses.append(_cosupport_bound(ctx, "2''c", sigma, top_clause=True))
    rep.notes["witness_candidate"] = clc_ok[0] if clc_ok else -1
    return rep


def check_AX3doubleprime(S, sigma, p, G=None, candidates=()):
    sigma = frozenset(sigma)
    _check_candidates(sigma, candidates)
    ctx = _Context(S, candidates[0], p, G)
    c = codim_threshold(ctx.p)
    rep = AxiomReport("AX3''", notes={"c": c})
    good = None
    for i, cand in enumerate(candidates):
        if clc_check(S, cand)["pass"] and _pushforward_match(ctx, "3''a", cand, c).passed:
            good = i
            break
    exist = Clause("3''a", "exists", good is not None, None,
                   f"candidate {good}" if good is not None else "no candidate works")
    rep.clauses.append(_merge("3''a", [_bounded_nonneg(ctx, "3''a"), exist]))
    rep.clauses.append(_support_bound(ctx, "3''b", lower=c - 2))
    rep.clauses.append(_cosupport_bound(ctx, "3''c"))
    rep.notes["witness_candidate"] = good if good is not None else -1
    return rep


def check(system, S, strat, p, G=None, candidates=None):
    """Dispatch by system name; the double-primed systems take candidates."""
    if system == "AX1":
        return check_AX1(S, strat, p, G)
    if system == "AX1'":
        return check_AX1prime(S, strat, p, G)
    if system == "AX1''c":
        return check_1doubleprime_c(S, strat, p, G)
    if system == "AX2":
        return check_AX2(S, strat, p, G)
    if system == "AX2'":
        return check_AX2prime(S, strat, p, G)
    if system == "AX3":
        return check_AX3(S, strat, p, G)
    cands = list(candidates) if candidates else [strat]
    if system == "AX2''":
        return check_AX2doubleprime(S, strat.sigma, p, G, cands)
    if system == "AX3''":
        return check_AX3doubleprime(S, strat.sigma, p, G, cands)
    raise ValidationError(f"unknown axiom system {system!r}; choose from {SYSTEMS}")

"""Worked examples with known answers, run end to end.

Each entry records the expected value, the computed value and whether they
agree.  Expected values are fixed by hand (sphere and torus cohomology) or
by an independent route, such as simplicial cohomology of a link.
"""

import time

from . import examples as ex
from .axioms import check_AX2, check_AX2prime
from .complex import link, validate_stratification
from .deligne import build_deligne, complement_cohomology, intersection_cohomology
from .linalg import QQ, simplicial_betti
from .sheaf import constant_sheaf, costalk_betti, hypercohomology


def _betti_list(b, n):
    return b.as_list(0, n)


def _entry(name, expected, computed, seconds):
    return {"name": name, "expected": expected, "computed": computed,
            "match": expected == computed, "seconds": round(seconds, 3)}


def run(field=QQ, reduce=False, include_slow=True):
    out = []

    def timed(name, expected, fn):
        t = time.perf_counter()
        computed = fn()
        out.append(_entry(name, expected, computed, time.perf_counter() - t))

    s2 = ex.sphere()
    x = ex.vertex(s2, "0")
    pt = ex.point_strat(s2, "0")

    timed("S2 with a point stratum, p(k)=k-1: IH", [1, 0, 0],
          lambda: _betti_list(intersection_cohomology(pt, "ultra", field=field, reduce=reduce), 2))
    timed("S2 trivially stratified: IH", [1, 0, 1],
          lambda: _betti_list(intersection_cohomology(ex.point_strat(s2, "0", 0), "zero", field=field), 2))
    for label, cx in (("octahedron", ex.octahedron()), ("tetrahedron boundary", s2)):
        timed(f"S2 with equator as pseudoboundary ({label}), p=0: IH", [2, 0, 0],
              lambda cx=cx: _betti_list(intersection_cohomology(ex.equator_strat(cx), "zero", field=field,
                                                                 reduce=reduce), 2))

    P = build_deligne(pt, "ultra", field=field, reduce=reduce).final
    C = constant_sheaf(s2, field=field)
    timed("Deligne stalk at the point", [1, 1, 0], lambda: P.stalk_betti(x).as_list(0, 2))
    timed("Deligne costalk at the point, degrees 0..2", [0, 0, 0],
          lambda: costalk_betti(P, x).as_list(0, 2))
    timed("constant sheaf: H^2 costalk at every simplex", [1] * len(s2),
          lambda: [costalk_betti(C, s)[2] for s in sorted(s2.simplices, key=lambda s: (len(s), s))])

    def separation():
        r = {"AX2 Deligne": check_AX2(P, pt, "ultra").passed,
             "AX2 constant": check_AX2(C, pt, "ultra").passed,
             "AX2' Deligne": check_AX2prime(P, pt, "ultra").passed}
        bad = check_AX2prime(C, pt, "ultra").clause("2'c")
        r["AX2' constant 2'c"] = [bad.passed, bad.witness]
        return r

    timed("axiom separation on S2 with a point", {
        "AX2 Deligne": True, "AX2 constant": True, "AX2' Deligne": True,
        "AX2' constant 2'c": [False, {"simplex": "0", "degree": 2, "observed": 0, "bound": "-inf"}]},
        separation)

    timed("subperversity [-1,-1] on S2 with a point: IH", [0, 0, 0],
          lambda: _betti_list(intersection_cohomology(pt, [-1, -1], field=field), 2))

    oc = ex.octahedron()
    poles = ex.point_strat(oc, "N")
    for label, strat, p in (("point", pt, "ultra"), ("pole", poles, [0, 1]),
                            ("equator", ex.equator_strat(oc), [0, 1])):
        timed(f"IH equals complement cohomology ({label}, p={p})",
              _betti_list(complement_cohomology(strat.complex, strat.sigma, field=field), 2),
              lambda strat=strat, p=p: _betti_list(
                  intersection_cohomology(strat, p, field=field, reduce=reduce), 2))

    tcx, tstrat, tsys = ex.twisted_system(field)
    expected = [1, 1, 0] if field.p == 2 else [0, 0, 0]
    timed("suspended 3-cycle with monodromy -1, p(k)=k-1: IH", expected,
          lambda: _betti_list(intersection_cohomology(tstrat, "ultra", tsys, field=field), 2))

    if include_slow:
        st = ex.suspended_torus()
        strats = ex.cone_point_strats(st)
        for s in strats:
            validate_stratification(s)
        N = ex.vertex(st, "N")
        torus_b = simplicial_betti(link(st, N), field)
        trunc = [b if i <= 1 else 0 for i, b in enumerate(torus_b)] + [0]
        builds = []

        def ih_all():
            res = []
            for s in strats:
                b = build_deligne(s, [0, 1, 1], field=field, reduce=True, retain_stages=False)
                builds.append(b.final)
                res.append(_betti_list(hypercohomology(b.final), 3))
            return res

        timed("suspended torus, p=[0,1,1]: IH for three stratifications", [[1, 2, 0, 1]] * 3, ih_all)
        timed("suspended torus: Deligne stalk at each cone point", [trunc, trunc],
              lambda: [builds[0].stalk_betti(v).as_list(0, 3) for v in (N, ex.vertex(st, "S"))])

        def same_stalks():
            cells = sorted(st.simplices, key=lambda s: (len(s), s))
            ref = [builds[0].stalk_betti(s) for s in cells]
            return all([b.stalk_betti(s) for s in cells] == ref for b in builds[1:])

        timed("suspended torus: stalk cohomology agrees at every simplex", True, same_stalks)

    return {"field": field.name, "reduce": reduce, "examples": out,
            "all_match": all(e["match"] for e in out)}

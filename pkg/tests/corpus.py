"""Stratified spaces, perversities and coefficient systems shared by the acceptance suite."""

from dataclasses import dataclass

from icsheaf import examples as ex
from icsheaf.complex import Stratification, stratum_sanity_check, validate_stratification
from icsheaf.linalg import QQ
from icsheaf.perversity import classify, extend, parse_perversity


@dataclass
class Case:
    name: str
    strat: Stratification
    p: object
    G: object = None
    field: object = QQ

    def perversity(self):
        return extend(parse_perversity(self.p, self.strat.n), self.strat.n)

    def topological(self):
        return all(e["status"] == "pass" for e in stratum_sanity_check(self.strat))

    def in_scope(self):
        """Traditional or superperverse, on a stratification whose strata are manifolds."""
        return classify(parse_perversity(self.p, self.strat.n)) in ("traditional", "super") and self.topological()


def cases(include_three_dim=True):
    s2, oc, t = ex.sphere(), ex.octahedron(), ex.torus()
    s3 = ex.boundary_simplex(3)
    poles = Stratification(oc, {(0,): 2, (1,): 2})
    out = [
        Case("S2 point ultra", ex.point_strat(s2, "0"), "ultra"),
        Case("S2 point zero", ex.point_strat(s2, "0"), "zero"),
        Case("S2 trivial", Stratification(s2, {}), "ultra"),
        Case("octahedron equator zero", ex.equator_strat(oc), "zero"),
        Case("octahedron equator [0,1]", ex.equator_strat(oc), [0, 1]),
        Case("octahedron pole [0,1]", ex.point_strat(oc, "N"), [0, 1]),
        Case("octahedron poles zero", poles, "zero"),
        Case("octahedron poles ultra", poles, "ultra"),
        Case("octahedron poles [-1,0]", poles, "top"),
        Case("torus point ultra", ex.point_strat(t, "0"), "ultra"),
        Case("torus point zero", ex.point_strat(t, "0"), "zero"),
        Case("S3 point [0,0,1]", ex.point_strat(s3, "0"), [0, 0, 1]),
        Case("S3 point [0,1,1]", ex.point_strat(s3, "0"), [0, 1, 1]),
        Case("S3 point ultra", ex.point_strat(s3, "0"), "ultra"),
    ]
    cx, strat, G = ex.twisted_system(QQ)
    out.append(Case("twisted suspension ultra", strat, "ultra", G))
    out.append(Case("twisted suspension zero", strat, "zero", G))
    if include_three_dim:
        for i, s in enumerate(ex.cone_point_strats()):
            out.append(Case(f"suspended torus strat {i} [0,1,1]", s, [0, 1, 1]))
    for c in out:
        validate_stratification(c.strat)
    return out

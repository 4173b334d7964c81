"""Built-in complexes, stratifications and coefficient systems."""

from itertools import combinations

from .complex import SimplicialComplex, Stratification, closure
from .deligne import LocalSystem
from .linalg import QQ, SparseMatrix


def boundary_simplex(n):
    """Boundary of the (n+1)-simplex, a triangulated S^n on vertices 0..n+1."""
    verts = list(range(n + 2))
    return SimplicialComplex([str(v) for v in verts], combinations(verts, n + 1))


def sphere():
    return boundary_simplex(2)


def octahedron():
    """S^2 with equator a-b-c-d and poles N, S."""
    names = ["N", "S", "a", "b", "c", "d"]
    N, S, a, b, c, d = range(6)
    ring = [a, b, c, d]
    tris = []
    for i in range(4):
        u, v = ring[i], ring[(i + 1) % 4]
        tris += [(N, u, v), (S, u, v)]
    return SimplicialComplex(names, tris)


def torus():
    """Minimal 7-vertex triangulation of T^2."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex([str(v) for v in range(7)], tris)


def suspension(c, top="N", bottom="S"):
    """Suspension with two new cone vertices appended to the vertex list."""
    names = list(c.vertices) + [top, bottom]
    n_idx, s_idx = len(c.vertices), len(c.vertices) + 1
    maximal = [m + (n_idx,) for m in c.maximal_simplices()]
    maximal += [m + (s_idx,) for m in c.maximal_simplices()]
    return SimplicialComplex(names, maximal)


def suspended_torus():
    return suspension(torus())


def vertex(c, name):
    return (c.vertices.index(name),)


def equator(c):
    """Equator of the octahedron or of the boundary tetrahedron as a closed set."""
    if "a" in c.vertices:
        ids = [c.vertices.index(v) for v in "abcd"]
    else:
        ids = [0, 1, 2, 3]
    edges = [tuple(sorted((ids[i], ids[(i + 1) % 4]))) for i in range(4)]
    return frozenset(closure(edges))


def point_strat(c, name="0", depth=None):
    """One vertex as the whole singular set, at the deepest codimension."""
    v = vertex(c, name)
    return Stratification(c, {v: c.dim if depth is None else depth})


def equator_strat(c):
    """The whole equator as a codimension-one stratum."""
    return Stratification(c, {s: 1 for s in equator(c)})


def cone_point_strats(c=None):
    """Stratifications of the suspended torus subject to Sigma = {N, S}.

    The cone points sit at depths (3, 3), (3, 2) and (2, 2); the second and
    third also pass through the (here empty) codimension-2 stage.
    """
    c = c or suspended_torus()
    N, S = vertex(c, "N"), vertex(c, "S")
    return [Stratification(c, {N: 3, S: 3}),
            Stratification(c, {N: 3, S: 2}),
            Stratification(c, {N: 2, S: 2})]


def twisted_system(field=QQ):
    """Suspension of a 3-cycle with Sigma = poles and monodromy -1 around the waist.

    The coefficient system is pulled back from the 3-cycle a-b-c, where the
    only nontrivial map is -1 on the relation a < ac.
    """
    names = ["a", "b", "c", "N", "S"]
    a, b, c_, N, S = range(5)
    cycle = [(a, b), (b, c_), (a, c_)]
    tris = [e + (p,) for e in cycle for p in (N, S)]
    cx = SimplicialComplex(names, tris)
    sigma = {(N,), (S,)}
    U = frozenset(s for s in cx.simplices if s not in sigma)
    strat = Stratification(cx, {(N,): 2, (S,): 2})
    minus = SparseMatrix.from_dense(field, [[-1]])
    maps = {}
    base = lambda s: tuple(v for v in s if v in (a, b, c_))
    for t in U:
        for i in range(len(t)):
            s = t[:i] + t[i + 1:]
            if s in U and base(s) == (a,) and base(t) == (a, c_):
                maps[(s, t)] = minus
    return cx, strat, LocalSystem(cx, U, 1, maps, field)

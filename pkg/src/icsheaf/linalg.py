"""Exact linear algebra: fields, sparse matrices, cochain complexes.

Vectors are dicts {index: nonzero scalar}; matrices are stored column-major
as a list of such dicts.  Scalars are gmpy2 ``mpq`` over Q, or plain ints in
0..p-1 over GF(p).  Nothing here ever touches floating point.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from heapq import heapify, heappop, heappush

import gmpy2

from .errors import DifferentialSquareNonzero, NotChainMap, SquareNonzero, ValidationError


# ---------------------------------------------------------------- fields

class Field:
    """Q when ``p`` is None, otherwise the prime field GF(p)."""

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if p < 2 or not gmpy2.is_prime(p):
                raise ValidationError(f"field characteristic {p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    def __repr__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    @property
    def name(self):
        return repr(self)

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                return gmpy2.mpq(Fraction(x))
            return gmpy2.mpq(x)
        if isinstance(x, (Fraction, type(gmpy2.mpq()))):
            num, den = int(x.numerator), int(x.denominator)
            return num * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        return int(x) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(int(a), -1, self.p)

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def to_json(self, a):
        if self.p is not None:
            return int(a)
        a = gmpy2.mpq(a)
        return int(a) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


QQ = Field()


def parse_field(spec):
    """'Q', 'F2', 'Fp:7' (also 'GF7', 'F7')."""
    if isinstance(spec, Field):
        return spec
    s = str(spec).strip()
    if s.upper() in ("Q", "QQ"):
        return QQ
    for prefix in ("Fp:", "FP:", "GF", "F"):
        if s.startswith(prefix):
            rest = s[len(prefix):]
            if rest.isdigit():
                return Field(int(rest))
    raise ValidationError(f"unknown field {spec!r}; use Q, F2 or Fp:<prime>")


# ---------------------------------------------------------------- vectors

def vec_axpy(field, y, a, x):
    """y += a*x in place (dict vectors)."""
    p = field.p
    for i, xi in x.items():
        v = y.get(i, 0) + a * xi
        if p is not None:
            v %= p
        if v:
            y[i] = v
        else:
            y.pop(i, None)
    return y


def vec_scale(field, a, x):
    if not a:
        return {}
    p = field.p
    if p is None:
        return {i: a * v for i, v in x.items()}
    return {i: a * v % p for i, v in x.items()}


# ---------------------------------------------------------------- matrices

class SparseMatrix:
    """nrows x ncols, column-major list of dict columns."""

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field, nrows, ncols, cols=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def from_dense(cls, field, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValidationError("ragged matrix")
            for j, x in enumerate(row):
                x = field(x)
                if x:
                    cols[j][i] = x
        return cls(field, nrows, ncols, cols)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def entries(self):
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                yield i, j, x

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def is_zero(self):
        return all(not c for c in self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def apply(self, v):
        out = {}
        for j, a in v.items():
            vec_axpy(self.field, out, a, self.cols[j])
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        return SparseMatrix(self.field, self.nrows, other.ncols,
                            [self.apply(c) for c in other.cols])

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in +")
        cols = [dict(c) for c in self.cols]
        for j, c in enumerate(other.cols):
            vec_axpy(self.field, cols[j], self.field.one, c)
        return SparseMatrix(self.field, self.nrows, self.ncols, cols)

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = self.field(a)
        return SparseMatrix(self.field, self.nrows, self.ncols,
                            [vec_scale(self.field, a, c) for c in self.cols])

    def transpose(self):
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.field, self.ncols, self.nrows, cols)

    def select_columns(self, idx):
        return SparseMatrix(self.field, self.nrows, len(idx), [self.cols[j] for j in idx])

    def select_rows(self, idx):
        pos = {r: k for k, r in enumerate(idx)}
        cols = [{pos[i]: x for i, x in c.items() if i in pos} for c in self.cols]
        return SparseMatrix(self.field, len(idx), self.ncols, cols)

    def rank(self):
        return rank(self)


def block_matrix(field, row_dims, col_dims, blocks):
    """Assemble from {(r, c): SparseMatrix} with the given block sizes."""
    roff = [0]
    for d in row_dims:
        roff.append(roff[-1] + d)
    coff = [0]
    for d in col_dims:
        coff.append(coff[-1] + d)
    cols = [{} for _ in range(coff[-1])]
    for (r, c), m in blocks.items():
        if (m.nrows, m.ncols) != (row_dims[r], col_dims[c]):
            raise ValueError(f"block {(r, c)} has shape {m.nrows}x{m.ncols}")
        ro, co = roff[r], coff[c]
        for j, col in enumerate(m.cols):
            tgt = cols[co + j]
            for i, x in col.items():
                tgt[ro + i] = x
    return SparseMatrix(field, roff[-1], coff[-1], cols)


# ---------------------------------------------------------------- elimination

class Echelon:
    """Incremental column echelon form.

    Each stored pivot vector has leading (smallest) index r and entry 1 there.
    With ``track`` each pivot also remembers which combination of inserted
    vectors produced it, which is how kernels are read off.
    """

    def __init__(self, field, track=False):
        self.field = field
        self.track = track
        self.pivots = {}
        self.combos = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, v, full=False, combo=None):
        """Reduce v against the pivots.

        By default stops at the first index that is not a pivot row (enough to
        decide independence).  With ``full`` every pivot-row entry is cleared,
        giving a canonical representative modulo the span.
        """
        p = self.field.p
        pivots = self.pivots
        v = dict(v)
        heap = list(v)
        heapify(heap)
        while heap:
            r = heappop(heap)
            c = v.get(r)
            if c is None:
                continue
            piv = pivots.get(r)
            if piv is None:
                if full:
                    continue
                break
            if p is None:
                for s, a in piv.items():
                    old = v.get(s)
                    if old is None:
                        v[s] = -c * a
                        heappush(heap, s)
                    else:
                        new = old - c * a
                        if new:
                            v[s] = new
                        else:
                            del v[s]
            else:
                for s, a in piv.items():
                    old = v.get(s)
                    if old is None:
                        v[s] = (-c * a) % p
                        heappush(heap, s)
                    else:
                        new = (old - c * a) % p
                        if new:
                            v[s] = new
                        else:
                            del v[s]
            if combo is not None:
                vec_axpy(self.field, combo, self.field.neg(c), self.combos[r])
        return v

    def add(self, v, tag=None):
        """Insert v; returns None if it was independent, else the dependency.

        The dependency (only with ``track``) is a dict {tag: coeff} with
        coeff 1 at ``tag`` giving a vanishing combination of inserted vectors.
        """
        combo = {tag: self.field.one} if self.track else None
        w = self.reduce(v, combo=combo)
        if not w:
            return combo if self.track else {}
        lead = min(w)
        inv = self.field.inv(w[lead])
        self.pivots[lead] = vec_scale(self.field, inv, w)
        if self.track:
            self.combos[lead] = vec_scale(self.field, inv, combo)
        return None

    def contains(self, v):
        return not self.reduce(v)


def rank(m):
    e = Echelon(m.field)
    for c in m.cols:
        if c:
            e.add(c)
    return e.rank


def kernel(m):
    """Basis of ker m as (free_columns, basis vectors).

    Column j is free when it depends on earlier columns; its basis vector has
    entry 1 at j and is zero at every other free column, so the coordinates of
    a kernel element are simply its values at the free columns.
    """
    e = Echelon(m.field, track=True)
    free, basis = [], []
    for j, c in enumerate(m.cols):
        dep = e.add(c, tag=j)
        if dep is not None:
            free.append(j)
            basis.append(dep)
    return free, basis


class Quotient:
    """V / span(gens) with canonical representatives on non-pivot coordinates."""

    def __init__(self, field, dim, gens):
        self.field = field
        self.dim = dim
        self.ech = Echelon(field)
        for g in gens:
            if g:
                self.ech.add(g)
        pivots = set(self.ech.pivots)
        self.keep = [i for i in range(dim) if i not in pivots]
        self.pos = {i: k for k, i in enumerate(self.keep)}

    def coords(self, v):
        w = self.ech.reduce(v, full=True)
        return {self.pos[i]: x for i, x in w.items()}

    def lift(self, k):
        return self.keep[k]


def solve_in_span(field, gens, v):
    """Whether v lies in the span of the given vectors."""
    e = Echelon(field)
    for g in gens:
        if g:
            e.add(g)
    return e.contains(v)


# ---------------------------------------------------------------- complexes

@dataclass(frozen=True)
class Betti:
    """Graded dimensions; zero outside the stored window."""

    values: dict = dc_field(default_factory=dict)

    @classmethod
    def from_list(cls, lo, vals):
        return cls({lo + i: int(v) for i, v in enumerate(vals) if v})

    def __getitem__(self, i):
        return self.values.get(i, 0)

    def __eq__(self, other):
        if isinstance(other, Betti):
            return self.nonzero() == other.nonzero()
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.nonzero().items())))

    def nonzero(self):
        return {k: v for k, v in self.values.items() if v}

    def degrees(self):
        return sorted(self.nonzero())

    def top(self):
        d = self.degrees()
        return d[-1] if d else None

    def bottom(self):
        d = self.degrees()
        return d[0] if d else None

    def as_list(self, lo, hi):
        return [self[i] for i in range(lo, hi + 1)]

    def euler(self):
        return sum((-1) ** k * v for k, v in self.values.items())

    def __repr__(self):
        return f"Betti({self.nonzero()})"


class CochainComplex:
    """Finite-dimensional cochain complex on degrees lo..lo+len(dims)-1.

    ``diffs[k]`` is d^{lo+k}: C^{lo+k} -> C^{lo+k+1}; the last one maps to
    the zero space and is omitted.
    """

    def __init__(self, field, lo, dims, diffs=None):
        self.field = field
        self.lo = lo
        self.dims = list(dims)
        if diffs is None:
            diffs = [SparseMatrix.zero(field, self.dims[k + 1], self.dims[k])
                     for k in range(len(self.dims) - 1)]
        self.diffs = list(diffs)
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise ValueError("need one differential between consecutive degrees")
        for k, d in enumerate(self.diffs):
            if (d.nrows, d.ncols) != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"differential d^{lo + k} has wrong shape")

    def __repr__(self):
        return f"CochainComplex(lo={self.lo}, dims={self.dims})"

    @classmethod
    def zero(cls, field):
        return cls(field, 0, [])

    @classmethod
    def concentrated(cls, field, dim, degree=0):
        return cls(field, degree, [dim])

    @property
    def hi(self):
        return self.lo + len(self.dims) - 1

    def dim(self, i):
        k = i - self.lo
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def d(self, i):
        k = i - self.lo
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return SparseMatrix.zero(self.field, self.dim(i + 1), self.dim(i))

    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return not any(self.dims)

    def validate(self):
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise DifferentialSquareNonzero(self.lo + k)
        return True

    def euler(self):
        return sum((-1) ** (self.lo + k) * d for k, d in enumerate(self.dims))

    def shift(self, m):
        return shift(self, m)


def shift(c, m):
    """(C[m])^i = C^{i+m}, with differential (-1)^m d."""
    diffs = c.diffs if m % 2 == 0 else [d.scale(-1) for d in c.diffs]
    return CochainComplex(c.field, c.lo - m, c.dims, diffs)


def cohomology(c, check=True):
    if check:
        c.validate()
    ranks = [rank(d) for d in c.diffs]
    vals = {}
    for k, dim in enumerate(c.dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        b = dim - r_out - r_in
        if b:
            vals[c.lo + k] = b
    return Betti(vals)


class ChainMap:
    """Degree-0 map; ``maps`` is {degree: matrix dim T^i x dim S^i}."""

    def __init__(self, source, target, maps):
        self.source = source
        self.target = target
        self.field = source.field
        self.maps = dict(maps)

    def __getitem__(self, i):
        m = self.maps.get(i)
        if m is None:
            return SparseMatrix.zero(self.field, self.target.dim(i), self.source.dim(i))
        return m

    def validate(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for i in range(lo, hi + 1):
            left = self.target.d(i) @ self[i]
            right = self[i + 1] @ self.source.d(i)
            if left != right and not (left - right).is_zero():
                raise NotChainMap(i)
        return True

    def compose(self, other):
        """self after other."""
        degrees = set(self.maps) & set(other.maps)
        return ChainMap(other.source, self.target,
                        {i: self.maps[i] @ other.maps[i] for i in degrees})


def cone(f, check=False):
    """cone^i = S^{i+1} + T^i with d(a, b) = (-d a, f(a) + d b)."""
    if check:
        f.validate()
    S, T = f.source, f.target
    field = S.field
    if S.is_zero() and T.is_zero():
        return CochainComplex.zero(field)
    lo = min(S.lo - 1, T.lo)
    hi = max(S.hi - 1, T.hi)
    dims = [S.dim(i + 1) + T.dim(i) for i in range(lo, hi + 1)]
    diffs = []
    for i in range(lo, hi):
        blocks = {
            (0, 0): S.d(i + 1).scale(-1),
            (1, 0): f[i + 1],
            (1, 1): T.d(i),
        }
        diffs.append(block_matrix(field, [S.dim(i + 2), T.dim(i + 1)],
                                  [S.dim(i + 1), T.dim(i)], blocks))
    return CochainComplex(field, lo, dims, diffs)


def induced_rank(f, i):
    """Rank of H^i(f): H^i(S) -> H^i(T)."""
    S, T = f.source, f.target
    _, zs = kernel(S.d(i))
    boundaries = [c for c in T.d(i - 1).cols if c]
    e = Echelon(S.field)
    for b in boundaries:
        e.add(b)
    base = e.rank
    m = f[i]
    for z in zs:
        img = m.apply(z)
        if img:
            e.add(img)
    return e.rank - base


def is_iso_on(f, i):
    """H^i(f) is an isomorphism."""
    hs = cohomology(f.source, check=False)[i]
    ht = cohomology(f.target, check=False)[i]
    if hs != ht:
        return False
    return hs == 0 or induced_rank(f, i) == hs


class DoubleComplex:
    """Bigraded blocks C^{p,q} with commuting dh: (p,q)->(p+1,q), dv: (p,q)->(p,q+1)."""

    def __init__(self, field, dims, dh=None, dv=None):
        self.field = field
        self.dims = {k: v for k, v in dims.items() if v}
        self.dh = dict(dh or {})
        self.dv = dict(dv or {})

    def dim(self, p, q):
        return self.dims.get((p, q), 0)

    def _h(self, p, q):
        return self.dh.get((p, q)) or SparseMatrix.zero(self.field, self.dim(p + 1, q), self.dim(p, q))

    def _v(self, p, q):
        return self.dv.get((p, q)) or SparseMatrix.zero(self.field, self.dim(p, q + 1), self.dim(p, q))

    def validate(self):
        for (p, q) in self.dims:
            hh = self._h(p + 1, q) @ self._h(p, q)
            vv = self._v(p, q + 1) @ self._v(p, q)
            comm = self._v(p + 1, q) @ self._h(p, q) - self._h(p, q + 1) @ self._v(p, q)
            if not (hh.is_zero() and vv.is_zero() and comm.is_zero()):
                raise SquareNonzero(p, q)
        return True


def total_complex(dc, check=True):
    """Tot^n = sum over p+q=n, D = dh + (-1)^p dv."""
    if check:
        dc.validate()
    field = dc.field
    if not dc.dims:
        return CochainComplex.zero(field)
    degs = [p + q for p, q in dc.dims]
    lo, hi = min(degs), max(degs)
    layout = {}
    for n in range(lo, hi + 1):
        off = 0
        for (p, q) in sorted(k for k in dc.dims if sum(k) == n):
            layout[(p, q)] = off
            off += dc.dims[(p, q)]
    sizes = [sum(v for k, v in dc.dims.items() if sum(k) == n) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        cols = [{} for _ in range(sizes[n - lo])]
        for (p, q), off in layout.items():
            if p + q != n:
                continue
            for blk, tgt, sign in ((dc.dh.get((p, q)), (p + 1, q), 1),
                                   (dc.dv.get((p, q)), (p, q + 1), -1 if p % 2 else 1)):
                if blk is None or tgt not in layout:
                    continue
                toff = layout[tgt]
                for j, col in enumerate(blk.cols):
                    dst = cols[off + j]
                    for i, x in col.items():
                        dst[toff + i] = x if sign == 1 else field.neg(x)
        diffs.append(SparseMatrix(field, sizes[n + 1 - lo], sizes[n - lo], cols))
    return CochainComplex(field, lo, sizes, diffs)


# ---------------------------------------------------------------- simplicial

def simplicial_cochains(c, field=QQ):
    """Oriented simplicial cochains of a SimplicialComplex, degrees 0..dim."""
    by_dim = [[] for _ in range(c.dim + 1)]
    for s in c.simplices:
        by_dim[len(s) - 1].append(s)
    idx = [{s: i for i, s in enumerate(layer)} for layer in by_dim]
    diffs = []
    one, mone = field.one, field.neg(field.one)
    for k in range(c.dim):
        cols = []
        for s in by_dim[k]:
            cols.append({})
        for t in by_dim[k + 1]:
            row = idx[k + 1][t]
            for j in range(len(t)):
                face = t[:j] + t[j + 1:]
                cols[idx[k][face]][row] = one if j % 2 == 0 else mone
        diffs.append(SparseMatrix(field, len(by_dim[k + 1]), len(by_dim[k]), cols))
    return CochainComplex(field, 0, [len(layer) for layer in by_dim], diffs)


def simplicial_betti(c, field=None):
    if len(c) == 0:
        return []
    b = cohomology(simplicial_cochains(c, field or QQ), check=False)
    return b.as_list(0, c.dim)

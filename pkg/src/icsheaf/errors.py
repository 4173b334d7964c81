"""Exception types raised across the package.

Every error carries the offending datum as an attribute so callers (and the
CLI, which prints them verbatim) can report it without parsing messages.
"""


class IcSheafError(Exception):
    """Base class for all package errors."""


class ValidationError(IcSheafError):
    """Input data does not satisfy a structural requirement."""


# perversity

class GrowthViolation(ValidationError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"GrowthViolation({k}): need p(k) <= p(k+1) <= p(k)+1 at k={k}")


class UnderspecifiedRange(ValidationError):
    def __init__(self, known, n):
        self.known = known
        self.n = n
        super().__init__(
            f"UnderspecifiedRange: perversity given on 1..{known} but ambient dimension is {n}")


# simplicial complexes and stratifications

class EmptyComplex(ValidationError):
    def __init__(self):
        super().__init__("EmptyComplex: no simplices given")


class DuplicateSimplex(ValidationError):
    def __init__(self, simplex):
        self.simplex = simplex
        super().__init__(f"DuplicateSimplex: {simplex}")


class UnknownVertex(ValidationError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"UnknownVertex: {vertex!r} is not in the vertex list")


class SimplexNotFound(ValidationError):
    def __init__(self, simplex):
        self.simplex = simplex
        super().__init__(f"SimplexNotFound: {simplex}")


class NotClosed(ValidationError):
    def __init__(self, j, witness=None):
        self.j = j
        self.witness = witness
        extra = f" (witness {witness})" if witness is not None else ""
        super().__init__(f"NotClosed({j}): skeleton X^{j} is not a closed subcomplex{extra}")


class DimensionExceeded(ValidationError):
    def __init__(self, j, witness=None):
        self.j = j
        self.witness = witness
        extra = f" (witness {witness})" if witness is not None else ""
        super().__init__(f"DimensionExceeded({j}): skeleton X^{j} has dimension > {j}{extra}")


class TopStratumNotDense(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"TopStratumNotDense: {witness} is not a face of any top simplex of depth 0")


class DensityFailure(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"DensityFailure: {witness} is not a face of any top simplex outside sigma")


# linear algebra

class DifferentialSquareNonzero(ValidationError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"DifferentialSquareNonzero({i}): d^{i+1} d^{i} != 0")


class NotChainMap(ValidationError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"NotChainMap({degree}): map does not commute with d in degree {degree}")


class SquareNonzero(ValidationError):
    def __init__(self, p, q):
        self.p = p
        self.q = q
        super().__init__(f"SquareNonzero({p},{q}): double complex relation fails at ({p},{q})")


# sheaves

class SimplexNotInCarrier(ValidationError):
    def __init__(self, simplex):
        self.simplex = simplex
        super().__init__(f"SimplexNotInCarrier: {simplex}")


class NotOpenSubposet(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"NotOpenSubposet: coface {witness} missing from the subposet")


class NotNested(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"NotNested: {witness} lies in U but not in V")


class NotFunctorial(ValidationError):
    def __init__(self, chain):
        self.chain = chain
        super().__init__(f"NotFunctorial: restriction maps disagree along {chain}")


class NotInvertible(ValidationError):
    def __init__(self, relation):
        self.relation = relation
        super().__init__(f"NotInvertible: coefficient map on {relation} is singular")


# axioms

class NoCandidates(ValidationError):
    def __init__(self):
        super().__init__("NoCandidates: at least one candidate stratification is required")

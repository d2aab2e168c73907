"""Kneser graphs K(n, k): vertices, adjacency matrices and exact spectra.

Vertices are the k-subsets of {1, ..., n} in lexicographic order; two
vertices are adjacent iff the subsets are disjoint.  The eigenvalues are
the integers lambda_j = (-1)^j C(n-k-j, k-j) for 0 <= j <= k, all nonzero
when n >= 2k, which is what makes these graphs invertible.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import exact_linalg
from .errors import InvalidParameterError, InvariantViolationError


@dataclass(frozen=True)
class KneserGraph:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise InvalidParameterError(
                f"k must lie in [0, {self.n}], got {self.k}"
            )

    @property
    def vertices(self) -> list:
        """k-subsets of {1..n} in lexicographic order.

        In particular K(n, 0) has the single vertex () and no edges.
        """
        return list(combinations(range(1, self.n + 1), self.k))

    @property
    def vertex_count(self) -> int:
        return comb(self.n, self.k)

    @property
    def degree(self) -> int:
        """Common vertex degree C(n-k, k)."""
        return comb(self.n - self.k, self.k)


def adjacency(g: KneserGraph) -> list:
    """0/1 adjacency matrix; entry (I, J) is 1 iff I and J are disjoint."""
    verts = [frozenset(v) for v in g.vertices]
    return [
        [1 if i != j and not (vi & vj) else 0 for j, vj in enumerate(verts)]
        for i, vi in enumerate(verts)
    ]


def spectrum(g: KneserGraph) -> list:
    """Eigenvalues as (value, j) pairs for j = 0..k.

    Defined for k >= 1 and n >= 2k (below that the graph is empty or the
    single-vertex convention applies and the formula does not).
    """
    if g.k < 1:
        raise InvalidParameterError("the eigenvalue family needs k >= 1")
    if g.n < 2 * g.k:
        raise InvalidParameterError(
            f"eigenvalue formula needs n >= 2k; got n={g.n}, k={g.k}"
        )
    return [
        ((-1) ** j * comb(g.n - g.k - j, g.k - j), j) for j in range(g.k + 1)
    ]


@dataclass(frozen=True)
class InvertibilityCertificate:
    graph: KneserGraph
    determinant: int
    eigenvalues: tuple
    annihilator_vanishes: bool


def verify_invertible(g: KneserGraph) -> InvertibilityCertificate:
    """Exact invertibility certificate.

    Computes det(A) by fraction-free elimination and checks that the
    annihilating polynomial prod_j (A - lambda_j I) vanishes.  A zero
    determinant would contradict the spectral description and is reported
    as an invariant violation.
    """
    a = adjacency(g)
    eigs = spectrum(g)
    det = exact_linalg.det_bareiss(a)
    if det == 0:
        raise InvariantViolationError(
            f"adjacency of K({g.n},{g.k}) has determinant 0"
        )
    size = len(a)
    product = exact_linalg.identity_int(size)
    for value, _ in eigs:
        shifted = [
            [a[i][j] - (value if i == j else 0) for j in range(size)]
            for i in range(size)
        ]
        product = exact_linalg.matmul_int(product, shifted)
    vanishes = exact_linalg.is_zero_matrix(product)
    if not vanishes:
        raise InvariantViolationError(
            f"annihilating polynomial of K({g.n},{g.k}) does not vanish"
        )
    return InvertibilityCertificate(g, det, tuple(eigs), vanishes)

"""Graded ranks of indecomposable objects and Jones-Wenzl coefficients.

For x in a finite Coxeter group W the graded rank of the indecomposable
object attached to x is computed entirely from Kazhdan-Lusztig data:

    grrk(x) = sum_y v^(-length(y)) h_{y,x}

where h_{y,x} is the KL polynomial in the normalization of :mod:`jwkit.hecke`
(so h_{y,x} has nonnegative integer coefficients, h_{x,x} = 1, and the sum
runs over y <= x in Bruhat order since h_{y,x} = 0 otherwise).

Two facts about grrk drive everything downstream and are enforced here:

* bar symmetry: grrk(x) is fixed by v -> v^(-1);
* parity: grrk(x) lies in v^(length(x)) Z[v^(-2)], i.e. every exponent
  is at most length(x) and congruent to it mod 2.

When the Schubert-like interval below x is "smooth" the polynomial h_{y,x}
collapses to v^(length(x) - length(y)) and grrk(x) becomes the Poincare
polynomial of the Bruhat interval [id, x], normalized symmetrically:

    [x] = sum_{y <= x} v^(length(x) - 2 length(y)).

This always happens in dihedral groups, which gives a cheap cross-check.

The coefficient of the basis element indexed by a fully commutative x in
the generalised Jones-Wenzl element is the ratio

    (-1)^(length(x)) grrk(x w0) / grrk(w0),

a bar-invariant rational function.  In type A_{n-1} the denominator is the
balanced quantum factorial [n]!.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import ElementId, GroupTable
from .hecke import KLTable
from .qpoly import LaurentPoly, RatFunc, parity_class


@dataclass(frozen=True)
class GradedRank:
    """A graded rank: a bar-symmetric Laurent polynomial in v.

    The constructor checks bar symmetry, which every graded rank of a
    self-dual object must satisfy.  Parity relative to the element the
    rank was computed from is checked by :func:`grrk`, not here, because
    the length is not part of the value.
    """

    value: LaurentPoly

    def __post_init__(self) -> None:
        if self.value.bar() != self.value:
            raise ValueError("graded rank must be bar symmetric")

    def total_rank(self) -> int:
        """The ungraded rank, i.e. the value at v = 1."""
        return sum(c for _, c in self.value.items())

    def __str__(self) -> str:
        return str(self.value)


def grrk(g: GroupTable, cache: KLTable, x: ElementId) -> GradedRank:
    """Graded rank of the indecomposable object attached to x.

    Computed as sum_y v^(-length(y)) h_{y,x} over the KL column of x.
    The result is checked against the parity constraint: it must lie in
    v^(length(x)) Z[v^(-2)].
    """
    total = LaurentPoly.zero()
    for y, h in cache.column(x).items():
        total = total + h.shift(-g.length[y])
    if not parity_class(total, g.length[x]):
        raise AssertionError(
            "graded rank of element %d violates the parity constraint" % x
        )
    return GradedRank(total)


def poincare_interval(g: GroupTable, x: ElementId) -> LaurentPoly:
    """Symmetrized Poincare polynomial of the Bruhat interval [id, x].

    Returns sum_{y <= x} v^(length(x) - 2 length(y)).  Agrees with
    grrk(x).value exactly when every h_{y,x} is the single monomial
    v^(length(x) - length(y)); in dihedral groups this holds for all x.
    """
    lx = g.length[x]
    terms: dict[int, int] = {}
    for y in g.bruhat_interval_below(x):
        e = lx - 2 * g.length[y]
        terms[e] = terms.get(e, 0) + 1
    return LaurentPoly(terms)


def jw_coefficient(g: GroupTable, cache: KLTable, x: ElementId) -> RatFunc:
    """Coefficient of the diagram-basis element indexed by x in the
    Jones-Wenzl element: (-1)^(length(x)) grrk(x w0) / grrk(w0).

    Defined for every x; only fully commutative x index basis elements,
    but the ratio is occasionally useful diagnostically for other x.
    """
    xw0 = g.multiply(x, g.w0)
    num = grrk(g, cache, xw0).value
    den = grrk(g, cache, g.w0).value
    if g.length[x] % 2:
        num = -num
    return RatFunc(num, den)

"""Generalised Temperley-Lieb algebras for all supported Coxeter types.

For a finite Coxeter group W of type A, B, F4, H3, H4 or I2(m), the
generalised Temperley-Lieb algebra TL_W is the quotient of the Hecke
algebra by the two-sided ideal J spanned by the KL basis elements b_x
with x not fully commutative.  That span really is an ideal for these
types (and fails for type D, which :mod:`jwkit.coxeter` refuses to
build), so the images beta_x of b_x for fully commutative x form a
basis and multiplication is literally:

    lift to the Hecke algebra, multiply, expand in the KL basis,
    discard every non-fully-commutative component.

:func:`check_ideal_closure` verifies the ideal property exhaustively
for a built group: for every non-FC x and every generator s, the KL
expansion of b_x b_s must be supported on non-FC elements.  This is
the computational fact that makes the truncated product well defined.

In type A, beta_x corresponds to the monomial diagram u_x; the module
:mod:`jwkit.tl` realizes that case diagrammatically and the test suite
checks the two against each other.

The generalised Jones-Wenzl element j_W comes in two constructions
that must agree:

* gen_jw_projection: push the sign idempotent e_sign of the Hecke
  algebra through the quotient;
* gen_jw_closed: write down the closed formula, coefficient of beta_x
  equal to (-1)^length(x) grrk(x w0) / grrk(w0).
"""

from __future__ import annotations

from .coxeter import ElementId, GroupTable, UnsupportedFamilyError
from .grank import jw_coefficient
from .hecke import (
    HeckeElt,
    KLTable,
    antisymmetriser,
    kl_product_coeffs,
    to_kl_basis,
)
from .qpoly import RatFunc

_SUPPORTED = {"A", "B", "F4", "H3", "H4", "I2"}


class IdealClosureError(RuntimeError):
    """The non-FC span failed to be an ideal: some b_x b_s with x not
    fully commutative has a fully commutative component."""


def _require_supported(g: GroupTable) -> None:
    fam = g.presentation.family
    if fam not in _SUPPORTED:
        raise UnsupportedFamilyError(
            f"generalised Temperley-Lieb algebras are not available for type {fam}"
        )


class GTLElt:
    """An element of TL_W in the basis {beta_x : x fully commutative},
    stored as a sparse map from element ids to RatFunc coefficients.

    The structure constants come from Kazhdan-Lusztig data that the
    element does not carry, so products go through
    ``gtl_multiply(a, b, cache)`` rather than the ``*`` operator."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupTable, coeffs: dict[ElementId, RatFunc]):
        _require_supported(group)
        self.group = group
        self.coeffs = {x: c for x, c in coeffs.items() if not c.is_zero}
        for x in self.coeffs:
            if not group.is_fully_commutative(x):
                raise ValueError(
                    f"element {x} is not fully commutative; beta_x is not defined"
                )

    @classmethod
    def zero(cls, group: GroupTable) -> "GTLElt":
        return cls(group, {})

    @classmethod
    def one(cls, group: GroupTable) -> "GTLElt":
        return cls(group, {0: RatFunc.one()})

    @classmethod
    def beta(cls, group: GroupTable, x: ElementId) -> "GTLElt":
        return cls(group, {x: RatFunc.one()})

    # -- linear structure --------------------------------------------------------

    def __add__(self, other: "GTLElt") -> "GTLElt":
        assert self.group is other.group
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out.get(x, RatFunc.zero()) + c
        return GTLElt(self.group, out)

    def __neg__(self) -> "GTLElt":
        return GTLElt(self.group, {x: -c for x, c in self.coeffs.items()})

    def __sub__(self, other: "GTLElt") -> "GTLElt":
        return self + (-other)

    def scale(self, c) -> "GTLElt":
        c = c if isinstance(c, RatFunc) else RatFunc(c)
        return GTLElt(self.group, {x: cx * c for x, cx in self.coeffs.items()})

    def coefficient(self, x: ElementId) -> RatFunc:
        return self.coeffs.get(x, RatFunc.zero())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GTLElt):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.group), tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for x in sorted(self.coeffs):
            w = "".join(str(s + 1) for s in self.group.word[x]) or "e"
            bits.append(f"({self.coeffs[x]!r})*beta[{w}]")
        return " + ".join(bits)


def _lift(a: GTLElt, cache: KLTable) -> HeckeElt:
    """The section TL_W -> H sending beta_x to b_x, in the standard basis."""
    out: dict[ElementId, RatFunc] = {}
    for x, c in a.coeffs.items():
        for y, h in cache.column(x).items():
            out[y] = out.get(y, RatFunc.zero()) + c * RatFunc(h)
    return HeckeElt(a.group, out)


def _truncate_fc(g: GroupTable, kl_coeffs: dict[ElementId, RatFunc]) -> GTLElt:
    return GTLElt(g, {x: c for x, c in kl_coeffs.items() if g.is_fully_commutative(x)})


def gtl_multiply(a: GTLElt, b: GTLElt, cache: KLTable) -> GTLElt:
    """The product in TL_W: multiply the lifts in the Hecke algebra,
    re-expand in the KL basis, and drop the non-FC components (they lie
    in the defining ideal J)."""
    if a.group is not b.group:
        raise ValueError("elements live over different groups")
    if not a.coeffs or not b.coeffs:
        return GTLElt.zero(a.group)
    h = _lift(a, cache) * _lift(b, cache)
    return _truncate_fc(a.group, to_kl_basis(h, cache))


def check_ideal_closure(g: GroupTable, cache: KLTable) -> int:
    """Exhaustively verify that span{b_x : x not FC} is closed under right
    multiplication by every b_s, which makes gtl_multiply well defined.

    Returns the number of (x, s) pairs checked.  Raises
    IdealClosureError on the first violation.
    """
    _require_supported(g)
    checked = 0
    for x in range(g.size):
        if g.is_fully_commutative(x):
            continue
        for s in range(g.rank):
            for z, coeff in kl_product_coeffs(cache, x, s).items():
                if not coeff.is_zero and g.is_fully_commutative(z):
                    raise IdealClosureError(
                        f"b_{x} b_s{s} has FC component at {z}: {coeff!r}"
                    )
            checked += 1
    return checked


# -- generalised Jones-Wenzl elements ---------------------------------------------


def gen_jw_closed(g: GroupTable, cache: KLTable) -> GTLElt:
    """j_W by the closed formula: the coefficient of beta_x is
    (-1)^length(x) grrk(x w0) / grrk(w0) over the FC elements."""
    _require_supported(g)
    return GTLElt(g, {x: jw_coefficient(g, cache, x) for x in g.fc_elements()})


def gen_jw_projection(g: GroupTable, cache: KLTable) -> GTLElt:
    """j_W as the image of the sign idempotent e_sign under the quotient
    map: expand e_sign in the KL basis and truncate to FC support."""
    _require_supported(g)
    e = antisymmetriser(g, cache)
    return _truncate_fc(g, to_kl_basis(e, cache))

"""The Temperley-Lieb algebra TL_n as a diagram algebra, and three
independent constructions of the Jones-Wenzl idempotent.

A diagram on n strands is a planar perfect matching of 2n boundary
points: bottom points 0..n-1 (left to right) and top points n..2n-1
(left to right), drawn with the bottom row below the top row.  The
matching is stored as a partner array p with p[p[i]] = i.  Planarity
is equivalent to the matching being non-crossing along the boundary
walk bottom-left to bottom-right, then top-right to top-left, which a
single parenthesis scan checks.

Multiplication stacks the left factor below the right factor and reads
bottom to top.  Closed loops formed in the middle are erased, each one
contributing a scalar factor delta = v + v^(-1) in TL_n, or -delta in
the sign-twisted variant TL_n^-.  Both algebras run on the same diagram
engine; an element carries the loop-parameter sign with it.

The generator u_i (0-based, 0 <= i <= n-2) is the cup-cap diagram at
strands i, i+1.  The relations

    u_i^2 = delta u_i,   u_i u_j u_i = u_i (|i-j| = 1),
    u_i u_j = u_j u_i (|i-j| >= 2)

hold by diagram composition; nothing imposes them separately.  The
monomial basis u_x, indexed by fully commutative permutations x, is
obtained by composing generator diagrams along any reduced word of x;
full commutativity makes the result word-independent.

Three routes to the Jones-Wenzl idempotent j_n:

* wenzl_jw: the Wenzl recursion
      j_1 = 1,   j_n = j' - ([n-1]/[n]) j' u_{n-1} j',
  where j' is j_{n-1} with a through strand appended on the right;
* closed_jw: the closed formula, coefficient of u_x equal to
      (-1)^length(x) grrk(x w0) / grrk(w0)
  summed over fully commutative x in the symmetric group S_n;
* project_pi applied to the sign idempotent of the Hecke algebra,
  using the algebra map pi with pi(b_x) = u_x for fully commutative x
  and pi(b_x) = 0 otherwise.

The three must agree coefficientwise; the test suite checks this.

The sign-twisted Jones-Wenzl element j_n^- lives in TL_n^- and has the
same coefficients with all signs made positive:

    j_n^- = sum over FC x of (grrk(x w0) / grrk(w0)) u_x^-

where u_x^- is the monomial diagram reread inside TL_n^-.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import ElementId, GroupTable
from .grank import grrk, jw_coefficient
from .hecke import HeckeElt, KLTable, to_kl_basis
from .qpoly import LaurentPoly, RatFunc, poly_exact_div, poly_lcm, quantum_int

_DELTA = LaurentPoly({1: 1, -1: 1})


@dataclass(frozen=True)
class Diagram:
    """A planar perfect matching of 2n points; see the module docstring
    for the boundary numbering and the planarity criterion."""

    n: int
    partner: tuple[int, ...]

    def __post_init__(self) -> None:
        n, p = self.n, self.partner
        if n < 1 or len(p) != 2 * n:
            raise ValueError("partner array must have length 2n")
        for i, j in enumerate(p):
            if not 0 <= j < 2 * n or j == i or p[j] != i:
                raise ValueError("partner array is not a perfect matching")
        # walk the boundary circularly; planar iff parentheses balance
        stack: list[int] = []
        for i in list(range(n)) + list(range(2 * n - 1, n - 1, -1)):
            if stack and p[stack[-1]] == i:
                stack.pop()
            else:
                stack.append(i)
        if stack:
            raise ValueError("matching is not planar")

    @classmethod
    def identity(cls, n: int) -> "Diagram":
        return cls(n, tuple(range(n, 2 * n)) + tuple(range(n)))

    @classmethod
    def cupcap(cls, n: int, i: int) -> "Diagram":
        """The generator diagram u_i: bottom points i, i+1 joined by a
        cup, top points i, i+1 joined by a cap, all else through."""
        if not 0 <= i <= n - 2:
            raise ValueError(f"generator index {i} out of range for n={n}")
        p = list(range(n, 2 * n)) + list(range(n))
        p[i], p[i + 1] = i + 1, i
        p[n + i], p[n + i + 1] = n + i + 1, n + i
        return cls(n, tuple(p))

    def through_strands(self) -> int:
        """Number of strands connecting bottom to top."""
        return sum(1 for i in range(self.n) if self.partner[i] >= self.n)

    def __repr__(self) -> str:
        return f"Diagram({self.n}, {self.partner})"


def compose(a: Diagram, b: Diagram, sign: int = 1):
    """Stack a below b and read off the result.

    Returns (diagram, loop_count, scalar) where scalar is
    (sign * (v + v^(-1)))^loop_count.  The top boundary of a is glued
    to the bottom boundary of b; paths are traced through the middle
    and closed middle loops are erased and counted.
    """
    if a.n != b.n:
        raise ValueError(f"strand counts differ: {a.n} vs {b.n}")
    n = a.n
    partner = [-1] * (2 * n)
    seen_mid = [False] * n  # glue edges a-top k <-> b-bottom k
    for start in range(2 * n):
        if partner[start] != -1:
            continue
        # positions are (layer, idx); result bottom i sits at ("a", i),
        # result top j at ("b", n + j)
        layer, idx = ("a", start) if start < n else ("b", start)
        while True:
            if layer == "a":
                q = a.partner[idx]
                if q < n:
                    end = q
                    break
                seen_mid[q - n] = True
                layer, idx = "b", q - n
            else:
                q = b.partner[idx]
                if q >= n:
                    end = q
                    break
                seen_mid[q] = True
                layer, idx = "a", n + q
        partner[start] = end
        partner[end] = start
    loops = 0
    for k in range(n):
        if seen_mid[k]:
            continue
        loops += 1
        layer, idx = "b", k
        while True:
            if layer == "a":
                q = a.partner[idx]
                # a middle cycle never reaches the outer boundary
                assert q >= n
                if seen_mid[q - n]:
                    break
                seen_mid[q - n] = True
                layer, idx = "b", q - n
            else:
                q = b.partner[idx]
                assert q < n
                if seen_mid[q]:
                    break
                seen_mid[q] = True
                layer, idx = "a", n + q
    scalar = (_DELTA.scale(sign)) ** loops if loops else LaurentPoly.one()
    return Diagram(n, tuple(partner)), loops, scalar


class TLElt:
    """An element of TL_n (sign +1) or TL_n^- (sign -1): a finite sum of
    diagrams with RatFunc coefficients."""

    __slots__ = ("n", "sign", "coeffs")

    def __init__(self, n: int, coeffs: dict[Diagram, RatFunc], sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.n = n
        self.sign = sign
        self.coeffs = {d: c for d, c in coeffs.items() if not c.is_zero}
        for d in self.coeffs:
            if d.n != n:
                raise ValueError("mixed strand counts in one element")

    @classmethod
    def zero(cls, n: int, sign: int = 1) -> "TLElt":
        return cls(n, {}, sign)

    @classmethod
    def one(cls, n: int, sign: int = 1) -> "TLElt":
        return cls(n, {Diagram.identity(n): RatFunc.one()}, sign)

    @classmethod
    def gen(cls, n: int, i: int, sign: int = 1) -> "TLElt":
        return cls(n, {Diagram.cupcap(n, i): RatFunc.one()}, sign)

    # -- linear structure --------------------------------------------------------

    def __add__(self, other: "TLElt") -> "TLElt":
        assert self.n == other.n and self.sign == other.sign
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, RatFunc.zero()) + c
        return TLElt(self.n, out, self.sign)

    def __neg__(self) -> "TLElt":
        return TLElt(self.n, {d: -c for d, c in self.coeffs.items()}, self.sign)

    def __sub__(self, other: "TLElt") -> "TLElt":
        return self + (-other)

    def scale(self, c) -> "TLElt":
        c = c if isinstance(c, RatFunc) else RatFunc(c)
        return TLElt(self.n, {d: cd * c for d, cd in self.coeffs.items()}, self.sign)

    def coefficient(self, d: Diagram) -> RatFunc:
        return self.coeffs.get(d, RatFunc.zero())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TLElt):
            return NotImplemented
        return (
            self.n == other.n
            and self.sign == other.sign
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.sign, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for d in sorted(self.coeffs, key=lambda d: d.partner):
            bits.append(f"({self.coeffs[d]!r})*{d.partner}")
        return " + ".join(bits)

    # -- multiplication -----------------------------------------------------------

    def __mul__(self, other: "TLElt") -> "TLElt":
        if not isinstance(other, TLElt):
            return NotImplemented
        return multiply_tl(self, other)


def _clear_tl(elt: TLElt):
    """Write elt as scale * (polynomial combination of diagrams); returns
    (dict Diagram -> LaurentPoly, scale RatFunc).  Doing the bilinear
    expansion on cleared polynomials avoids canonicalizing a rational
    function per diagram pair."""
    den = LaurentPoly.one()
    for c in elt.coeffs.values():
        if not c.den.is_one:
            den = poly_lcm(den, c.den)
    polys = {}
    for d, c in elt.coeffs.items():
        polys[d] = c.num if den.is_one else c.num * poly_exact_div(den, c.den)
    return polys, RatFunc(LaurentPoly.one(), den)


def multiply_tl(a: TLElt, b: TLElt) -> TLElt:
    """Bilinear extension of diagram composition, with each erased loop
    contributing the loop parameter of the common sign."""
    if a.n != b.n:
        raise ValueError(f"strand counts differ: {a.n} vs {b.n}")
    if a.sign != b.sign:
        raise ValueError("loop-parameter signs differ")
    na, sa = _clear_tl(a)
    nb, sb = _clear_tl(b)
    acc: dict[Diagram, LaurentPoly] = {}
    for da, pa in na.items():
        for db, pb in nb.items():
            d, _, scalar = compose(da, db, a.sign)
            term = pa * pb
            if not scalar.is_one:
                term = term * scalar
            acc[d] = acc.get(d, LaurentPoly.zero()) + term
    rescale = sa * sb
    return TLElt(a.n, {d: RatFunc(p) * rescale for d, p in acc.items()}, a.sign)


# -- the monomial basis ---------------------------------------------------------


def _require_type_a(g: GroupTable) -> int:
    if g.presentation.family != "A":
        raise ValueError(
            f"diagrams require a type A group, got {g.presentation.family}"
        )
    return g.rank + 1


def monomial(g: GroupTable, x: ElementId) -> Diagram:
    """The diagram of u_{i1} ... u_{ik} for a reduced word i1 ... ik of a
    fully commutative x; independent of the chosen word.

    No loops can appear while composing along a reduced word of a fully
    commutative element, so the scalar is trivial and a bare diagram
    comes back.
    """
    n = _require_type_a(g)
    if not g.is_fully_commutative(x):
        raise ValueError(f"element {x} is not fully commutative")
    d = Diagram.identity(n)
    for s in g.word[x]:
        d, loops, _ = compose(d, Diagram.cupcap(n, s))
        assert loops == 0
    return d


# -- Jones-Wenzl constructions ----------------------------------------------------


def _include(elt: TLElt) -> TLElt:
    """TL_n -> TL_{n+1}, appending a through strand on the right."""
    n = elt.n
    out = {}
    for d, c in elt.coeffs.items():
        p = [0] * (2 * n + 2)
        for i, j in enumerate(d.partner):
            ii = i if i < n else i + 1
            jj = j if j < n else j + 1
            p[ii] = jj
        p[n] = 2 * n + 1
        p[2 * n + 1] = n
        out[Diagram(n + 1, tuple(p))] = c
    return TLElt(n + 1, out, elt.sign)


def wenzl_jw(n: int) -> TLElt:
    """The Jones-Wenzl idempotent j_n by the Wenzl recursion

        j_1 = 1,   j_n = j' - ([n-1]/[n]) j' u_{n-1} j'

    with j' the inclusion of j_{n-1} into TL_n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    j = TLElt.one(1)
    for k in range(2, n + 1):
        jp = _include(j)
        ratio = RatFunc(quantum_int(k - 1), quantum_int(k))
        j = jp - (jp * TLElt.gen(k, k - 2) * jp).scale(ratio)
    return j


def closed_jw(n: int, g: GroupTable, cache: KLTable) -> TLElt:
    """The Jones-Wenzl idempotent by the closed formula: the coefficient
    of u_x is (-1)^length(x) grrk(x w0) / grrk(w0), summed over the
    fully commutative elements of the symmetric group S_n."""
    if _require_type_a(g) != n:
        raise ValueError(f"group has rank {g.rank}, expected {n - 1}")
    out = {}
    for x in g.fc_elements():
        out[monomial(g, x)] = jw_coefficient(g, cache, x)
    return TLElt(n, out)


def project_pi(h: HeckeElt, cache: KLTable) -> TLElt:
    """The quotient map pi from the type A Hecke algebra onto TL_n:
    expand in the KL basis and send b_x to u_x for fully commutative x
    and to 0 otherwise."""
    g = h.group
    n = _require_type_a(g)
    out: dict[Diagram, RatFunc] = {}
    for x, c in to_kl_basis(h, cache).items():
        if g.is_fully_commutative(x):
            d = monomial(g, x)
            out[d] = out.get(d, RatFunc.zero()) + c
    return TLElt(n, out)


def jw_minus(n: int, g: GroupTable, cache: KLTable) -> TLElt:
    """The sign-twisted Jones-Wenzl element j_n^- of TL_n^-, with
    all-positive coefficients grrk(x w0) / grrk(w0) on u_x^-."""
    if _require_type_a(g) != n:
        raise ValueError(f"group has rank {g.rank}, expected {n - 1}")
    den = grrk(g, cache, g.w0).value
    out = {}
    for x in g.fc_elements():
        num = grrk(g, cache, g.multiply(x, g.w0)).value
        out[monomial(g, x)] = RatFunc(num, den)
    return TLElt(n, out, sign=-1)

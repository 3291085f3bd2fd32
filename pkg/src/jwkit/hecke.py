"""The Hecke algebra of a finite Coxeter group, its Kazhdan-Lusztig basis,
and the antisymmetriser.

Normalization.  The standard basis {delta_x} satisfies, for a generator s,

    delta_s^2 = 1 + (v^-1 - v) delta_s,

equivalently (delta_s + v)(delta_s - v^-1) = 0, and delta_x delta_y =
delta_{xy} whenever lengths add.  The KL basis element b_x = sum_y
h_{y,x} delta_y is the unique bar-invariant element with h_{x,x} = 1 and
h_{y,x} in v Z[v] for y < x; in particular b_s = delta_s + v.

The KL polynomials are computed by the one-generator recursion.  For a
left descent s of x and z = s x,

    b_s b_z = b_x + sum over y < z with sy < y of mu(y, z) b_y,

where mu(y, z) is the coefficient of v in h_{y,z}, and

    b_s delta_y = delta_{sy} + v delta_y        if sy > y,
    b_s delta_y = delta_{sy} + v^-1 delta_y     if sy < y.

Internal representation.  All h_{y,x} have nonnegative integer
coefficients and exponents in [0, length(w0)], so a whole polynomial is
packed into a single Python integer with one 32-bit digit per exponent
(coefficient of v^e in bits [32e, 32e+32)).  Polynomial addition and
shifting become single big-integer operations, which is what makes full
tables for S7 or F4 cheap.  Subtraction of the mu-corrections cannot
borrow across digit boundaries: after the generator product the
accumulator dominates, digit by digit, the sum of everything subtracted
from it, because the final h coefficients are nonnegative.  A digit
tripwire in the decoder still checks every value read out.

Products of general elements run over integer standard-basis vectors with
a positive/negative split of the packed polynomials (see _dense_product),
so only exact integer arithmetic is ever performed; denominators are
divided back out at the end.
"""

from __future__ import annotations

import math
import os
import tempfile
import threading
from fractions import Fraction

from jwkit.coxeter import ElementId, GroupTable
from jwkit.qpoly import LaurentPoly, RatFunc, poly_exact_div, poly_lcm

_B = 32
_MASK = (1 << _B) - 1
_TRIP = 1 << (_B - 1)  # decoded digits must stay below this


def _pk_decode(p: int) -> dict[int, int]:
    d = {}
    e = 0
    while p:
        c = p & _MASK
        if c:
            assert c < _TRIP, "packed-polynomial digit overflow"
            d[e] = c
        p >>= _B
        e += 1
    return d


def _pk_encode(d: dict[int, int]) -> int:
    p = 0
    for e, c in d.items():
        if c < 0 or c >= _TRIP or e < 0:
            raise ValueError("cannot pack this polynomial")
        p += c << (_B * e)
    return p


# plain {exponent: int | Fraction} polynomial helpers for back-substitution


def _dp_add_into(acc: dict, p: dict, scale=1, shift: int = 0) -> None:
    for e, c in p.items():
        e2 = e + shift
        s = acc.get(e2, 0) + c * scale
        if s:
            acc[e2] = s
        else:
            acc.pop(e2, None)


def _dp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


class CacheFormatError(ValueError):
    """An on-disk KL table failed validation."""


class KLTable:
    """Kazhdan-Lusztig polynomials h_{y,x} for one group, computed lazily
    column by column and shared by everything downstream.

    Columns are inserted under a lock, so concurrent readers are safe and
    parallel writers compute disjoint columns at most redundantly, never
    inconsistently: the recursion is deterministic.
    """

    def __init__(self, group: GroupTable):
        self.group = group
        self._cols: dict[int, dict[int, int]] = {0: {0: 1}}
        self._lock = threading.Lock()

    # -- public views --------------------------------------------------------

    def h(self, y: ElementId, x: ElementId) -> LaurentPoly:
        """The KL polynomial h_{y,x} (zero unless y <= x)."""
        col = self.column_packed(x)
        p = col.get(y)
        return LaurentPoly(_pk_decode(p)) if p else LaurentPoly.zero()

    def mu(self, y: ElementId, x: ElementId) -> int:
        """The coefficient of v in h_{y,x}."""
        col = self.column_packed(x)
        p = col.get(y, 0)
        return (p >> _B) & _MASK

    def column(self, x: ElementId) -> dict[ElementId, LaurentPoly]:
        """All nonzero h_{y,x} as Laurent polynomials."""
        return {y: LaurentPoly(_pk_decode(p)) for y, p in self.column_packed(x).items()}

    def column_packed(self, x: ElementId) -> dict[ElementId, int]:
        col = self._cols.get(x)
        if col is None:
            with self._lock:
                col = self._cols.get(x)
                if col is None:
                    self._fill_column(x)
                    col = self._cols[x]
        return col

    def computed_columns(self) -> list[ElementId]:
        return sorted(self._cols)

    # -- the recursion ---------------------------------------------------------

    def _fill_column(self, x0: ElementId) -> None:
        g = self.group
        cols = self._cols
        length, left = g.length, g.left
        stack = [x0]
        while stack:
            x = stack[-1]
            if x in cols:
                stack.pop()
                continue
            s = g.first_left_descent(x)
            z = left[x][s]
            cz = cols.get(z)
            if cz is None:
                stack.append(z)
                continue
            pending = [
                y
                for y, p in cz.items()
                if length[left[y][s]] < length[y] and (p >> _B) & _MASK and y not in cols
            ]
            if pending:
                stack.extend(pending)
                continue
            cols[x] = self._combine(s, z, cz)
            stack.pop()

    def _combine(self, s: int, z: ElementId, cz: dict[int, int]) -> dict[int, int]:
        """Column of x = s z from the column of z, lengths descending."""
        g = self.group
        length, left = g.length, g.left
        acc: dict[int, int] = {}
        corrections = []
        for y, p in cz.items():
            sy = left[y][s]
            if length[sy] > length[y]:
                acc[sy] = acc.get(sy, 0) + p
                acc[y] = acc.get(y, 0) + (p << _B)  # + v h_{y,z}
            else:
                acc[sy] = acc.get(sy, 0) + p
                acc[y] = acc.get(y, 0) + (p >> _B)  # + v^-1 h_{y,z}; min exp >= 1 here
                mu = (p >> _B) & _MASK
                if mu:
                    corrections.append((y, mu))
        for y, mu in corrections:
            coly = self._cols[y]
            for yy, q in coly.items():
                r = acc.get(yy, 0) - mu * q
                if r:
                    acc[yy] = r
                else:
                    acc.pop(yy, None)
        x = left[z][s]
        assert acc.get(x) == 1, "KL recursion lost unitriangularity"
        return {y: p for y, p in acc.items() if p}


# -- elements -----------------------------------------------------------------


class HeckeElt:
    """A Hecke algebra element, a finite sum of delta_x with RatFunc
    coefficients.  Immutable by convention."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupTable, coeffs: dict[ElementId, RatFunc]):
        self.group = group
        self.coeffs = {x: c for x, c in coeffs.items() if not c.is_zero}

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, group: GroupTable) -> "HeckeElt":
        return cls(group, {})

    @classmethod
    def one(cls, group: GroupTable) -> "HeckeElt":
        return cls(group, {0: RatFunc.one()})

    @classmethod
    def std(cls, group: GroupTable, x: ElementId) -> "HeckeElt":
        """The standard basis element delta_x."""
        return cls(group, {x: RatFunc.one()})

    # -- linear structure --------------------------------------------------------

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        assert self.group is other.group
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out.get(x, RatFunc.zero()) + c
        return HeckeElt(self.group, out)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.group, {x: -c for x, c in self.coeffs.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        c = c if isinstance(c, RatFunc) else RatFunc(c)
        return HeckeElt(self.group, {x: cx * c for x, cx in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
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
            bits.append(f"({self.coeffs[x]!r})*d[{w}]")
        return " + ".join(bits)

    # -- multiplication -----------------------------------------------------------

    def times_gen(self, s: int, side: str = "right") -> "HeckeElt":
        """Multiply by delta_s on the given side.

        delta_x delta_s = delta_{xs} if xs > x, else delta_{xs} +
        (v^-1 - v) delta_x; mirrored for the left action.
        """
        g = self.group
        table = g.right if side == "right" else g.left
        vdiff = RatFunc(LaurentPoly({-1: 1, 1: -1}))
        out: dict[int, RatFunc] = {}
        for x, c in self.coeffs.items():
            xs = table[x][s]
            out[xs] = out.get(xs, RatFunc.zero()) + c
            if g.length[xs] < g.length[x]:
                out[x] = out.get(x, RatFunc.zero()) + c * vdiff
        return HeckeElt(g, out)

    def __mul__(self, other: "HeckeElt") -> "HeckeElt":
        if not isinstance(other, HeckeElt):
            return NotImplemented
        assert self.group is other.group
        if not self.coeffs or not other.coeffs:
            return HeckeElt.zero(self.group)
        avec, ascale = _clear(self)
        bvec, bscale = _clear(other)
        prod = _dense_product(self.group, avec, bvec)
        scale = ascale * bscale
        return HeckeElt(
            self.group, {y: RatFunc(LaurentPoly(p)) * scale for y, p in prod.items()}
        )

    # -- involutions ---------------------------------------------------------------

    def bar(self) -> "HeckeElt":
        """The bar involution: v -> v^-1, delta_x -> delta_{x^-1}^-1.

        Computed as bar(delta_x) = product along a reduced word of x of
        (delta_s + v - v^-1), times bar of each coefficient.
        """
        g = self.group
        if not self.coeffs:
            return self
        vdiff = RatFunc(LaurentPoly({1: 1, -1: -1}))  # v - v^-1
        bars: dict[int, HeckeElt] = {0: HeckeElt.one(g)}
        out = HeckeElt.zero(g)
        for x in sorted(self.coeffs, key=lambda t: (g.length[t], t)):
            for y in _prefix_chain(g, x):
                if y not in bars:
                    s = g.word[y][-1]
                    prev = bars[g.right[y][s]]
                    bars[y] = prev.times_gen(s, "right") + prev.scale(vdiff)
            out = out + bars[x].scale(self.coeffs[x].bar())
        return out


def _prefix_chain(g: GroupTable, x: ElementId):
    """Ids of all prefixes of the minimal word of x, shortest first."""
    out = []
    z = 0
    for s in g.word[x]:
        z = g.right[z][s]
        out.append(z)
    return out


# -- integer standard-basis kernel ---------------------------------------------


def _clear(elt: HeckeElt):
    """Write elt as scale * sum_y vec[y] delta_y with integer Laurent
    vectors; returns (vec, scale)."""
    den = LaurentPoly.one()
    for c in elt.coeffs.values():
        if not c.den.is_one:
            den = poly_lcm(den, c.den)
    f = 1
    polys: dict[int, LaurentPoly] = {}
    for y, c in elt.coeffs.items():
        p = c.num if den.is_one else c.num * poly_exact_div(den, c.den)
        polys[y] = p
        for _, coeff in p.items():
            if isinstance(coeff, Fraction):
                f = f * coeff.denominator // math.gcd(f, coeff.denominator)
    vec = {}
    for y, p in polys.items():
        d = {}
        for e, coeff in p.items():
            ci = coeff * f
            assert ci == int(ci)
            d[e] = int(ci)
        vec[y] = d
    scale = RatFunc(LaurentPoly.const(Fraction(1, f)), den)
    return vec, scale


def _split_pack(d: dict[int, int], offset: int, b: int):
    """Pack a {exp: int} polynomial into (pos, neg) big integers with one
    b-bit digit per exponent slot, exponent e in slot e - offset."""
    pos = neg = 0
    for e, c in d.items():
        if c > 0:
            pos += c << (b * (e - offset))
        else:
            neg += (-c) << (b * (e - offset))
    return pos, neg


def _split_decode(pos: int, neg: int, offset: int, b: int) -> dict[int, int]:
    mask = (1 << b) - 1
    out: dict[int, int] = {}
    e = 0
    while pos or neg:
        c = (pos & mask) - (neg & mask)
        if c:
            out[e + offset] = c
        pos >>= b
        neg >>= b
        e += 1
    return out


def _dense_product(g: GroupTable, avec, bvec):
    """Product (sum_a vec delta) (sum_b vec delta) over Z[v, v^-1].

    Walks the trie of minimal words of b's support once, maintaining
    a * delta_z for the current node z; every right generator step is a
    couple of big-integer shift-adds on the packed vectors.  Positive and
    negative coefficient parts are packed separately so no subtraction can
    borrow across digit boundaries.
    """
    length, right, word = g.length, g.right, g.word
    L = length[g.w0]

    def poly_bounds(vec):
        lo, hi, big = 0, 0, 1
        for d in vec.values():
            for e, c in d.items():
                lo = min(lo, e)
                hi = max(hi, e)
                big = max(big, abs(c))
        return lo, hi, big

    alo, ahi, abig = poly_bounds(avec)
    blo, bhi, bbig = poly_bounds(bvec)
    # digit width: |result digit| <= abig 2^L bbig nslots |suppb|, generously
    nslots_a = (ahi - alo) + 2 * L + 1
    bits = (abig * bbig).bit_length() + L + nslots_a.bit_length() + len(bvec).bit_length() + 4
    b = max(_B, (bits + 15) // 16 * 16)
    off_a = alo - L
    off_b = blo

    packed_b = {z: _split_pack(d, off_b, b) for z, d in bvec.items()}

    # trie of prefixes of b-support words
    children: dict[int, list[tuple[int, int]]] = {0: []}
    for z in bvec:
        node = 0
        for s in word[z]:
            nxt = right[node][s]
            kids = children.setdefault(node, [])
            if all(k != nxt for _, k in kids):
                kids.append((s, nxt))
            children.setdefault(nxt, [])
            node = nxt

    root_vec = {y: _split_pack(d, off_a, b) for y, d in avec.items()}
    acc: dict[int, list[int]] = {}

    def absorb(z, vec_z):
        bp, bn = packed_b[z]
        for y, (p, n) in vec_z.items():
            cell = acc.get(y)
            if cell is None:
                cell = [0, 0]
                acc[y] = cell
            if bp:
                if p:
                    cell[0] += bp * p
                if n:
                    cell[1] += bp * n
            if bn:
                if p:
                    cell[1] += bn * p
                if n:
                    cell[0] += bn * n

    # iterative DFS carrying a * delta_(current path) on a parallel stack
    stack = [(0, iter(children[0]))]
    vecs = [root_vec]
    if 0 in packed_b:
        absorb(0, root_vec)
    while stack:
        node, it = stack[-1]
        step = next(it, None)
        if step is None:
            stack.pop()
            vecs.pop()
            continue
        s, child = step
        cur = vecs[-1]
        nxt: dict[int, tuple[int, int]] = {}
        for y, (p, n) in cur.items():
            ys = right[y][s]
            cp, cn = nxt.get(ys, (0, 0))
            nxt[ys] = (cp + p, cn + n)
            if length[ys] < length[y]:
                # + (v^-1 - v) (p - n)
                cp, cn = nxt.get(y, (0, 0))
                nxt[y] = (cp + (p >> b) + (n << b), cn + (n >> b) + (p << b))
        vecs.append(nxt)
        stack.append((child, iter(children[child])))
        if child in packed_b:
            absorb(child, nxt)

    out = {}
    for y, (p, n) in acc.items():
        d = _split_decode(p, n, off_a + off_b, b)
        if d:
            out[y] = d
    return out


# -- KL basis, both directions ---------------------------------------------------


def kl_basis(group: GroupTable, x: ElementId, table: KLTable) -> HeckeElt:
    """b_x = sum_y h_{y,x} delta_y."""
    return HeckeElt(
        group, {y: RatFunc(p) for y, p in table.column(x).items()}
    )


def to_kl_basis(h: HeckeElt, table: KLTable) -> dict[ElementId, RatFunc]:
    """Coefficients of h in the KL basis, by back-substitution from the
    longest supported element down."""
    if not h.coeffs:
        return {}
    vec, scale = _clear(h)
    g = h.group
    out: dict[ElementId, RatFunc] = {}
    # descending ids: subtracting c b_x only touches y < x in Bruhat order,
    # and those have strictly smaller ids in the enumeration
    for x in range(max(vec), -1, -1):
        c = vec.get(x)
        if not c:
            continue
        out[x] = RatFunc(LaurentPoly(c)) * scale
        col = table.column_packed(x)
        for y, packed in col.items():
            if y == x:
                vec.pop(x, None)
                continue
            hy = _pk_decode(packed)
            tgt = vec.setdefault(y, {})
            _dp_add_into(tgt, _dp_mul(c, hy), scale=-1)
            if not tgt:
                vec.pop(y, None)
    assert not vec, "back-substitution left a nonzero residue"
    return {x: c for x, c in out.items() if not c.is_zero}


def kl_product_coeffs(table: KLTable, x: ElementId, s: int) -> dict[ElementId, LaurentPoly]:
    """KL-basis coefficients of b_x b_s, via the standard basis and
    back-substitution.  Used for the mu-identity and ideal-closure checks."""
    g = table.group
    length, right = g.length, g.right
    acc: dict[int, dict[int, int]] = {}
    for y, packed in table.column_packed(x).items():
        p = _pk_decode(packed)
        ys = right[y][s]
        _dp_add_into(acc.setdefault(ys, {}), p)
        _dp_add_into(acc.setdefault(y, {}), p, shift=1 if length[ys] > length[y] else -1)
    out: dict[ElementId, LaurentPoly] = {}
    for z in range(max(acc), -1, -1):
        c = acc.get(z)
        if not c:
            continue
        out[z] = LaurentPoly(c)
        for y, packed in table.column_packed(z).items():
            if y == z:
                acc.pop(z, None)
                continue
            tgt = acc.setdefault(y, {})
            _dp_add_into(tgt, _dp_mul(c, _pk_decode(packed)), scale=-1)
            if not tgt:
                acc.pop(y, None)
    assert not acc
    return {z: p for z, p in out.items() if not p.is_zero}


# -- the antisymmetriser ------------------------------------------------------------


def t_w0_class(group: GroupTable) -> HeckeElt:
    """The class [T_w0] = sum_x (-v)^(-length(x w0)) delta_x.

    It satisfies [T_w0] delta_s = -v [T_w0] for every generator s,
    hence [T_w0]^2 = (-1)^length(w0) grrk(w0) [T_w0]: squaring multiplies
    each delta_x through [T_w0] and picks up (-v)^length(x) per term.
    """
    lw0 = group.length[group.w0]
    coeffs = {}
    for x in range(group.size):
        k = lw0 - group.length[x]
        coeffs[x] = RatFunc(LaurentPoly({-k: (-1) ** k}))
    return HeckeElt(group, coeffs)


def antisymmetriser(group: GroupTable, table: KLTable) -> HeckeElt:
    """The idempotent e_sign = (-1)^length(w0) [T_w0] / grrk(w0),
    normalized so the coefficient of b_id is positive.

    Its delta_x coefficient is (-1)^length(x) v^(-length(x w0)) / grrk(w0).
    """
    g = group
    lw0 = g.length[g.w0]
    grrk_w0 = LaurentPoly.zero()
    for y, p in table.column(g.w0).items():
        grrk_w0 = grrk_w0 + p.shift(-g.length[y])
    sign = -1 if lw0 % 2 else 1
    return t_w0_class(g).scale(RatFunc(LaurentPoly.const(sign), grrk_w0))


# -- whole-basis verification (integer kernel) -----------------------------------


def verify_bar_invariance(group: GroupTable, table: KLTable, elements=None) -> int:
    """Check bar(b_x) = b_x for every x (or the given ids), computing
    bar(delta_y) independently as products of (delta_s + v - v^-1) along
    minimal words.  Returns the number of elements checked."""
    g = group
    todo = sorted(elements if elements is not None else range(g.size))
    if not todo:
        return 0
    length, right = g.length, g.right
    # bar(delta_y) as integer vectors, built along the weak right order
    bars: dict[int, dict[int, dict[int, int]]] = {0: {0: {0: 1}}}
    maxlen = max(length[x] for x in todo)
    for y in range(1, g.size):
        if length[y] > maxlen:
            break
        s = g.word[y][-1]
        prev = bars[right[y][s]]
        cur: dict[int, dict[int, int]] = {}
        for z, p in prev.items():
            zs = right[z][s]
            _dp_add_into(cur.setdefault(zs, {}), p)
            # (v - v^-1) p, plus the extra (v^-1 - v) p when zs < z
            if length[zs] > length[z]:
                tgt = cur.setdefault(z, {})
                _dp_add_into(tgt, p, shift=1)
                _dp_add_into(tgt, p, scale=-1, shift=-1)
                if not tgt:
                    cur.pop(z, None)
        for z in [z for z, p in cur.items() if not p]:
            cur.pop(z)
        bars[y] = cur
    checked = 0
    for x in todo:
        expect = {y: _pk_decode(p) for y, p in table.column_packed(x).items()}
        got: dict[int, dict[int, int]] = {}
        for y, p in expect.items():
            bar_p = {-e: c for e, c in p.items()}
            for z, q in bars[y].items():
                tgt = got.setdefault(z, {})
                _dp_add_into(tgt, _dp_mul(bar_p, q))
                if not tgt:
                    got.pop(z, None)
        if got != expect:
            raise AssertionError(f"b_{x} is not bar-invariant")
        checked += 1
    return checked


# -- on-disk cache ------------------------------------------------------------------


def write_kl_cache(path: str, table: KLTable) -> int:
    """Write every computed column to ``path`` atomically.  Lines are
    sorted, the trailing record pins the line count, and a rewrite of the
    same table state is byte-identical."""
    g = table.group
    pres = g.presentation
    lines = [f"kltable 1 {pres.family} {pres.m_parameter}"]
    count = 0
    for x in table.computed_columns():
        col = table.column_packed(x)
        for y in sorted(col):
            terms = _pk_decode(col[y])
            body = " ".join(f"{e}:{terms[e]}" for e in sorted(terms))
            lines.append(f"{x} {y} {body}")
            count += 1
    lines.append(f"end {count}")
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".kltmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return count


def load_kl_cache(path: str, table: KLTable) -> int:
    """Merge columns from ``path`` into the table after validating the
    header, every entry, and the trailing line count.  Raises
    CacheFormatError on any mismatch; returns the number of columns added."""
    g = table.group
    pres = g.presentation
    lw0 = g.length[g.w0]
    with open(path) as f:
        raw = f.read().splitlines()
    if not raw:
        raise CacheFormatError("empty cache file")
    head = raw[0].split()
    if head != ["kltable", "1", pres.family, str(pres.m_parameter)]:
        raise CacheFormatError(f"header mismatch: {raw[0]!r}")
    if not raw[-1].startswith("end "):
        raise CacheFormatError("missing trailing count record")
    try:
        declared = int(raw[-1].split()[1])
    except (IndexError, ValueError) as exc:
        raise CacheFormatError("bad trailing count record") from exc
    body = raw[1:-1]
    if declared != len(body):
        raise CacheFormatError(f"line count {len(body)} != declared {declared}")
    cols: dict[int, dict[int, int]] = {}
    try:
        for line in body:
            parts = line.split()
            x, y = int(parts[0]), int(parts[1])
            if not (0 <= y < g.size and 0 <= x < g.size):
                raise CacheFormatError(f"element id out of range: {line!r}")
            terms = {}
            for item in parts[2:]:
                e, c = item.split(":")
                e, c = int(e), int(c)
                if not (0 <= e <= lw0) or c <= 0:
                    raise CacheFormatError(f"invalid term {item!r}")
                terms[e] = c
            if not terms or y in cols.get(x, {}):
                raise CacheFormatError(f"empty or duplicate entry: {line!r}")
            cols.setdefault(x, {})[y] = _pk_encode(terms)
    except (IndexError, ValueError) as exc:
        raise CacheFormatError(f"unparseable line: {exc}") from exc
    added = 0
    with table._lock:
        for x, col in cols.items():
            if col.get(x) != 1:
                raise CacheFormatError(f"column {x} is not unitriangular")
            if x not in table._cols:
                table._cols[x] = col
                added += 1
    return added

"""Finite Coxeter groups of types A, B, F4, H3, H4 and I2(m).

Each group is enumerated once into a ``GroupTable``: a flat array of
elements indexed 0..|W|-1, sorted by (length, ShortLex-minimal reduced
word), together with multiplication-by-generator tables, inverses,
lengths, minimal words, the longest element and fully-commutative flags.
Index 0 is always the identity and the last index is the longest element
w0.

Elements are concretely modelled per family, which keeps the enumeration
honest and the braid relations checkable:

  * type A, rank n: permutations of {0, ..., n}, generator i swaps the
    entries in positions i and i+1;
  * type B, rank n: signed permutations written in window notation
    (w(1), ..., w(n)); generator 0 negates the first entry and generator
    i >= 1 swaps entries i and i+1, so m(s0, s1) = 4;
  * type I2(m): pairs (rotation, reflection) in the dihedral group of
    order 2m, with s = (0, 1) and t = (m-1, 1) so that st = (1, 0);
  * types H3, H4, F4: matrices of the reflection representation over the
    quadratic field Q(sqrt 5) (H types) or Q(sqrt 2) (F4), acting on the
    basis of simple roots via s_t(a_u) = a_u - c(u, t) a_t with
    c(u, t) = -2 cos(pi / m(u, t)).

Type C is accepted as an alias of B.  Types D and E are rejected: the
Temperley-Lieb truncation downstream is not compatible with the
Kazhdan-Lusztig basis there (type D genuinely fails, type E is not
established), so this toolkit does not build those groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

ElementId = int  # index into a GroupTable enumeration

LARGE_ORDER = 10_000  # larger groups need an explicit opt-in


class UnsupportedFamilyError(ValueError):
    """Requested a Coxeter family or rank outside the supported list."""


class LargeComputationError(RuntimeError):
    """Refused a large build that was not explicitly opted into."""


@dataclass(frozen=True)
class CoxeterPresentation:
    """A supported family with its rank and Coxeter matrix."""

    family: str
    rank: int
    matrix: tuple[tuple[int, ...], ...]  # m(s, t); diagonal entries 1

    @property
    def m_parameter(self) -> int:
        """For I2(m) the defining m; for other families the label rank."""
        if self.family == "I2":
            return self.matrix[0][1]
        return self.rank


def _chain_matrix(rank: int, bonds: dict[tuple[int, int], int]) -> tuple[tuple[int, ...], ...]:
    m = [[2] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 1
    for (i, j), val in bonds.items():
        m[i][j] = m[j][i] = val
    return tuple(tuple(row) for row in m)


def presentation(family: str, rank: int | None = None, m: int | None = None) -> CoxeterPresentation:
    """Build the presentation for a supported family.

    ``family`` is one of A, B, C (alias of B), F4, H3, H4, I2.  For I2 the
    parameter ``m`` >= 3 is required; other families take ``rank``.
    """
    fam = family.strip().upper()
    if fam in ("D", "E", "E6", "E7", "E8") or fam.startswith("D"):
        raise UnsupportedFamilyError(
            f"type {family} is not supported: the Temperley-Lieb truncation is not "
            "compatible with the Kazhdan-Lusztig basis in type D (some products of "
            "basis elements indexed by non-fully-commutative elements escape the "
            "ideal), and for type E no such compatibility is established"
        )
    if fam == "C":
        fam = "B"
    if fam == "I2":
        if m is None:
            raise UnsupportedFamilyError("family I2 requires the parameter m")
        if m < 3:
            raise UnsupportedFamilyError(f"I2(m) requires m >= 3, got m={m}")
        return CoxeterPresentation("I2", 2, _chain_matrix(2, {(0, 1): m}))
    if fam == "A":
        if rank is None or rank < 1:
            raise UnsupportedFamilyError(f"type A requires rank >= 1, got {rank}")
        return CoxeterPresentation("A", rank, _chain_matrix(rank, {(i, i + 1): 3 for i in range(rank - 1)}))
    if fam == "B":
        if rank is None or rank < 2:
            raise UnsupportedFamilyError(f"type B requires rank >= 2, got {rank}")
        bonds = {(0, 1): 4}
        bonds.update({(i, i + 1): 3 for i in range(1, rank - 1)})
        return CoxeterPresentation("B", rank, _chain_matrix(rank, bonds))
    if fam == "F4":
        if rank not in (None, 4):
            raise UnsupportedFamilyError(f"type F4 has rank 4, got {rank}")
        return CoxeterPresentation("F4", 4, _chain_matrix(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3}))
    if fam == "H3":
        if rank not in (None, 3):
            raise UnsupportedFamilyError(f"type H3 has rank 3, got {rank}")
        return CoxeterPresentation("H3", 3, _chain_matrix(3, {(0, 1): 5, (1, 2): 3}))
    if fam == "H4":
        if rank not in (None, 4):
            raise UnsupportedFamilyError(f"type H4 has rank 4, got {rank}")
        return CoxeterPresentation("H4", 4, _chain_matrix(4, {(0, 1): 5, (1, 2): 3, (2, 3): 3}))
    raise UnsupportedFamilyError(f"unknown Coxeter family {family!r}")


def classical_order(pres: CoxeterPresentation) -> int:
    """|W| by the classical product formulas."""
    if pres.family == "A":
        return math.factorial(pres.rank + 1)
    if pres.family == "B":
        return (2**pres.rank) * math.factorial(pres.rank)
    if pres.family == "F4":
        return 1152
    if pres.family == "H3":
        return 120
    if pres.family == "H4":
        return 14400
    if pres.family == "I2":
        return 2 * pres.m_parameter
    raise UnsupportedFamilyError(pres.family)


# -- concrete element models -------------------------------------------------


class _PermModel:
    """Type A: permutations of {0, ..., rank} as tuples."""

    def __init__(self, rank: int):
        self.rank = rank

    def identity(self):
        return tuple(range(self.rank + 1))

    def apply_gen(self, p, s: int):
        q = list(p)
        q[s], q[s + 1] = q[s + 1], q[s]
        return tuple(q)


class _SignedPermModel:
    """Type B: window notation (w(1), ..., w(n)) with signed entries."""

    def __init__(self, rank: int):
        self.rank = rank

    def identity(self):
        return tuple(range(1, self.rank + 1))

    def apply_gen(self, p, s: int):
        q = list(p)
        if s == 0:
            q[0] = -q[0]
        else:
            q[s - 1], q[s] = q[s], q[s - 1]
        return tuple(q)


class _DihedralModel:
    """I2(m): pairs (rotation mod m, reflection bit)."""

    def __init__(self, m: int):
        self.m = m
        self._gens = ((0, 1), (m - 1, 1))

    def identity(self):
        return (0, 0)

    def apply_gen(self, x, s: int):
        a, e = x
        b, f = self._gens[s]
        return ((a + (b if e == 0 else -b)) % self.m, (e + f) % 2)


def _quad_mul(x, y, d):
    # (a + b sqrt(d)) (c + e sqrt(d))
    a, b = x
    c, e = y
    return (a * c + d * b * e, a * e + b * c)


class _MatrixModel:
    """Reflection representation over Q(sqrt d) for H3, H4, F4."""

    _COS2 = {
        # -2 cos(pi/m) as (rational, sqrt-part) in Q(sqrt d)
        2: (Fraction(0), Fraction(0)),
        3: (Fraction(-1), Fraction(0)),
        4: (Fraction(0), Fraction(-1)),  # -sqrt(2), d = 2
        5: (Fraction(-1, 2), Fraction(-1, 2)),  # -(1 + sqrt 5)/2, d = 5
    }

    def __init__(self, matrix: tuple[tuple[int, ...], ...], d: int):
        self.d = d
        self.rank = len(matrix)
        zero, one = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))
        self._id = tuple(
            tuple(one if i == j else zero for j in range(self.rank)) for i in range(self.rank)
        )
        self._gen_mats = []
        for t in range(self.rank):
            rows = [list(row) for row in self._id]
            for u in range(self.rank):
                c = (Fraction(2), Fraction(0)) if u == t else self._COS2[matrix[u][t]]
                rows[t][u] = (rows[t][u][0] - c[0], rows[t][u][1] - c[1])
            self._gen_mats.append(tuple(tuple(r) for r in rows))

    def identity(self):
        return self._id

    def apply_gen(self, x, s: int):
        g = self._gen_mats[s]
        n, d = self.rank, self.d
        out = []
        for i in range(n):
            row = x[i]
            new_row = []
            for j in range(n):
                acc_a = Fraction(0)
                acc_b = Fraction(0)
                for k in range(n):
                    pa, pb = _quad_mul(row[k], g[k][j], d)
                    acc_a += pa
                    acc_b += pb
                new_row.append((acc_a, acc_b))
            out.append(tuple(new_row))
        return tuple(out)


def _model_for(pres: CoxeterPresentation):
    if pres.family == "A":
        return _PermModel(pres.rank)
    if pres.family == "B":
        return _SignedPermModel(pres.rank)
    if pres.family == "I2":
        return _DihedralModel(pres.m_parameter)
    if pres.family == "F4":
        return _MatrixModel(pres.matrix, 2)
    if pres.family in ("H3", "H4"):
        return _MatrixModel(pres.matrix, 5)
    raise UnsupportedFamilyError(pres.family)


# -- the enumerated group ----------------------------------------------------


class GroupTable:
    """A fully enumerated finite Coxeter group.

    Immutable after construction except for the Bruhat-order memo, which
    only ever gains entries and is deterministic.
    """

    def __init__(self, pres, size, length, word, right, left, inv, fc):
        self.presentation = pres
        self.size = size
        self.length = length  # list[int]
        self.word = word  # list[tuple[int, ...]], ShortLex-minimal reduced words
        self.right = right  # right[x][s] = x * s
        self.left = left  # left[x][s] = s * x
        self.inv = inv  # list[ElementId]
        self.fc = fc  # list[bool], fully commutative flags
        self.w0 = size - 1
        self.rank = pres.rank
        self._bruhat_memo: dict[tuple[int, int], bool] = {}

    # -- basic operations ----------------------------------------------------

    def multiply(self, x: ElementId, y: ElementId) -> ElementId:
        for s in self.word[y]:
            x = self.right[x][s]
        return x

    def inverse(self, x: ElementId) -> ElementId:
        return self.inv[x]

    def right_descents(self, x: ElementId):
        lx = self.length[x]
        return [s for s in range(self.rank) if self.length[self.right[x][s]] < lx]

    def left_descents(self, x: ElementId):
        lx = self.length[x]
        return [s for s in range(self.rank) if self.length[self.left[x][s]] < lx]

    def first_left_descent(self, x: ElementId) -> int:
        lx = self.length[x]
        for s in range(self.rank):
            if self.length[self.left[x][s]] < lx:
                return s
        raise ValueError("identity has no descents")

    def is_fully_commutative(self, x: ElementId) -> bool:
        return self.fc[x]

    def fc_elements(self) -> list[ElementId]:
        return [x for x in range(self.size) if self.fc[x]]

    # -- Bruhat order ----------------------------------------------------------

    def bruhat_leq(self, y: ElementId, x: ElementId) -> bool:
        """y <= x in Bruhat order, by the descent recursion."""
        if y == x or y == 0:
            return True
        if self.length[y] >= self.length[x]:
            return False
        key = (y, x)
        memo = self._bruhat_memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        s = self.first_left_descent(x)
        sx = self.left[x][s]
        sy = self.left[y][s]
        if self.length[sy] < self.length[y]:
            result = self.bruhat_leq(sy, sx)
        else:
            result = self.bruhat_leq(y, sx)
        memo[key] = result
        return result

    def bruhat_interval_below(self, x: ElementId) -> list[ElementId]:
        return [y for y in range(self.size) if self.bruhat_leq(y, x)]


def build_group(pres: CoxeterPresentation, allow_large: bool = False) -> GroupTable:
    """Enumerate the group and build all tables.

    Groups with more than LARGE_ORDER elements (H4, high-rank A and B)
    are refused unless ``allow_large`` is set.
    """
    order = classical_order(pres)
    if order > LARGE_ORDER and not allow_large:
        raise LargeComputationError(
            f"{pres.family} rank {pres.rank} has {order} elements; "
            "pass allow_large=True (CLI: --allow-large) to build it"
        )

    model = _model_for(pres)
    rank = pres.rank
    ident = model.identity()
    ids: dict[object, int] = {ident: 0}
    elements = [ident]
    word: list[tuple[int, ...]] = [()]
    length = [0]

    # layered BFS; each new layer is sorted by its ShortLex-minimal word,
    # computed from minimal words of the previous layer
    frontier = [0]
    while frontier:
        discovered: dict[object, tuple[int, ...]] = {}
        for x in frontier:
            wx = word[x]
            for s in range(rank):
                y = model.apply_gen(elements[x], s)
                if y in ids:
                    continue
                cand = wx + (s,)
                best = discovered.get(y)
                if best is None or cand < best:
                    discovered[y] = cand
        layer = sorted(discovered.items(), key=lambda kv: kv[1])
        frontier = []
        for elt, w in layer:
            idx = len(elements)
            ids[elt] = idx
            elements.append(elt)
            word.append(w)
            length.append(len(w))
            frontier.append(idx)

    size = len(elements)
    assert size == order, f"enumerated {size} elements, classical order is {order}"
    assert length.count(length[-1]) == 1, "longest element is not unique"

    right = [[0] * rank for _ in range(size)]
    for x in range(size):
        for s in range(rank):
            right[x][s] = ids[model.apply_gen(elements[x], s)]

    inv = [0] * size
    for x in range(size):
        z = 0
        for s in reversed(word[x]):
            z = right[z][s]
        inv[x] = z
    left = [[inv[right[inv[x]][s]] for s in range(rank)] for x in range(size)]

    fc = _fc_flags(pres, elements, word)
    return GroupTable(pres, size, length, word, right, left, inv, fc)


# -- fully commutative elements ------------------------------------------------


def _has_321(p) -> bool:
    # a descending subsequence of length 3, scanned right to left
    n = len(p)
    best_after = [0] * n  # best_after[i]: max chain length starting at i going right, descending
    ans = False
    for i in range(n - 1, -1, -1):
        chain = 1
        for j in range(i + 1, n):
            if p[j] < p[i] and best_after[j] + 1 > chain:
                chain = best_after[j] + 1
        best_after[i] = chain
        if chain >= 3:
            ans = True
            break
    return ans


def _word_has_braid(w, matrix) -> bool:
    k = len(w)
    for i in range(k - 2):
        s, t = w[i], w[i + 1]
        if s == t:
            continue
        m = matrix[s][t]
        if m < 3 or i + m > k:
            continue
        ok = True
        for j in range(m):
            if w[i + j] != (s if j % 2 == 0 else t):
                ok = False
                break
        if ok:
            return True
    return False


def _is_fc_generic(w: tuple[int, ...], matrix) -> bool:
    """Walk the commutation class of w; fully commutative means no word in
    the class contains an alternating braid substring s t s ... of length
    m(s, t) >= 3.  If the class is braid-free it is closed under all braid
    moves, hence exhausts every reduced word of the element."""
    seen = {w}
    stack = [w]
    while stack:
        u = stack.pop()
        if _word_has_braid(u, matrix):
            return False
        for i in range(len(u) - 1):
            s, t = u[i], u[i + 1]
            if s != t and matrix[s][t] == 2:
                u2 = u[:i] + (t, s) + u[i + 2 :]
                if u2 not in seen:
                    seen.add(u2)
                    stack.append(u2)
    return True


def _fc_flags(pres, elements, word) -> list[bool]:
    if pres.family == "A":
        return [not _has_321(p) for p in elements]
    matrix = pres.matrix
    return [_is_fc_generic(w, matrix) for w in word]


# -- brute-force Bruhat oracle (exported for verification suites) -------------


def bruhat_leq_subword(g: GroupTable, y: ElementId, x: ElementId) -> bool:
    """Independent subword-criterion check: y <= x iff y is a product of
    some subsequence of a fixed reduced word of x.  Exponential in
    length(x); only for small groups and cross-checks."""
    w = g.word[x]
    k = len(w)
    if k > 20:
        raise LargeComputationError(f"subword oracle refuses length {k}")
    for mask in range(1 << k):
        z = 0
        for i in range(k):
            if mask >> i & 1:
                z = g.right[z][w[i]]
        if z == y:
            return True
    return False

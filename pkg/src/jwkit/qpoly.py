"""Exact arithmetic in Z[v, v^-1] and its fraction field.

Laurent polynomials are stored sparsely as {exponent: coefficient} with
integer exponents and rational coefficients (plain ints where possible,
fractions.Fraction otherwise).  Rational functions are kept in a canonical
form so that equality is literal comparison of numerator and denominator:

  * the denominator is an honest polynomial (no negative exponents) with a
    nonzero constant term, monic in its top degree;
  * numerator and denominator share no polynomial factor.

The two ring involutions used throughout are bar (v -> v^-1) and the
Koszul sign twist kappa (v -> -v^-1).  Quantum integers are balanced:
[n] = v^(n-1) + v^(n-3) + ... + v^(1-n), so [2] = v + v^-1 and
[3] = v^2 + 1 + v^-2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

Coeff = Union[int, Fraction]


def _norm_coeff(c: Coeff) -> Coeff:
    """Collapse integer-valued Fractions to int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """A Laurent polynomial in v with rational coefficients.

    >>> v = LaurentPoly.gen()
    >>> (v + v**-1) * (v - v**-1)
    v^2 - v^-2
    >>> quantum_int(3)
    v^2 + 1 + v^-2
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | None = None):
        t: dict[int, Coeff] = {}
        if terms:
            for e, c in terms.items():
                c = _norm_coeff(c)
                if c:
                    t[int(e)] = c
        self._terms = t
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def gen(cls, exponent: int = 1) -> "LaurentPoly":
        """The monomial v^exponent."""
        return cls({exponent: 1})

    @classmethod
    def const(cls, c: Coeff) -> "LaurentPoly":
        return cls({0: c})

    # -- inspection --------------------------------------------------------

    def items(self) -> Iterator[tuple[int, Coeff]]:
        return iter(self._terms.items())

    def terms_dict(self) -> dict[int, Coeff]:
        """A copy of the internal {exponent: coefficient} map."""
        return dict(self._terms)

    def coefficient(self, exponent: int) -> Coeff:
        return self._terms.get(exponent, 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: object) -> "LaurentPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            s = _norm_coeff(t.get(e, 0) + c)
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return _wrap(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return _wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "LaurentPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "LaurentPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: object):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        t: dict[int, Coeff] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = _norm_coeff(t.get(e, 0) + c1 * c2)
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return _wrap(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_monomial():
                ((e, c),) = self._terms.items()
                return _wrap({e * n: _norm_coeff(Fraction(1) / Fraction(c) ** (-n))})
            raise ValueError("negative powers only defined for monomials")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other: object) -> "RatFunc":
        if isinstance(other, RatFunc):
            return RatFunc(self, LaurentPoly.one()) / other
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self, other)

    def __rtruediv__(self, other: object) -> "RatFunc":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(other, self)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the monomial v^k."""
        return _wrap({e + k: c for e, c in self._terms.items()})

    def scale(self, c: Coeff) -> "LaurentPoly":
        c = _norm_coeff(c)
        if not c:
            return LaurentPoly.zero()
        return _wrap({e: _norm_coeff(x * c) for e, x in self._terms.items()})

    # -- involutions -------------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1."""
        return _wrap({-e: c for e, c in self._terms.items()})

    def koszul(self) -> "LaurentPoly":
        """The involution v -> -v^-1.

        >>> two = quantum_int(2)
        >>> two.koszul() == -two
        True
        """
        return _wrap({-e: (c if e % 2 == 0 else -c) for e, c in self._terms.items()})

    # -- comparisons, hashing, display --------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: _norm_coeff(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            if e == 0:
                mono = str(abs(c) if isinstance(c, int) else abs(c))
            else:
                vpow = "v" if e == 1 else f"v^{e}"
                ac = abs(c)
                mono = vpow if ac == 1 else f"{ac}*{vpow}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first_mono = parts[0]
        out = ("-" if first_sign == "-" else "") + first_mono
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    # -- serialization -----------------------------------------------------

    def to_triples(self) -> list[list[int]]:
        """[exponent, coefficient numerator, coefficient denominator] rows,
        exponents strictly decreasing."""
        rows = []
        for e in sorted(self._terms, reverse=True):
            c = Fraction(self._terms[e])
            rows.append([e, c.numerator, c.denominator])
        return rows

    @classmethod
    def from_triples(cls, rows) -> "LaurentPoly":
        t: dict[int, Coeff] = {}
        prev = None
        for e, num, den in rows:
            if prev is not None and e >= prev:
                raise ValueError("exponents must be strictly decreasing")
            prev = e
            t[e] = Fraction(num, den)
        return cls(t)


def _wrap(t: dict[int, Coeff]) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p._terms = {e: c for e, c in t.items() if c}
    p._hash = None
    return p


def _as_poly(x: object):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


# -- polynomial gcd (helpers for RatFunc canonicalization) ------------------


def _poly_divmod(a: dict[int, Coeff], b: dict[int, Coeff]):
    """Division with remainder for honest polynomials (exponents >= 0)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q: dict[int, Coeff] = {}
    r = dict(a)
    db = max(b)
    lb = b[db]
    while r and max(r) >= db:
        dr = max(r)
        c = _norm_coeff(Fraction(r[dr]) / Fraction(lb))
        q[dr - db] = c
        for e, bc in b.items():
            e2 = e + dr - db
            s = _norm_coeff(r.get(e2, 0) - c * bc)
            if s:
                r[e2] = s
            else:
                r.pop(e2, None)
    return q, r


def _poly_gcd(a: dict[int, Coeff], b: dict[int, Coeff]) -> dict[int, Coeff]:
    """Monic gcd of two honest polynomials over Q."""
    a, b = dict(a), dict(b)
    while b:
        # keep remainders monic so coefficients stay small
        lead = b[max(b)]
        if lead != 1:
            b = {e: _norm_coeff(Fraction(c) / Fraction(lead)) for e, c in b.items()}
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return {}
    lead = a[max(a)]
    if lead != 1:
        a = {e: _norm_coeff(Fraction(c) / Fraction(lead)) for e, c in a.items()}
    return a


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of the polynomial parts (monomial factors dropped)."""
    if a.is_zero:
        return b if b.is_zero else _wrap(dict(b.shift(-b.min_exponent())._terms))
    if b.is_zero:
        return _wrap(dict(a.shift(-a.min_exponent())._terms))
    g = _poly_gcd(a.shift(-a.min_exponent())._terms, b.shift(-b.min_exponent())._terms)
    return _wrap(g)


def poly_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic lcm of the polynomial parts of two nonzero Laurent polynomials."""
    if a == b:
        return a
    g = poly_gcd(a, b)
    q, r = _poly_divmod(a.shift(-a.min_exponent())._terms, g._terms)
    assert not r
    out = _wrap(q) * b.shift(-b.min_exponent())
    lead = out.coefficient(out.max_exponent())
    if lead != 1:
        out = out.scale(1 / Fraction(lead))
    return out


def poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """a / b when b divides a exactly (up to a monomial)."""
    ka = a.min_exponent()
    kb = b.min_exponent()
    q, r = _poly_divmod(a.shift(-ka)._terms, b.shift(-kb)._terms)
    if r:
        raise ValueError("not an exact polynomial division")
    return _wrap(q).shift(ka - kb)


class RatFunc:
    """A rational function in v over Q, kept in canonical form.

    >>> v = LaurentPoly.gen()
    >>> f = (v**2 + 1 + v**-2) / (v + v**-1)
    >>> f.num
    v^3 + v + v^-1
    >>> f.den
    v^2 + 1
    >>> f * (v + v**-1) == v**2 + 1 + v**-2
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly | Coeff, den: LaurentPoly | Coeff = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc expects Laurent polynomials or rationals")
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash: int | None = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(0)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(1)

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p)

    # -- inspection ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_one

    def as_poly(self) -> LaurentPoly:
        if not self.den.is_one:
            raise ValueError(f"not a Laurent polynomial: {self!r}")
        return self.num

    # -- field operations ----------------------------------------------------

    def __add__(self, other: object) -> "RatFunc":
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num = -self.num
        r.den = self.den
        r._hash = None
        return r

    def __sub__(self, other: object) -> "RatFunc":
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "RatFunc":
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: object) -> "RatFunc":
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one and other.den.is_one:
            r = RatFunc.__new__(RatFunc)
            r.num = self.num * other.num
            r.den = self.den
            r._hash = None
            return r
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RatFunc":
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: object) -> "RatFunc":
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    # -- involutions ---------------------------------------------------------

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def koszul(self) -> "RatFunc":
        return RatFunc(self.num.koszul(), self.den.koszul())

    # -- comparisons, hashing, display ----------------------------------------

    def __eq__(self, other: object) -> bool:
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __repr__(self) -> str:
        if self.den.is_one:
            return repr(self.num)
        ns = repr(self.num)
        if len(self.num._terms) > 1:
            ns = f"({ns})"
        return f"{ns}/({self.den!r})"

    # -- serialization -------------------------------------------------------

    def to_triples(self) -> dict[str, list[list[int]]]:
        return {"num": self.num.to_triples(), "den": self.den.to_triples()}

    @classmethod
    def from_triples(cls, doc) -> "RatFunc":
        return cls(LaurentPoly.from_triples(doc["num"]), LaurentPoly.from_triples(doc["den"]))


def _as_rat(x: object):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, LaurentPoly)):
        return RatFunc(x)
    return NotImplemented


def _canonicalize(num: LaurentPoly, den: LaurentPoly):
    """Reduce num/den to the canonical representative described above."""
    if num.is_zero:
        return LaurentPoly.zero(), LaurentPoly.one()
    # clear negative exponents from the denominator; afterwards den(0) != 0
    shift = -den.min_exponent()
    num = num.shift(shift)
    den = den.shift(shift)
    if den.is_one:
        return num, den
    # cancel the polynomial gcd; the monomial part of num never cancels
    # against den because den has a nonzero constant term
    k = num.min_exponent()
    g = _poly_gcd(num.shift(-k)._terms, den._terms)
    if g != {0: 1}:
        q, r = _poly_divmod(num.shift(-k)._terms, g)
        assert not r
        num = _wrap(q).shift(k)
        q, r = _poly_divmod(den._terms, g)
        assert not r
        den = _wrap(q)
    # make the denominator monic
    lead = den._terms[den.max_exponent()]
    if lead != 1:
        inv = 1 / Fraction(lead)
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


# -- quantum integers --------------------------------------------------------


def quantum_int(n: int) -> LaurentPoly:
    """The balanced quantum integer [n] = v^(n-1) + v^(n-3) + ... + v^(1-n).

    >>> quantum_int(1)
    1
    >>> quantum_int(2)
    v + v^-1
    """
    if n < 1:
        raise ValueError(f"quantum integer defined for n >= 1, got {n}")
    return _wrap({n - 1 - 2 * i: 1 for i in range(n)})


def quantum_factorial(n: int) -> LaurentPoly:
    """[n]! = [n][n-1]...[1].

    >>> quantum_factorial(3)
    v^3 + 2*v + 2*v^-1 + v^-3
    """
    if n < 1:
        raise ValueError(f"quantum factorial defined for n >= 1, got {n}")
    out = LaurentPoly.one()
    for k in range(2, n + 1):
        out = out * quantum_int(k)
    return out


def parity_class(p: LaurentPoly, k: int) -> bool:
    """True when p lies in v^k * Z[v^-2]: every exponent is congruent to k
    mod 2 and bounded above by k.  The zero polynomial qualifies for any k."""
    return all(e <= k and (e - k) % 2 == 0 for e in p._terms)

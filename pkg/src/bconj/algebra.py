"""Exact coefficient arithmetic: polynomials and rational functions in alpha.

``AlphaPolynomial`` holds ``Fraction`` coefficients, lowest degree first.
``AlphaRational`` is a reduced quotient ``num/den`` whose denominator has
integer coefficients with content 1 and a positive leading coefficient, so
that equal values have identical representations.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class AlgebraError(ArithmeticError):
    pass


class PoleError(AlgebraError):
    """Raised when a series expansion at alpha = 0 is requested for a function with a pole there."""


class NotPolynomialError(AlgebraError):
    def __init__(self, denominator: "AlphaPolynomial"):
        self.denominator = denominator
        super().__init__(f"not a polynomial: denominator {denominator}")


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class AlphaPolynomial:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _trim([_frac(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "AlphaPolynomial":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "AlphaPolynomial":
        return cls._raw((_frac(c),)) if c else ZERO_POLY

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "AlphaPolynomial":
        return cls._raw((Fraction(0),) * degree + (_frac(c),)) if c else ZERO_POLY

    @staticmethod
    def product(factors: Iterable["AlphaPolynomial"]) -> "AlphaPolynomial":
        return reduce(lambda a, b: a * b, factors, ONE_POLY)

    # --- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def order(self) -> int:
        """Smallest exponent with a nonzero coefficient."""
        if not self.coeffs:
            raise AlgebraError("order of the zero polynomial")
        for k, c in enumerate(self.coeffs):
            if c:
                return k

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, AlphaPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((_frac(other),) if other else ())
        if isinstance(other, AlphaRational):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if len(self.coeffs) > 1:
                self._hash = hash(self.coeffs)
            else:
                self._hash = hash(self.coeffs[0]) if self.coeffs else 0
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    # --- arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "AlphaPolynomial":
        if isinstance(x, AlphaPolynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return AlphaPolynomial.constant(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return AlphaPolynomial._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return AlphaPolynomial._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO_POLY
            return AlphaPolynomial._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, AlphaPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return AlphaPolynomial._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative power of a polynomial")
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return AlphaRational(self, other)

    def __rtruediv__(self, other):
        return AlphaRational(other, self)

    def divmod(self, other: "AlphaPolynomial") -> tuple["AlphaPolynomial", "AlphaPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = c / lead
                quot[k - db] = q
                for i, bc in enumerate(other.coeffs):
                    rem[k - db + i] -= q * bc
        return AlphaPolynomial._raw(_trim(quot)), AlphaPolynomial._raw(_trim(rem[:db]))

    # --- evaluation and substitutions -------------------------------------------

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, s: Scalar) -> "AlphaPolynomial":
        """The polynomial ``p(x + s)``."""
        out = [Fraction(0)] * len(self.coeffs)
        # Horner in the shifted variable
        for c in reversed(self.coeffs):
            for k in range(len(out) - 1, 0, -1):
                out[k] = out[k] * s + out[k - 1]
            out[0] = out[0] * s + c
        return AlphaPolynomial._raw(_trim(out))

    # --- presentation -------------------------------------------------------------

    def to_json(self) -> list[str]:
        return [_fmt_fraction(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "AlphaPolynomial":
        return cls(Fraction(s) for s in data)

    def format(self, var: str = "a") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_fraction(mag)}*{mono}"
            else:
                body = _fmt_fraction(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"AlphaPolynomial({self.format()!r})"


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


ZERO_POLY = AlphaPolynomial._raw(())
ONE_POLY = AlphaPolynomial._raw((Fraction(1),))
ALPHA_POLY = AlphaPolynomial._raw((Fraction(0), Fraction(1)))


# --- integer polynomial kernels used for gcds ----------------------------------


def _to_primitive_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], Fraction]:
    """Write ``coeffs = scale * ints`` with ``ints`` primitive, leading coefficient positive."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    cont = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        cont = -cont
    return [i // cont for i in ints], Fraction(cont, den)


def _int_primitive(ints: list[int]) -> list[int]:
    cont = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        cont = -cont
    return [i // cont for i in ints] if cont != 1 else ints


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` (integer coefficients, low degree first)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[shift + i] -= la * y
        while a and a[-1] == 0:
            a.pop()
    return a


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of two nonzero primitive integer polynomials."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _int_prem(a, b)
        a, b = b, (_int_primitive(r) if r else r)
    return a


def poly_gcd(p: AlphaPolynomial, q: AlphaPolynomial) -> AlphaPolynomial:
    """Monic-free canonical gcd: primitive integer polynomial with positive leading coefficient."""
    if p.is_zero() and q.is_zero():
        return ZERO_POLY
    if p.is_zero():
        return AlphaPolynomial(_to_primitive_ints(q.coeffs)[0])
    if q.is_zero():
        return AlphaPolynomial(_to_primitive_ints(p.coeffs)[0])
    return AlphaPolynomial(_int_gcd(_to_primitive_ints(p.coeffs)[0], _to_primitive_ints(q.coeffs)[0]))


def _exact_div(p: AlphaPolynomial, q: AlphaPolynomial) -> AlphaPolynomial:
    quot, rem = p.divmod(q)
    if not rem.is_zero():
        raise AlgebraError(f"inexact division of {p} by {q}")
    return quot


class AlphaRational:
    """Element of Q(alpha) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, AlphaRational) or isinstance(den, AlphaRational):
            q = rational(num) / rational(den)
            self.num, self.den, self._hash = q.num, q.den, None
            return
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if num.is_zero():
            self.num, self.den = ZERO_POLY, ONE_POLY
            return
        if den.is_constant():
            self.num, self.den = num * (1 / den.coeffs[0]), ONE_POLY
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = _exact_div(num, g)
            den = _exact_div(den, g)
        self._set_normalized(num, den)

    def _set_normalized(self, num, den):
        ints, scale = _to_primitive_ints(den.coeffs)
        if len(ints) == 1:
            self.num, self.den = num * (1 / den.coeffs[0]), ONE_POLY
        else:
            self.num = num * (1 / scale)
            self.den = AlphaPolynomial._raw(tuple(Fraction(i) for i in ints))

    @classmethod
    def _raw(cls, num: AlphaPolynomial, den: AlphaPolynomial) -> "AlphaRational":
        x = object.__new__(cls)
        x.num, x.den, x._hash = num, den, None
        return x

    @classmethod
    def from_poly(cls, p: AlphaPolynomial) -> "AlphaRational":
        return cls._raw(p, ONE_POLY)

    # --- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, AlphaRational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (AlphaPolynomial, int, Fraction)):
            return self.den.is_constant() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.num) if self.den.is_constant() else hash((self.num, self.den))
        return self._hash

    def valuation(self) -> int:
        """``ord(num) - ord(den)`` at alpha = 0; raises on zero."""
        if self.is_zero():
            raise AlgebraError("valuation of zero")
        return self.num.order() - self.den.order()

    def is_big_o(self, k: int) -> bool:
        return self.is_zero() or self.valuation() >= k

    # --- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.is_constant() and other.den.is_constant():
            return AlphaRational._raw(self.num + other.num, ONE_POLY)
        if self.den == other.den:
            return AlphaRational(self.num + other.num, self.den)
        if other.den.is_constant():
            return AlphaRational._reduced_sum(self.num + other.num * self.den, self.den)
        if self.den.is_constant():
            return AlphaRational._reduced_sum(self.num * other.den + other.num, other.den)
        g = poly_gcd(self.den, other.den)
        if g.degree > 0:
            d1 = _exact_div(self.den, g)
            d2 = _exact_div(other.den, g)
            return AlphaRational(self.num * d2 + other.num * d1, d1 * other.den)
        return AlphaRational._reduced_sum(self.num * other.den + other.num * self.den, self.den * other.den)

    @classmethod
    def _reduced_sum(cls, num, den):
        # gcd(a*d + c*b, b*d) = 1 whenever a/b, c/d are reduced and gcd(b, d) = 1
        if num.is_zero():
            return ZERO
        x = object.__new__(cls)
        x._hash = None
        x._set_normalized(num, den)
        return x

    __radd__ = __add__

    def __neg__(self):
        return AlphaRational._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return AlphaRational._raw(self.num * other, self.den)
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_constant() and other.den.is_constant():
            return AlphaRational._raw(self.num * other.num, ONE_POLY)
        # cross-cancel, then the product is already reduced
        a, b = self.num, self.den
        c, d = other.num, other.den
        g1 = poly_gcd(a, d) if not d.is_constant() else ONE_POLY
        g2 = poly_gcd(c, b) if not b.is_constant() else ONE_POLY
        if g1.degree > 0:
            a, d = _exact_div(a, g1), _exact_div(d, g1)
        if g2.degree > 0:
            c, b = _exact_div(c, g2), _exact_div(b, g2)
        return AlphaRational._reduced_sum(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "AlphaRational":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        x = object.__new__(AlphaRational)
        x._hash = None
        x._set_normalized(self.den, self.num)
        return x

    def __truediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_rational(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    # --- expansions and substitutions ---------------------------------------------

    def __call__(self, x: Scalar) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at alpha={x}")
        return self.num(x) / d

    def coefficient(self, j: int) -> Fraction:
        """Coefficient of ``alpha**j`` in the expansion at alpha = 0."""
        if self.is_zero():
            return Fraction(0)
        if self.valuation() < 0:
            raise PoleError(f"{self} has a pole at alpha = 0")
        if self.den.is_constant():
            return self.num[j] / self.den.coeffs[0]
        if j < 0:
            return Fraction(0)
        # series of num/den via den * s = num, den(0) != 0 here
        d = self.den.coeffs
        d0 = d[0]
        if d0 == 0:
            # den has alpha-factors cancelled by num (valuation >= 0)
            k = self.den.order()
            num = AlphaPolynomial(self.num.coeffs[k:])
            den = AlphaPolynomial(d[k:])
            return AlphaRational._raw(num, den).coefficient(j)
        s: list[Fraction] = []
        for n in range(j + 1):
            acc = self.num[n]
            for i in range(1, min(n, len(d) - 1) + 1):
                acc -= d[i] * s[n - i]
            s.append(acc / d0)
        return s[j]

    def to_beta_polynomial(self) -> AlphaPolynomial:
        """Rewrite in ``beta = alpha - 1``; raises :class:`NotPolynomialError` otherwise."""
        if not self.den.is_constant():
            raise NotPolynomialError(self.den)
        return self.num.shift(1) * (1 / self.den.coeffs[0])

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "AlphaRational":
        return cls(AlphaPolynomial.from_json(data["num"]), AlphaPolynomial.from_json(data["den"]))

    def format(self, var: str = "a") -> str:
        if self.den.is_constant():
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"AlphaRational({self.format()!r})"


def _as_poly(x) -> AlphaPolynomial:
    if isinstance(x, AlphaPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return AlphaPolynomial.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial in alpha")


def _as_rational(x):
    if isinstance(x, AlphaRational):
        return x
    if isinstance(x, AlphaPolynomial):
        return AlphaRational._raw(x, ONE_POLY)
    if isinstance(x, (int, Fraction)):
        return AlphaRational._raw(AlphaPolynomial.constant(x), ONE_POLY)
    return NotImplemented


def rational(x) -> AlphaRational:
    r = _as_rational(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(alpha)")
    return r


def alpha_power(k: int) -> AlphaRational:
    if k >= 0:
        return AlphaRational._raw(AlphaPolynomial.monomial(k), ONE_POLY)
    return AlphaRational._raw(ONE_POLY, AlphaPolynomial.monomial(-k))


ZERO = AlphaRational._raw(ZERO_POLY, ONE_POLY)
ONE = AlphaRational._raw(ONE_POLY, ONE_POLY)
ALPHA = AlphaRational._raw(ALPHA_POLY, ONE_POLY)


def is_big_o(x, k: int) -> bool:
    return rational(x).is_big_o(k)


def coefficient_of_alpha(x, j: int) -> Fraction:
    return rational(x).coefficient(j)


def to_beta_polynomial(x) -> AlphaPolynomial:
    return rational(x).to_beta_polynomial()

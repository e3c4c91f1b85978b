"""Symmetric functions as sparse expansions in the m, p or e basis.

Coefficients live in Q(alpha) (:class:`~bconj.algebra.AlphaRational`).
Transition matrices between bases are integer (m <- p, m <- e) or rational
(their inverses) and are cached per degree.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, Mapping

from .algebra import ZERO, AlphaRational, alpha_power, rational
from .partitions import Partition, grevlex_key, partitions_of, union, z_stat

BASES = ("m", "p", "e")
DEFAULT_MAX_DEGREE = 12


class BasisError(ValueError):
    pass


def _add_into(acc: dict, key, value):
    if not value:
        return
    old = acc.get(key)
    if old is None:
        acc[key] = value
    else:
        new = old + value
        if new:
            acc[key] = new
        else:
            del acc[key]


class SymFunc:
    """A symmetric function ``sum(c_lam * b_lam)`` in basis ``b``.

    Zero coefficients are never stored. Instances are treated as immutable.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Mapping | Iterable = ()):
        if basis not in BASES:
            raise BasisError(f"unknown basis {basis!r}")
        self.basis = basis
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for lam, c in items:
            _add_into(acc, Partition(lam) if not isinstance(lam, Partition) else lam, rational(c))
        self.terms = acc

    @classmethod
    def _raw(cls, basis: str, terms: dict) -> "SymFunc":
        f = object.__new__(cls)
        f.basis = basis
        f.terms = terms
        return f

    @classmethod
    def single(cls, basis: str, lam, coeff=1) -> "SymFunc":
        return cls(basis, {Partition(lam): coeff})

    @classmethod
    def one(cls, basis: str = "p") -> "SymFunc":
        return cls.single(basis, ())

    @classmethod
    def zero(cls, basis: str = "p") -> "SymFunc":
        return cls._raw(basis, {})

    # --- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, lam) -> AlphaRational:
        return self.terms.get(Partition(lam), ZERO)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def degrees(self) -> set[int]:
        return {lam.size for lam in self.terms}

    @property
    def degree(self) -> int:
        return max((lam.size for lam in self.terms), default=0)

    def valuation(self) -> int | None:
        """Minimum alpha-valuation over coefficients; ``None`` for zero."""
        if not self.terms:
            return None
        return min(c.valuation() for c in self.terms.values())

    def map_coefficients(self, fn) -> "SymFunc":
        return SymFunc(self.basis, {lam: fn(c) for lam, c in self.terms.items()})

    def evaluate_alpha(self, value) -> "SymFunc":
        return self.map_coefficients(lambda c: c(value))

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            if isinstance(other, int) and other == 0:
                return not self.terms
            return NotImplemented
        if other.basis != self.basis:
            other = convert(other, self.basis)
        return self.terms == other.terms

    __hash__ = None

    # --- linear structure ----------------------------------------------------------

    def _check(self, other: "SymFunc"):
        if self.basis != other.basis:
            raise BasisError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            if isinstance(other, int) and other == 0:
                return self
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for lam, c in other.terms.items():
            _add_into(acc, lam, c)
        return SymFunc._raw(self.basis, acc)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return SymFunc._raw(self.basis, {lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = rational(c)
        if not c:
            return SymFunc.zero(self.basis)
        return SymFunc._raw(self.basis, {lam: v * c for lam, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            self._check(other)
            if self.basis == "m":
                return m_multiply(self, other)
            return _union_multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        result = SymFunc.one(self.basis)
        for _ in range(k):
            result = result * self
        return result

    # --- presentation -------------------------------------------------------------

    def format(self, var: str = "a") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for lam, c in reversed(self.items()):
            mono = f"{self.basis}[{','.join(map(str, lam))}]" if lam else ""
            if c == 1 and mono:
                body, neg = mono, False
            elif c == -1 and mono:
                body, neg = mono, True
            else:
                if c.is_polynomial() and len([x for x in c.num.coeffs if x]) == 1:
                    neg = c.num.leading() < 0
                    text = (-c if neg else c).format(var)
                else:
                    neg = False
                    text = c.format(var)
                    if c.is_polynomial():
                        text = f"({text})"
                body = f"{text}*{mono}" if mono else text
            pieces.append(("-" if neg else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SymFunc({self.basis!r}, {self.format()!r})"

    def to_json(self) -> list[dict]:
        return [{"mu": list(lam), "coeff": c.to_json()} for lam, c in self.items()]

    @classmethod
    def from_json(cls, basis: str, data: list[dict]) -> "SymFunc":
        return cls(basis, {Partition(t["mu"]): AlphaRational.from_json(t["coeff"]) for t in data})


def _union_multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    acc: dict = {}
    for lam, a in f.terms.items():
        for mu, b in g.terms.items():
            _add_into(acc, union(lam, mu), a * b)
    return SymFunc._raw(f.basis, acc)


def p_multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    if f.basis != "p" or g.basis != "p":
        raise BasisError("p_multiply expects two p-basis functions")
    return _union_multiply(f, g)


# --- monomial products by exponent-vector convolution ---------------------------------


def _arrangements(parts: tuple, n_vars: int) -> set[tuple]:
    padded = tuple(parts) + (0,) * (n_vars - len(parts))
    return set(permutations(padded))


@lru_cache(maxsize=None)
def _m_product_table(mu: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
    n_vars = len(mu) + len(nu)
    counts: Counter = Counter()
    if n_vars == 0:
        return ((Partition(()), 1),)
    orbit_nu = _arrangements(nu, n_vars)
    # coefficient of x^rho in m_mu*m_nu, rho sorted: count pairs (a, b) with a + b = rho
    for a in _arrangements(mu, n_vars):
        for b in orbit_nu:
            s = tuple(x + y for x, y in zip(a, b))
            if all(s[i] >= s[i + 1] for i in range(n_vars - 1)):
                counts[s] += 1
    return tuple(
        (Partition._trusted(tuple(x for x in rho if x)), c) for rho, c in sorted(counts.items(), reverse=True)
    )


def m_multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    if f.basis != "m" or g.basis != "m":
        raise BasisError("m_multiply expects two m-basis functions")
    acc: dict = {}
    for lam, a in f.terms.items():
        for mu, b in g.terms.items():
            ab = a * b
            key = (lam, mu) if grevlex_key(lam) <= grevlex_key(mu) else (mu, lam)
            for rho, c in _m_product_table(*key):
                _add_into(acc, rho, ab * c)
    return SymFunc._raw("m", acc)


# --- transition matrices --------------------------------------------------------------

@lru_cache(maxsize=None)
def _count_p_in_m(lam: tuple, mu: tuple) -> int:
    """Coefficient of m_mu in p_lam: ways to drop the parts of lam into bins of sizes mu."""
    if not lam:
        return 1 if not any(mu) else 0
    first, rest = lam[0], lam[1:]
    total = 0
    for i, cap in enumerate(mu):
        if cap >= first:
            remaining = list(mu)
            remaining[i] -= first
            total += _count_p_in_m(rest, tuple(remaining))
    return total


@lru_cache(maxsize=None)
def _count_e_in_m(rows: tuple, cols: tuple) -> int:
    """Number of 0-1 matrices with the given row and column sums (order of cols irrelevant)."""
    if not rows:
        return 1 if not any(cols) else 0
    first, rest = rows[0], rows[1:]
    cols = tuple(sorted((c for c in cols if c), reverse=True))
    if first > len(cols):
        return 0
    total = 0
    # choose which columns receive a 1 in this row; group equal capacities
    groups = Counter(cols)
    values = sorted(groups, reverse=True)

    def rec(idx, need, chosen):
        nonlocal total
        if need == 0:
            new_cols = []
            for v in values:
                k = chosen.get(v, 0)
                new_cols += [v - 1] * k + [v] * (groups[v] - k)
            mult = 1
            for v, k in chosen.items():
                mult *= _binom(groups[v], k)
            total += mult * _count_e_in_m(rest, tuple(new_cols))
            return
        if idx == len(values):
            return
        v = values[idx]
        for k in range(min(need, groups[v]), -1, -1):
            chosen[v] = k
            rec(idx + 1, need - k, chosen)
        del chosen[v]

    rec(0, first, {})
    return total


def _binom(n, k):
    return factorial(n) // (factorial(k) * factorial(n - k))


@lru_cache(maxsize=None)
def _to_m_matrix(basis: str, n: int) -> dict:
    """``{lam: {mu: int}}`` with ``b_lam = sum_mu M[lam][mu] m_mu``."""
    parts = partitions_of(n, DEFAULT_MAX_DEGREE)
    out = {}
    for lam in parts:
        row = {}
        for mu in parts:
            c = _count_p_in_m(tuple(lam), tuple(mu)) if basis == "p" else _count_e_in_m(tuple(lam), tuple(mu))
            if c:
                row[mu] = c
        out[lam] = row
    return out


@lru_cache(maxsize=None)
def _from_m_matrix(basis: str, n: int) -> dict:
    """Inverse of :func:`_to_m_matrix`: ``m_mu = sum_lam Minv[mu][lam] b_lam``."""
    parts = partitions_of(n, DEFAULT_MAX_DEGREE)
    fwd = _to_m_matrix(basis, n)
    size = len(parts)
    index = {lam: i for i, lam in enumerate(parts)}
    # rows of A: b_lam in terms of m; solve A^T-style by Gauss-Jordan on [A | I]
    a = [[Fraction(fwd[lam].get(mu, 0)) for mu in parts] + [Fraction(int(i == j)) for j in range(size)]
         for i, lam in enumerate(parts)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if a[r][col])
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    # a[:, size:] = A^{-1}; b = A m  =>  m = A^{-1} b, so m_mu = sum_lam Ainv[mu][lam] b_lam
    inv = {}
    for mu in parts:
        row = a[index[mu]][size:]
        inv[mu] = {parts[j]: row[j] for j in range(size) if row[j]}
    return inv


def _check_degree(f: SymFunc, max_degree: int):
    for lam in f.terms:
        if lam.size > max_degree:
            raise BasisError(f"degree {lam.size} exceeds the conversion bound {max_degree}")


def convert(f: SymFunc, target: str, max_degree: int = DEFAULT_MAX_DEGREE) -> SymFunc:
    """Re-express ``f`` in the ``target`` basis (through the monomial basis)."""
    if target not in BASES:
        raise BasisError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    _check_degree(f, max_degree)
    if f.basis != "m":
        acc: dict = {}
        for lam, c in f.terms.items():
            for mu, k in _to_m_matrix(f.basis, lam.size)[lam].items():
                _add_into(acc, mu, c * k)
        f = SymFunc._raw("m", acc)
        if target == "m":
            return f
    acc = {}
    for mu, c in f.terms.items():
        for lam, k in _from_m_matrix(target, mu.size)[mu].items():
            _add_into(acc, lam, c * k)
    return SymFunc._raw(target, acc)


def scalar_product_alpha(f: SymFunc, g: SymFunc) -> AlphaRational:
    """``<p_lam, p_mu> = delta * alpha^len(lam) * z_lam``, extended bilinearly."""
    f = convert(f, "p")
    g = convert(g, "p")
    total = ZERO
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            total = total + c * d * alpha_power(len(lam)) * z_stat(lam)
    return total


# --- functions of three alphabets ---------------------------------------------------------


class TripleSym:
    """Element of Sym(x) (x) Sym(y) (x) Sym(z) in the basis p_a(x) p_b(y) p_c(z)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            _add_into(acc, tuple(Partition(k) for k in key), rational(c))
        self.terms = acc

    @classmethod
    def _raw(cls, terms: dict) -> "TripleSym":
        t = object.__new__(cls)
        t.terms = terms
        return t

    @classmethod
    def one(cls) -> "TripleSym":
        e = Partition(())
        return cls({(e, e, e): 1})

    @classmethod
    def from_product(cls, fx: SymFunc, fy: SymFunc, fz: SymFunc) -> "TripleSym":
        fx, fy, fz = (convert(f, "p") for f in (fx, fy, fz))
        acc: dict = {}
        for a, ca in fx.terms.items():
            for b, cb in fy.terms.items():
                cab = ca * cb
                for c, cc in fz.terms.items():
                    acc[(a, b, c)] = cab * cc
        return cls._raw(acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, key) -> AlphaRational:
        return self.terms.get(tuple(Partition(k) for k in key), ZERO)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: tuple(grevlex_key(k) for k in kv[0]))

    def valuation(self) -> int | None:
        if not self.terms:
            return None
        return min(c.valuation() for c in self.terms.values())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TripleSym):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return TripleSym._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return TripleSym._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TripleSym":
        c = rational(c)
        if not c:
            return TripleSym._raw({})
        return TripleSym._raw({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TripleSym):
            acc: dict = {}
            for (a, b, c), x in self.terms.items():
                for (d, e, f), y in other.terms.items():
                    _add_into(acc, (union(a, d), union(b, e), union(c, f)), x * y)
            return TripleSym._raw(acc)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def __repr__(self):
        return f"TripleSym({len(self.terms)} terms)"

"""Differential operators on symmetric polynomials in ``N`` variables.

``D1 = sum_i sum_{j != i} x_i^2/(x_i - x_j) d/dx_i``,
``D2 = 1/2 sum_i x_i^2 d^2/dx_i^2`` and ``D_alpha = D1 + alpha*D2``.

The m-basis matrices of D1 and D2 are built by applying the operator
definitions to explicit monomials and dividing exactly by ``x_i - x_j``.
Each pair term of D1 only touches two variables, so the coefficient of
``x^nu`` is computed from the two-variable slice of ``m_mu`` whose other
exponents agree with ``nu``.
"""
from __future__ import annotations

import threading
from collections import Counter, defaultdict
from functools import lru_cache
from itertools import permutations
from math import comb

from .algebra import ALPHA, ZERO, AlphaRational
from .partitions import Partition, partitions_of
from .symfunc import SymFunc, _add_into, convert


class OperatorError(ValueError):
    pass


# --- exact two-variable kernels ---------------------------------------------------------


def _divide_by_x_minus_y(h: dict) -> dict:
    """Exact quotient of a bivariate polynomial ``{(a, b): c}`` by ``x - y``."""
    h = {k: v for k, v in h.items() if v}
    quotient: dict = {}
    top = max((a for a, _ in h), default=0)
    for a in range(top, 0, -1):
        for (ea, eb) in sorted(k for k in h if k[0] == a):
            c = h.pop((ea, eb))
            if not c:
                continue
            quotient[(a - 1, eb)] = quotient.get((a - 1, eb), 0) + c
            h[(a - 1, eb + 1)] = h.get((a - 1, eb + 1), 0) + c
    if any(h.values()):
        raise OperatorError("polynomial is not divisible by x - y")
    return {k: v for k, v in quotient.items() if v}


@lru_cache(maxsize=None)
def _pair_d1(p: int, q: int) -> dict:
    """``(x^2 d/dx f - y^2 d/dy f)/(x - y)`` for ``f = x^p y^q + x^q y^p`` (or ``x^p y^p``)."""
    f = {(p, q): 1, (q, p): 1}
    h: dict = defaultdict(int)
    for (a, b), c in f.items():
        if a:
            h[(a + 1, b)] += c * a
        if b:
            h[(a, b + 1)] -= c * b
    return _divide_by_x_minus_y(h)


def _padded(parts, n_vars):
    return tuple(parts) + (0,) * (n_vars - len(parts))


@lru_cache(maxsize=None)
def operator_matrices(n: int, n_vars: int) -> tuple[dict, dict]:
    """m-basis matrices ``(D1, D2)`` at degree ``n``: ``D m_mu = sum_nu M[mu][nu] m_nu``."""
    if n_vars < n:
        raise OperatorError(f"N={n_vars} variables do not faithfully represent degree {n}")
    parts = [lam for lam in partitions_of(n, max(n, 12)) if len(lam) <= n_vars]
    d1: dict = {mu: {} for mu in parts}
    d2: dict = {mu: {} for mu in parts}
    for mu in parts:
        mu_count = Counter(_padded(mu, n_vars))
        for nu in parts:
            nu_pad = _padded(nu, n_vars)
            total1 = 0
            for i in range(n_vars):
                for j in range(i + 1, n_vars):
                    spectators = Counter(nu_pad[:i] + nu_pad[i + 1:j] + nu_pad[j + 1:])
                    rest = mu_count - spectators
                    if sum(rest.values()) != 2 or spectators - mu_count:
                        continue
                    p, q = sorted(rest.elements(), reverse=True)
                    total1 += _pair_d1(p, q).get((nu_pad[i], nu_pad[j]), 0)
            total2 = 0
            if mu == nu:
                # x_i^2/2 d^2/dx_i^2 x_i^k = C(k, 2) x_i^k, spectators untouched
                total2 = sum(comb(k, 2) for k in nu_pad)
            if total1:
                d1[mu][nu] = total1
            if total2:
                d2[mu][nu] = total2
    return d1, d2


_locks: dict = {}
_locks_guard = threading.Lock()


def _matrices(n: int, n_vars: int):
    with _locks_guard:
        lock = _locks.setdefault((n, n_vars), threading.Lock())
    with lock:
        return operator_matrices(n, n_vars)


def _apply(f: SymFunc, n_vars: int | None, which: str) -> SymFunc:
    f = convert(f, "m")
    if n_vars is None:
        n_vars = f.degree
    if f.terms and n_vars < f.degree:
        raise OperatorError(f"N={n_vars} is smaller than the degree {f.degree}")
    acc: dict = {}
    for mu, c in f.terms.items():
        d1, d2 = _matrices(mu.size, n_vars)
        if which in ("D1", "Dalpha"):
            for nu, k in d1[mu].items():
                _add_into(acc, nu, c * k)
        if which in ("D2", "Dalpha"):
            scale = c if which == "D2" else c * ALPHA
            for nu, k in d2[mu].items():
                _add_into(acc, nu, scale * k)
    return SymFunc._raw("m", acc)


def apply_D1(f: SymFunc, n_vars: int | None = None) -> SymFunc:
    return _apply(f, n_vars, "D1")


def apply_D2(f: SymFunc, n_vars: int | None = None) -> SymFunc:
    return _apply(f, n_vars, "D2")


def apply_Dalpha(f: SymFunc, n_vars: int | None = None) -> SymFunc:
    return _apply(f, n_vars, "Dalpha")


def dalpha_entry(mu: Partition, nu: Partition, n_vars: int) -> AlphaRational:
    """``[m_nu] D_alpha m_mu``."""
    d1, d2 = _matrices(mu.size, n_vars)
    out = ZERO
    if nu in d1[mu]:
        out = out + d1[mu][nu]
    if nu in d2[mu]:
        out = out + ALPHA * d2[mu][nu]
    return out


# --- explicit polynomials in N variables -------------------------------------------------


def _orbit(mu, n_vars):
    return set(permutations(_padded(mu, n_vars)))


def to_polynomial(f: SymFunc, n_vars: int) -> dict:
    """Expand ``f`` into ``{exponent tuple: coefficient}`` over ``n_vars`` variables."""
    f = convert(f, "m")
    poly: dict = {}
    for mu, c in f.terms.items():
        if len(mu) > n_vars:
            continue
        for expo in _orbit(mu, n_vars):
            poly[expo] = c
    return poly


def from_polynomial(poly: dict) -> SymFunc:
    """Read the m-expansion off a symmetric polynomial (coefficients at sorted exponents)."""
    acc: dict = {}
    for expo, c in poly.items():
        if all(expo[i] >= expo[i + 1] for i in range(len(expo) - 1)) and c:
            acc[Partition._trusted(tuple(e for e in expo if e))] = c
    return SymFunc._raw("m", acc)


def poly_mul(p: dict, q: dict) -> dict:
    acc: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            _add_into(acc, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
    return acc


def poly_add(p: dict, q: dict) -> dict:
    acc = dict(p)
    for e, c in q.items():
        _add_into(acc, e, c)
    return acc


def euler(poly: dict, m: int) -> dict:
    """``x_m d/dx_m`` applied to an explicit polynomial (``m`` is 0-based)."""
    return {e: c * e[m] for e, c in poly.items() if e[m]}


def _check_vars(fs, n_vars):
    total = sum(f.degree for f in fs)
    if n_vars < total:
        raise OperatorError(f"N={n_vars} is smaller than the total degree {total}")


def apply_D12(fs, n_vars: int) -> SymFunc:
    """``sum_m sum_{i<j} f_1 ... (x_m d_m f_i) ... (x_m d_m f_j) ... f_k`` in the m-basis."""
    fs = list(fs)
    _check_vars(fs, n_vars)
    if len(fs) < 2:
        return SymFunc.zero("m")
    polys = [to_polynomial(f, n_vars) for f in fs]
    total: dict = {}
    k = len(polys)
    for m in range(n_vars):
        eul = [euler(p, m) for p in polys]
        for i in range(k):
            for j in range(i + 1, k):
                term = poly_mul(eul[i], eul[j])
                for idx in range(k):
                    if idx != i and idx != j:
                        term = poly_mul(term, polys[idx])
                total = poly_add(total, term)
    return from_polynomial(total)


def euler_pair_sum(f: SymFunc, g: SymFunc, n_vars: int) -> SymFunc:
    """``sum_m (x_m d_m f)(x_m d_m g)`` in the m-basis."""
    _check_vars([f, g], n_vars)
    pf = to_polynomial(f, n_vars)
    pg = to_polynomial(g, n_vars)
    total: dict = {}
    for m in range(n_vars):
        total = poly_add(total, poly_mul(euler(pf, m), euler(pg, m)))
    return from_polynomial(total)


"""Partial cumulants and factorization errors of families indexed by subsets of [r].

A family assigns a ring element ``u_I`` to each subset ``I`` of ``[r]``. The
ring is any commutative type supporting ``+``, ``-``, ``*`` and integer
scaling: AlphaRational, SymFunc in the p-basis, or TripleSym.

"Small" always means small at alpha = 0. For non-scalar elements the valuation
is the minimum over coefficients; since alpha-adic valuation is multiplicative
on polynomial rings over Q(alpha), the valuation of a quotient ``E/O`` is
``val(E) - val(O)``, which is how T_H is measured without inverting anything.
"""
from __future__ import annotations

import random
from math import factorial
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from .algebra import ALPHA, ONE, AlphaPolynomial, AlphaRational, rational
from .jack import J
from .operators import apply_D12, euler_pair_sum
from .partitions import Partition, b_stat, conjugate, hook, hook_dprime, oplus_subset, partitions_of, union
from .report import Verdict
from .setpartitions import block_partitions
from .symfunc import SymFunc, TripleSym

MAX_R = 5
INF = float("inf")


class FamilyError(ValueError):
    pass


def subsets(ground: Iterable[int], min_size: int = 0) -> list[frozenset]:
    items = sorted(ground)
    return [
        frozenset(c) for k in range(min_size, len(items) + 1) for c in combinations(items, k)
    ]


def valuation(x) -> float:
    """alpha-adic valuation; ``inf`` for zero."""
    if isinstance(x, (int, Fraction)):
        x = rational(x)
    if x.is_zero():
        return INF
    if isinstance(x, AlphaPolynomial):
        return x.order()
    v = x.valuation()
    return INF if v is None else v


def _fmt_val(v) -> int | str:
    return "inf" if v == INF else int(v)


def _one_like(x):
    if isinstance(x, SymFunc):
        return SymFunc.one(x.basis)
    if isinstance(x, TripleSym):
        return TripleSym.one()
    return ONE


class IndexedFamily:
    """Values ``u_I`` for every subset ``I`` of ``[r]``, materialized eagerly."""

    def __init__(self, r: int, values: dict, unit_empty: bool = True):
        if not 1 <= r <= MAX_R:
            raise FamilyError(f"r must lie in 1..{MAX_R}")
        missing = [s for s in subsets(range(1, r + 1)) if s not in values]
        if missing:
            raise FamilyError(f"missing values for {len(missing)} subsets, e.g. {sorted(missing[0])}")
        self.r = r
        self.values = {frozenset(k): v for k, v in values.items()}
        self.unit_empty = unit_empty
        if unit_empty and self.values[frozenset()] != _one_like(self.values[frozenset()]):
            raise FamilyError("u of the empty set must be 1")

    @classmethod
    def from_function(cls, r: int, fn: Callable[[frozenset], object], unit_empty: bool = True):
        return cls(r, {s: fn(s) for s in subsets(range(1, r + 1))}, unit_empty)

    @classmethod
    def from_partitions(cls, lams, fn: Callable[[Partition], object]):
        """``u_I = fn(lam^I)`` where ``lam^I`` is the entry-wise sum over ``I``."""
        lams = [Partition(l) for l in lams]
        cache: dict = {}

        def value(s):
            key = oplus_subset(lams, sorted(s))
            if key not in cache:
                cache[key] = fn(key)
            return cache[key]

        return cls.from_function(len(lams), value)

    @property
    def ground(self) -> frozenset:
        return frozenset(range(1, self.r + 1))

    def __getitem__(self, s) -> object:
        return self.values[frozenset(s)]

    def _check_subset(self, H, min_size):
        H = frozenset(H)
        if not H <= self.ground:
            raise FamilyError(f"{sorted(H)} is not a subset of [1..{self.r}]")
        if len(H) < min_size:
            raise FamilyError(f"subset must have at least {min_size} elements")
        return H


# --- cumulants ---------------------------------------------------------------------------


def partial_cumulant(fam: IndexedFamily, H=None):
    """Moebius-weighted sum over set partitions of ``H`` of block products."""
    H = fam._check_subset(fam.ground if H is None else H, 1)
    total = 0
    for blocks, mob in block_partitions(H):
        term = fam[blocks[0]]
        for b in blocks[1:]:
            term = term * fam[b]
        total = total + term * mob
    return total


def all_cumulants(fam: IndexedFamily) -> dict:
    return {H: partial_cumulant(fam, H) for H in subsets(fam.ground, 1)}


def moments_from_cumulants(cumulants: dict, H):
    """Inverse of ``partial_cumulant``: sum over set partitions of block cumulant products."""
    H = frozenset(H)
    if not H:
        raise FamilyError("H must be non-empty")
    total = 0
    for blocks, _ in block_partitions(H):
        try:
            factors = [cumulants[frozenset(b)] for b in blocks]
        except KeyError as exc:
            raise FamilyError(f"missing cumulant for block {sorted(exc.args[0])}") from None
        term = factors[0]
        for f in factors[1:]:
            term = term * f
        total = total + term
    return total


# --- factorization errors ----------------------------------------------------------------


def _even_odd(fam: IndexedFamily, H: frozenset):
    """Products over ``G <= H`` with ``|H|-|G|`` even, resp. odd."""
    even = odd = None
    for G in subsets(H):
        val = fam[G]
        if (len(H) - len(G)) % 2 == 0:
            even = val if even is None else even * val
        else:
            odd = val if odd is None else odd * val
    return even, odd


def t_error(fam: IndexedFamily, H, method: str = "direct") -> AlphaRational:
    """``T_H`` for a scalar family, as an exact rational function."""
    H = fam._check_subset(H, 2)
    for G in subsets(H):
        if fam[G] == 0:
            raise FamilyError(f"value at {sorted(G)} is zero, T is undefined")
    if method == "direct":
        even, odd = _even_odd(fam, H)
        return rational(even) / rational(odd) - 1
    if method == "inductive":
        if fam[frozenset()] != 1:
            raise FamilyError("the inductive form requires u of the empty set to be 1")
        return _t_inductive(fam, H)
    raise ValueError(f"unknown method {method!r}")


def _t_inductive(fam: IndexedFamily, H: frozenset) -> AlphaRational:
    memo: dict = {}
    for G in subsets(H, 2):  # combinations come out by increasing size
        denom = ONE
        for g in G:
            denom = denom * rational(fam[{g}])
        for K in subsets(G, 2):
            if K != G:
                denom = denom * (memo[K] + 1)
        memo[G] = rational(fam[G]) / denom - 1
    return memo[H]


def t_valuation(fam: IndexedFamily, H) -> float:
    """Valuation of ``T_H`` computed as ``val(E - O) - val(O)``; works for any ring."""
    H = fam._check_subset(H, 2)
    even, odd = _even_odd(fam, H)
    v_odd = valuation(odd)
    if v_odd == INF:
        raise FamilyError("a family value is zero, T is undefined")
    return valuation(even - odd) - v_odd


def cumulant_excess(fam: IndexedFamily, H) -> float:
    """``val(kappa_H) - sum_h val(u_h)``: the exponent k in kappa_H = (prod u_h) O(alpha^k)."""
    H = fam._check_subset(H, 1)
    return valuation(partial_cumulant(fam, H)) - sum(valuation(fam[{h}]) for h in H)


def equivalence_check(fam: IndexedFamily, name: str = "equivalence", inputs=None) -> Verdict:
    """Compare the strong factorization and small cumulant criteria on every ``H``.

    For each ``H`` with ``|H| >= 2`` both properties are evaluated on the family
    restricted to subsets of ``H``; the two verdicts must coincide.
    """
    singles_ok = all(valuation(fam[{i}]) == 0 for i in fam.ground)
    t_ok: dict = {}
    k_ok: dict = {}
    for H in subsets(fam.ground, 2):
        t_ok[H] = t_valuation(fam, H) >= len(H) - 1
        k_ok[H] = cumulant_excess(fam, H) >= len(H) - 1
    mismatches = []
    for H in t_ok:
        below = [G for G in t_ok if G <= H]
        if all(t_ok[G] for G in below) != all(k_ok[G] for G in below):
            mismatches.append(sorted(H))
    return Verdict(
        name,
        not mismatches or not singles_ok,
        inputs,
        witness=mismatches or None,
        details={
            "singletons_units": singles_ok,
            "strong_factorization": all(t_ok.values()),
            "small_cumulants": all(k_ok.values()),
        },
    )


# --- Jack instantiation -----------------------------------------------------------------


def jack_family(lams) -> IndexedFamily:
    return IndexedFamily.from_partitions(lams, lambda lam: J(lam, "p"))


def jack_cumulant(*lams) -> SymFunc:
    """``kappa^J(lam^1, ..., lam^r)`` in the p-basis."""
    return partial_cumulant(jack_family(lams))


def _min_coefficient(f):
    best = None
    for key, c in f.terms.items():
        if best is None or c.valuation() < best[1].valuation():
            best = (key, c)
    return best


def verify_strong_factorization(lams, family: IndexedFamily | None = None, name: str = "strong-factorization") -> Verdict:
    """kappa of the family over ``[r]`` must have valuation at least ``r - 1``.

    For ``r <= 3`` the product form ``T_[r]`` is checked too, and the two
    criteria must agree subset by subset.
    """
    lams = tuple(Partition(l) for l in lams)
    fam = family or jack_family(lams)
    r = fam.r
    kappa = partial_cumulant(fam)
    achieved = valuation(kappa)
    ok = achieved >= r - 1
    witness = None
    if not ok:
        key, c = _min_coefficient(kappa)
        witness = {"term": [list(k) for k in key] if isinstance(key[0], tuple) else list(key),
                   "coeff": c, "valuation": c.valuation()}
    details: dict = {}
    if 2 <= r <= 3:
        t_val = t_valuation(fam, fam.ground)
        details["t_valuation"] = _fmt_val(t_val)
        eq = equivalence_check(fam)
        details["criteria_agree"] = eq.passed
        ok = ok and t_val >= r - 1 and eq.passed
    return Verdict(name, ok, tuple(tuple(l) for l in lams), r - 1, _fmt_val(achieved), witness, details)


# --- hook families ------------------------------------------------------------------------


HOOK_VARIANTS = {"hook": hook, "hook2": hook_dprime}


def hook_family(lams, variant: str = "hook") -> IndexedFamily:
    try:
        fn = HOOK_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown hook variant {variant!r}; choose from {sorted(HOOK_VARIANTS)}") from None
    return IndexedFamily.from_partitions(lams, fn)


def verify_hook_factorization(lams, variant: str = "hook") -> Verdict:
    lams = tuple(Partition(l) for l in lams)
    fam = hook_family(lams, variant)
    r = fam.r
    if r < 2:
        return Verdict(f"{variant}-factorization", True, tuple(tuple(l) for l in lams), 0, "inf")
    achieved = t_valuation(fam, fam.ground)
    return Verdict(f"{variant}-factorization", achieved >= r - 1, tuple(tuple(l) for l in lams),
                   r - 1, _fmt_val(achieved))


# --- affine families ----------------------------------------------------------------------


class HypothesisError(ValueError):
    """The inputs do not satisfy the hypotheses of the statement being checked."""


def affine_family(C, cs) -> IndexedFamily:
    C = rational(C)
    cs = [rational(c) for c in cs]

    def value(s):
        total = C
        for i in s:
            total = total + ALPHA * cs[i - 1]
        return total

    return IndexedFamily.from_function(len(cs), value, unit_empty=False)


def verify_affine_lemma(C, cs, H=None) -> Verdict:
    """``v_I = C + alpha * sum_{i in I} c_i`` must satisfy ``T_H(v) = O(alpha^|H|)``."""
    C = rational(C)
    cs = [rational(c) for c in cs]
    H = frozenset(range(1, len(cs) + 1)) if H is None else frozenset(H)
    if len(H) < 2:
        raise FamilyError("T_H needs |H| >= 2")
    inputs = {"C": C, "cs": cs, "H": sorted(H)}
    if C.is_zero() or C.valuation() != 0 or any(c.valuation() < 0 for c in cs if c):
        return Verdict("affine-lemma", False, inputs, details={"status": "hypothesis not satisfied"})
    fam = affine_family(C, cs)
    achieved = valuation(t_error(fam, H))
    return Verdict("affine-lemma", achieved >= len(H), inputs, len(H), _fmt_val(achieved),
                   details={"status": "checked"})


def random_o1_rational(rng: random.Random, unit: bool = False, max_degree: int = 2) -> AlphaRational:
    """Random rational function with no pole at 0 (and no zero there if ``unit``)."""

    def poly(nonzero_const):
        coeffs = [rng.randint(-4, 4) for _ in range(rng.randint(1, max_degree + 1))]
        if nonzero_const and coeffs[0] == 0:
            coeffs[0] = rng.choice([-3, -2, -1, 1, 2, 3])
        return AlphaPolynomial(coeffs)

    num = poly(unit)
    den = poly(True)
    return AlphaRational(num, den)


def random_affine_instance(rng: random.Random):
    k = rng.randint(2, 4)
    C = random_o1_rational(rng, unit=True)
    cs = [random_o1_rational(rng) for _ in range(k)]
    return C, cs


# --- statistics on partitions -------------------------------------------------------------


def ie_stat(*lams) -> int:
    """``sum_I (-1)^(r-|I|) b(lam^I)``."""
    lams = [Partition(l) for l in lams]
    r = len(lams)
    if r < 1:
        raise ValueError("need at least one partition")
    total = 0
    for s in subsets(range(1, r + 1)):
        total += (-1) ** (r - len(s)) * b_stat(oplus_subset(lams, sorted(s)))
    return total


def verify_A1_A2(lams, n_vars: int | None = None) -> Verdict:
    """The two set-partition sums against their closed forms in terms of cumulants."""
    lams = [Partition(l) for l in lams]
    r = len(lams)
    total = sum(l.size for l in lams)
    if r not in (2, 3):
        raise ValueError("r must be 2 or 3")
    n_vars = total if n_vars is None else n_vars
    if n_vars < total:
        raise ValueError(f"N={n_vars} is smaller than the total size {total}")
    fam = jack_family(lams)
    ground = fam.ground
    kappas = all_cumulants(fam)

    def lam_of(s):
        return oplus_subset(lams, sorted(s))

    a1_def = 0
    a2_def = SymFunc.zero("m")
    for blocks, mob in block_partitions(ground):
        prod_u = fam[blocks[0]]
        for b in blocks[1:]:
            prod_u = prod_u * fam[b]
        a1_def = a1_def + prod_u * (mob * sum(b_stat(lam_of(b)) for b in blocks))
        if len(blocks) >= 2:
            a2_def = a2_def + apply_D12([fam[b] for b in blocks], n_vars) * mob

    a1_closed = kappas[ground] * b_stat(lam_of(ground))
    a2_closed = SymFunc.zero("m")
    half = Fraction(1, 2)
    for I in subsets(ground, 1):
        if I == ground:
            continue
        Ic = ground - I
        ie = ie_stat(lam_of(I), lam_of(Ic))
        if ie:
            a1_closed = a1_closed + kappas[I] * kappas[Ic] * (half * ie)
        a2_closed = a2_closed + euler_pair_sum(kappas[I], kappas[Ic], n_vars) * (-half)

    a1_ok = a1_def == a1_closed
    a2_ok = a2_def == a2_closed
    witness = None
    if not (a1_ok and a2_ok):
        witness = {"A1": [a1_def, a1_closed] if not a1_ok else None,
                   "A2": [a2_def, a2_closed] if not a2_ok else None}
    return Verdict("A1-A2", a1_ok and a2_ok, tuple(tuple(l) for l in lams), witness=witness,
                   details={"N": n_vars, "A1": a1_ok, "A2": a2_ok})


# --- the triple-Jack function -------------------------------------------------------------


def triple_jack(lam) -> TripleSym:
    """``J(x) J(y) J(z) / (hook * hook'')`` in three independent power-sum alphabets."""
    lam = Partition(lam)
    f = J(lam, "p")
    return TripleSym.from_product(f, f, f).scale(ONE / (hook(lam) * hook_dprime(lam)))


def triple_jack_family(lams) -> IndexedFamily:
    return IndexedFamily.from_partitions(lams, triple_jack)


def verify_triple_jack(lams) -> Verdict:
    lams = tuple(Partition(l) for l in lams)
    return verify_strong_factorization(lams, triple_jack_family(lams), name="triple-jack-factorization")


# --- generating-function form --------------------------------------------------------------


def _column_multiplicity_factorial(rho: Partition) -> int:
    out = 1
    for m in rho.multiplicities().values():
        out *= factorial(m)
    return out


def _series_mul(a: dict, b: dict, d: int) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            if ka.size + kb.size > d:
                continue
            key = union(ka, kb)
            prod = va * vb
            out[key] = out[key] + prod if key in out else prod
    return out


def verify_log_cumulant_identity(F: Callable[[Partition], object], d: int = 4, name: str = "log-cumulant") -> Verdict:
    """Logarithm of the column-weighted series of ``F`` against its column cumulants.

    Monomials ``t_{j1} ... t_{jr}`` are indexed by the partition of column
    lengths ``rho``; the diagram with those columns is ``rho'``.
    """
    if not 1 <= d <= 4:
        raise ValueError("d must lie in 1..4")
    one = _one_like(F(Partition(())))
    if F(Partition(())) != one:
        raise FamilyError("F of the empty diagram must be 1")
    series: dict = {}
    for n in range(1, d + 1):
        for rho in partitions_of(n):
            weight = ONE / (ALPHA ** len(rho) * _column_multiplicity_factorial(rho))
            series[rho] = F(conjugate(rho)) * weight
    # log(1 + S) = sum_k (-1)^(k-1) S^k / k, truncated at weight d
    lhs: dict = {}
    power = dict(series)
    for k in range(1, d + 1):
        coeff = Fraction((-1) ** (k - 1), k)
        for key, v in power.items():
            term = v * coeff
            lhs[key] = lhs[key] + term if key in lhs else term
        power = _series_mul(power, series, d)
    mismatches = []
    for n in range(1, d + 1):
        for rho in partitions_of(n):
            columns = [Partition((1,) * j) for j in rho]
            kappa = partial_cumulant(IndexedFamily.from_partitions(columns, F))
            rhs = kappa * (ONE / (ALPHA ** len(rho) * _column_multiplicity_factorial(rho)))
            if not (lhs.get(rho, 0) - rhs) == 0:
                mismatches.append(list(rho))
    return Verdict(name, not mismatches, {"d": d}, witness=mismatches or None)


def hook_function(lam) -> AlphaRational:
    return rational(hook(lam))

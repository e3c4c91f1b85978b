"""Jack polynomials ``J_lambda`` by the triangular eigen-solve of D_alpha.

``J_lambda`` is the D_alpha eigenvector whose m-expansion has leading term
``hook_alpha(lambda) m_lambda`` and is otherwise supported on partitions
strictly dominated by ``lambda``. Coefficients are solved top-down along a
linear extension of the dominance order:

    a_nu = sum_{nu < rho <= lambda} [m_nu](D_alpha m_rho) a_rho / (Ev(lambda) - Ev(nu))
"""
from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from math import factorial, prod
from pathlib import Path

from .algebra import AlphaPolynomial
from .operators import apply_Dalpha, dalpha_entry
from .partitions import (
    Partition,
    b_stat,
    conjugate,
    dominance_leq,
    dominance_lt,
    hook,
    hook_prime,
    partitions_of,
)
from .report import Verdict
from .symfunc import SymFunc, convert, scalar_product_alpha

ENGINE_VERSION = "1"
DEFAULT_MAX_SIZE = 10
HARD_MAX_SIZE = 12
CACHE_ENV = "BCONJ_CACHE_DIR"
ORDERS = ("revlex", "binomial")


class JackError(RuntimeError):
    """Internal invariant violation in the eigen-solve."""


@dataclass(frozen=True)
class JackExpansion:
    lam: Partition
    function: SymFunc
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def basis(self) -> str:
        return self.function.basis

    @property
    def terms(self) -> dict:
        return self.function.terms

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "engine_version": ENGINE_VERSION,
            "lambda": list(self.lam),
            "terms": self.function.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "JackExpansion":
        fn = SymFunc.from_json(data["basis"], data["terms"])
        return cls(Partition(data["lambda"]), fn, {"source": "cache"})


def eigenvalue(lam, n_vars: int) -> AlphaPolynomial:
    """``alpha*b(lam) - b(lam') + (N-1)|lam|``."""
    if n_vars < 1:
        raise ValueError("N must be positive")
    lam = Partition(lam)
    return AlphaPolynomial((-b_stat(conjugate(lam)) + (n_vars - 1) * lam.size, b_stat(lam)))


def linear_extension(n: int, order: str = "revlex") -> list[Partition]:
    """Partitions of ``n`` listed so that every partition precedes those it dominates."""
    parts = partitions_of(n, HARD_MAX_SIZE)
    if order == "revlex":
        return parts
    if order == "binomial":
        # b() strictly increases along dominance, so sorting by it is a linear extension
        return sorted(parts, key=lambda p: (-b_stat(p), tuple(p)))
    raise ValueError(f"unknown order {order!r}")


def solve_jack_m(lam: Partition, order: str = "revlex", n_vars: int | None = None) -> SymFunc:
    n = lam.size
    if n_vars is None:
        n_vars = n
    if n == 0:
        return SymFunc.one("m")
    support = [nu for nu in linear_extension(n, order) if dominance_leq(nu, lam)]
    if support[0] != lam:
        raise JackError(f"linear extension does not start at {lam}")
    coeffs = {lam: hook(lam) / 1}
    ev_lam = eigenvalue(lam, n_vars)
    for nu in support[1:]:
        total = 0
        for rho, a_rho in coeffs.items():
            entry = dalpha_entry(rho, nu, n_vars)
            if entry:
                total = a_rho * entry + total
        gap = ev_lam - eigenvalue(nu, n_vars)
        if gap.is_zero():
            raise JackError(f"equal eigenvalues for comparable partitions {nu} < {lam}")
        if total:
            coeffs[nu] = total / gap
    return SymFunc("m", coeffs)


def _cache_name(lam: Partition, basis: str) -> str:
    stem = "_".join(map(str, lam)) if lam else "empty"
    return f"J_{basis}_{stem}.json"


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


class JackEngine:
    """Computes and caches Jack expansions; safe to share between threads."""

    def __init__(self, cache_dir: str | os.PathLike | None = None, max_size: int = DEFAULT_MAX_SIZE):
        if max_size > HARD_MAX_SIZE:
            raise ValueError(f"max_size {max_size} exceeds the hard cap {HARD_MAX_SIZE}")
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.max_size = max_size
        self._memo: dict = {}
        self._guard = threading.Lock()
        self._inflight: dict = {}

    def _lock_for(self, key) -> threading.Lock:
        with self._guard:
            return self._inflight.setdefault(key, threading.Lock())

    def _check(self, lam) -> Partition:
        lam = lam if isinstance(lam, Partition) else Partition(lam)
        if lam.size > self.max_size:
            raise ValueError(f"|lambda|={lam.size} exceeds the configured bound {self.max_size}")
        return lam

    def jack(self, lam, basis: str = "m") -> JackExpansion:
        lam = self._check(lam)
        key = (lam, basis)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        with self._lock_for(key):
            hit = self._memo.get(key)
            if hit is not None:
                return hit
            result = self._load(lam, basis)
            if result is None:
                result = self._compute(lam, basis)
                self._store(result)
            self._memo[key] = result
            return result

    def jack_m(self, lam) -> JackExpansion:
        return self.jack(lam, "m")

    def jack_p(self, lam) -> JackExpansion:
        return self.jack(lam, "p")

    def _compute(self, lam: Partition, basis: str) -> JackExpansion:
        if basis == "m":
            fn = solve_jack_m(lam)
            residual = eigen_residual(fn, lam, lam.size) if lam else fn - fn
            if not residual.is_zero():
                raise JackError(f"eigen-equation fails for {lam}: residual {residual}")
            return JackExpansion(lam, fn, {"N": lam.size, "order": "revlex", "source": "solve"})
        fn = convert(self.jack_m(lam).function, basis)
        return JackExpansion(lam, fn, {"source": "convert from m"})

    def _path(self, lam, basis) -> Path | None:
        return self.cache_dir / _cache_name(lam, basis) if self.cache_dir else None

    def _load(self, lam, basis) -> JackExpansion | None:
        path = self._path(lam, basis)
        if path is None or not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("engine_version") != ENGINE_VERSION:
            return None
        exp = JackExpansion.from_json(data)
        if exp.lam != lam or exp.basis != basis:
            return None
        return exp

    def _store(self, exp: JackExpansion):
        path = self._path(exp.lam, exp.basis)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}.{threading.get_ident()}")
        tmp.write_text(dump_json(exp.to_json()))
        os.replace(tmp, path)


_default: JackEngine | None = None
_default_lock = threading.Lock()


def default_engine() -> JackEngine:
    global _default
    with _default_lock:
        if _default is None:
            _default = JackEngine(os.environ.get(CACHE_ENV) or None)
        return _default


def set_default_engine(engine: JackEngine):
    global _default
    with _default_lock:
        _default = engine


def jack_m(lam) -> JackExpansion:
    return default_engine().jack_m(lam)


def jack_p(lam) -> JackExpansion:
    return default_engine().jack_p(lam)


def J(lam, basis: str = "p") -> SymFunc:
    """Shorthand for the Jack function itself."""
    return default_engine().jack(lam, basis).function


# --- checks -------------------------------------------------------------------------------


def eigen_residual(fn: SymFunc, lam, n_vars: int) -> SymFunc:
    """``D_alpha J - Ev_N(lam) J`` in the m-basis."""
    fn = convert(fn, "m")
    return apply_Dalpha(fn, n_vars) - fn.scale(eigenvalue(lam, n_vars))


def check_eigen(lam, n_vars: int | None = None) -> Verdict:
    lam = Partition(lam)
    n_vars = lam.size if n_vars is None else n_vars
    if lam.size == 0:
        return Verdict("eigen", True, (tuple(lam),), details={"N": n_vars})
    residual = eigen_residual(jack_m(lam).function, lam, max(n_vars, 1))
    return Verdict("eigen", residual.is_zero(), (tuple(lam),), witness=None if not residual else residual,
                   details={"N": n_vars})


def check_triangular(lam) -> Verdict:
    lam = Partition(lam)
    fn = jack_m(lam).function
    bad = [nu for nu in fn.terms if nu != lam and not dominance_lt(nu, lam)]
    lead_ok = fn[lam] == hook(lam)
    return Verdict("triangular", lead_ok and not bad, (tuple(lam),),
                   witness={"leading": fn[lam], "outside": [tuple(b) for b in bad]} if bad or not lead_ok else None)


def check_positive(lam) -> Verdict:
    """Every m-coefficient is a polynomial in alpha with nonnegative integer coefficients."""
    lam = Partition(lam)
    fn = jack_m(lam).function
    bad = {}
    for nu, c in fn.terms.items():
        if not c.is_polynomial() or any(x < 0 or x.denominator != 1 for x in c.num.coeffs):
            bad[tuple(nu)] = c
    return Verdict("positivity", not bad, (tuple(lam),), witness=bad or None)


def check_alpha0(lam) -> Verdict:
    lam = Partition(lam)
    left = jack_m(lam).function.evaluate_alpha(0)
    conj = conjugate(lam)
    right = convert(SymFunc.single("e", conj, prod(factorial(c) for c in conj)), "m")
    ok = left == right
    return Verdict("alpha0", ok, (tuple(lam),), witness=None if ok else {"jack": left, "elementary": right})


def check_norm(lam) -> Verdict:
    lam = Partition(lam)
    fn = jack_p(lam).function
    left = scalar_product_alpha(fn, fn)
    right = hook(lam) * hook_prime(lam)
    ok = left == right
    return Verdict("norm", ok, (tuple(lam),), witness=None if ok else {"scalar_product": left, "hooks": right})


def check_alpha1_integral(lam) -> Verdict:
    lam = Partition(lam)
    at_one = jack_m(lam).function.evaluate_alpha(1)
    ok = all(c.num.coeffs[0].denominator == 1 for c in at_one.terms.values())
    return Verdict("alpha1-integral", ok, (tuple(lam),))
